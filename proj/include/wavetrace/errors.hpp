// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the wavetrace authors

#ifndef WAVETRACE_ERRORS_HPP
#define WAVETRACE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wavetrace {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A required scenario key is absent. `path` is the dotted JSON path.
class MissingKey : public Error {
  public:
    explicit MissingKey(const std::string& path)
        : Error("missing key: " + path), path_(path) {}
    const std::string& path() const { return path_; }

  private:
    std::string path_;
};

// A scenario value is present but unusable (non-finite, negative, out of range).
class BadValue : public Error {
  public:
    BadValue(const std::string& path, const std::string& reason)
        : Error("bad value at " + path + ": " + reason), path_(path), reason_(reason) {}
    const std::string& path() const { return path_; }
    const std::string& reason() const { return reason_; }

  private:
    std::string path_;
    std::string reason_;
};

// A material name is referenced but never defined.
class UnknownMaterial : public Error {
  public:
    explicit UnknownMaterial(const std::string& name)
        : Error("unknown material: " + name), name_(name) {}
    const std::string& name() const { return name_; }

  private:
    std::string name_;
};

// The window rectangle does not fit inside its host wall.
class WindowOutOfBounds : public Error {
  public:
    using Error::Error;
};

class BadFrequency : public Error {
  public:
    using Error::Error;
};

class BadDistance : public Error {
  public:
    using Error::Error;
};

// Tracer endpoints coincide or lie on a surface.
class DegenerateEndpoints : public Error {
  public:
    using Error::Error;
};

// A ray path does not start at the node it is being evaluated for.
class FrameMismatch : public Error {
  public:
    using Error::Error;
};

class EmptyGrid : public Error {
  public:
    using Error::Error;
};

class NoData : public Error {
  public:
    using Error::Error;
};

// Case grids (or case overlays) disagree on anything but node placement.
class SpecMismatch : public Error {
  public:
    using Error::Error;
};

// The filesystem refused an output operation (distinct from validation
// failures so the command line can map it to its own exit code).
class IoError : public Error {
  public:
    using Error::Error;
};

}  // namespace wavetrace

#endif  // WAVETRACE_ERRORS_HPP
