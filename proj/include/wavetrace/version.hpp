// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the wavetrace authors

#ifndef WAVETRACE_VERSION_HPP
#define WAVETRACE_VERSION_HPP

namespace wavetrace {

inline constexpr const char* kToolName = "wavetrace";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace wavetrace

#endif  // WAVETRACE_VERSION_HPP
