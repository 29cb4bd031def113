// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the wavetrace authors
//
// Scene geometry: vectors, materials, rectangular facets, the box-room
// builder, and the segment/plane primitives the image-method tracer is
// built on. Everything here is an immutable value type; all functions are
// pure and safe to call from any number of threads.

#ifndef WAVETRACE_GEOMETRY_HPP
#define WAVETRACE_GEOMETRY_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wavetrace/errors.hpp"

namespace wavetrace {

// Right-handed coordinates, z up, meters.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
inline Vec3 operator*(const Vec3& v, double s) { return s * v; }
inline Vec3 operator/(const Vec3& v, double s) { return {v.x / s, v.y / s, v.z / s}; }
inline Vec3 operator-(const Vec3& v) { return {-v.x, -v.y, -v.z}; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm_sq(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(norm_sq(v)); }
inline double distance(const Vec3& a, const Vec3& b) { return norm(b - a); }

inline bool is_finite(const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

inline Vec3 normalized(const Vec3& v) {
    const double n = norm(v);
    if (!(n > 0.0)) {
        throw BadValue("vector", "cannot normalize a zero-length vector");
    }
    return v / n;
}

// Lossy dielectric slab. Conductivity follows the power law
// sigma(f) = sigma_a * f_GHz^sigma_b [S/m]; a frequency-flat material is
// simply sigma_b = 0.
struct Material {
    std::string name;
    double eps_r = 1.0;       // relative permittivity, real part (>= 1)
    double sigma_a = 0.0;     // S/m at 1 GHz
    double sigma_b = 0.0;     // power-law exponent
    double thickness_m = 0.0; // slab thickness (> 0)

    double conductivity(double f_hz) const {
        return sigma_a * std::pow(f_hz * 1e-9, sigma_b);
    }
};

enum class SurfaceKind { wall, floor, ceiling, window };

inline const char* to_string(SurfaceKind k) {
    switch (k) {
        case SurfaceKind::wall: return "wall";
        case SurfaceKind::floor: return "floor";
        case SurfaceKind::ceiling: return "ceiling";
        case SurfaceKind::window: return "window";
    }
    return "?";
}

// A planar rectangle spanned by two orthogonal edge vectors. The unit
// normal is normalize(edge_u x edge_v); for room facets the builder
// arranges the edges so the normal points out of the room interior.
struct Surface {
    Vec3 origin;
    Vec3 edge_u;
    Vec3 edge_v;
    Material material;
    SurfaceKind kind = SurfaceKind::wall;

    // Derived quantities, filled in by make_surface.
    Vec3 normal;          // unit
    double plane_d = 0.0; // dot(normal, x) = plane_d for points x on the plane
    Vec3 dir_u, dir_v;    // unit edge directions
    double len_u = 0.0, len_v = 0.0;
};

inline Surface make_surface(const Vec3& origin, const Vec3& edge_u, const Vec3& edge_v,
                            Material material, SurfaceKind kind) {
    Surface s;
    s.origin = origin;
    s.edge_u = edge_u;
    s.edge_v = edge_v;
    s.material = std::move(material);
    s.kind = kind;
    s.len_u = norm(edge_u);
    s.len_v = norm(edge_v);
    if (!(s.len_u > 0.0) || !(s.len_v > 0.0)) {
        throw BadValue("surface", "degenerate edge vector");
    }
    if (std::abs(dot(edge_u, edge_v)) > 1e-9 * s.len_u * s.len_v) {
        throw BadValue("surface", "edge vectors are not orthogonal");
    }
    s.dir_u = edge_u / s.len_u;
    s.dir_v = edge_v / s.len_v;
    s.normal = normalized(cross(edge_u, edge_v));
    s.plane_d = dot(s.normal, origin);
    return s;
}

// Signed distance from a point to the surface plane.
inline double plane_distance(const Vec3& p, const Surface& s) {
    return dot(p, s.normal) - s.plane_d;
}

// True when p lies on the surface rectangle within tol (both the plane
// and the rectangle bounds).
inline bool point_on_surface(const Vec3& p, const Surface& s, double tol = 1e-9) {
    if (std::abs(plane_distance(p, s)) > tol) {
        return false;
    }
    const Vec3 rel = p - s.origin;
    const double u = dot(rel, s.dir_u);
    const double v = dot(rel, s.dir_v);
    return u >= -tol && u <= s.len_u + tol && v >= -tol && v <= s.len_v + tol;
}

struct Scene {
    std::vector<Surface> surfaces; // iteration order is canonical
    Vec3 bounds_min;
    Vec3 bounds_max;

    Vec3 center() const { return 0.5 * (bounds_min + bounds_max); }

    bool contains(const Vec3& p) const {
        return p.x >= bounds_min.x && p.x <= bounds_max.x && p.y >= bounds_min.y &&
               p.y <= bounds_max.y && p.z >= bounds_min.z && p.z <= bounds_max.z;
    }
};

// Horizontal sampling cut. Sample points sit at min + i*resolution along
// each axis; the +1e-9 slop keeps exact divisions (3.5 / 0.05) from
// losing their last sample to rounding.
struct GridSpec {
    double height_m = 1.5;
    double x_min = 0.0, x_max = 0.0;
    double y_min = 0.0, y_max = 0.0;
    double resolution_m = 0.05;

    std::size_t nx() const { return axis_count(x_max - x_min); }
    std::size_t ny() const { return axis_count(y_max - y_min); }
    double x_at(std::size_t i) const { return x_min + static_cast<double>(i) * resolution_m; }
    double y_at(std::size_t j) const { return y_min + static_cast<double>(j) * resolution_m; }

    bool same_shape(const GridSpec& o) const {
        return height_m == o.height_m && x_min == o.x_min && x_max == o.x_max &&
               y_min == o.y_min && y_max == o.y_max && resolution_m == o.resolution_m;
    }

  private:
    std::size_t axis_count(double extent) const {
        if (!(resolution_m > 0.0) || extent < 0.0) {
            return 0;
        }
        return static_cast<std::size_t>(std::floor(extent / resolution_m + 1e-9)) + 1;
    }
};

struct SurfaceHit {
    Vec3 point;
    double t = 0.0;             // segment parameter in (0, 1)
    double incidence_rad = 0.0; // angle from the surface normal, [0, pi/2]
};

// Intersection of the open segment (a, b) with a surface rectangle.
// Endpoints touching the plane (t within 1e-9 of 0 or 1) do not count, so
// reflection points never re-intersect their own surface.
inline std::optional<SurfaceHit> intersect_segment_surface(const Vec3& a, const Vec3& b,
                                                           const Surface& s) {
    constexpr double kEndpointTol = 1e-9;
    constexpr double kRectTol = 1e-9;

    const Vec3 ab = b - a;
    const double denom = dot(s.normal, ab);
    if (denom == 0.0) {
        return std::nullopt; // parallel (or contained in the plane)
    }
    const double t = (s.plane_d - dot(s.normal, a)) / denom;
    if (!(t > kEndpointTol && t < 1.0 - kEndpointTol)) {
        return std::nullopt;
    }
    const Vec3 p = a + t * ab;
    const Vec3 rel = p - s.origin;
    const double u = dot(rel, s.dir_u);
    const double v = dot(rel, s.dir_v);
    if (u < -kRectTol || u > s.len_u + kRectTol || v < -kRectTol || v > s.len_v + kRectTol) {
        return std::nullopt;
    }
    double cos_inc = std::abs(denom) / norm(ab);
    cos_inc = std::min(cos_inc, 1.0);
    return SurfaceHit{p, t, std::acos(cos_inc)};
}

// Mirror image of p across the surface plane: p - 2*(dot(p,n) - d)*n.
inline Vec3 mirror_across_plane(const Vec3& p, const Surface& s) {
    return p - (2.0 * plane_distance(p, s)) * s.normal;
}

// Window placement on one of the four walls. center_u is the horizontal
// offset along the wall measured from its low corner (y = 0 end for the
// x0/x1 walls, x = 0 end for y0/y1); center_v is the height above the
// floor. width is horizontal, height vertical.
struct WindowPlacement {
    std::string wall = "x0"; // one of x0, x1, y0, y1
    double center_u = 0.0;
    double center_v = 0.0;
    double width = 0.0;
    double height = 0.0;
};

// Builds the room: 4 walls + floor + ceiling, plus one window facet
// coplanar with its host wall. The host wall is not subdivided; the
// tracer resolves the overlap in favor of the window rectangle. Facet
// normals point out of the room. Surface order (canonical): x0, x1, y0,
// y1, floor, ceiling, window.
inline Scene build_box_scene(const Vec3& dims, const std::optional<WindowPlacement>& window,
                             const Material& wall_material, const Material& window_material) {
    if (!(dims.x > 0.0 && dims.y > 0.0 && dims.z > 0.0)) {
        throw BadValue("room.dims", "non-positive");
    }
    const double W = dims.x, D = dims.y, H = dims.z;

    Scene scene;
    scene.bounds_min = {0.0, 0.0, 0.0};
    scene.bounds_max = dims;
    scene.surfaces.reserve(window ? 7 : 6);

    Material floor_mat = wall_material;
    Material ceil_mat = wall_material;

    // Edges are arranged so that edge_u x edge_v points outward.
    scene.surfaces.push_back(make_surface({0, D, 0}, {0, -D, 0}, {0, 0, H}, wall_material,
                                          SurfaceKind::wall)); // x = 0
    scene.surfaces.push_back(make_surface({W, 0, 0}, {0, D, 0}, {0, 0, H}, wall_material,
                                          SurfaceKind::wall)); // x = W
    scene.surfaces.push_back(make_surface({0, 0, 0}, {W, 0, 0}, {0, 0, H}, wall_material,
                                          SurfaceKind::wall)); // y = 0
    scene.surfaces.push_back(make_surface({0, D, 0}, {0, 0, H}, {W, 0, 0}, wall_material,
                                          SurfaceKind::wall)); // y = D
    scene.surfaces.push_back(make_surface({0, 0, 0}, {0, D, 0}, {W, 0, 0}, floor_mat,
                                          SurfaceKind::floor)); // z = 0
    scene.surfaces.push_back(make_surface({0, 0, H}, {W, 0, 0}, {0, D, 0}, ceil_mat,
                                          SurfaceKind::ceiling)); // z = H

    if (window) {
        const WindowPlacement& w = *window;
        const bool on_x_wall = (w.wall == "x0" || w.wall == "x1");
        const bool on_y_wall = (w.wall == "y0" || w.wall == "y1");
        if (!on_x_wall && !on_y_wall) {
            throw BadValue("window.wall", "expected one of x0, x1, y0, y1");
        }
        const double wall_u_extent = on_x_wall ? D : W;
        const double u0 = w.center_u - 0.5 * w.width;
        const double u1 = w.center_u + 0.5 * w.width;
        const double v0 = w.center_v - 0.5 * w.height;
        const double v1 = w.center_v + 0.5 * w.height;
        if (!(w.width > 0.0 && w.height > 0.0)) {
            throw BadValue("window", "non-positive dimensions");
        }
        constexpr double tol = 1e-12;
        if (u0 < -tol || u1 > wall_u_extent + tol || v0 < -tol || v1 > H + tol) {
            throw WindowOutOfBounds("window " + std::to_string(w.width) + " x " +
                                    std::to_string(w.height) + " does not fit wall " + w.wall);
        }

        Vec3 origin, edge_u, edge_v;
        if (w.wall == "x0") { // outward normal (-1, 0, 0)
            origin = {0, u1, v0};
            edge_u = {0, -(u1 - u0), 0};
            edge_v = {0, 0, v1 - v0};
        } else if (w.wall == "x1") { // outward normal (+1, 0, 0)
            origin = {W, u0, v0};
            edge_u = {0, u1 - u0, 0};
            edge_v = {0, 0, v1 - v0};
        } else if (w.wall == "y0") { // outward normal (0, -1, 0)
            origin = {u0, 0, v0};
            edge_u = {u1 - u0, 0, 0};
            edge_v = {0, 0, v1 - v0};
        } else { // y1, outward normal (0, +1, 0)
            origin = {u0, D, v0};
            edge_u = {0, 0, v1 - v0};
            edge_v = {u1 - u0, 0, 0};
        }
        scene.surfaces.push_back(make_surface(origin, edge_u, edge_v, window_material,
                                              SurfaceKind::window));
    }
    return scene;
}

// Index of the first window facet, or -1.
inline int find_window_index(const Scene& scene) {
    for (std::size_t i = 0; i < scene.surfaces.size(); ++i) {
        if (scene.surfaces[i].kind == SurfaceKind::window) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

}  // namespace wavetrace

#endif  // WAVETRACE_GEOMETRY_HPP
