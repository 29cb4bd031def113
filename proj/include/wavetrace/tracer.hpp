// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the wavetrace authors
//
// Specular multipath enumeration by the image method. For every ordered
// tuple of surfaces (no surface twice in a row, up to max_reflections)
// the transmitter is mirrored plane by plane; the path is kept when each
// unfolded segment crosses its generating rectangle properly. Surfaces
// crossed in between add transmission interactions instead of blocking
// the path. Output order is canonical (reflection count, then the
// surface-index tuple), so results are deterministic.

#ifndef WAVETRACE_TRACER_HPP
#define WAVETRACE_TRACER_HPP

#include <algorithm>
#include <vector>

#include "wavetrace/errors.hpp"
#include "wavetrace/geometry.hpp"

namespace wavetrace {

enum class InteractionKind { reflect, transmit };

struct Interaction {
    int surface_index = -1; // into Scene::surfaces
    InteractionKind kind = InteractionKind::reflect;
    Vec3 point;
    double incidence_rad = 0.0; // from the surface normal, [0, pi/2]
};

struct RayPath {
    Vec3 tx, rx;
    std::vector<Interaction> interactions;    // ordered tx -> rx
    std::vector<int> reflection_sequence;     // surface indices, in order
    double length = 0.0;                      // sum of straight segments
    Vec3 departure_dir, arrival_dir;          // unit

    int reflection_count() const { return static_cast<int>(reflection_sequence.size()); }
    int transmission_count() const {
        return static_cast<int>(interactions.size() - reflection_sequence.size());
    }
};

struct TracerParams {
    int max_reflections = 2;   // [0, 3]
    int max_transmissions = 2; // >= 0; 0 discards occluded paths entirely
};

// Canonical ordering: fewer reflections first, then lexicographic on the
// surface-index tuple.
inline bool canonical_path_less(const RayPath& a, const RayPath& b) {
    if (a.reflection_sequence.size() != b.reflection_sequence.size()) {
        return a.reflection_sequence.size() < b.reflection_sequence.size();
    }
    return a.reflection_sequence < b.reflection_sequence;
}

namespace detail {

constexpr double kCoplanarTol = 1e-9;

// A wall point that is covered by a coplanar window rectangle belongs to
// the window (nearest-kind rule); the window facet overlays its host
// wall without subdividing it.
inline bool covered_by_coplanar_window(const Scene& scene, int surface_index, const Vec3& p) {
    const Surface& s = scene.surfaces[surface_index];
    if (s.kind == SurfaceKind::window) {
        return false;
    }
    for (std::size_t j = 0; j < scene.surfaces.size(); ++j) {
        if (static_cast<int>(j) == surface_index) {
            continue;
        }
        const Surface& w = scene.surfaces[j];
        if (w.kind != SurfaceKind::window) {
            continue;
        }
        if (std::abs(dot(w.normal, s.normal)) < 1.0 - 1e-12) {
            continue; // not parallel
        }
        if (std::abs(plane_distance(w.origin, s)) > kCoplanarTol) {
            continue; // parallel but offset
        }
        if (point_on_surface(p, w, kCoplanarTol)) {
            return true;
        }
    }
    return false;
}

struct Crossing {
    int surface_index;
    SurfaceHit hit;
};

// All transmit crossings of the open segment (a, b), nearest-kind rule
// applied, ordered by t (surface index breaks exact ties).
inline void collect_crossings(const Vec3& a, const Vec3& b, const Scene& scene,
                              std::vector<Crossing>& out) {
    out.clear();
    for (std::size_t i = 0; i < scene.surfaces.size(); ++i) {
        const auto hit = intersect_segment_surface(a, b, scene.surfaces[i]);
        if (!hit) {
            continue;
        }
        if (covered_by_coplanar_window(scene, static_cast<int>(i), hit->point)) {
            continue; // the window facet registers its own crossing here
        }
        out.push_back({static_cast<int>(i), *hit});
    }
    std::sort(out.begin(), out.end(), [](const Crossing& x, const Crossing& y) {
        if (x.hit.t != y.hit.t) {
            return x.hit.t < y.hit.t;
        }
        return x.surface_index < y.surface_index;
    });
}

// Attempts the reflection tuple `seq`; appends the finished path to
// `out` when it is geometrically valid and within the transmission
// budget.
inline void try_reflection_sequence(const Vec3& tx, const Vec3& rx, const Scene& scene,
                                    const std::vector<int>& seq, int max_transmissions,
                                    std::vector<RayPath>& out) {
    const int k = static_cast<int>(seq.size());

    // Forward images of the transmitter.
    std::vector<Vec3> images(static_cast<std::size_t>(k) + 1);
    images[0] = tx;
    for (int j = 0; j < k; ++j) {
        images[j + 1] = mirror_across_plane(images[j], scene.surfaces[seq[j]]);
    }

    // Backtrack the reflection points from the receiver.
    std::vector<Vec3> points(static_cast<std::size_t>(k) + 2);
    std::vector<double> angles(static_cast<std::size_t>(k) + 1, 0.0);
    points[0] = tx;
    points[k + 1] = rx;
    Vec3 cur = rx;
    for (int j = k; j >= 1; --j) {
        const Surface& s = scene.surfaces[seq[j - 1]];
        const auto hit = intersect_segment_surface(cur, images[j], s);
        if (!hit) {
            return; // unfolded segment misses the rectangle: invalid tuple
        }
        if (covered_by_coplanar_window(scene, seq[j - 1], hit->point)) {
            return; // the coplanar window tuple owns this geometric path
        }
        points[j] = hit->point;
        angles[j] = hit->incidence_rad;
        cur = hit->point;
    }

    RayPath path;
    path.tx = tx;
    path.rx = rx;
    path.reflection_sequence = seq;

    int transmissions = 0;
    std::vector<Crossing> crossings;
    for (int seg = 0; seg <= k; ++seg) {
        const Vec3& a = points[seg];
        const Vec3& b = points[seg + 1];
        path.length += distance(a, b);

        collect_crossings(a, b, scene, crossings);
        transmissions += static_cast<int>(crossings.size());
        if (transmissions > max_transmissions) {
            return;
        }
        for (const Crossing& c : crossings) {
            path.interactions.push_back(
                {c.surface_index, InteractionKind::transmit, c.hit.point, c.hit.incidence_rad});
        }
        if (seg < k) {
            path.interactions.push_back(
                {seq[seg], InteractionKind::reflect, points[seg + 1], angles[seg + 1]});
        }
    }

    path.departure_dir = normalized(points[1] - points[0]);
    path.arrival_dir = normalized(points[k + 1] - points[k]);
    out.push_back(std::move(path));
}

inline void check_endpoint(const Vec3& p, const Scene& scene, const char* which) {
    for (const Surface& s : scene.surfaces) {
        if (point_on_surface(p, s)) {
            throw DegenerateEndpoints(std::string(which) + " endpoint lies on a " +
                                      to_string(s.kind) + " surface");
        }
    }
}

}  // namespace detail

// All specular paths between tx and rx: the direct path plus every valid
// reflection tuple. Throws DegenerateEndpoints when tx == rx or either
// endpoint sits on a surface (within 1e-9 m); such inputs would make the
// segment tolerance rules ambiguous, so they are rejected rather than
// nudged.
inline std::vector<RayPath> enumerate_specular_paths(const Vec3& tx, const Vec3& rx,
                                                     const Scene& scene,
                                                     const TracerParams& params) {
    if (params.max_reflections < 0 || params.max_reflections > 3) {
        throw BadValue("tracer.max_reflections", "must be in [0, 3]");
    }
    if (params.max_transmissions < 0) {
        throw BadValue("tracer.max_transmissions", "must be >= 0");
    }
    if (distance(tx, rx) <= 1e-9) {
        throw DegenerateEndpoints("tx and rx coincide");
    }
    detail::check_endpoint(tx, scene, "tx");
    detail::check_endpoint(rx, scene, "rx");

    const int n = static_cast<int>(scene.surfaces.size());
    std::vector<RayPath> paths;

    std::vector<int> seq;
    detail::try_reflection_sequence(tx, rx, scene, seq, params.max_transmissions, paths);

    // Sequences are generated in canonical order directly: by length,
    // then lexicographically.
    for (int k = 1; k <= params.max_reflections; ++k) {
        seq.assign(static_cast<std::size_t>(k), 0);
        auto descend = [&](auto&& self, int depth) -> void {
            if (depth == k) {
                detail::try_reflection_sequence(tx, rx, scene, seq, params.max_transmissions,
                                                paths);
                return;
            }
            for (int i = 0; i < n; ++i) {
                if (depth > 0 && seq[depth - 1] == i) {
                    continue; // no surface twice in a row
                }
                seq[depth] = i;
                self(self, depth + 1);
            }
        };
        descend(descend, 0);
    }

    std::sort(paths.begin(), paths.end(), canonical_path_less);
    return paths;
}

// True iff the open segment (a, b) crosses no surface rectangle.
inline bool line_of_sight(const Vec3& a, const Vec3& b, const Scene& scene) {
    for (const Surface& s : scene.surfaces) {
        if (intersect_segment_surface(a, b, s)) {
            return false;
        }
    }
    return true;
}

}  // namespace wavetrace

#endif  // WAVETRACE_TRACER_HPP
