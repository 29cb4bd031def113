// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the wavetrace authors
//
// Shared fixtures for the test suite: the reference room (3.5 x 3 x 3 m
// concrete box with a 1.75 x 1.5 m glass window centered on the x = 0
// wall) and the node placements used by the bundled scenario files.

#ifndef WAVETRACE_TESTS_TEST_SCENES_HPP
#define WAVETRACE_TESTS_TEST_SCENES_HPP

#include <optional>

#include "wavetrace/geometry.hpp"

namespace testscene {

inline wavetrace::Material concrete() {
    return {"concrete", 5.24, 0.0462, 0.7822, 0.30};
}

inline wavetrace::Material glass() {
    return {"glass", 6.27, 0.0043, 1.1925, 0.006};
}

// Lossless dielectric, handy for closed-form checks.
inline wavetrace::Material lossless(double eps_r, double thickness_m = 0.1) {
    return {"lossless", eps_r, 0.0, 0.0, thickness_m};
}

inline wavetrace::Scene reference_room() {
    wavetrace::WindowPlacement window;
    window.wall = "x0";
    window.center_u = 1.5;
    window.center_v = 1.5;
    window.width = 1.75;
    window.height = 1.5;
    return wavetrace::build_box_scene({3.5, 3.0, 3.0}, window, concrete(), glass());
}

inline wavetrace::Scene windowless_room() {
    return wavetrace::build_box_scene({3.5, 3.0, 3.0}, std::nullopt, concrete(), glass());
}

inline constexpr double kFrequencyHz = 3.5e9;

// Node placements matching scenarios/*.json.
inline constexpr wavetrace::Vec3 kDonorPos{-0.05, 1.5, 1.5};
inline constexpr wavetrace::Vec3 kCase1RepeaterPos{0.1, 0.5, 2.5};
inline constexpr wavetrace::Vec3 kCase2RepeaterPos{3.4, 1.5, 1.5};

}  // namespace testscene

#endif  // WAVETRACE_TESTS_TEST_SCENES_HPP
