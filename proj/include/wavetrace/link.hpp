// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the wavetrace authors
//
// Link budget over traced paths: per-path received power, incoherent
// multipath aggregation, thermal noise, and the SIR/SINR/SNR triple for
// one evaluation point. The desired signal comes from the repeater; the
// donor's indoor back-lobe radiation is the interference.

#ifndef WAVETRACE_LINK_HPP
#define WAVETRACE_LINK_HPP

#include <cmath>
#include <limits>

#include "wavetrace/em.hpp"
#include "wavetrace/errors.hpp"
#include "wavetrace/geometry.hpp"
#include "wavetrace/tracer.hpp"

namespace wavetrace {

// Sentinel for "no power at all": all formulas treat it as zero mW.
inline constexpr double kNoPowerDbm = -std::numeric_limits<double>::infinity();

enum class NodeRole { donor, repeater };

inline const char* to_string(NodeRole r) {
    return r == NodeRole::donor ? "donor" : "repeater";
}

struct AntennaNode {
    NodeRole role = NodeRole::repeater;
    Vec3 position;
    Vec3 boresight{1.0, 0.0, 0.0}; // unit
    AntennaPattern pattern;
    double tx_power_dbm = 20.0;
};

struct NoiseModel {
    double bandwidth_hz = 100e6;
    double noise_figure_db = 9.0;
};

struct LinkSample {
    double p_signal_dbm = kNoPowerDbm;
    double p_interference_dbm = kNoPowerDbm;
    double sir_db = 0.0;
    double sinr_db = 0.0;
    double snr_db = 0.0;
};

// Right-handed frame anchored on the boresight: azimuth positive toward
// `left`, elevation positive toward `up`.
struct BoresightFrame {
    Vec3 forward, left, up;
};

inline BoresightFrame make_boresight_frame(const Vec3& boresight) {
    const Vec3 f = normalized(boresight);
    // Near-vertical boresights fall back to x as the reference so the
    // frame stays well-conditioned.
    const Vec3 ref = std::abs(f.z) > 0.999999 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 0.0, 1.0};
    const Vec3 left = normalized(cross(ref, f));
    const Vec3 up = cross(f, left);
    return {f, left, up};
}

struct AzEl {
    double az_deg = 0.0; // [-180, 180]
    double el_deg = 0.0; // [-90, 90]
};

inline AzEl direction_to_azel(const BoresightFrame& frame, const Vec3& dir) {
    const Vec3 d = normalized(dir);
    const double x = dot(d, frame.forward);
    const double y = dot(d, frame.left);
    const double z = dot(d, frame.up);
    constexpr double kRadToDeg = 180.0 / kPi;
    return {std::atan2(y, x) * kRadToDeg,
            std::asin(std::clamp(z, -1.0, 1.0)) * kRadToDeg};
}

// dB-domain power sum that never undershoots either operand: the result
// is max + 10*log10(1 + 10^((min-max)/10)) with a non-negative second
// term, so a >= max(a_db, b_db) holds bitwise. That makes the
// SINR <= min(SIR, SNR) invariant exact rather than
// almost-always-within-rounding.
inline double power_sum_db(double a_db, double b_db) {
    if (a_db == kNoPowerDbm) {
        return b_db;
    }
    if (b_db == kNoPowerDbm) {
        return a_db;
    }
    const double hi = std::max(a_db, b_db);
    const double lo = std::min(a_db, b_db);
    return hi + 10.0 * std::log1p(std::pow(10.0, (lo - hi) / 10.0)) / std::log(10.0);
}

// Received power (dBm) over one traced path: transmit power, pattern
// gain toward the departure direction, free-space spreading over the
// unfolded length, |gamma|^2 per reflection, and slab penetration per
// transmission. The receive probe is isotropic 0 dBi. A single (TE)
// polarization is traced throughout.
inline double path_power(const AntennaNode& node, const RayPath& path, const Scene& scene,
                         double f_hz) {
    if (distance(path.tx, node.position) > 1e-9) {
        throw FrameMismatch("path transmitter does not coincide with the node position");
    }
    const BoresightFrame frame = make_boresight_frame(node.boresight);
    const AzEl dep = direction_to_azel(frame, path.departure_dir);

    double p_dbm = node.tx_power_dbm + antenna_gain(node.pattern, dep.az_deg, dep.el_deg) +
                   free_space_path_gain(f_hz, path.length);
    for (const Interaction& ia : path.interactions) {
        const Surface& s = scene.surfaces[ia.surface_index];
        if (ia.kind == InteractionKind::reflect) {
            const auto gamma =
                fresnel_reflection(complex_permittivity(s.material, f_hz), ia.incidence_rad,
                                   Polarization::TE);
            p_dbm += 20.0 * std::log10(std::abs(gamma));
        } else {
            p_dbm -= wall_penetration_loss(s.material, ia.incidence_rad, Polarization::TE, f_hz);
        }
    }
    return p_dbm;
}

// Incoherent (power) sum over all specular paths from the node to rx,
// in canonical path order. Returns the no-power sentinel when no path
// survives the transmission budget.
inline double received_power(const AntennaNode& node, const Vec3& rx, const Scene& scene,
                             double f_hz, const TracerParams& params) {
    const std::vector<RayPath> paths = enumerate_specular_paths(node.position, rx, scene, params);
    double sum_mw = 0.0;
    for (const RayPath& path : paths) {
        sum_mw += std::pow(10.0, path_power(node, path, scene, f_hz) / 10.0);
    }
    if (sum_mw <= 0.0) {
        return kNoPowerDbm;
    }
    return 10.0 * std::log10(sum_mw);
}

// Thermal floor -174 dBm/Hz plus bandwidth and receiver noise figure.
inline double noise_power(const NoiseModel& n) {
    if (!(n.bandwidth_hz > 0.0)) {
        throw BadValue("noise.bandwidth_hz", "must be positive");
    }
    if (n.noise_figure_db < 0.0) {
        throw BadValue("noise.noise_figure_db", "must be >= 0");
    }
    return -174.0 + 10.0 * std::log10(n.bandwidth_hz) + n.noise_figure_db;
}

// SIR/SINR/SNR for one evaluation point. All ratios are formed in
// linear milliwatts; the no-power sentinel behaves as exactly zero mW,
// so interference-free points get sinr == snr bitwise and an infinite
// SIR. A sentinel signal yields sentinel-valued ratios rather than an
// error so that grid evaluation stays total.
inline LinkSample link_metrics(double p_signal_dbm, double p_interference_dbm,
                               const NoiseModel& noise) {
    LinkSample out;
    out.p_signal_dbm = p_signal_dbm;
    out.p_interference_dbm = p_interference_dbm;

    const double n_dbm = noise_power(noise);
    if (p_signal_dbm == kNoPowerDbm) {
        out.sir_db = kNoPowerDbm;
        out.snr_db = kNoPowerDbm;
        out.sinr_db = kNoPowerDbm;
        return out;
    }
    out.snr_db = p_signal_dbm - n_dbm;
    if (p_interference_dbm == kNoPowerDbm) {
        out.sir_db = std::numeric_limits<double>::infinity();
        out.sinr_db = out.snr_db;
        return out;
    }
    out.sir_db = p_signal_dbm - p_interference_dbm;
    out.sinr_db = p_signal_dbm - power_sum_db(p_interference_dbm, n_dbm);
    return out;
}

}  // namespace wavetrace

#endif  // WAVETRACE_LINK_HPP
