// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the wavetrace authors
//
// Electromagnetic primitives: complex permittivity of lossy dielectrics,
// Fresnel reflection at an air/dielectric interface, single-slab
// penetration loss, free-space path gain, and the parametric antenna
// element pattern. Pure functions over immutable inputs.

#ifndef WAVETRACE_EM_HPP
#define WAVETRACE_EM_HPP

#include <algorithm>
#include <cmath>
#include <complex>

#include "wavetrace/errors.hpp"
#include "wavetrace/geometry.hpp"

namespace wavetrace {

inline constexpr double kSpeedOfLight = 299792458.0;           // m/s
inline constexpr double kVacuumPermittivity = 8.8541878128e-12; // F/m
inline constexpr double kPi = 3.14159265358979323846;

enum class Polarization { TE, TM };

// eps = eps' - j*eps'' with eps'' >= 0 (loss convention).
struct ComplexPermittivity {
    double re = 1.0;
    double im = 0.0;

    std::complex<double> value() const { return {re, -im}; }
};

// eps' = eps_r, eps'' = sigma(f) / (2*pi*f*eps0).
inline ComplexPermittivity complex_permittivity(const Material& m, double f_hz) {
    if (!(f_hz > 0.0)) {
        throw BadFrequency("frequency must be positive");
    }
    const double sigma = m.conductivity(f_hz);
    return {m.eps_r, sigma / (2.0 * kPi * f_hz * kVacuumPermittivity)};
}

// Field reflection coefficient at an air-to-dielectric interface.
//
//   TE: (cos t - sqrt(eps - sin^2 t)) / (cos t + sqrt(eps - sin^2 t))
//   TM: (eps cos t - sqrt(eps - sin^2 t)) / (eps cos t + sqrt(eps - sin^2 t))
//
// Principal square root (Re >= 0), which keeps |gamma| <= 1 for passive
// media. Note the sign convention: gamma_TM(0) = -gamma_TE(0).
inline std::complex<double> fresnel_reflection(const ComplexPermittivity& eps, double theta_rad,
                                               Polarization pol) {
    const double c = std::cos(theta_rad);
    const double s = std::sin(theta_rad);
    const std::complex<double> e = eps.value();
    const std::complex<double> root = std::sqrt(e - s * s);
    if (pol == Polarization::TE) {
        return (c - root) / (c + root);
    }
    return (e * c - root) / (e * c + root);
}

// Power loss (dB, >= 0) through a single dielectric slab, internal
// multiple reflections neglected:
//
//   T = |tau12 * tau21|^2 * exp(-2 * alpha * d / cos(theta_t))
//
// with tau12*tau21 = 1 - gamma^2 (tangential-field interface
// coefficients), alpha the field attenuation constant of the medium and
// theta_t the refraction angle from the real part of Snell's law. The
// result is clamped at 0 dB: the neglected multiples can otherwise push
// the two-interface product marginally above unity at extreme
// loss/grazing combinations.
inline double wall_penetration_loss(const Material& m, double theta_rad, Polarization pol,
                                    double f_hz) {
    const ComplexPermittivity eps = complex_permittivity(m, f_hz);
    const std::complex<double> gamma = fresnel_reflection(eps, theta_rad, pol);
    const std::complex<double> tau_product = 1.0 - gamma * gamma;

    const std::complex<double> n = std::sqrt(eps.value()); // n' - j*n'', n' >= 1
    const double alpha = (2.0 * kPi * f_hz / kSpeedOfLight) * (-n.imag()); // Np/m

    const double sin_t = std::sin(theta_rad) / n.real();
    const double cos_t = std::sqrt(1.0 - sin_t * sin_t);
    const double through = m.thickness_m / cos_t;

    const double transmitted = std::norm(tau_product) * std::exp(-2.0 * alpha * through);
    const double loss_db = -10.0 * std::log10(transmitted);
    return std::max(0.0, loss_db);
}

// Friis free-space gain: -20*log10(4*pi*d*f/c). Always negative for
// d > c/(4*pi*f).
inline double free_space_path_gain(double f_hz, double d_m) {
    if (!(f_hz > 0.0)) {
        throw BadFrequency("frequency must be positive");
    }
    if (!(d_m > 0.0)) {
        throw BadDistance("distance must be positive");
    }
    return -20.0 * std::log10(4.0 * kPi * d_m * f_hz / kSpeedOfLight);
}

// Parametric single-element pattern: quadratic roll-off in azimuth and
// elevation, attenuation clamped at the front-to-back ratio, and the
// whole gain floored at gain_dbi - sidelobe_floor_db.
struct AntennaPattern {
    double gain_dbi = 8.0;
    double bw_az_deg = 65.0;          // 3 dB beamwidth
    double bw_el_deg = 65.0;          // 3 dB beamwidth
    double front_to_back_db = 25.0;   // attenuation clamp
    double sidelobe_floor_db = 30.0;  // >= front_to_back_db
};

// Gain (dBi) toward (az, el) measured in the node's boresight frame,
// az in [-180, 180], el in [-90, 90] degrees.
inline double antenna_gain(const AntennaPattern& p, double az_deg, double el_deg) {
    const double ra = az_deg / p.bw_az_deg;
    const double re = el_deg / p.bw_el_deg;
    const double attenuation = std::min(12.0 * ra * ra + 12.0 * re * re, p.front_to_back_db);
    return std::max(p.gain_dbi - attenuation, p.gain_dbi - p.sidelobe_floor_db);
}

}  // namespace wavetrace

#endif  // WAVETRACE_EM_HPP
