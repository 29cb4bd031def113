// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the wavetrace authors
//
// Reference values marked "oracle" were produced by
// tests/oracles/slab_loss_oracle.py (50-digit arithmetic over the same
// closed forms) and are frozen here.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "wavetrace/em.hpp"

using namespace wavetrace;

namespace {

const Material kConcrete{"concrete", 5.24, 0.0462, 0.7822, 0.30};
const Material kGlass{"glass", 6.27, 0.0043, 1.1925, 0.006};

}  // namespace

TEST_CASE("complex permittivity of lossy materials", "[em]") {
    const ComplexPermittivity at35 = complex_permittivity(kConcrete, 3.5e9);
    CHECK(at35.re == 5.24);
    CHECK(at35.im == Catch::Approx(0.63214303506114967).epsilon(1e-9)); // oracle

    const ComplexPermittivity at1 = complex_permittivity(kConcrete, 1e9);
    CHECK(at1.im == Catch::Approx(0.83044978560493231).epsilon(1e-9)); // oracle

    const Material lossless{"dry", 4.0, 0.0, 0.0, 0.1};
    CHECK(complex_permittivity(lossless, 2e9).im == 0.0);

    CHECK_THROWS_AS(complex_permittivity(kConcrete, 0.0), BadFrequency);
    CHECK_THROWS_AS(complex_permittivity(kConcrete, -1e9), BadFrequency);
}

TEST_CASE("fresnel reflection closed forms", "[em]") {
    const ComplexPermittivity four{4.0, 0.0};

    SECTION("normal incidence, either polarization, up to sign") {
        const auto te = fresnel_reflection(four, 0.0, Polarization::TE);
        const auto tm = fresnel_reflection(four, 0.0, Polarization::TM);
        CHECK(te.real() == Catch::Approx(-1.0 / 3.0).epsilon(1e-12));
        CHECK(std::abs(te.imag()) < 1e-15);
        // Documented convention: gamma_TM(0) = -gamma_TE(0).
        CHECK(tm.real() == Catch::Approx(1.0 / 3.0).epsilon(1e-12));
        CHECK(std::abs(tm + te) < 1e-12);
    }
    SECTION("Brewster angle zero for TM") {
        const double brewster = std::atan(2.0);
        CHECK(std::abs(fresnel_reflection(four, brewster, Polarization::TM)) < 1e-12);
        // TE has no such zero.
        CHECK(std::abs(fresnel_reflection(four, brewster, Polarization::TE)) > 0.1);
    }
    SECTION("grazing limit") {
        const double nearly_grazing = 89.99 * kPi / 180.0;
        const auto te = fresnel_reflection(four, nearly_grazing, Polarization::TE);
        CHECK(std::abs(te - std::complex<double>(-1.0, 0.0)) < 1e-3);
    }
}

TEST_CASE("fresnel reflection is passive", "[em]") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u_re(1.0, 10.0);
    std::uniform_real_distribution<double> u_im(0.0, 5.0);
    std::uniform_real_distribution<double> u_th(0.0, 89.9 * kPi / 180.0);
    for (int i = 0; i < 10000; ++i) {
        const ComplexPermittivity eps{u_re(rng), u_im(rng)};
        const double theta = u_th(rng);
        CHECK(std::abs(fresnel_reflection(eps, theta, Polarization::TE)) <= 1.0 + 1e-12);
        CHECK(std::abs(fresnel_reflection(eps, theta, Polarization::TM)) <= 1.0 + 1e-12);
    }
}

TEST_CASE("slab penetration loss", "[em]") {
    SECTION("vacuum slab is free") {
        const Material vacuum{"vacuum", 1.0, 0.0, 0.0, 1e-9};
        CHECK(wall_penetration_loss(vacuum, 0.0, Polarization::TE, 3.5e9) ==
              Catch::Approx(0.0).margin(1e-9));
        CHECK(wall_penetration_loss(vacuum, 0.7, Polarization::TM, 3.5e9) ==
              Catch::Approx(0.0).margin(1e-9));
    }
    SECTION("pinned oracle values at 3.5 GHz") {
        CHECK(wall_penetration_loss(kConcrete, 0.0, Polarization::TE, 3.5e9) ==
              Catch::Approx(27.799210598169500).epsilon(1e-9)); // oracle
        CHECK(wall_penetration_loss(kConcrete, kPi / 6, Polarization::TE, 3.5e9) ==
              Catch::Approx(28.883540511611916).epsilon(1e-9)); // oracle
        CHECK(wall_penetration_loss(kConcrete, kPi / 6, Polarization::TM, 3.5e9) ==
              Catch::Approx(28.066439812575184).epsilon(1e-9)); // oracle
        CHECK(wall_penetration_loss(kGlass, 0.0, Polarization::TE, 3.5e9) ==
              Catch::Approx(1.8438843647745039).epsilon(1e-9)); // oracle
        CHECK(wall_penetration_loss(kGlass, kPi / 4, Polarization::TE, 3.5e9) ==
              Catch::Approx(3.1417380919469035).epsilon(1e-9)); // oracle
    }
    SECTION("non-negative and monotone in thickness") {
        std::mt19937 rng(43);
        std::uniform_real_distribution<double> u_eps(1.0, 9.0);
        std::uniform_real_distribution<double> u_sig(0.0, 1.0);
        std::uniform_real_distribution<double> u_b(0.0, 2.0);
        std::uniform_real_distribution<double> u_th(0.0, 85.0 * kPi / 180.0);
        std::uniform_real_distribution<double> u_d(0.001, 0.5);
        for (int i = 0; i < 500; ++i) {
            Material m{"m", u_eps(rng), u_sig(rng), u_b(rng), u_d(rng)};
            const double theta = u_th(rng);
            const Polarization pol = (i % 2 == 0) ? Polarization::TE : Polarization::TM;
            const double loss = wall_penetration_loss(m, theta, pol, 3.5e9);
            CHECK(loss >= 0.0);

            Material thicker = m;
            thicker.thickness_m = m.thickness_m * 1.7;
            CHECK(wall_penetration_loss(thicker, theta, pol, 3.5e9) >= loss);
        }
    }
    SECTION("monotone in frequency for the shipped materials") {
        std::mt19937 rng(44);
        std::uniform_real_distribution<double> u_f(0.5e9, 10e9);
        std::uniform_real_distribution<double> u_th(0.0, 80.0 * kPi / 180.0);
        for (const Material& m : {kConcrete, kGlass}) {
            for (int i = 0; i < 200; ++i) {
                double f1 = u_f(rng);
                double f2 = u_f(rng);
                if (f1 > f2) {
                    std::swap(f1, f2);
                }
                const double theta = u_th(rng);
                CHECK(wall_penetration_loss(m, theta, Polarization::TE, f2) >=
                      wall_penetration_loss(m, theta, Polarization::TE, f1) - 1e-9);
            }
        }
    }
}

TEST_CASE("free-space path gain", "[em]") {
    CHECK(free_space_path_gain(3.5e9, 1.0) ==
          Catch::Approx(-43.329144108888887).epsilon(1e-9)); // oracle
    CHECK(free_space_path_gain(3.5e9, 1.0) == Catch::Approx(-43.33).margin(0.01));

    SECTION("distance doubling costs 20*log10(2)") {
        std::mt19937 rng(45);
        std::uniform_real_distribution<double> u_f(0.1e9, 100e9);
        std::uniform_real_distribution<double> u_d(0.01, 1000.0);
        for (int i = 0; i < 200; ++i) {
            const double f = u_f(rng);
            const double d = u_d(rng);
            const double delta = free_space_path_gain(f, 2 * d) - free_space_path_gain(f, d);
            CHECK(delta == Catch::Approx(-6.0205999132796239).margin(1e-9));
        }
    }
    SECTION("unity argument") {
        const double f = 3.5e9;
        const double d = kSpeedOfLight / (4.0 * kPi * f);
        CHECK(free_space_path_gain(f, d) == Catch::Approx(0.0).margin(1e-9));
    }
    CHECK_THROWS_AS(free_space_path_gain(3.5e9, 0.0), BadDistance);
    CHECK_THROWS_AS(free_space_path_gain(3.5e9, -1.0), BadDistance);
    CHECK_THROWS_AS(free_space_path_gain(0.0, 1.0), BadFrequency);
}

TEST_CASE("parametric antenna pattern", "[em]") {
    AntennaPattern p; // 8 dBi, 65x65, 25 dB front-to-back, 30 dB floor

    CHECK(antenna_gain(p, 0.0, 0.0) == p.gain_dbi);
    CHECK(antenna_gain(p, p.bw_az_deg / 2.0, 0.0) ==
          Catch::Approx(p.gain_dbi - 3.0).epsilon(1e-12));
    CHECK(antenna_gain(p, 0.0, p.bw_el_deg / 2.0) ==
          Catch::Approx(p.gain_dbi - 3.0).epsilon(1e-12));
    CHECK(antenna_gain(p, 180.0, 0.0) == p.gain_dbi - p.front_to_back_db);

    SECTION("even symmetry and azimuth monotonicity") {
        std::mt19937 rng(46);
        std::uniform_real_distribution<double> u_az(0.0, 180.0);
        std::uniform_real_distribution<double> u_el(0.0, 90.0);
        for (int i = 0; i < 500; ++i) {
            const double az = u_az(rng);
            const double el = u_el(rng);
            CHECK(antenna_gain(p, az, el) == antenna_gain(p, -az, el));
            CHECK(antenna_gain(p, az, el) == antenna_gain(p, az, -el));

            double a1 = u_az(rng);
            double a2 = u_az(rng);
            if (a1 > a2) {
                std::swap(a1, a2);
            }
            CHECK(antenna_gain(p, a2, 0.0) <= antenna_gain(p, a1, 0.0));
        }
    }
    SECTION("never below the sidelobe floor") {
        AntennaPattern narrow = p;
        narrow.bw_az_deg = 10.0;
        narrow.bw_el_deg = 10.0;
        narrow.front_to_back_db = 30.0;
        narrow.sidelobe_floor_db = 30.0;
        for (double az = -180.0; az <= 180.0; az += 7.0) {
            for (double el = -90.0; el <= 90.0; el += 7.0) {
                CHECK(antenna_gain(narrow, az, el) >=
                      narrow.gain_dbi - narrow.sidelobe_floor_db);
            }
        }
    }
    SECTION("raising front-to-back never raises any gain") {
        AntennaPattern lo = p;
        AntennaPattern hi = p;
        lo.front_to_back_db = 15.0;
        hi.front_to_back_db = 35.0;
        for (double az = -180.0; az <= 180.0; az += 3.0) {
            for (double el = -90.0; el <= 90.0; el += 3.0) {
                CHECK(antenna_gain(hi, az, el) <= antenna_gain(lo, az, el));
            }
        }
    }
}
