// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the wavetrace authors
//
// Coverage-grid, CDF, percentile, case-comparison and placement-sweep
// tests, including the frozen regression statistics for the bundled
// case scenarios and thread-count determinism.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <vector>

#include "wavetrace/metrics.hpp"
#include "wavetrace/scenario.hpp"

#include "test_scenes.hpp"

using namespace wavetrace;

namespace {

std::string scenario_path(const char* name) {
    return std::string(WAVETRACE_SCENARIO_DIR) + "/" + name;
}

Scenario load_case(const char* name, double resolution_m) {
    Scenario sc = load_scenario_file(scenario_path(name));
    sc.grid.resolution_m = resolution_m;
    return sc;
}

CoverageGrid compute(const Scenario& sc, unsigned threads = 1) {
    return compute_coverage_grid(sc.scene, sc.donor, sc.repeater, sc.grid, sc.noise,
                                 sc.frequency_hz, sc.tracer, threads);
}

std::size_t finite_count(const std::vector<double>& v) {
    std::size_t n = 0;
    for (double x : v) {
        if (!std::isnan(x)) {
            ++n;
        }
    }
    return n;
}

}  // namespace

TEST_CASE("default grid spec spans 71 x 61 cells", "[metrics]") {
    GridSpec spec;
    spec.x_min = 0.0;
    spec.x_max = 3.5;
    spec.y_min = 0.0;
    spec.y_max = 3.0;
    spec.resolution_m = 0.05;
    CHECK(spec.nx() == 71);
    CHECK(spec.ny() == 61);
    CHECK(spec.x_at(70) == Catch::Approx(3.5).margin(1e-12));
    CHECK(spec.y_at(60) == Catch::Approx(3.0).margin(1e-12));
}

TEST_CASE("empty grid is rejected", "[metrics]") {
    const Scenario sc = load_case("case1.json", 0.25);
    GridSpec empty = sc.grid;
    empty.x_max = empty.x_min - 1.0;
    CHECK_THROWS_AS(compute_coverage_grid(sc.scene, sc.donor, sc.repeater, empty, sc.noise,
                                          sc.frequency_hz, sc.tracer, 1),
                    EmptyGrid);
}

TEST_CASE("boundary cells are excluded, interior cells are finite", "[metrics]") {
    const Scenario sc = load_case("case1.json", 0.25);
    const CoverageGrid grid = compute(sc);
    REQUIRE(grid.nx == 15);
    REQUIRE(grid.ny == 13);

    // The whole outer ring sits on wall planes and cannot be traced.
    for (std::size_t col = 0; col < grid.nx; ++col) {
        CHECK(std::isnan(grid.sinr_db[grid.index(col, 0)]));
        CHECK(std::isnan(grid.sinr_db[grid.index(col, grid.ny - 1)]));
    }
    for (std::size_t row = 0; row < grid.ny; ++row) {
        CHECK(std::isnan(grid.sinr_db[grid.index(0, row)]));
        CHECK(std::isnan(grid.sinr_db[grid.index(grid.nx - 1, row)]));
    }
    // Every interior cell is populated across all layers.
    for (std::size_t row = 1; row + 1 < grid.ny; ++row) {
        for (std::size_t col = 1; col + 1 < grid.nx; ++col) {
            const std::size_t i = grid.index(col, row);
            CHECK(std::isfinite(grid.sinr_db[i]));
            CHECK(std::isfinite(grid.snr_db[i]));
            CHECK(std::isfinite(grid.sir_db[i]));
            CHECK(std::isfinite(grid.p_signal_dbm[i]));
            CHECK(std::isfinite(grid.p_interf_dbm[i]));
        }
    }
    CHECK(finite_count(grid.sinr_db) == 143);
}

TEST_CASE("a cell under a node position is excluded", "[metrics]") {
    // At the full resolution the case-2 repeater (3.4, 1.5, 1.5) sits
    // exactly on a grid point at the cut height.
    const Scenario sc = load_case("case2.json", 0.05);
    const CoverageGrid grid = compute(sc);
    REQUIRE(grid.nx == 71);
    const std::size_t col = 68;  // x = 3.4
    const std::size_t row = 30;  // y = 1.5
    CHECK(grid.spec.x_at(col) == Catch::Approx(3.4).margin(1e-12));
    CHECK(std::isnan(grid.sinr_db[grid.index(col, row)]));
    CHECK(finite_count(grid.sinr_db) == 4070);
}

TEST_CASE("cellwise metric inequalities hold", "[metrics]") {
    for (const char* name : {"case1.json", "case2.json"}) {
        const CoverageGrid grid = compute(load_case(name, 0.25));
        for (std::size_t i = 0; i < grid.sinr_db.size(); ++i) {
            if (std::isnan(grid.sinr_db[i])) {
                CHECK(std::isnan(grid.sir_db[i]));
                CHECK(std::isnan(grid.snr_db[i]));
                continue;
            }
            CHECK(grid.sinr_db[i] <= grid.sir_db[i]);
            CHECK(grid.sinr_db[i] <= grid.snr_db[i]);
        }
    }
}

TEST_CASE("grid results are identical across thread counts", "[metrics]") {
    const Scenario sc = load_case("case1.json", 0.25);
    const CoverageGrid one = compute(sc, 1);
    for (unsigned threads : {2u, 5u, 16u}) {
        const CoverageGrid many = compute(sc, threads);
        REQUIRE(many.sinr_db.size() == one.sinr_db.size());
        CHECK(std::memcmp(many.sinr_db.data(), one.sinr_db.data(),
                          one.sinr_db.size() * sizeof(double)) == 0);
        CHECK(std::memcmp(many.sir_db.data(), one.sir_db.data(),
                          one.sir_db.size() * sizeof(double)) == 0);
        CHECK(std::memcmp(many.snr_db.data(), one.snr_db.data(),
                          one.snr_db.size() * sizeof(double)) == 0);
    }
}

TEST_CASE("frozen case statistics at coarse resolution", "[metrics]") {
    const CoverageGrid g1 = compute(load_case("case1.json", 0.25));
    CHECK(percentile(g1.sir_db, 50.0) == Catch::Approx(24.4678156).margin(1e-6));
    CHECK(percentile(g1.sinr_db, 50.0) == Catch::Approx(24.4670336).margin(1e-6));
    CHECK(percentile(g1.sinr_db, 5.0) == Catch::Approx(17.5252761).margin(1e-6));
    CHECK(percentile(g1.sinr_db, 95.0) == Catch::Approx(25.4050012).margin(1e-6));
    CHECK(percentile(g1.snr_db, 50.0) == Catch::Approx(61.1380873).margin(1e-6));

    const CoverageGrid g2 = compute(load_case("case2.json", 0.25));
    CHECK(percentile(g2.sinr_db, 50.0) == Catch::Approx(23.73819).margin(1e-6));
    CHECK(percentile(g2.sinr_db, 5.0) == Catch::Approx(16.1756186).margin(1e-6));
    CHECK(percentile(g2.sinr_db, 95.0) == Catch::Approx(35.4417946).margin(1e-6));

    double sum = 0.0;
    for (double v : g1.sinr_db) {
        if (!std::isnan(v)) {
            sum += v;
        }
    }
    CHECK(sum == Catch::Approx(3331.11589).margin(1e-4));
}

TEST_CASE("empirical cdf over distinct values", "[metrics]") {
    const CdfSeries cdf = empirical_cdf({3.0, 1.0, 2.0, 2.0});
    REQUIRE(cdf.values == std::vector<double>{1.0, 2.0, 3.0});
    REQUIRE(cdf.fractions.size() == 3);
    CHECK(cdf.fractions[0] == Catch::Approx(0.25).margin(1e-12));
    CHECK(cdf.fractions[1] == Catch::Approx(0.75).margin(1e-12));
    CHECK(cdf.fractions[2] == Catch::Approx(1.0).margin(1e-12));

    const CdfSeries simple = empirical_cdf({1.0, 2.0, 3.0});
    CHECK(cdf_fraction_at(simple, 2.0) == Catch::Approx(2.0 / 3.0).margin(1e-12));
    CHECK(cdf_fraction_at(simple, 0.5) == 0.0);
    CHECK(cdf_fraction_at(simple, 99.0) == 1.0);

    // Excluded cells are dropped, not counted.
    const CdfSeries with_nan = empirical_cdf({1.0, kExcludedCell, 3.0});
    REQUIRE(with_nan.values.size() == 2);
    CHECK(with_nan.fractions[0] == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("nearest-rank percentiles", "[metrics]") {
    const std::vector<double> v{10.0, 20.0, 30.0, 40.0};
    CHECK(percentile(v, 50.0) == 20.0);
    CHECK(percentile(v, 51.0) == 30.0);
    CHECK(percentile(v, 95.0) == 40.0);
    CHECK(percentile(v, 100.0) == 40.0);
    CHECK(percentile(v, 1.0) == 10.0);
    CHECK_THROWS_AS(percentile(v, 0.0), BadValue);
    CHECK_THROWS_AS(percentile(v, 101.0), BadValue);
    CHECK_THROWS_AS(percentile(std::vector<double>{}, 50.0), NoData);
    CHECK_THROWS_AS(percentile(std::vector<double>{kExcludedCell}, 50.0), NoData);
}

TEST_CASE("sinr cdf dominates the snr cdf", "[metrics]") {
    for (const char* name : {"case1.json", "case2.json"}) {
        const CoverageGrid grid = compute(load_case(name, 0.25));
        const CdfSeries sinr = empirical_cdf(grid.sinr_db);
        const CdfSeries snr = empirical_cdf(grid.snr_db);
        std::vector<double> abscissae = sinr.values;
        abscissae.insert(abscissae.end(), snr.values.begin(), snr.values.end());
        for (double x : abscissae) {
            CHECK(cdf_fraction_at(sinr, x) >= cdf_fraction_at(snr, x));
        }
    }
}

TEST_CASE("case comparison picks case 1 and stays stable without noise", "[metrics]") {
    Scenario sc1 = load_case("case1.json", 0.25);
    Scenario sc2 = load_case("case2.json", 0.25);

    auto build = [](const Scenario& sc, const char* name) {
        CaseResult r;
        r.name = name;
        r.grid = compute_coverage_grid(sc.scene, sc.donor, sc.repeater, sc.grid, sc.noise,
                                       sc.frequency_hz, sc.tracer, 1);
        r.los_donor_repeater = line_of_sight(sc.donor.position, sc.repeater.position, sc.scene);
        return r;
    };

    std::vector<CaseResult> results;
    results.push_back(build(sc1, "case1"));
    results.push_back(build(sc2, "case2"));
    const CaseComparison cmp = compare_cases(results);
    REQUIRE(cmp.stats.size() == 2);
    CHECK(cmp.winner == 0);
    CHECK(cmp.stats[0].name == "case1");
    CHECK_FALSE(cmp.stats[0].los_donor_repeater);
    CHECK_FALSE(cmp.stats[1].los_donor_repeater);
    CHECK(cmp.stats[0].sinr_median - cmp.stats[1].sinr_median ==
          Catch::Approx(0.7288436).margin(1e-5));

    // With the noise floor pushed to ~-300 dBm the ordering must hold
    // unchanged (SINR degenerates to SIR).
    sc1.noise = {2.51e-13, 0.0};
    sc2.noise = {2.51e-13, 0.0};
    std::vector<CaseResult> quiet;
    quiet.push_back(build(sc1, "case1"));
    quiet.push_back(build(sc2, "case2"));
    const CaseComparison quiet_cmp = compare_cases(quiet);
    CHECK(quiet_cmp.winner == 0);

    // Fewer than two cases is an error.
    std::vector<CaseResult> lone;
    lone.push_back(build(sc1, "case1"));
    CHECK_THROWS_AS(compare_cases(lone), BadValue);
}

TEST_CASE("case comparison tie-breaks by p5 then input order", "[metrics]") {
    // Hand-built grids: identical medians, different 5th percentiles.
    auto grid_of = [](std::vector<double> values) {
        CoverageGrid g;
        g.spec.x_min = 0.0;
        g.spec.x_max = static_cast<double>(values.size() - 1);
        g.spec.y_min = 0.0;
        g.spec.y_max = 0.0;
        g.spec.resolution_m = 1.0;
        g.nx = values.size();
        g.ny = 1;
        g.sir_db = values;
        g.sinr_db = values;
        g.snr_db = std::move(values);
        return g;
    };

    CaseResult low_tail;
    low_tail.name = "low-tail";
    low_tail.grid = grid_of({0.0, 10.0, 20.0});
    CaseResult high_tail;
    high_tail.name = "high-tail";
    high_tail.grid = grid_of({5.0, 10.0, 20.0});

    std::vector<CaseResult> results{low_tail, high_tail};
    CHECK(compare_cases(results).winner == 1);

    // Fully identical stats: earliest case wins.
    std::vector<CaseResult> same{low_tail, low_tail};
    CHECK(compare_cases(same).winner == 0);
}

TEST_CASE("placement sweep ranks the frozen candidate ring", "[metrics]") {
    const Scenario sc = load_case("base.json", 0.05);

    // The 12-point ring from scenarios/ring12.json: perimeter walk at
    // 0.1 m inset, 2.5 m height.
    std::vector<Vec3> candidates;
    const double inset = 0.1, h = 2.5;
    const double w = 3.5 - 2 * inset, d = 3.0 - 2 * inset;
    const double per = 2 * (w + d);
    for (int i = 0; i < 12; ++i) {
        const double s = per * i / 12.0;
        double x = inset, y = inset;
        if (s < w) {
            x += s;
        } else if (s < w + d) {
            x += w;
            y += s - w;
        } else if (s < 2 * w + d) {
            x += w - (s - w - d);
            y += d;
        } else {
            y += d - (s - 2 * w - d);
        }
        candidates.push_back({x, y, h});
    }

    const auto ranked = placement_sweep(sc.scene, sc.donor, sc.repeater, candidates, sc.grid,
                                        sc.noise, sc.frequency_hz, sc.tracer, 1);
    REQUIRE(ranked.size() == 12);
    const std::vector<std::size_t> want{1, 9, 8, 11, 10, 0, 2, 3, 6, 7, 4, 5};
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        CHECK(ranked[i].ok);
        CHECK(ranked[i].candidate_index == want[i]);
        if (i > 0) {
            CHECK(ranked[i - 1].median_sinr_db >= ranked[i].median_sinr_db);
        }
    }
    CHECK(ranked[0].median_sinr_db == Catch::Approx(24.4462).margin(1e-3));

    // Candidate positions are echoed back unchanged.
    CHECK(ranked[0].position.x == Catch::Approx(candidates[1].x).margin(1e-12));
    CHECK(ranked[0].position.y == Catch::Approx(candidates[1].y).margin(1e-12));
}

TEST_CASE("placement sweep reports failed candidates without aborting", "[metrics]") {
    const Scenario sc = load_case("base.json", 0.25);
    const std::vector<Vec3> candidates{
        {0.5, 0.5, 2.5},                 // fine
        {5.0, 1.0, 1.0},                 // outside the room
        sc.scene.center(),               // boresight to the room center degenerates
    };
    const auto ranked = placement_sweep(sc.scene, sc.donor, sc.repeater, candidates, sc.grid,
                                        sc.noise, sc.frequency_hz, sc.tracer, 1);
    REQUIRE(ranked.size() == 3);
    CHECK(ranked[0].ok);
    CHECK(ranked[0].candidate_index == 0);
    CHECK_FALSE(ranked[1].ok);
    CHECK_FALSE(ranked[2].ok);
    CHECK(!ranked[1].error.empty());
    CHECK(!ranked[2].error.empty());

    CHECK_THROWS_AS(placement_sweep(sc.scene, sc.donor, sc.repeater, {}, sc.grid, sc.noise,
                                    sc.frequency_hz, sc.tracer, 1),
                    BadValue);
}
