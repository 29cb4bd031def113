// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the wavetrace authors
//
// Grid-level post-processing: coverage maps over a horizontal cut,
// empirical CDFs, nearest-rank percentiles, multi-case comparison, and
// the repeater placement sweep. Cells are independent work units, so
// grids may be filled by several workers; every output is a pure
// function of the inputs regardless of worker count.

#ifndef WAVETRACE_METRICS_HPP
#define WAVETRACE_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "wavetrace/errors.hpp"
#include "wavetrace/geometry.hpp"
#include "wavetrace/link.hpp"
#include "wavetrace/tracer.hpp"

namespace wavetrace {

// Marker for cells that cannot be evaluated (on a node position or on a
// surface rectangle); such cells are dropped from CDFs and percentiles.
inline constexpr double kExcludedCell = std::numeric_limits<double>::quiet_NaN();

inline bool is_excluded(double v) { return std::isnan(v); }

// One horizontal cut through the room. Layers are row-major with y rows
// ascending and x columns ascending: index = row * nx + col.
struct CoverageGrid {
    GridSpec spec;
    std::size_t nx = 0, ny = 0;
    std::vector<double> p_signal_dbm;
    std::vector<double> p_interf_dbm;
    std::vector<double> sir_db;
    std::vector<double> sinr_db;
    std::vector<double> snr_db;

    std::size_t index(std::size_t col, std::size_t row) const { return row * nx + col; }

    const std::vector<double>* layer(const std::string& name) const {
        if (name == "p_signal") return &p_signal_dbm;
        if (name == "p_interf") return &p_interf_dbm;
        if (name == "sir") return &sir_db;
        if (name == "sinr") return &sinr_db;
        if (name == "snr") return &snr_db;
        return nullptr;
    }

    static const std::vector<std::string>& layer_names() {
        static const std::vector<std::string> names{"p_signal", "p_interf", "sir", "sinr", "snr"};
        return names;
    }
};

namespace detail {

inline bool cell_excluded(const Vec3& p, const Scene& scene, const AntennaNode& donor,
                          const AntennaNode& repeater) {
    if (distance(p, donor.position) <= 1e-9 || distance(p, repeater.position) <= 1e-9) {
        return true;
    }
    // Points on a surface rectangle would be degenerate tracer endpoints.
    for (const Surface& s : scene.surfaces) {
        if (point_on_surface(p, s)) {
            return true;
        }
    }
    return false;
}

}  // namespace detail

// Evaluates signal (repeater), interference (donor), and the metric
// triple at every grid cell. `threads` = 0 picks the hardware
// concurrency; the partition never affects the values, only the wall
// clock.
inline CoverageGrid compute_coverage_grid(const Scene& scene, const AntennaNode& donor,
                                          const AntennaNode& repeater, const GridSpec& spec,
                                          const NoiseModel& noise, double f_hz,
                                          const TracerParams& params, unsigned threads = 0) {
    CoverageGrid grid;
    grid.spec = spec;
    grid.nx = spec.nx();
    grid.ny = spec.ny();
    const std::size_t cells = grid.nx * grid.ny;
    if (cells == 0) {
        throw EmptyGrid("grid spec yields zero cells");
    }
    grid.p_signal_dbm.assign(cells, kExcludedCell);
    grid.p_interf_dbm.assign(cells, kExcludedCell);
    grid.sir_db.assign(cells, kExcludedCell);
    grid.sinr_db.assign(cells, kExcludedCell);
    grid.snr_db.assign(cells, kExcludedCell);

    auto eval_row = [&](std::size_t row) {
        const double y = spec.y_at(row);
        for (std::size_t col = 0; col < grid.nx; ++col) {
            const Vec3 p{spec.x_at(col), y, spec.height_m};
            if (detail::cell_excluded(p, scene, donor, repeater)) {
                continue;
            }
            const double s = received_power(repeater, p, scene, f_hz, params);
            const double i = received_power(donor, p, scene, f_hz, params);
            const LinkSample ls = link_metrics(s, i, noise);
            const std::size_t k = grid.index(col, row);
            grid.p_signal_dbm[k] = ls.p_signal_dbm;
            grid.p_interf_dbm[k] = ls.p_interference_dbm;
            grid.sir_db[k] = ls.sir_db;
            grid.sinr_db[k] = ls.sinr_db;
            grid.snr_db[k] = ls.snr_db;
        }
    };

    unsigned n_workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    n_workers = static_cast<unsigned>(
        std::min<std::size_t>(n_workers, grid.ny));

    if (n_workers <= 1) {
        for (std::size_t row = 0; row < grid.ny; ++row) {
            eval_row(row);
        }
        return grid;
    }

    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(n_workers);
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t row = w; row < grid.ny; row += n_workers) {
                    eval_row(row);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (std::thread& t : pool) {
        t.join();
    }
    for (const std::exception_ptr& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return grid;
}

// Empirical CDF over the distinct sorted sample values:
// F(x) = (# samples <= x) / N. Not-a-value samples are dropped first.
struct CdfSeries {
    std::vector<double> values;     // strictly increasing
    std::vector<double> fractions;  // strictly increasing, ends at 1
};

inline CdfSeries empirical_cdf(const std::vector<double>& samples) {
    std::vector<double> v;
    v.reserve(samples.size());
    for (double s : samples) {
        if (!is_excluded(s)) {
            v.push_back(s);
        }
    }
    if (v.empty()) {
        throw NoData("no finite samples for CDF");
    }
    std::sort(v.begin(), v.end());

    CdfSeries cdf;
    const double n = static_cast<double>(v.size());
    std::size_t i = 0;
    while (i < v.size()) {
        std::size_t j = i;
        while (j < v.size() && v[j] == v[i]) {
            ++j;
        }
        cdf.values.push_back(v[i]);
        cdf.fractions.push_back(static_cast<double>(j) / n);
        i = j;
    }
    return cdf;
}

// F(x) for an already-built series: fraction of samples <= x.
inline double cdf_fraction_at(const CdfSeries& cdf, double x) {
    const auto it = std::upper_bound(cdf.values.begin(), cdf.values.end(), x);
    if (it == cdf.values.begin()) {
        return 0.0;
    }
    return cdf.fractions[static_cast<std::size_t>(it - cdf.values.begin()) - 1];
}

// Nearest-rank percentile, p in (0, 100]: the value at rank
// ceil(p/100 * N) of the ascending sort. Deterministic, no
// interpolation. Not-a-value samples are dropped.
inline double percentile(const std::vector<double>& samples, double p) {
    if (!(p > 0.0) || p > 100.0) {
        throw BadValue("percentile", "p must be in (0, 100]");
    }
    std::vector<double> v;
    v.reserve(samples.size());
    for (double s : samples) {
        if (!is_excluded(s)) {
            v.push_back(s);
        }
    }
    if (v.empty()) {
        throw NoData("no finite samples for percentile");
    }
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    std::size_t rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n));
    rank = std::min(std::max<std::size_t>(rank, 1), v.size());
    return v[rank - 1];
}

// Per-case percentile summary plus the donor-repeater line-of-sight
// flag, which makes weak-coupling placements distinguishable from truly
// shadowed ones in reports.
struct CaseResult {
    std::string name;
    CoverageGrid grid;
    bool los_donor_repeater = false;
};

struct CaseStats {
    std::string name;
    bool los_donor_repeater = false;
    double sinr_p5 = 0.0, sinr_median = 0.0, sinr_p95 = 0.0;
    double snr_p5 = 0.0, snr_median = 0.0, snr_p95 = 0.0;
    double sir_p5 = 0.0, sir_median = 0.0, sir_p95 = 0.0;
};

struct CaseComparison {
    std::vector<CaseStats> stats;
    std::size_t winner = 0; // index into stats
};

// Ranks cases by median SINR; ties break toward the higher 5th
// percentile, then toward the earlier case. All grids must share one
// shape so the statistics are comparable.
inline CaseComparison compare_cases(const std::vector<CaseResult>& cases) {
    if (cases.size() < 2) {
        throw BadValue("cases", "need at least two cases to compare");
    }
    for (std::size_t i = 1; i < cases.size(); ++i) {
        if (!cases[i].grid.spec.same_shape(cases[0].grid.spec)) {
            throw SpecMismatch("case '" + cases[i].name + "' grid differs from case '" +
                               cases[0].name + "'");
        }
    }

    CaseComparison cmp;
    cmp.stats.reserve(cases.size());
    for (const CaseResult& c : cases) {
        CaseStats st;
        st.name = c.name;
        st.los_donor_repeater = c.los_donor_repeater;
        st.sinr_p5 = percentile(c.grid.sinr_db, 5.0);
        st.sinr_median = percentile(c.grid.sinr_db, 50.0);
        st.sinr_p95 = percentile(c.grid.sinr_db, 95.0);
        st.snr_p5 = percentile(c.grid.snr_db, 5.0);
        st.snr_median = percentile(c.grid.snr_db, 50.0);
        st.snr_p95 = percentile(c.grid.snr_db, 95.0);
        st.sir_p5 = percentile(c.grid.sir_db, 5.0);
        st.sir_median = percentile(c.grid.sir_db, 50.0);
        st.sir_p95 = percentile(c.grid.sir_db, 95.0);
        cmp.stats.push_back(std::move(st));
    }

    for (std::size_t i = 1; i < cmp.stats.size(); ++i) {
        const CaseStats& cand = cmp.stats[i];
        const CaseStats& best = cmp.stats[cmp.winner];
        if (cand.sinr_median > best.sinr_median ||
            (cand.sinr_median == best.sinr_median && cand.sinr_p5 > best.sinr_p5)) {
            cmp.winner = i;
        }
    }
    return cmp;
}

// One candidate's outcome in the placement sweep. Failed candidates
// carry the error text instead of aborting the sweep.
struct SweepEntry {
    std::size_t candidate_index = 0;
    Vec3 position;
    double median_sinr_db = kNoPowerDbm;
    bool ok = false;
    std::string error;
};

// Evaluates a full coverage grid per candidate position, with the
// repeater re-aimed at the room center, and ranks candidates by median
// SINR descending (candidate order breaks ties; failures sort last).
inline std::vector<SweepEntry> placement_sweep(const Scene& scene, const AntennaNode& donor,
                                               const AntennaNode& repeater_template,
                                               const std::vector<Vec3>& candidates,
                                               const GridSpec& spec, const NoiseModel& noise,
                                               double f_hz, const TracerParams& params,
                                               unsigned threads = 0) {
    if (candidates.empty()) {
        throw BadValue("sweep.candidates", "candidate list is empty");
    }

    std::vector<SweepEntry> entries;
    entries.reserve(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        SweepEntry entry;
        entry.candidate_index = i;
        entry.position = candidates[i];
        try {
            if (!scene.contains(candidates[i])) {
                throw BadValue("sweep.candidate", "position outside scene bounds");
            }
            AntennaNode rep = repeater_template;
            rep.position = candidates[i];
            rep.boresight = normalized(scene.center() - candidates[i]);
            const CoverageGrid grid =
                compute_coverage_grid(scene, donor, rep, spec, noise, f_hz, params, threads);
            entry.median_sinr_db = percentile(grid.sinr_db, 50.0);
            entry.ok = true;
        } catch (const Error& e) {
            entry.ok = false;
            entry.error = e.what();
        }
        entries.push_back(std::move(entry));
    }

    std::stable_sort(entries.begin(), entries.end(), [](const SweepEntry& a, const SweepEntry& b) {
        if (a.ok != b.ok) {
            return a.ok;
        }
        if (a.ok && a.median_sinr_db != b.median_sinr_db) {
            return a.median_sinr_db > b.median_sinr_db;
        }
        return false; // stable sort keeps candidate order on ties
    });
    return entries;
}

}  // namespace wavetrace

#endif  // WAVETRACE_METRICS_HPP
