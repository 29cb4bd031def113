// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the wavetrace authors
//
// Output writers. Every artifact is a pure function of its inputs:
// numbers are printed with 6 significant digits ("%.6g"), field order
// is fixed, and rows follow the canonical grid order (y rows ascending,
// x columns ascending), so re-running a scenario reproduces each file
// byte for byte.

#ifndef WAVETRACE_REPORT_HPP
#define WAVETRACE_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "wavetrace/errors.hpp"
#include "wavetrace/metrics.hpp"

namespace wavetrace {

// 6 significant digits; infinities print as "inf"/"-inf", excluded
// cells as "nan".
inline std::string format_g6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Long-format layer dump: x_m,y_m,value_db with one row per cell.
inline void write_layer_csv(std::ostream& out, const CoverageGrid& grid,
                            const std::string& layer_name) {
    const std::vector<double>* layer = grid.layer(layer_name);
    if (layer == nullptr) {
        throw BadValue("layer", "unknown layer '" + layer_name + "'");
    }
    out << "x_m,y_m,value_db\n";
    for (std::size_t row = 0; row < grid.ny; ++row) {
        const std::string y = format_g6(grid.spec.y_at(row));
        for (std::size_t col = 0; col < grid.nx; ++col) {
            out << format_g6(grid.spec.x_at(col)) << ',' << y << ','
                << format_g6((*layer)[grid.index(col, row)]) << '\n';
        }
    }
}

inline void write_cdf_csv(std::ostream& out, const CdfSeries& cdf) {
    out << "value_db,cum_fraction\n";
    for (std::size_t i = 0; i < cdf.values.size(); ++i) {
        out << format_g6(cdf.values[i]) << ',' << format_g6(cdf.fractions[i]) << '\n';
    }
}

// 8-bit grayscale PGM (P5). dB values map linearly from [-20, +60] onto
// [0, 255] with clamping; excluded cells render black. The first image
// row is the highest-y grid row so the file views like a floor plan.
inline void write_heatmap_pgm(std::ostream& out, const CoverageGrid& grid,
                              const std::string& layer_name) {
    const std::vector<double>* layer = grid.layer(layer_name);
    if (layer == nullptr) {
        throw BadValue("layer", "unknown layer '" + layer_name + "'");
    }
    constexpr double kLoDb = -20.0;
    constexpr double kHiDb = 60.0;
    out << "P5\n" << grid.nx << ' ' << grid.ny << "\n255\n";
    std::vector<unsigned char> scanline(grid.nx);
    for (std::size_t row = grid.ny; row-- > 0;) {
        for (std::size_t col = 0; col < grid.nx; ++col) {
            const double v = (*layer)[grid.index(col, row)];
            unsigned char byte = 0;
            if (!is_excluded(v)) {
                const double clamped = std::clamp(v, kLoDb, kHiDb);
                byte = static_cast<unsigned char>(
                    std::lround((clamped - kLoDb) / (kHiDb - kLoDb) * 255.0));
            }
            scanline[col] = byte;
        }
        out.write(reinterpret_cast<const char*>(scanline.data()),
                  static_cast<std::streamsize>(scanline.size()));
    }
}

inline void append_case_stats(std::ostream& out, const CaseStats& st) {
    out << "case: " << st.name << '\n'
        << "  los_donor_repeater: " << (st.los_donor_repeater ? "yes" : "no") << '\n'
        << "  sinr_db: p5 " << format_g6(st.sinr_p5) << " median " << format_g6(st.sinr_median)
        << " p95 " << format_g6(st.sinr_p95) << '\n'
        << "  snr_db: p5 " << format_g6(st.snr_p5) << " median " << format_g6(st.snr_median)
        << " p95 " << format_g6(st.snr_p95) << '\n'
        << "  sir_db: p5 " << format_g6(st.sir_p5) << " median " << format_g6(st.sir_median)
        << " p95 " << format_g6(st.sir_p95) << '\n';
}

inline CaseStats grid_case_stats(const std::string& name, const CoverageGrid& grid, bool los) {
    CaseStats st;
    st.name = name;
    st.los_donor_repeater = los;
    st.sinr_p5 = percentile(grid.sinr_db, 5.0);
    st.sinr_median = percentile(grid.sinr_db, 50.0);
    st.sinr_p95 = percentile(grid.sinr_db, 95.0);
    st.snr_p5 = percentile(grid.snr_db, 5.0);
    st.snr_median = percentile(grid.snr_db, 50.0);
    st.snr_p95 = percentile(grid.snr_db, 95.0);
    st.sir_p5 = percentile(grid.sir_db, 5.0);
    st.sir_median = percentile(grid.sir_db, 50.0);
    st.sir_p95 = percentile(grid.sir_db, 95.0);
    return st;
}

inline void write_run_summary(std::ostream& out, const CoverageGrid& grid, const CaseStats& st,
                              const std::vector<std::string>& layers) {
    out << "wavetrace coverage summary\n"
        << "grid: " << grid.nx << " x " << grid.ny << " cells, height "
        << format_g6(grid.spec.height_m) << " m, resolution " << format_g6(grid.spec.resolution_m)
        << " m\n"
        << "layers:";
    for (const std::string& l : layers) {
        out << ' ' << l;
    }
    out << '\n';
    append_case_stats(out, st);
}

inline void write_cases_summary(std::ostream& out, const CaseComparison& cmp) {
    out << "wavetrace case comparison\n";
    for (const CaseStats& st : cmp.stats) {
        append_case_stats(out, st);
    }
    out << "winner: " << cmp.stats[cmp.winner].name << " (median sinr_db "
        << format_g6(cmp.stats[cmp.winner].sinr_median) << ")\n";
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepEntry>& entries) {
    out << "rank,candidate_index,x_m,y_m,z_m,median_sinr_db,status\n";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const SweepEntry& e = entries[i];
        out << (i + 1) << ',' << e.candidate_index << ',' << format_g6(e.position.x) << ','
            << format_g6(e.position.y) << ',' << format_g6(e.position.z) << ','
            << (e.ok ? format_g6(e.median_sinr_db) : "nan") << ','
            << (e.ok ? "ok" : "failed") << '\n';
    }
}

inline void write_sweep_summary(std::ostream& out, const std::vector<SweepEntry>& entries) {
    out << "wavetrace placement sweep\n"
        << "candidates: " << entries.size() << '\n';
    for (const SweepEntry& e : entries) {
        if (!e.ok) {
            out << "failed: candidate " << e.candidate_index << " (" << e.error << ")\n";
        }
    }
    if (!entries.empty() && entries.front().ok) {
        const SweepEntry& best = entries.front();
        out << "best: candidate " << best.candidate_index << " at (" << format_g6(best.position.x)
            << ", " << format_g6(best.position.y) << ", " << format_g6(best.position.z)
            << ") median sinr_db " << format_g6(best.median_sinr_db) << '\n';
    } else {
        out << "best: none (all candidates failed)\n";
    }
}

// Opens an output file for writing, mapping failure onto IoError so the
// caller can distinguish it from validation problems.
inline std::ofstream open_output_file(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open output file: " + path);
    }
    return out;
}

inline void finish_output_file(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) {
        throw IoError("failed writing output file: " + path);
    }
}

}  // namespace wavetrace

#endif  // WAVETRACE_REPORT_HPP
