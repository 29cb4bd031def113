// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the wavetrace authors
//
// Command implementations behind the `wavetrace` executable: `run`
// (one scenario -> grids/CDFs/heatmaps), `cases` (base + node overlays
// -> per-case outputs and a winner), and `sweep` (candidate repeater
// positions -> ranked list). Exit codes: 0 success, 1 usage/validation,
// 2 I/O. A manifest.json is written for every invocation that gets as
// far as an output directory, success or not.

#ifndef WAVETRACE_CLI_HPP
#define WAVETRACE_CLI_HPP

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "wavetrace/errors.hpp"
#include "wavetrace/metrics.hpp"
#include "wavetrace/report.hpp"
#include "wavetrace/scenario.hpp"
#include "wavetrace/version.hpp"

namespace wavetrace {

struct CommonOptions {
    std::string scenario_path;
    std::string out_dir;
    std::vector<std::string> layers{"sir", "sinr", "snr"};
    bool heatmap = false;
    std::optional<int> max_reflections;    // override
    std::optional<double> resolution_m;    // override
    unsigned threads = 0;                  // 0 = hardware concurrency
};

struct RunOptions : CommonOptions {};

struct CasesOptions : CommonOptions {
    std::vector<std::string> case_paths; // >= 2 overlay files
};

struct SweepOptions : CommonOptions {
    std::string candidates_path;
};

namespace detail {

inline void validate_layers(const std::vector<std::string>& layers) {
    if (layers.empty()) {
        throw BadValue("--layers", "at least one layer is required");
    }
    for (const std::string& l : layers) {
        if (CoverageGrid{}.layer(l) == nullptr) {
            throw BadValue("--layers", "unknown layer '" + l + "'");
        }
    }
}

inline void apply_overrides(Scenario& sc, const CommonOptions& opts) {
    if (opts.max_reflections) {
        if (*opts.max_reflections < 0 || *opts.max_reflections > 3) {
            throw BadValue("--max-reflections", "must be in [0, 3]");
        }
        sc.tracer.max_reflections = *opts.max_reflections;
    }
    if (opts.resolution_m) {
        if (!(*opts.resolution_m > 0.0)) {
            throw BadValue("--resolution", "must be positive");
        }
        sc.grid.resolution_m = *opts.resolution_m;
    }
}

inline void ensure_directory(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " + dir + ": " + ec.message());
    }
}

// Every file the grid stage emits for one case: the selected layer
// CSVs, CDF CSVs for the distribution layers (sinr/snr), optional
// heatmaps, and the textual summary.
inline void write_grid_outputs(const std::string& dir, const CoverageGrid& grid,
                               const CaseStats& stats, const std::vector<std::string>& layers,
                               bool heatmap) {
    for (const std::string& layer : layers) {
        const std::string csv_path = dir + "/" + layer + ".csv";
        std::ofstream csv = open_output_file(csv_path);
        write_layer_csv(csv, grid, layer);
        finish_output_file(csv, csv_path);

        if (layer == "sinr" || layer == "snr") {
            const std::string cdf_path = dir + "/cdf_" + layer + ".csv";
            std::ofstream cdf = open_output_file(cdf_path);
            write_cdf_csv(cdf, empirical_cdf(*grid.layer(layer)));
            finish_output_file(cdf, cdf_path);
        }
        if (heatmap) {
            const std::string pgm_path = dir + "/" + layer + ".pgm";
            std::ofstream pgm = open_output_file(pgm_path);
            write_heatmap_pgm(pgm, grid, layer);
            finish_output_file(pgm, pgm_path);
        }
    }
    const std::string summary_path = dir + "/summary.txt";
    std::ofstream summary = open_output_file(summary_path);
    write_run_summary(summary, grid, stats, layers);
    finish_output_file(summary, summary_path);
}

inline nlohmann::ordered_json overrides_json(const CommonOptions& opts) {
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    o["layers"] = opts.layers;
    o["heatmap"] = opts.heatmap;
    if (opts.max_reflections) {
        o["max_reflections"] = *opts.max_reflections;
    }
    if (opts.resolution_m) {
        o["resolution_m"] = *opts.resolution_m;
    }
    o["threads"] = opts.threads;
    return o;
}

class ManifestWriter {
  public:
    ManifestWriter(std::string command, const CommonOptions& opts)
        : start_(std::chrono::steady_clock::now()) {
        doc_["tool"] = kToolName;
        doc_["version"] = kVersion;
        doc_["command"] = std::move(command);
        doc_["scenario"] = opts.scenario_path;
        doc_["out_dir"] = opts.out_dir;
        doc_["overrides"] = overrides_json(opts);
        out_dir_ = opts.out_dir;
    }

    void extra(const char* key, const nlohmann::ordered_json& value) { doc_[key] = value; }

    void finish(const std::string& status, const std::string& error_text) {
        doc_["status"] = status;
        if (!error_text.empty()) {
            doc_["error"] = error_text;
        }
        const auto elapsed = std::chrono::steady_clock::now() - start_;
        doc_["duration_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
        const std::string path = out_dir_ + "/manifest.json";
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            return; // never mask the primary failure with a manifest one
        }
        out << doc_.dump(2) << '\n';
    }

  private:
    nlohmann::ordered_json doc_ = nlohmann::ordered_json::object();
    std::chrono::steady_clock::time_point start_;
    std::string out_dir_;
};

// Maps an escaped exception onto the documented exit code, printing a
// structured one-line message, and records it in the manifest.
template <typename Fn>
inline int guarded_command(const std::string& name, const CommonOptions& opts, Fn&& body) {
    int code = 0;
    std::string error_text;
    try {
        validate_layers(opts.layers);
        ensure_directory(opts.out_dir);
    } catch (const IoError& e) {
        std::cerr << kToolName << ": error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << kToolName << ": error: " << e.what() << '\n';
        return 1;
    }

    ManifestWriter manifest(name, opts);
    try {
        body(manifest);
    } catch (const IoError& e) {
        error_text = e.what();
        code = 2;
    } catch (const Error& e) {
        error_text = e.what();
        code = 1;
    } catch (const std::exception& e) {
        error_text = e.what();
        code = 2;
    }
    manifest.finish(code == 0 ? "ok" : "error", error_text);
    if (code != 0) {
        std::cerr << kToolName << ": error: " << error_text << '\n';
    }
    return code;
}

inline std::string path_stem(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

// Candidate generators for `sweep`. The candidate file is one object:
//   {"kind": "ring", "count": 12, "height_m": 2.5, "inset_m": 0.1}
//   {"kind": "line", "from": [..], "to": [..], "count": 5}
//   {"kind": "list", "points": [[..], ..]}
// Ring candidates walk the room perimeter counterclockwise from the
// (inset, inset) corner, evenly spaced by arc length.
inline std::vector<Vec3> parse_candidates(const std::string& text, const Vec3& room_dims) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw BadValue("candidates", e.what());
    }
    if (!doc.is_object()) {
        throw BadValue("candidates", "expected a JSON object");
    }
    const std::string kind =
        detail::as_string(detail::require_key(doc, "candidates", "kind"), "candidates.kind");

    std::vector<Vec3> points;
    if (kind == "list") {
        const json& list = detail::require_key(doc, "candidates", "points");
        if (!list.is_array()) {
            throw BadValue("candidates.points", "expected an array");
        }
        for (std::size_t i = 0; i < list.size(); ++i) {
            points.push_back(
                detail::as_vec3(list[i], "candidates.points[" + std::to_string(i) + "]"));
        }
    } else if (kind == "line") {
        const Vec3 from =
            detail::as_vec3(detail::require_key(doc, "candidates", "from"), "candidates.from");
        const Vec3 to =
            detail::as_vec3(detail::require_key(doc, "candidates", "to"), "candidates.to");
        const int count = detail::int_or(doc, "candidates", "count", 0);
        if (count < 1) {
            throw BadValue("candidates.count", "must be >= 1");
        }
        for (int i = 0; i < count; ++i) {
            const double t = count == 1 ? 0.5 : static_cast<double>(i) / (count - 1);
            points.push_back(from + (to - from) * t);
        }
    } else if (kind == "ring") {
        const int count = detail::int_or(doc, "candidates", "count", 0);
        if (count < 1) {
            throw BadValue("candidates.count", "must be >= 1");
        }
        const double height = detail::number_or(doc, "candidates", "height_m", 1.5);
        const double inset = detail::number_or(doc, "candidates", "inset_m", 0.1);
        const double w = room_dims.x - 2.0 * inset;
        const double d = room_dims.y - 2.0 * inset;
        if (!(w > 0.0) || !(d > 0.0)) {
            throw BadValue("candidates.inset_m", "inset leaves no perimeter");
        }
        const double perimeter = 2.0 * (w + d);
        for (int i = 0; i < count; ++i) {
            double s = perimeter * static_cast<double>(i) / count;
            double x = inset;
            double y = inset;
            if (s < w) {
                x = inset + s;
            } else if (s < w + d) {
                x = inset + w;
                y = inset + (s - w);
            } else if (s < 2.0 * w + d) {
                x = inset + w - (s - w - d);
                y = inset + d;
            } else {
                y = inset + d - (s - 2.0 * w - d);
            }
            points.push_back({x, y, height});
        }
    } else {
        throw BadValue("candidates.kind", "must be one of ring, line, list");
    }
    if (points.empty()) {
        throw BadValue("candidates", "empty candidate list");
    }
    return points;
}

}  // namespace detail

inline int cmd_run(const RunOptions& opts) {
    return detail::guarded_command("run", opts, [&](detail::ManifestWriter&) {
        Scenario sc = load_scenario_file(opts.scenario_path);
        detail::apply_overrides(sc, opts);
        const CoverageGrid grid =
            compute_coverage_grid(sc.scene, sc.donor, sc.repeater, sc.grid, sc.noise,
                                  sc.frequency_hz, sc.tracer, opts.threads);
        const bool los = line_of_sight(sc.donor.position, sc.repeater.position, sc.scene);
        const CaseStats stats =
            grid_case_stats(detail::path_stem(opts.scenario_path), grid, los);
        detail::write_grid_outputs(opts.out_dir, grid, stats, opts.layers, opts.heatmap);
    });
}

inline int cmd_cases(const CasesOptions& opts) {
    if (opts.case_paths.size() < 2) {
        std::cerr << kToolName << ": error: need >= 2 cases to compare\n";
        return 1;
    }
    return detail::guarded_command("cases", opts, [&](detail::ManifestWriter& manifest) {
        std::ifstream base_in(opts.scenario_path, std::ios::binary);
        if (!base_in) {
            throw BadValue(opts.scenario_path, "cannot open scenario file");
        }
        std::ostringstream base_buf;
        base_buf << base_in.rdbuf();
        const std::string base_text = base_buf.str();

        std::vector<CaseResult> results;
        results.reserve(opts.case_paths.size());
        for (const std::string& case_path : opts.case_paths) {
            std::ifstream in(case_path, std::ios::binary);
            if (!in) {
                throw BadValue(case_path, "cannot open case overlay file");
            }
            std::ostringstream buf;
            buf << in.rdbuf();
            CaseOverlay overlay =
                apply_case_overlay(base_text, buf.str(), detail::path_stem(case_path));
            Scenario sc = overlay.scenario;
            detail::apply_overrides(sc, opts);

            CaseResult result;
            result.name = overlay.name;
            result.grid = compute_coverage_grid(sc.scene, sc.donor, sc.repeater, sc.grid,
                                                sc.noise, sc.frequency_hz, sc.tracer,
                                                opts.threads);
            result.los_donor_repeater =
                line_of_sight(sc.donor.position, sc.repeater.position, sc.scene);
            results.push_back(std::move(result));
        }

        const CaseComparison cmp = compare_cases(results);
        for (std::size_t i = 0; i < results.size(); ++i) {
            const std::string case_dir = opts.out_dir + "/" + results[i].name;
            detail::ensure_directory(case_dir);
            detail::write_grid_outputs(case_dir, results[i].grid, cmp.stats[i], opts.layers,
                                       opts.heatmap);
        }
        const std::string cmp_path = opts.out_dir + "/summary.txt";
        std::ofstream cmp_out = open_output_file(cmp_path);
        write_cases_summary(cmp_out, cmp);
        finish_output_file(cmp_out, cmp_path);

        manifest.extra("cases", opts.case_paths);
        manifest.extra("winner", cmp.stats[cmp.winner].name);
    });
}

inline int cmd_sweep(const SweepOptions& opts) {
    if (opts.candidates_path.empty()) {
        std::cerr << kToolName << ": error: sweep requires --candidates\n";
        return 1;
    }
    return detail::guarded_command("sweep", opts, [&](detail::ManifestWriter& manifest) {
        Scenario sc = load_scenario_file(opts.scenario_path);
        detail::apply_overrides(sc, opts);

        std::ifstream in(opts.candidates_path, std::ios::binary);
        if (!in) {
            throw BadValue(opts.candidates_path, "cannot open candidates file");
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        const std::vector<Vec3> candidates = detail::parse_candidates(buf.str(), sc.room_dims);

        const std::vector<SweepEntry> entries =
            placement_sweep(sc.scene, sc.donor, sc.repeater, candidates, sc.grid, sc.noise,
                            sc.frequency_hz, sc.tracer, opts.threads);

        const std::string csv_path = opts.out_dir + "/sweep.csv";
        std::ofstream csv = open_output_file(csv_path);
        write_sweep_csv(csv, entries);
        finish_output_file(csv, csv_path);

        const std::string summary_path = opts.out_dir + "/summary.txt";
        std::ofstream summary = open_output_file(summary_path);
        write_sweep_summary(summary, entries);
        finish_output_file(summary, summary_path);

        manifest.extra("candidates", opts.candidates_path);
    });
}

}  // namespace wavetrace

#endif  // WAVETRACE_CLI_HPP
