// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the wavetrace authors
//
// `wavetrace` executable: argument parsing and dispatch. All real work
// lives in the headers so it stays testable without a process spawn.

#include <string>

#include "CLI11.hpp"

#include "wavetrace/cli.hpp"
#include "wavetrace/version.hpp"

namespace {

// CLI handles for the two optional overrides, resolved after parsing
// so "flag absent" and "flag at its default value" stay distinct.
struct OverrideOptions {
    int max_reflections = 2;
    double resolution_m = 0.05;
    CLI::Option* max_reflections_opt = nullptr;
    CLI::Option* resolution_opt = nullptr;

    void resolve(wavetrace::CommonOptions& opts) const {
        if (max_reflections_opt->count() > 0) {
            opts.max_reflections = max_reflections;
        }
        if (resolution_opt->count() > 0) {
            opts.resolution_m = resolution_m;
        }
    }
};

void add_common_options(CLI::App* cmd, wavetrace::CommonOptions& opts, OverrideOptions& over) {
    cmd->add_option("--scenario", opts.scenario_path, "scenario JSON file")->required();
    cmd->add_option("--out", opts.out_dir, "output directory (created if absent)")->required();
    cmd->add_option("--layers", opts.layers,
                    "layers to emit: sir, sinr, snr, p_signal, p_interf")
        ->delimiter(',');
    cmd->add_flag("--heatmap", opts.heatmap, "also write one PGM heatmap per layer");
    over.max_reflections_opt = cmd->add_option(
        "--max-reflections", over.max_reflections,
        "override the scenario's reflection order (0-3)");
    over.resolution_opt = cmd->add_option(
        "--resolution", over.resolution_m,
        "override the scenario's grid resolution in meters");
    cmd->add_option("--threads", opts.threads, "worker threads, 0 = auto (speed only)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic indoor coverage simulator (ray tracing)", "wavetrace"};
    app.set_version_flag("--version",
                         std::string(wavetrace::kToolName) + " " + wavetrace::kVersion);
    app.require_subcommand(1);

    wavetrace::RunOptions run_opts;
    OverrideOptions run_over;
    CLI::App* run = app.add_subcommand("run", "evaluate one scenario onto coverage grids");
    add_common_options(run, run_opts, run_over);

    wavetrace::CasesOptions cases_opts;
    OverrideOptions cases_over;
    CLI::App* cases = app.add_subcommand("cases", "compare node-placement cases");
    add_common_options(cases, cases_opts, cases_over);
    cases->add_option("--case", cases_opts.case_paths,
                      "case overlay JSON file (repeat; >= 2 required)")
        ->take_all();

    wavetrace::SweepOptions sweep_opts;
    OverrideOptions sweep_over;
    CLI::App* sweep = app.add_subcommand("sweep", "rank candidate repeater positions");
    add_common_options(sweep, sweep_opts, sweep_over);
    sweep->add_option("--candidates", sweep_opts.candidates_path,
                      "candidate positions JSON file")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (run->parsed()) {
        run_over.resolve(run_opts);
        return wavetrace::cmd_run(run_opts);
    }
    if (cases->parsed()) {
        cases_over.resolve(cases_opts);
        return wavetrace::cmd_cases(cases_opts);
    }
    sweep_over.resolve(sweep_opts);
    return wavetrace::cmd_sweep(sweep_opts);
}
