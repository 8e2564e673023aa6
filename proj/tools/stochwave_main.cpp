// Copyright 2026 The stochwave Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: one subcommand per study.
//
//   stochwave simulate    --config base.toml --seed 1
//   stochwave energy      --lambda-grid 1e-1,1e-2,1e-3
//   stochwave pairing | lambda-conv | isometry | selftest

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "stochwave/config.hpp"
#include "stochwave/report.hpp"
#include "stochwave/selftest.hpp"
#include "stochwave/studies.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

struct Options {
    std::string config;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> lambda_grid;
    std::optional<std::string> eps_grid;
    std::optional<std::uint64_t> n_paths;
    std::optional<std::uint64_t> workers;
    std::optional<std::uint64_t> path;
    std::optional<std::string> out;
};

stochwave::RunConfig load(const Options& opt)
{
    using namespace stochwave;
    ConfigEntries entries;
    if (!opt.config.empty())
        entries = load_config_file(opt.config);
    for (const auto& kv : opt.overrides)
    {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ConfigError(kv, "override must be key=value");
        entries.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (opt.seed)
        entries.set("study.seed", std::to_string(*opt.seed));
    if (opt.lambda_grid)
        entries.set("study.lambda_grid", *opt.lambda_grid);
    if (opt.eps_grid)
        entries.set("study.eps_grid", *opt.eps_grid);
    if (opt.n_paths)
        entries.set("study.n_paths", std::to_string(*opt.n_paths));
    if (opt.workers)
        entries.set("study.workers", std::to_string(*opt.workers));
    if (opt.path)
        entries.set("study.path", std::to_string(*opt.path));
    if (opt.out)
        entries.set("study.output", *opt.out);
    return build_run_config(entries);
}

std::ofstream open_output(const std::filesystem::path& path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw stochwave::IoError("cannot write '" + path.string() + "'");
    return os;
}

void run_simulate(const stochwave::RunConfig& run)
{
    using namespace stochwave;
    auto result = simulate_path(run.solver, run.study.path);
    const auto& dir = run.study.output_dir;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create output directory '" + dir.string() + "'");

    auto csv = open_output(dir / "simulate.csv");
    write_trace_csv(csv, result.trace);
    auto field = open_output(dir / "simulate_u.csv");
    write_field_csv(field, run.solver.grid, result.final_state.u);

    PlotSpec plot{"simulate (lambda=" + format_number(run.solver.lambda) + ")", "t", "value",
                  false, {}};
    PlotSeries e{"energy", {}, {}}, l{"lyapunov", {}, {}};
    for (const auto& row : result.trace)
    {
        e.x.push_back(row.t);
        e.y.push_back(row.energy);
        l.x.push_back(row.t);
        l.y.push_back(row.lyapunov);
    }
    plot.series = {e, l};
    auto svg = open_output(dir / "simulate.svg");
    write_svg(svg, plot);
}

}  // namespace

int main(int argc, char** argv)
{
    using namespace stochwave;

    CLI::App app{"Spectral Galerkin simulator for stochastic wave equations with monotone "
                 "nonlinearities"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", opt.config, "Config file (sectioned key=value)");
        sub->add_option("--set", opt.overrides, "Override a config entry, key=value");
        sub->add_option("--seed", opt.seed, "Master seed");
        sub->add_option("--lambda-grid", opt.lambda_grid, "Comma-separated descending lambdas");
        sub->add_option("--eps-grid", opt.eps_grid, "Comma-separated smoothing parameters");
        sub->add_option("--n-paths", opt.n_paths, "Monte Carlo paths");
        sub->add_option("--workers", opt.workers, "Worker threads");
        sub->add_option("-o,--out", opt.out, "Output directory");
    };

    auto* simulate = app.add_subcommand("simulate", "Simulate one path and dump its trace");
    add_common(simulate);
    simulate->add_option("--path", opt.path, "Path index");
    std::vector<CLI::App*> studies;
    for (const char* name : {"energy", "pairing", "lambda-conv", "isometry"})
    {
        studies.push_back(app.add_subcommand(name, std::string("Run the ") + name + " study"));
        add_common(studies.back());
    }
    auto* selftest = app.add_subcommand("selftest", "Run the built-in invariant suite");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try
    {
        if (selftest->parsed())
            return run_selftest(std::cout) == 0 ? 0 : 1;

        auto run = load(opt);
        if (simulate->parsed())
        {
            run_simulate(run);
            return 0;
        }

        auto spec = StudySpec::from(run);
        StudyReport report;
        if (studies[0]->parsed())
            report = energy_study(spec);
        else if (studies[1]->parsed())
            report = pairing_study(spec, run.study.eps_grid);
        else if (studies[2]->parsed())
            report = lambda_convergence_study(spec);
        else
            report = isometry_study(spec);

        for (const auto& row : report.rows)
            if (row.flagged())
                std::cerr << "warning: " << row.n_failed << " path(s) blew up in row "
                          << report.name << " " << format_number(row.params.front()) << '\n';
        write_report_files(run.study.output_dir, report);
        return 0;
    }
    catch (const ConfigError& e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    catch (const ParameterError& e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    catch (const NumericError& e)
    {
        std::cerr << "numeric abort: " << e.what() << '\n';
        return kExitNumeric;
    }
    catch (const IoError& e)
    {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
