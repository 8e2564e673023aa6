// Copyright 2026 The stochwave Authors
// SPDX-License-Identifier: Apache-2.0

#include "stochwave/studies.hpp"

#include <cmath>
#include <optional>

#include "stochwave/stats.hpp"

namespace stochwave {
namespace {

ReportRow summarize(std::vector<double> params, const std::vector<std::optional<double>>& values,
                    std::string metric = {})
{
    std::vector<double> ok;
    ok.reserve(values.size());
    for (const auto& v : values)
        if (v)
            ok.push_back(*v);
    auto est = estimate_mean(ok);
    ReportRow row;
    row.params = std::move(params);
    row.metric = std::move(metric);
    row.estimate = ok.empty() ? std::nan("") : est.mean;
    row.std_error = est.std_error;
    row.n_paths = ok.size();
    row.n_failed = values.size() - ok.size();
    return row;
}

SolverConfig with_lambda(const SolverConfig& base, double lambda)
{
    SolverConfig c = base;
    c.lambda = lambda;
    return c;
}

}  // namespace

StudySpec StudySpec::from(const RunConfig& run)
{
    StudySpec spec;
    spec.base = run.solver;
    spec.base.seed = run.study.seed;
    spec.lambda_grid = run.study.lambda_grid;
    spec.n_paths = run.study.n_paths;
    spec.seed = run.study.seed;
    spec.workers = run.study.workers;
    return spec;
}

void StudySpec::validate() const
{
    if (lambda_grid.empty())
        throw ParameterError("lambda grid is empty");
    for (std::size_t j = 0; j < lambda_grid.size(); ++j)
    {
        YosidaScale{lambda_grid[j]};
        if (j > 0 && lambda_grid[j] > lambda_grid[j - 1])
            throw ParameterError("lambda grid must be descending");
    }
    if (n_paths < 1)
        throw ParameterError("need at least one path");
    base.validate();
}

StudyReport energy_study(const StudySpec& spec)
{
    spec.validate();
    const std::size_t n_lambda = spec.lambda_grid.size();
    std::vector<SolverConfig> configs;
    for (double lam : spec.lambda_grid)
    {
        configs.push_back(with_lambda(spec.base, lam));
        configs.back().seed = spec.seed;
        configs.back().record = {};
    }

    std::vector<std::optional<double>> sup(n_lambda * spec.n_paths);
    parallel_for(sup.size(), spec.workers, [&](std::size_t slot) {
        std::size_t j = slot / spec.n_paths;
        std::size_t p = slot % spec.n_paths;
        try
        {
            sup[slot] = simulate_path(configs[j], p).functionals.sup_energy;
        }
        catch (const NumericError&)
        {
        }
    });

    StudyReport report{"energy", {"lambda"}, false, {}};
    for (std::size_t j = 0; j < n_lambda; ++j)
    {
        std::vector<std::optional<double>> values(sup.begin() + j * spec.n_paths,
                                                  sup.begin() + (j + 1) * spec.n_paths);
        report.rows.push_back(summarize({spec.lambda_grid[j]}, values));
    }
    return report;
}

StudyReport pairing_study(const StudySpec& spec, const std::vector<double>& eps_grid)
{
    spec.validate();
    if (eps_grid.empty())
        throw ParameterError("smoothing grid is empty");
    for (double eps : eps_grid)
        if (!(eps >= 0))
            throw ParameterError("smoothing parameters must be nonnegative");

    const std::size_t n_lambda = spec.lambda_grid.size();
    const std::size_t n_eps = eps_grid.size();
    const auto& grid = spec.base.grid;

    // values[(j * n_paths + p) * n_eps + e]
    std::vector<std::optional<double>> values(n_lambda * spec.n_paths * n_eps);
    parallel_for(n_lambda * spec.n_paths, spec.workers, [&](std::size_t slot) {
        std::size_t j = slot / spec.n_paths;
        std::size_t p = slot % spec.n_paths;
        SolverConfig config = with_lambda(spec.base, spec.lambda_grid[j]);
        config.seed = spec.seed;
        config.record = {};
        const YosidaScale lambda{config.lambda};
        const double dt = config.dt;

        std::vector<double> acc(n_eps, 0.0);
        std::vector<double> nodes(grid.size());
        SpectralField resolvent_modes = grid.zeros();
        auto observer = [&](std::size_t, const WaveState& state, const StepRecord& rec) {
            for (std::size_t e = 0; e < n_eps; ++e)
            {
                const double eps = eps_grid[e];
                if (eps == 0.0)
                {
                    acc[e] += dt * rec.pairing;
                    continue;
                }
                auto smooth = multiplier::smoother(eps);
                auto u_eps = apply_spectral(grid, state.u, smooth);
                grid.to_nodes(u_eps.coeffs(), nodes);
                for (auto& x : nodes)
                    x = resolvent(config.graph, lambda, x);
                grid.to_modes(nodes, resolvent_modes.coeffs());
                acc[e] += dt * dot(resolvent_modes, apply_spectral(grid, rec.beta_modes, smooth));
            }
        };
        try
        {
            simulate_path(config, p, observer);
            for (std::size_t e = 0; e < n_eps; ++e)
                values[slot * n_eps + e] = acc[e];
        }
        catch (const NumericError&)
        {
        }
    });

    StudyReport report{"pairing", {"lambda", "eps"}, false, {}};
    for (std::size_t j = 0; j < n_lambda; ++j)
        for (std::size_t e = 0; e < n_eps; ++e)
        {
            std::vector<std::optional<double>> column(spec.n_paths);
            for (std::size_t p = 0; p < spec.n_paths; ++p)
                column[p] = values[(j * spec.n_paths + p) * n_eps + e];
            report.rows.push_back(summarize({spec.lambda_grid[j], eps_grid[e]}, column));
        }
    return report;
}

StudyReport lambda_convergence_study(const StudySpec& spec)
{
    spec.validate();
    if (spec.lambda_grid.size() < 2)
        throw ParameterError("lambda convergence needs at least two lambdas");

    const std::size_t n_lambda = spec.lambda_grid.size();
    const std::size_t n_pairs = n_lambda - 1;
    const auto& grid = spec.base.grid;

    // gaps[(p * n_pairs + j) * kMetrics + m], m indexing kGapMetrics
    constexpr std::size_t kMetrics = 4;
    static constexpr const char* kGapMetrics[kMetrics] = {"sup_l2_gap", "beta_l1_gap",
                                                          "beta_hm2_gap", "beta_hm3_gap"};
    std::vector<std::optional<double>> gaps(spec.n_paths * n_pairs * kMetrics);
    parallel_for(spec.n_paths, spec.workers, [&](std::size_t p) {
        std::vector<std::optional<PathResult>> runs(n_lambda);
        for (std::size_t j = 0; j < n_lambda; ++j)
        {
            SolverConfig config = with_lambda(spec.base, spec.lambda_grid[j]);
            config.seed = spec.seed;
            config.record = {true, false};
            try
            {
                runs[j] = simulate_path(config, p);
            }
            catch (const NumericError&)
            {
            }
        }

        std::optional<std::uint64_t> hash;
        for (const auto& r : runs)
        {
            if (!r)
                continue;
            if (hash && *hash != r->increment_hash)
                throw NumericError("coupled paths used different noise increments");
            hash = r->increment_hash;
        }

        const double dt = spec.base.dt;
        for (std::size_t j = 0; j < n_pairs; ++j)
        {
            const auto& a = runs[j];
            const auto& b = runs[j + 1];
            if (!a || !b)
                continue;
            double sup_gap = 0.0;
            for (std::size_t n = 0; n < a->states.size(); ++n)
                sup_gap = std::max(sup_gap, l2_norm(a->states[n].u - b->states[n].u));

            double l1 = 0.0, hm2 = 0.0, hm3 = 0.0;
            for (std::size_t n = 0; n < a->beta.size(); ++n)
            {
                auto diff = a->beta[n] - b->beta[n];
                double s = 0.0;
                for (double d : grid.to_nodes(diff))
                    s += std::abs(d);
                l1 += dt * grid.cell_volume() * s;
                hm2 += dt * norm(grid, diff, -2.0);
                hm3 += dt * norm(grid, diff, -3.0);
            }
            auto* out = &gaps[(p * n_pairs + j) * kMetrics];
            out[0] = sup_gap;
            out[1] = l1;
            out[2] = hm2;
            out[3] = hm3;
        }
    });

    StudyReport report{"lambda-conv", {"lambda", "lambda_next"}, true, {}};
    for (std::size_t j = 0; j < n_pairs; ++j)
        for (std::size_t m = 0; m < kMetrics; ++m)
        {
            std::vector<std::optional<double>> column(spec.n_paths);
            for (std::size_t p = 0; p < spec.n_paths; ++p)
                column[p] = gaps[(p * n_pairs + j) * kMetrics + m];
            report.rows.push_back(summarize({spec.lambda_grid[j], spec.lambda_grid[j + 1]}, column,
                                            kGapMetrics[m]));
        }
    return report;
}

StudyReport isometry_study(const StudySpec& spec)
{
    spec.validate();
    const auto& base = spec.base;
    StudyReport report{"isometry", {"t_final", "target"}, true, {}};
    auto add = [&](const IsometryReport& r, const char* metric) {
        ReportRow row;
        row.params = {base.t_final, r.rhs};
        row.metric = metric;
        row.estimate = r.lhs_estimate;
        row.std_error = r.std_error;
        row.n_paths = r.n_paths;
        report.rows.push_back(row);
    };
    add(ito_isometry_check(base.driver, base.t_final, base.n_steps(), spec.n_paths, spec.seed,
                           spec.workers),
        "ito_isometry");
    add(quadratic_variation_check(base.driver, base.t_final, base.n_steps(), spec.n_paths,
                                  spec.seed, spec.workers),
        "quadratic_variation");

    // Z1 = <u, e_1 + e_2 / 2>, Z2 = <v, e_1>.
    const auto& grid = base.grid;
    SpectralField phi = grid.basis(0);
    if (grid.size() > 1)
        phi[1] = 0.5;
    SpectralField psi = grid.basis(0);

    std::vector<std::optional<double>> residual(spec.n_paths);
    parallel_for(spec.n_paths, spec.workers, [&](std::size_t p) {
        SolverConfig config = base;
        config.seed = spec.seed;
        config.lambda = spec.lambda_grid.front();
        config.record = {true, false};
        try
        {
            residual[p] = integration_by_parts_residual(simulate_path(config, p), phi, psi);
        }
        catch (const NumericError&)
        {
        }
    });
    ReportRow ibp;
    ibp.params = {base.t_final, 0.0};
    ibp.metric = "integration_by_parts";
    for (const auto& r : residual)
    {
        if (r)
        {
            ibp.estimate = std::max(ibp.estimate, *r);
            ++ibp.n_paths;
        }
        else
        {
            ++ibp.n_failed;
        }
    }
    report.rows.push_back(ibp);
    return report;
}

}  // namespace stochwave
