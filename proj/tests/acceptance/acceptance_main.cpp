// Copyright 2026 The stochwave Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stochwave/monotone_graph.hpp"
#include "stochwave/report.hpp"
#include "stochwave/spectral_domain.hpp"
#include "stochwave/stochastic_driver.hpp"
#include "stochwave/studies.hpp"
#include "stochwave/wave_solver.hpp"

using namespace stochwave;
using std::numbers::pi;

namespace {

// Pinned tolerances.
constexpr double kMembershipTol = 1e-10;
constexpr double kFdStep = 1e-5;
constexpr double kFdTol = 1e-6;
constexpr double kConvexRuntime = 10.0;
constexpr double kOracleTol = 1e-12;
constexpr double kOracleRuntime = 5.0;
constexpr double kLinearTol = 1e-12;
constexpr double kIsometrySigmas = 3.0;
constexpr double kIsometryRelSe = 0.02;
constexpr double kIsometryRuntime = 30.0;
constexpr double kDuhamelTol = 1e-9;
constexpr double kChainOrder = 0.8;
constexpr double kEnergyRatio = 3.0;
constexpr double kEnergyRuntime = 60.0;
// max/min ratio of the four energy estimates in the pilot run (seed 42, 200 paths).
constexpr double kEnergyPilotRatio = 1.0074;
constexpr double kIbpTol = 1e-12;

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

SolverConfig desk_config()
{
    SolverConfig c;
    c.grid = SpectralGrid(1, 64);
    c.graph = MonotoneGraph::cubic();
    c.lambda = 1e-2;
    c.dt = 1e-3;
    c.t_final = 1.0;
    c.driver = MartingaleDriver::wiener(NuclearCovariance::power_law(c.grid, 1.0, 2.0));
    c.diffusion = DiffusionMap(DiffusionMap::Kind::Clip);
    c.initial = InitialData::parse("smooth:8");
    c.seed = 42;
    return c;
}

std::string csv(const StudyReport& r)
{
    std::ostringstream os;
    write_csv(os, r);
    return os.str();
}

double bisect_resolvent(double x, double lambda, const std::function<double(double)>& beta)
{
    double lo = std::min(0.0, x), hi = std::max(0.0, x);
    for (int i = 0; i < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(x)); ++i)
    {
        double mid = 0.5 * (lo + hi);
        if (mid + lambda * beta(mid) > x)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

Outcome convex_analysis()
{
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20260101);
    std::uniform_real_distribution<double> xs(-10.0, 10.0);
    std::uniform_real_distribution<double> log_lambda(-3.0, 1.0);
    std::size_t failures = 0;
    std::string first;
    for (const auto& g : {MonotoneGraph::linear(1.0), MonotoneGraph::power(3.0),
                          MonotoneGraph::cubic(), MonotoneGraph::sign(), MonotoneGraph::jump(2.0)})
    {
        for (int i = 0; i < 100000; ++i)
        {
            double x = xs(rng), y = xs(rng);
            YosidaScale lam{std::pow(10.0, log_lambda(rng))};
            auto rx = resolve(g, lam, x);
            auto ry = resolve(g, lam, y);
            const double d = std::abs(x - y);
            const double jl = moreau(g, lam, x);
            const double fd =
                (moreau(g, lam, x + kFdStep) - moreau(g, lam, x - kFdStep)) / (2 * kFdStep);
            const bool ok =
                std::abs(rx.resolvent - ry.resolvent) <= d + 1e-13
                && std::abs(rx.yosida - ry.yosida) <= 2.0 / lam.value() * d + 1e-12
                && (x - y) * (rx.yosida - ry.yosida) >= -1e-12 * (1 + std::abs(rx.yosida))
                && g.section(rx.resolvent).contains(rx.yosida, kMembershipTol) && jl >= 0
                && jl <= g.potential_at(x) * (1 + 1e-12) + 1e-15
                && std::abs(fd - rx.yosida) <= kFdTol;
            if (!ok && failures++ == 0)
                first = fmt(" first failure: %s x=%.17g lambda=%.17g", g.name().c_str(), x,
                            lam.value());
        }
    }
    double secs = seconds_since(t0);
    return {failures == 0 && secs < kConvexRuntime,
            fmt("5 graphs x 1e5 triples, %zu failures, %.2f s", failures, secs) + first};
}

Outcome resolvent_oracle()
{
    auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    auto cube = [](double y) { return y * y * y; };
    auto p3 = [](double y) { return y * std::abs(y); };
    for (const auto& [g, beta] :
         {std::pair{MonotoneGraph::cubic(), std::function<double(double)>(cube)},
          std::pair{MonotoneGraph::power(3.0), std::function<double(double)>(p3)}})
        for (double lam : {1e-3, 1e-1, 1.0, 10.0})
            for (int i = 0; i < 10000; ++i)
            {
                double x = -10.0 + 20.0 * i / 9999.0;
                worst = std::max(worst, std::abs(resolvent(g, YosidaScale{lam}, x)
                                                 - bisect_resolvent(x, lam, beta)));
            }
    double secs = seconds_since(t0);
    return {worst <= kOracleTol && secs < kOracleRuntime,
            fmt("max deviation %.3g (tol %.0e), %.2f s", worst, kOracleTol, secs)};
}

Outcome linear_propagation()
{
    SolverConfig c = desk_config();
    c.graph = MonotoneGraph::linear(0.0);
    c.diffusion = DiffusionMap(DiffusionMap::Kind::Zero);
    c.initial = InitialData::parse("smooth:64");
    c.t_final = 10.0;
    c.dt = 1e-3;
    auto r = simulate_path(c, 0);
    const double e0 = r.trace.front().energy;
    double drift = 0.0;
    for (const auto& row : r.trace)
        drift = std::max(drift, std::abs(row.energy - e0) / e0);

    // Each mode alone, 64 steps per period 2 pi / k.
    const auto& grid = c.grid;
    const auto zero = MonotoneGraph::linear(0.0);
    const DiffusionMap none(DiffusionMap::Kind::Zero);
    double period_err = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k)
    {
        GroupCache cache(grid, 2 * pi / std::sqrt(grid.eigenvalue(k)) / 64);
        WaveState s{grid.basis(k), grid.zeros()};
        s.v[k] = 0.5;
        const WaveState start = s;
        for (int n = 0; n < 64; ++n)
            s = step(grid, cache, s, zero, YosidaScale{1.0}, none, grid.zeros());
        for (std::size_t m = 0; m < grid.size(); ++m)
            period_err = std::max({period_err, std::abs(s.u[m] - start.u[m]),
                                   std::abs(s.v[m] - start.v[m]) / std::sqrt(grid.eigenvalue(k))});
    }
    return {drift <= kLinearTol && period_err <= kLinearTol,
            fmt("energy drift %.3g over 1e4 steps, worst period return %.3g", drift, period_err)};
}

Outcome isometry()
{
    SpectralGrid grid(1, 64);
    auto q = NuclearCovariance::power_law(grid, 1.0, 2.0);
    double target = 0.0;
    for (int k = 1; k <= 64; ++k)
        target += 1.0 / (k * k);
    bool pass = true;
    std::string detail;
    for (auto d : {MartingaleDriver::wiener(q), MartingaleDriver::poisson(q, 5.0)})
    {
        auto t0 = std::chrono::steady_clock::now();
        auto r = ito_isometry_check(d, 1.0, 100, 10000, 42);
        double secs = seconds_since(t0);
        bool ok = std::abs(r.lhs_estimate - target) <= kIsometrySigmas * r.std_error
                  && r.std_error <= kIsometryRelSe * target && secs < kIsometryRuntime
                  && std::abs(r.rhs - target) <= 1e-14;
        pass &= ok;
        detail += fmt("%s%s: %.5f vs %.5f, SE %.4f (%.2f%%), %.2f s",
                      detail.empty() ? "" : "; ",
                      d.kind() == NoiseKind::QWiener ? "wiener" : "poisson(5)", r.lhs_estimate,
                      target, r.std_error, 100 * r.std_error / target, secs);
    }
    return {pass, detail};
}

Outcome duhamel()
{
    double worst = 0.0;
    for (bool poisson : {false, true})
    {
        SolverConfig c = desk_config();
        c.record = {true, true};
        if (poisson)
            c.driver = MartingaleDriver::poisson(c.driver.covariance(), 5.0);
        for (std::uint64_t p = 0; p < 3; ++p)
            worst = std::max(worst, duhamel_residual(simulate_path(c, p), c));
    }
    return {worst <= kDuhamelTol,
            fmt("max residual %.3g over 6 stochastic paths (tol %.0e)", worst, kDuhamelTol)};
}

Outcome chain_rule()
{
    std::vector<double> gaps;
    for (double dt : {4e-3, 2e-3, 1e-3})
    {
        SolverConfig c = desk_config();
        c.diffusion = DiffusionMap(DiffusionMap::Kind::Zero);
        c.dt = dt;
        c.record = {true, false};
        gaps.push_back(chain_rule_check(simulate_path(c, 0), c).gap);
    }
    double o1 = std::log2(gaps[0] / gaps[1]);
    double o2 = std::log2(gaps[1] / gaps[2]);
    return {o1 >= kChainOrder && o2 >= kChainOrder,
            fmt("gaps %.3g, %.3g, %.3g; observed orders %.3f, %.3f", gaps[0], gaps[1], gaps[2],
                o1, o2)};
}

Outcome energy_bound()
{
    StudySpec spec;
    spec.base = desk_config();
    spec.lambda_grid = {1e-1, 1e-2, 1e-3, 1e-4};
    spec.n_paths = 200;
    spec.seed = 42;
    auto t0 = std::chrono::steady_clock::now();
    auto r = energy_study(spec);
    double secs = seconds_since(t0);
    double lo = INFINITY, hi = 0.0;
    bool clean = true;
    for (const auto& row : r.rows)
    {
        clean &= std::isfinite(row.estimate) && !row.flagged();
        lo = std::min(lo, row.estimate);
        hi = std::max(hi, row.estimate);
    }
    double ratio = hi / lo;
    return {clean && ratio <= kEnergyRatio && secs < kEnergyRuntime,
            fmt("estimates %.6f..%.6f, ratio %.4f (pilot %.4f, limit %.0f), %.2f s", lo, hi, ratio,
                kEnergyPilotRatio, kEnergyRatio, secs)};
}

Outcome lambda_cauchy()
{
    StudySpec spec;
    spec.base = desk_config();
    spec.lambda_grid = {1e-1, 5e-2, 2.5e-2, 1.25e-2, 6.25e-3};
    spec.n_paths = 200;
    spec.seed = 42;
    auto r = lambda_convergence_study(spec);
    bool pass = true;
    std::string detail;
    for (const char* metric : {"sup_l2_gap", "beta_l1_gap"})
    {
        std::vector<const ReportRow*> rows;
        for (const auto& row : r.rows)
            if (row.metric == metric)
                rows.push_back(&row);
        int inversions = 0;
        bool ok = rows.size() == 4;
        for (std::size_t j = 1; j < rows.size(); ++j)
        {
            if (rows[j]->estimate < rows[j - 1]->estimate)
                continue;
            ++inversions;
            ok &= rows[j]->estimate - rows[j - 1]->estimate
                  <= std::max(rows[j]->std_error, rows[j - 1]->std_error);
        }
        ok &= inversions <= 1;
        for (const auto* row : rows)
            ok &= std::isfinite(row->estimate) && !row->flagged();
        pass &= ok;
        detail += fmt("%s%s:", detail.empty() ? "" : "; ", metric);
        for (const auto* row : rows)
            detail += fmt(" %.3g", row->estimate);
    }
    return {pass, detail};
}

Outcome integration_by_parts()
{
    double worst = 0.0;
    std::size_t paths = 0;
    SpectralGrid grid(1, 16);
    auto cov = NuclearCovariance::power_law(grid, 1.0, 2.0);
    std::vector<std::pair<SpectralField, SpectralField>> pairs{
        {grid.basis(0), grid.basis(0)},
        {grid.basis(0) + 0.5 * grid.basis(1), grid.basis(2)},
        {grid.basis(3), grid.basis(1) - grid.basis(5)}};
    for (const char* graph : {"linear:1", "power:3", "cubic", "sign", "jump:2"})
        for (const char* sigma : {"zero", "one", "clip", "sin"})
            for (bool poisson : {false, true})
            {
                SolverConfig c;
                c.grid = grid;
                c.graph = MonotoneGraph::parse(graph);
                c.diffusion = DiffusionMap::parse(sigma);
                c.driver = poisson ? MartingaleDriver::poisson(cov, 5.0)
                                   : MartingaleDriver::wiener(cov);
                c.t_final = 0.25;
                c.dt = 1e-3;
                c.initial = InitialData::parse("random:6");
                c.record = {true, false};
                for (std::uint64_t p = 0; p < 4; ++p)
                {
                    auto r = simulate_path(c, p);
                    for (const auto& [phi, psi] : pairs)
                        worst = std::max(worst, integration_by_parts_residual(r, phi, psi));
                    ++paths;
                }
            }
    return {worst <= kIbpTol,
            fmt("max residual %.3g over %zu paths x 3 test-function pairs", worst, paths)};
}

Outcome determinism()
{
    StudySpec spec;
    spec.base = desk_config();
    spec.base.grid = SpectralGrid(1, 32);
    spec.base.driver =
        MartingaleDriver::poisson(NuclearCovariance::power_law(spec.base.grid, 1.0, 2.0), 5.0);
    spec.base.t_final = 0.25;
    spec.lambda_grid = {1e-1, 1e-2, 1e-3};
    spec.n_paths = 12;

    auto all = [&](std::size_t workers) {
        StudySpec s = spec;
        s.workers = workers;
        std::ostringstream trace;
        write_trace_csv(trace, simulate_path(s.base, 5).trace);
        return std::vector<std::string>{csv(energy_study(s)), csv(pairing_study(s, {1e-2, 0.0})),
                                        csv(lambda_convergence_study(s)), csv(isometry_study(s)),
                                        trace.str()};
    };
    auto a = all(1), b = all(1), c = all(4);
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        mismatches += (a[i] != b[i]) + (a[i] != c[i]);
    return {mismatches == 0,
            fmt("5 outputs, repeated and with 4 workers: %zu mismatches", mismatches)};
}

}  // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"convex-analysis suite", convex_analysis},
        {"resolvent oracle equivalence", resolvent_oracle},
        {"exact linear propagation", linear_propagation},
        {"Ito isometry", isometry},
        {"Duhamel residual", duhamel},
        {"chain-rule identity", chain_rule},
        {"uniform-in-lambda energy bound", energy_bound},
        {"lambda-Cauchy decay", lambda_cauchy},
        {"discrete integration by parts", integration_by_parts},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i)
    {
        Outcome o;
        try
        {
            o = criteria[i].second();
        }
        catch (const std::exception& e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s [%2zu] %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
