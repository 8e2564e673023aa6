// Copyright 2026 The stochwave Authors
// SPDX-License-Identifier: Apache-2.0

#include "stochwave/selftest.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "stochwave/report.hpp"
#include "stochwave/studies.hpp"

namespace stochwave {
namespace {

class Checker {
public:
    explicit Checker(std::ostream& os) : os_(os) {}

    void operator()(const std::string& name, bool ok, const std::string& detail = {})
    {
        os_ << (ok ? "PASS " : "FAIL ") << name;
        if (!detail.empty())
            os_ << "  (" << detail << ")";
        os_ << '\n';
        failures_ += ok ? 0 : 1;
    }

    int failures() const { return failures_; }

private:
    std::ostream& os_;
    int failures_ = 0;
};

std::vector<MonotoneGraph> builtin_graphs()
{
    return {MonotoneGraph::linear(1.0), MonotoneGraph::power(3.0), MonotoneGraph::cubic(),
            MonotoneGraph::sign(), MonotoneGraph::jump(2.0)};
}

void convex_analysis(Checker& check)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> xs(-10.0, 10.0);
    std::uniform_real_distribution<double> log_lambda(-3.0, 1.0);
    for (const auto& g : builtin_graphs())
    {
        bool contraction = true, monotone = true, lipschitz = true, member = true, envelope = true;
        for (int i = 0; i < 10000; ++i)
        {
            double x = xs(rng), y = xs(rng);
            YosidaScale lam{std::pow(10.0, log_lambda(rng))};
            if (x > y)
                std::swap(x, y);
            auto rx = resolve(g, lam, x);
            auto ry = resolve(g, lam, y);
            contraction &= std::abs(rx.resolvent - ry.resolvent) <= (y - x) * (1 + 1e-12) + 1e-14;
            monotone &= rx.yosida <= ry.yosida + 1e-12 * (1 + std::abs(ry.yosida));
            lipschitz &= std::abs(ry.yosida - rx.yosida) <= 2.0 / lam.value() * (y - x) + 1e-12;
            member &= g.section(rx.resolvent).contains(rx.yosida, 1e-10);
            double jl = moreau(g, lam, x);
            envelope &= jl >= 0 && jl <= g.potential_at(x) * (1 + 1e-12) + 1e-15;
        }
        check("graph " + g.name() + " resolvent contraction", contraction);
        check("graph " + g.name() + " yosida monotone", monotone);
        check("graph " + g.name() + " yosida 2/lambda-Lipschitz", lipschitz);
        check("graph " + g.name() + " yosida in beta(resolvent)", member);
        check("graph " + g.name() + " 0 <= j_lambda <= j", envelope);
    }
}

void spectral(Checker& check)
{
    std::mt19937_64 rng(11);
    std::normal_distribution<double> z;
    for (int dim : {1, 2})
    {
        SpectralGrid grid(dim, dim == 1 ? 64 : 16);
        std::vector<double> nodal(grid.size());
        for (auto& x : nodal)
            x = z(rng);
        auto modes = grid.to_modes(nodal);
        auto back = grid.to_nodes(modes);
        double err = 0;
        for (std::size_t i = 0; i < nodal.size(); ++i)
            err = std::max(err, std::abs(back[i] - nodal[i]));
        double parseval = std::abs(l2_norm(modes) - nodal_l2_norm(grid, nodal));
        std::string tag = "d=" + std::to_string(dim);
        check("spectral round trip " + tag, err < 1e-12);
        check("spectral Parseval " + tag, parseval < 1e-12 * (1 + l2_norm(modes)));

        auto a = apply_spectral(grid, apply_spectral(grid, modes, multiplier::smoother(0.1)),
                                multiplier::laplacian());
        auto b = apply_spectral(grid, modes, [](double mu) { return -mu / (1.0 + 0.1 * mu); });
        check("spectral multipliers compose " + tag, l2_norm(a - b) <= 1e-12 * l2_norm(b));
    }
}

void driver(Checker& check)
{
    SpectralGrid grid(1, 8);
    auto cov = NuclearCovariance::power_law(grid, 1.0, 2.0);
    for (auto drv : {MartingaleDriver::wiener(cov), MartingaleDriver::poisson(cov, 100.0)})
    {
        const int draws = 20000;
        const double dt = 0.01;
        RngStream stream(3, 0);
        double sum = 0, sum2 = 0, sum4 = 0;
        for (int i = 0; i < draws; ++i)
        {
            double x = drv.sample_increment(dt, stream)[0];
            sum += x;
            sum2 += x * x;
            sum4 += x * x * x * x;
        }
        double mean = sum / draws;
        double var = sum2 / draws;
        double se_mean = std::sqrt(var / draws);
        double se_var = std::sqrt((sum4 / draws - var * var) / draws);
        std::string tag = drv.kind() == NoiseKind::QWiener ? "wiener" : "poisson";
        check("driver " + tag + " mean zero", std::abs(mean) <= 3 * se_mean);
        check("driver " + tag + " variance q_k dt",
              std::abs(var - cov.variances()[0] * dt) <= 3 * se_var);
    }

    auto drv = MartingaleDriver::wiener(cov);
    RngStream s1(5, 9), s2(5, 9);
    check("driver reproducible streams",
          drv.sample_increment(0.1, s1) == drv.sample_increment(0.1, s2));
}

void solver(Checker& check)
{
    SolverConfig config;
    config.grid = SpectralGrid(1, 32);
    config.driver = MartingaleDriver::wiener(NuclearCovariance::power_law(config.grid, 1.0, 2.0));
    config.diffusion = DiffusionMap(DiffusionMap::Kind::Clip);
    config.t_final = 0.5;
    config.dt = 1e-3;
    config.record = {true, true};

    {
        SolverConfig linear = config;
        linear.graph = MonotoneGraph::linear(0.0);
        linear.diffusion = DiffusionMap(DiffusionMap::Kind::Zero);
        auto r = simulate_path(linear, 0);
        double e0 = r.trace.front().energy, worst = 0;
        for (const auto& row : r.trace)
            worst = std::max(worst, std::abs(row.energy - e0) / e0);
        check("solver linear energy conservation", worst < 1e-12);
    }

    auto r = simulate_path(config, 1);
    double res = duhamel_residual(r, config);
    check("solver Duhamel residual", res < 1e-9, "residual " + format_number(res));
    double ibp = integration_by_parts_residual(r, config.grid.basis(0), config.grid.basis(1));
    check("solver integration by parts", ibp < 1e-12);

    for (auto g : {MonotoneGraph::sign(), MonotoneGraph::jump(2.0)})
    {
        SolverConfig c = config;
        c.graph = g;
        c.lambda = 0.05;
        auto path = simulate_path(c, 2);
        bool positive = true;
        YosidaScale lam{c.lambda};
        for (const auto& s : path.states)
        {
            auto un = c.grid.to_nodes(s.u);
            double pair = 0;
            for (double x : un)
                pair += yosida(g, lam, x) * x;
            positive &= pair >= 0;
        }
        check("solver <beta_lambda(u), u> >= 0 for " + g.name(), positive);
    }
}

void harness(Checker& check)
{
    StudySpec spec;
    spec.base.grid = SpectralGrid(1, 16);
    spec.base.driver = MartingaleDriver::wiener(NuclearCovariance::power_law(spec.base.grid, 1.0, 2.0));
    spec.base.dt = 1e-2;
    spec.base.t_final = 0.2;
    spec.lambda_grid = {1e-1, 1e-2};
    spec.n_paths = 4;
    auto csv = [](const StudyReport& r) {
        std::ostringstream os;
        write_csv(os, r);
        return os.str();
    };
    auto first = csv(energy_study(spec));
    spec.workers = 3;
    auto second = csv(energy_study(spec));
    check("harness deterministic across worker counts", first == second);
}

}  // namespace

int run_selftest(std::ostream& os)
{
    Checker check(os);
    try
    {
        convex_analysis(check);
        spectral(check);
        driver(check);
        solver(check);
        harness(check);
    }
    catch (const std::exception& e)
    {
        check(std::string("unexpected error: ") + e.what(), false);
    }
    os << (check.failures() == 0 ? "selftest passed\n" : "selftest FAILED\n");
    return check.failures();
}

}  // namespace stochwave
