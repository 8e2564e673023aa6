// Copyright 2026 The stochwave Authors
// SPDX-License-Identifier: Apache-2.0

#include "stochwave/stochastic_driver.hpp"

#include <algorithm>
#include <cmath>

#include "stochwave/stats.hpp"

namespace stochwave {
namespace {

void check_dt(double dt)
{
    if (!(dt > 0) || !std::isfinite(dt))
        throw ParameterError("time step must be positive, got " + std::to_string(dt));
}

template <class PerPath>
IsometryReport run_paths(const MartingaleDriver& driver, double t_final, std::size_t n_steps,
                         std::size_t n_paths, std::uint64_t seed, std::size_t workers,
                         PerPath per_path)
{
    if (t_final < 0)
        throw ParameterError("final time must be nonnegative");
    IsometryReport report;
    report.rhs = t_final * driver.covariance().trace();
    report.n_paths = n_paths;
    if (t_final == 0.0 || n_paths == 0)
        return report;
    if (n_steps == 0)
        throw ParameterError("need at least one time step");

    const double dt = t_final / static_cast<double>(n_steps);
    std::vector<double> values(n_paths);
    parallel_for(n_paths, workers, [&](std::size_t p) {
        RngStream stream(seed, p);
        values[p] = per_path(stream, dt);
    });
    auto est = estimate_mean(values);
    report.lhs_estimate = est.mean;
    report.std_error = est.std_error;
    return report;
}

}  // namespace

NuclearCovariance::NuclearCovariance(std::vector<double> variances) : q_(std::move(variances))
{
    for (double q : q_)
        if (!(q >= 0) || !std::isfinite(q))
            throw ParameterError("covariance eigenvalues must be finite and nonnegative");
}

NuclearCovariance NuclearCovariance::power_law(const SpectralGrid& grid, double q0, double r)
{
    if (!(q0 >= 0) || !std::isfinite(q0))
        throw ParameterError("noise amplitude q0 must be nonnegative");
    if (!(r > grid.dim()))
        throw ParameterError("noise decay r must exceed the dimension for a finite trace");
    std::vector<double> q(grid.size());
    for (std::size_t k = 0; k < q.size(); ++k)
        q[k] = q0 * std::pow(grid.eigenvalue(k), -0.5 * r);
    return NuclearCovariance(std::move(q));
}

double NuclearCovariance::trace() const
{
    double s = 0.0;
    for (double q : q_)
        s += q;
    return s;
}

MartingaleDriver MartingaleDriver::wiener(NuclearCovariance cov)
{
    return {NoiseKind::QWiener, std::move(cov), 0.0};
}

MartingaleDriver MartingaleDriver::poisson(NuclearCovariance cov, double rate)
{
    if (!(rate > 0) || !std::isfinite(rate))
        throw ParameterError("jump rate must be positive");
    return {NoiseKind::CompensatedPoisson, std::move(cov), rate};
}

SpectralField MartingaleDriver::sample_increment(double dt, RngStream& stream) const
{
    SpectralField out(size());
    sample_increment(dt, stream, out.coeffs());
    return out;
}

void MartingaleDriver::sample_increment(double dt, RngStream& stream,
                                        std::span<double> out) const
{
    check_dt(dt);
    if (out.size() != size())
        throw ShapeError("increment buffer does not match the covariance size");
    auto q = cov_.variances();

    if (kind_ == NoiseKind::QWiener)
    {
        for (std::size_t k = 0; k < q.size(); ++k)
            out[k] = std::sqrt(q[k] * dt) * stream.normal();
        return;
    }

    std::fill(out.begin(), out.end(), 0.0);
    const double half_width = std::sqrt(3.0);
    const auto jumps = stream.poisson(rate_ * dt);
    for (std::uint64_t j = 0; j < jumps; ++j)
        for (std::size_t k = 0; k < q.size(); ++k)
            out[k] += std::sqrt(q[k] / rate_) * stream.uniform(-half_width, half_width);
}

DiffusionMap DiffusionMap::parse(std::string_view name)
{
    if (name == "zero")
        return DiffusionMap(Kind::Zero);
    if (name == "one")
        return DiffusionMap(Kind::One);
    if (name == "clip")
        return DiffusionMap(Kind::Clip);
    if (name == "sin")
        return DiffusionMap(Kind::Sin);
    throw ParameterError("unknown diffusion '" + std::string(name) + "'");
}

std::string DiffusionMap::name() const
{
    switch (kind_)
    {
        case Kind::Zero: return "zero";
        case Kind::One: return "one";
        case Kind::Clip: return "clip";
        case Kind::Sin: return "sin";
    }
    return {};
}

double DiffusionMap::operator()(double u) const noexcept
{
    switch (kind_)
    {
        case Kind::Zero: return 0.0;
        case Kind::One: return 1.0;
        case Kind::Clip: return std::clamp(u, -1.0, 1.0);
        case Kind::Sin: return std::sin(u);
    }
    return 0.0;
}

double DiffusionMap::bound() const noexcept { return kind_ == Kind::Zero ? 0.0 : 1.0; }

double DiffusionMap::lipschitz() const noexcept { return is_constant() ? 0.0 : 1.0; }

SpectralField apply_diffusion(const DiffusionMap& sigma, const SpectralGrid& grid,
                              const SpectralField& u, const SpectralField& dM)
{
    grid.check(u, "u");
    grid.check(dM, "dM");
    if (sigma.kind() == DiffusionMap::Kind::One)
        return dM;
    if (sigma.kind() == DiffusionMap::Kind::Zero)
        return grid.zeros();

    auto un = grid.to_nodes(u);
    auto mn = grid.to_nodes(dM);
    for (std::size_t i = 0; i < un.size(); ++i)
        mn[i] *= sigma(un[i]);
    return grid.to_modes(mn);
}

double hs_norm_q(const DiffusionMap& sigma, const SpectralGrid& grid, const SpectralField& u,
                 const NuclearCovariance& cov)
{
    grid.check(u, "u");
    if (cov.size() != grid.size())
        throw ShapeError("covariance does not match the grid");

    auto un = grid.to_nodes(u);
    std::vector<double> weight(un.size());
    for (std::size_t i = 0; i < un.size(); ++i)
    {
        double s = sigma(un[i]);
        weight[i] = grid.cell_volume() * s * s;
    }

    double total = 0.0;
    auto q = cov.variances();
    for (std::size_t k = 0; k < q.size(); ++k)
    {
        if (q[k] == 0.0)
            continue;
        double sq = 0.0;
        for (std::size_t i = 0; i < un.size(); ++i)
        {
            double e = grid.basis_value(k, i);
            sq += weight[i] * e * e;
        }
        total += q[k] * sq;
    }
    return std::sqrt(total);
}

IsometryReport ito_isometry_check(const MartingaleDriver& driver, double t_final,
                                  std::size_t n_steps, std::size_t n_paths,
                                  std::uint64_t master_seed, std::size_t workers)
{
    return run_paths(driver, t_final, n_steps, n_paths, master_seed, workers,
                     [&](RngStream& stream, double dt) {
                         std::vector<double> m(driver.size(), 0.0);
                         std::vector<double> dm(driver.size());
                         for (std::size_t n = 0; n < n_steps; ++n)
                         {
                             driver.sample_increment(dt, stream, dm);
                             for (std::size_t k = 0; k < m.size(); ++k)
                                 m[k] += dm[k];
                         }
                         double s = 0.0;
                         for (double x : m)
                             s += x * x;
                         return s;
                     });
}

IsometryReport quadratic_variation_check(const MartingaleDriver& driver, double t_final,
                                         std::size_t n_steps, std::size_t n_paths,
                                         std::uint64_t master_seed, std::size_t workers)
{
    return run_paths(driver, t_final, n_steps, n_paths, master_seed, workers,
                     [&](RngStream& stream, double dt) {
                         std::vector<double> dm(driver.size());
                         double s = 0.0;
                         for (std::size_t n = 0; n < n_steps; ++n)
                         {
                             driver.sample_increment(dt, stream, dm);
                             for (double x : dm)
                                 s += x * x;
                         }
                         return s;
                     });
}

}  // namespace stochwave
