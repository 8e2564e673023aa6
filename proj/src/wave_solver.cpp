// Copyright 2026 The stochwave Authors
// SPDX-License-Identifier: Apache-2.0

#include "stochwave/wave_solver.hpp"

#include <charconv>
#include <cmath>

#include "stochwave/rng.hpp"

namespace stochwave {
namespace {

std::size_t parse_count(std::string_view text, std::string_view spec)
{
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0)
        throw ParameterError("invalid mode count in '" + std::string(spec) + "'");
    return value;
}

bool all_finite(std::span<const double> xs)
{
    for (double x : xs)
        if (!std::isfinite(x))
            return false;
    return true;
}

double moreau_integral(const SpectralGrid& grid, const SpectralField& u,
                       const MonotoneGraph& graph, YosidaScale lambda)
{
    double s = 0.0;
    for (double x : grid.to_nodes(u))
        s += moreau(graph, lambda, x);
    return grid.cell_volume() * s;
}

}  // namespace

GroupCache::GroupCache(const SpectralGrid& grid, double dt) : dt_(dt)
{
    if (!(dt > 0) || !std::isfinite(dt))
        throw ParameterError("time step must be positive");
    auto mu = grid.eigenvalues();
    cos_.resize(mu.size());
    sinc_.resize(mu.size());
    msin_.resize(mu.size());
    for (std::size_t k = 0; k < mu.size(); ++k)
    {
        double omega = std::sqrt(mu[k]);
        double s = std::sin(omega * dt);
        cos_[k] = std::cos(omega * dt);
        sinc_[k] = s / omega;
        msin_[k] = -omega * s;
    }
}

void GroupCache::rotate(WaveState& state) const
{
    auto& u = state.u;
    auto& v = state.v;
    if (u.size() != cos_.size() || v.size() != cos_.size())
        throw ShapeError("state does not match the group cache");
    for (std::size_t k = 0; k < cos_.size(); ++k)
    {
        double uk = u[k];
        double vk = v[k];
        u[k] = cos_[k] * uk + sinc_[k] * vk;
        v[k] = msin_[k] * uk + cos_[k] * vk;
    }
}

InitialData InitialData::parse(std::string_view spec)
{
    InitialData init;
    if (spec == "zero")
    {
        init.kind = Kind::Zero;
        init.modes = 0;
        return init;
    }
    auto colon = spec.find(':');
    if (colon == std::string_view::npos)
        throw ParameterError("initial data must be 'smooth:K', 'random:K' or 'zero'");
    auto head = spec.substr(0, colon);
    if (head == "smooth")
        init.kind = Kind::Smooth;
    else if (head == "random")
        init.kind = Kind::Random;
    else
        throw ParameterError("unknown initial data '" + std::string(spec) + "'");
    init.modes = parse_count(spec.substr(colon + 1), spec);
    return init;
}

std::string InitialData::name() const
{
    if (kind == Kind::Zero)
        return "zero";
    return (kind == Kind::Smooth ? "smooth:" : "random:") + std::to_string(modes);
}

WaveState make_initial_state(const SpectralGrid& grid, const InitialData& init,
                             std::uint64_t master_seed, std::uint64_t path_index)
{
    WaveState s{grid.zeros(), grid.zeros()};
    if (init.kind == InitialData::Kind::Zero)
        return s;
    RngStream stream(master_seed, path_index, RngStream::kInitialData);
    for (std::size_t idx = 0; idx < grid.size(); ++idx)
    {
        auto [k1, k2] = grid.multi_index(idx);
        if (k1 > init.modes || (grid.dim() == 2 && k2 > init.modes))
            continue;
        double inv_mu = 1.0 / grid.eigenvalue(idx);
        s.u[idx] = init.kind == InitialData::Kind::Smooth ? inv_mu : inv_mu * stream.normal();
    }
    return s;
}

RecordFlags RecordFlags::parse(std::string_view spec)
{
    RecordFlags flags;
    while (!spec.empty())
    {
        auto cut = spec.find_first_of("|,");
        auto item = spec.substr(0, cut);
        if (item == "states")
            flags.states = true;
        else if (item == "increments")
            flags.increments = true;
        else if (item != "functionals" && !item.empty())
            throw ParameterError("unknown record flag '" + std::string(item) + "'");
        spec = cut == std::string_view::npos ? std::string_view{} : spec.substr(cut + 1);
    }
    return flags;
}

void SolverConfig::validate() const
{
    YosidaScale{lambda};
    if (!(dt > 0) || !std::isfinite(dt))
        throw ParameterError("dt must be positive");
    if (!(t_final >= dt))
        throw ParameterError("t_final must be at least dt");
    double steps = t_final / dt;
    if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps))
        throw ParameterError("t_final must be an integer multiple of dt");
    if (driver.size() != grid.size())
        throw ShapeError("noise covariance has " + std::to_string(driver.size())
                         + " modes, grid has " + std::to_string(grid.size()));
}

std::size_t SolverConfig::n_steps() const
{
    return static_cast<std::size_t>(std::llround(t_final / dt));
}

Stepper::Stepper(const SpectralGrid& grid, const GroupCache& cache, const MonotoneGraph& graph,
                 YosidaScale lambda, const DiffusionMap& diffusion)
    : grid_(grid), cache_(cache), graph_(graph), lambda_(lambda), diffusion_(diffusion)
{
    const auto n = grid.size();
    rec_.u_nodes.resize(n);
    rec_.resolvent_nodes.resize(n);
    rec_.beta_nodes.resize(n);
    rec_.beta_modes = grid.zeros();
    scratch_.resize(n);
    noise_ = grid.zeros();
}

const StepRecord& Stepper::evaluate(const WaveState& state)
{
    grid_.check(state.u, "u");
    grid_.check(state.v, "v");
    grid_.to_nodes(state.u.coeffs(), rec_.u_nodes);

    const double lam = lambda_.value();
    double jl = 0.0;
    double pair = 0.0;
    for (std::size_t i = 0; i < rec_.u_nodes.size(); ++i)
    {
        auto r = resolve(graph_, lambda_, rec_.u_nodes[i]);
        rec_.resolvent_nodes[i] = r.resolvent;
        rec_.beta_nodes[i] = r.yosida;
        jl += graph_.potential_at(r.resolvent) + 0.5 * lam * r.yosida * r.yosida;
        pair += r.yosida * r.resolvent;
    }
    rec_.moreau_integral = grid_.cell_volume() * jl;
    rec_.pairing = grid_.cell_volume() * pair;
    grid_.to_modes(rec_.beta_nodes, rec_.beta_modes.coeffs());
    return rec_;
}

const SpectralField& Stepper::advance(WaveState& state, std::span<const double> dM)
{
    if (dM.size() != grid_.size())
        throw ShapeError("noise increment does not match the grid");

    switch (diffusion_.kind())
    {
        case DiffusionMap::Kind::Zero:
            std::fill(noise_.coeffs().begin(), noise_.coeffs().end(), 0.0);
            break;
        case DiffusionMap::Kind::One:
            std::copy(dM.begin(), dM.end(), noise_.coeffs().begin());
            break;
        default:
            grid_.to_nodes(dM, scratch_);
            for (std::size_t i = 0; i < scratch_.size(); ++i)
                scratch_[i] *= diffusion_(rec_.u_nodes[i]);
            grid_.to_modes(scratch_, noise_.coeffs());
    }

    const double dt = cache_.dt();
    auto& v = state.v;
    for (std::size_t k = 0; k < v.size(); ++k)
        v[k] += noise_[k] - dt * rec_.beta_modes[k];
    cache_.rotate(state);
    return noise_;
}

WaveState step(const SpectralGrid& grid, const GroupCache& cache, const WaveState& state,
               const MonotoneGraph& graph, YosidaScale lambda, const DiffusionMap& diffusion,
               const SpectralField& dM)
{
    Stepper stepper(grid, cache, graph, lambda, diffusion);
    WaveState next = state;
    stepper.evaluate(next);
    stepper.advance(next, dM.coeffs());
    if (!all_finite(next.u.coeffs()) || !all_finite(next.v.coeffs()))
        throw NumericError("non-finite state", 1);
    return next;
}

double energy(const SpectralGrid& grid, const WaveState& state)
{
    double g = gradient_seminorm(grid, state.u);
    return g * g + dot(state.v, state.v);
}

double lyapunov(const SpectralGrid& grid, const WaveState& state, const MonotoneGraph& graph,
                YosidaScale lambda)
{
    return energy(grid, state) + 2.0 * moreau_integral(grid, state.u, graph, lambda);
}

PathResult simulate_path(const SolverConfig& config, std::uint64_t path_index,
                         const PathObserver& observer)
{
    config.validate();
    const auto& grid = config.grid;
    const std::size_t n_steps = config.n_steps();
    const double dt = config.dt;

    GroupCache cache(grid, dt);
    Stepper stepper(grid, cache, config.graph, YosidaScale{config.lambda}, config.diffusion);
    RngStream stream(config.seed, path_index, RngStream::kNoise);
    StreamHash hash;

    PathResult result;
    result.times.resize(n_steps + 1);
    for (std::size_t n = 0; n <= n_steps; ++n)
        result.times[n] = static_cast<double>(n) * dt;
    result.trace.reserve(n_steps + 1);
    if (config.record.states)
    {
        result.states.reserve(n_steps + 1);
        result.beta.reserve(n_steps);
    }
    if (config.record.increments)
        result.increments.reserve(n_steps);

    WaveState state = make_initial_state(grid, config.initial, config.seed, path_index);
    auto& fn = result.functionals;
    SpectralField dM = grid.zeros();

    auto push_trace = [&](std::size_t n, const StepRecord& rec) {
        double e = energy(grid, state);
        if (!std::isfinite(e) || e > kBlowUpEnergy)
            throw NumericError("path blew up: energy " + std::to_string(e), n);
        fn.sup_energy = std::max(fn.sup_energy, e);
        double l2u = l2_norm(state.u);
        result.trace.push_back({result.times[n], e, e + 2.0 * rec.moreau_integral, l2u,
                                norm(grid, state.u, 1.0), l2_norm(state.v), fn.pairing});
        if (config.record.states)
            result.states.push_back(state);
    };

    const StepRecord* rec = &stepper.evaluate(state);
    const double initial_moreau = rec->moreau_integral;
    push_trace(0, *rec);

    for (std::size_t n = 0; n < n_steps; ++n)
    {
        if (observer)
            observer(n, state, *rec);

        config.driver.sample_increment(dt, stream, dM.coeffs());
        hash.update(dM.coeffs());
        if (config.record.increments)
            result.increments.push_back(dM);
        if (config.record.states)
            result.beta.push_back(rec->beta_modes);

        fn.pairing += dt * rec->pairing;
        fn.chain_lhs += dt * dot(rec->beta_modes, state.v);

        stepper.advance(state, dM.coeffs());
        if (!all_finite(state.u.coeffs()) || !all_finite(state.v.coeffs()))
            throw NumericError("non-finite state", n + 1);
        rec = &stepper.evaluate(state);
        if (!std::isfinite(rec->moreau_integral))
            throw NumericError("non-finite nonlinearity", n + 1);
        push_trace(n + 1, *rec);
    }

    fn.chain_rhs = rec->moreau_integral - initial_moreau;
    result.increment_hash = hash.value();
    result.final_state = std::move(state);
    return result;
}

double duhamel_residual(const PathResult& result, const SolverConfig& config)
{
    const std::size_t n_steps = result.times.empty() ? 0 : result.times.size() - 1;
    if (result.states.size() != n_steps + 1 || result.beta.size() != n_steps
        || result.increments.size() != n_steps)
    {
        throw UsageError("Duhamel residual needs recorded states and increments");
    }
    const auto& grid = config.grid;
    const double dt = config.dt;
    const std::size_t m = grid.size();
    const auto& u0 = result.states.front().u;
    const auto& v0 = result.states.front().v;

    std::vector<double> omega(m);
    for (std::size_t k = 0; k < m; ++k)
        omega[k] = std::sqrt(grid.eigenvalue(k));

    // A_c = sum_m cos(omega t_m) f_m,  A_s = sum_m sin(omega t_m) f_m, with
    // sin(omega (t_n - t_m)) = sin(omega t_n) cos(omega t_m) - cos(omega t_n) sin(omega t_m).
    std::vector<double> acc_cos(m, 0.0);
    std::vector<double> acc_sin(m, 0.0);
    double worst = 0.0;

    for (std::size_t n = 0; n <= n_steps; ++n)
    {
        const double t = result.times[n];
        double sq = 0.0;
        for (std::size_t k = 0; k < m; ++k)
        {
            const double c = std::cos(omega[k] * t);
            const double s = std::sin(omega[k] * t);
            const double rebuilt =
                c * u0[k] + s / omega[k] * v0[k] + (s * acc_cos[k] - c * acc_sin[k]) / omega[k];
            const double diff = result.states[n].u[k] - rebuilt;
            sq += diff * diff;
        }
        worst = std::max(worst, std::sqrt(sq));
        if (n == n_steps)
            break;

        auto forcing = apply_diffusion(config.diffusion, grid, result.states[n].u,
                                       result.increments[n]);
        for (std::size_t k = 0; k < m; ++k)
        {
            const double f = forcing[k] - dt * result.beta[n][k];
            acc_cos[k] += std::cos(omega[k] * t) * f;
            acc_sin[k] += std::sin(omega[k] * t) * f;
        }
    }
    return worst;
}

ChainRuleReport chain_rule_check(const PathResult& result, const SolverConfig& config)
{
    const std::size_t n_steps = result.times.empty() ? 0 : result.times.size() - 1;
    if (result.states.size() != n_steps + 1 || result.beta.size() != n_steps)
        throw UsageError("chain-rule check needs recorded states");

    ChainRuleReport report;
    if (n_steps == 0)
        return report;
    for (std::size_t n = 0; n < n_steps; ++n)
        report.lhs += config.dt * dot(result.beta[n], result.states[n].v);

    YosidaScale lambda{config.lambda};
    report.rhs = moreau_integral(config.grid, result.states.back().u, config.graph, lambda)
                 - moreau_integral(config.grid, result.states.front().u, config.graph, lambda);
    report.gap = std::abs(report.lhs - report.rhs);
    return report;
}

double integration_by_parts_residual(const PathResult& result, const SpectralField& phi,
                                     const SpectralField& psi)
{
    if (result.states.empty())
        throw UsageError("integration-by-parts check needs recorded states");

    const double z1_0 = dot(result.states.front().u, phi);
    const double z2_0 = dot(result.states.front().v, psi);
    double z1 = z1_0;
    double z2 = z2_0;
    double sum = 0.0;
    double worst = 0.0;
    for (std::size_t n = 1; n < result.states.size(); ++n)
    {
        const double z1n = dot(result.states[n].u, phi);
        const double z2n = dot(result.states[n].v, psi);
        const double d1 = z1n - z1;
        const double d2 = z2n - z2;
        sum += z1 * d2 + z2 * d1 + d1 * d2;
        z1 = z1n;
        z2 = z2n;
        worst = std::max(worst, std::abs(z1 * z2 - (z1_0 * z2_0 + sum)));
    }
    return worst;
}

}  // namespace stochwave
