// Copyright 2026 The stochwave Authors
// SPDX-License-Identifier: Apache-2.0

#include "stochwave/monotone_graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "stochwave/errors.hpp"

namespace stochwave {
namespace {

constexpr double kNewtonTol = 1e-13;
constexpr int kNewtonMaxIter = 200;

double sign_of(double x) { return (x > 0) - (x < 0); }

double parse_number(std::string_view text, std::string_view spec)
{
    double value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
    {
        throw ParameterError("invalid number in graph spec '" + std::string(spec) + "'");
    }
    return value;
}

/*!
 * Solve y + lambda * b(y) = x for y in [0, x], x > 0, where b is the
 * increasing branch of a single-valued Power/Cubic graph on y >= 0.
 *
 * Newton iterates that leave the current bracket are replaced by bisection;
 * a converged Newton step is accepted even when round-off puts it on the
 * bracket edge.
 */
template <class B, class DB>
double solve_positive(double x, double lambda, double start, B b, DB db)
{
    double lo = 0.0;
    double hi = x;
    double y = start > 0 ? std::min(start, hi) : hi;
    for (int it = 0; it < kNewtonMaxIter; ++it)
    {
        double f = y + lambda * b(y) - x;
        if (f == 0.0)
            return y;
        if (f > 0)
            hi = y;
        else
            lo = y;

        double df = 1.0 + lambda * db(y);
        double next = y - f / df;
        if (std::isfinite(next) && std::abs(next - y) <= kNewtonTol * std::max(1.0, std::abs(y)))
            return std::clamp(next, lo, hi);
        if (!std::isfinite(next) || !(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        if (hi - lo <= kNewtonTol * std::max(1.0, hi))
            return next;
        y = next;
    }
    throw NumericError("resolvent root finder did not converge for x = "
                       + std::to_string(x));
}

double power_resolvent(double p, double lambda, double x)
{
    double ax = std::abs(x);
    // lambda y^(p-1) <= x bounds the root from above.
    double start = std::min(ax, std::pow(ax / lambda, 1.0 / (p - 1.0)));
    double y = solve_positive(
        ax, lambda, start, [p](double t) { return std::pow(t, p - 1.0); },
        [p](double t) { return (p - 1.0) * std::pow(t, p - 2.0); });
    return sign_of(x) * y;
}

double cubic_resolvent(double lambda, double x)
{
    double ax = std::abs(x);
    double start = std::min(ax, std::cbrt(ax / lambda));
    double y = solve_positive(
        ax, lambda, start, [](double t) { return t * t * t; },
        [](double t) { return 3.0 * t * t; });
    return sign_of(x) * y;
}

bool is_sign_like(const MonotoneGraph& g)
{
    return g.kind() == MonotoneGraph::Kind::Sign
           || (g.kind() == MonotoneGraph::Kind::Power && g.parameter() == 1.0);
}

}  // namespace

YosidaScale::YosidaScale(double lambda) : lambda_(lambda)
{
    if (!(lambda > 0) || !std::isfinite(lambda))
    {
        throw ParameterError("Yosida parameter must be positive, got "
                             + std::to_string(lambda));
    }
}

MonotoneGraph MonotoneGraph::linear(double c)
{
    if (!(c >= 0) || !std::isfinite(c))
        throw ParameterError("linear graph needs c >= 0");
    return {Kind::Linear, c};
}

MonotoneGraph MonotoneGraph::power(double p)
{
    if (!(p >= 1) || !std::isfinite(p))
        throw ParameterError("power graph needs p >= 1");
    return {Kind::Power, p};
}

MonotoneGraph MonotoneGraph::cubic() { return {Kind::Cubic, 0.0}; }

MonotoneGraph MonotoneGraph::sign() { return {Kind::Sign, 0.0}; }

MonotoneGraph MonotoneGraph::jump(double a)
{
    if (!(a > 0) || !std::isfinite(a))
        throw ParameterError("jump graph needs a > 0");
    return {Kind::Jump, a};
}

MonotoneGraph MonotoneGraph::parse(std::string_view spec)
{
    auto colon = spec.find(':');
    auto head = spec.substr(0, colon);
    bool has_arg = colon != std::string_view::npos;
    auto arg = [&] {
        if (!has_arg)
            throw ParameterError("graph '" + std::string(head) + "' needs a parameter");
        return parse_number(spec.substr(colon + 1), spec);
    };

    if (head == "cubic" && !has_arg)
        return cubic();
    if (head == "sign" && !has_arg)
        return sign();
    if (head == "linear")
        return linear(arg());
    if (head == "power")
        return power(arg());
    if (head == "jump")
        return jump(arg());
    throw ParameterError("unknown graph '" + std::string(spec) + "'");
}

std::string MonotoneGraph::name() const
{
    std::ostringstream os;
    switch (kind_)
    {
        case Kind::Linear: os << "linear:" << param_; break;
        case Kind::Power: os << "power:" << param_; break;
        case Kind::Cubic: os << "cubic"; break;
        case Kind::Sign: os << "sign"; break;
        case Kind::Jump: os << "jump:" << param_; break;
    }
    return os.str();
}

Interval MonotoneGraph::section(double x) const
{
    if (is_sign_like(*this))
    {
        if (x == 0.0)
            return {-1.0, 1.0};
        return {sign_of(x), sign_of(x)};
    }
    switch (kind_)
    {
        case Kind::Linear: return {param_ * x, param_ * x};
        case Kind::Power:
        {
            double b = sign_of(x) * std::pow(std::abs(x), param_ - 1.0);
            return {b, b};
        }
        case Kind::Cubic: return {x * x * x, x * x * x};
        case Kind::Jump:
            if (x == 0.0)
                return {0.0, param_};
            return x > 0 ? Interval{x + param_, x + param_} : Interval{x, x};
        case Kind::Sign: break;
    }
    return {};
}

double MonotoneGraph::potential_at(double x) const
{
    switch (kind_)
    {
        case Kind::Linear: return 0.5 * param_ * x * x;
        case Kind::Power: return std::pow(std::abs(x), param_) / param_;
        case Kind::Cubic: return 0.25 * x * x * x * x;
        case Kind::Sign: return std::abs(x);
        case Kind::Jump: return 0.5 * x * x + param_ * std::max(x, 0.0);
    }
    return 0.0;
}

ResolventPair resolve(const MonotoneGraph& g, YosidaScale scale, double x)
{
    const double lambda = scale.value();
    if (x == 0.0)
        return {0.0, 0.0};

    if (is_sign_like(g))
    {
        double y = sign_of(x) * std::max(std::abs(x) - lambda, 0.0);
        return {y, std::clamp(x / lambda, -1.0, 1.0)};
    }

    switch (g.kind())
    {
        case MonotoneGraph::Kind::Linear:
        {
            double denom = 1.0 + lambda * g.parameter();
            return {x / denom, g.parameter() * x / denom};
        }
        case MonotoneGraph::Kind::Jump:
        {
            double a = g.parameter();
            if (x < 0)
                return {x / (1.0 + lambda), x / (1.0 + lambda)};
            if (x <= lambda * a)
                return {0.0, x / lambda};
            return {(x - lambda * a) / (1.0 + lambda), (x + a) / (1.0 + lambda)};
        }
        case MonotoneGraph::Kind::Power:
        {
            double y = power_resolvent(g.parameter(), lambda, x);
            return {y, (x - y) / lambda};
        }
        case MonotoneGraph::Kind::Cubic:
        {
            double y = cubic_resolvent(lambda, x);
            return {y, (x - y) / lambda};
        }
        case MonotoneGraph::Kind::Sign: break;
    }
    return {0.0, 0.0};
}

double resolvent(const MonotoneGraph& g, YosidaScale lambda, double x)
{
    return resolve(g, lambda, x).resolvent;
}

double yosida(const MonotoneGraph& g, YosidaScale lambda, double x)
{
    return resolve(g, lambda, x).yosida;
}

double moreau(const MonotoneGraph& g, YosidaScale lambda, double x)
{
    // The infimum is attained at the resolvent.
    auto r = resolve(g, lambda, x);
    return g.potential_at(r.resolvent) + 0.5 * lambda.value() * r.yosida * r.yosida;
}

}  // namespace stochwave
