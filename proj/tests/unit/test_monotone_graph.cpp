// Copyright 2026 The stochwave Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "stochwave/errors.hpp"
#include "stochwave/monotone_graph.hpp"

using Catch::Approx;
using namespace stochwave;

namespace {

// Independent oracle: plain bisection on y + lambda * beta(y) = x over [min(0,x), max(0,x)].
template <class Beta>
double bisect_resolvent(double x, double lambda, Beta beta, double tol = 1e-13)
{
    double lo = std::min(0.0, x), hi = std::max(0.0, x);
    while (hi - lo > tol)
    {
        double mid = 0.5 * (lo + hi);
        if (mid + lambda * beta(mid) > x)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<MonotoneGraph> all_graphs()
{
    return {MonotoneGraph::linear(1.0), MonotoneGraph::linear(0.0), MonotoneGraph::power(1.5),
            MonotoneGraph::power(3.0),  MonotoneGraph::cubic(),     MonotoneGraph::sign(),
            MonotoneGraph::jump(2.0)};
}

}  // namespace

TEST_CASE("resolvent closed-form examples", "[monotone_graph]")
{
    CHECK(resolvent(MonotoneGraph::linear(1.0), YosidaScale{1.0}, 2.0) == Approx(1.0));
    CHECK(resolvent(MonotoneGraph::cubic(), YosidaScale{1.0}, 2.0) == Approx(1.0).epsilon(1e-14));
    CHECK(resolvent(MonotoneGraph::sign(), YosidaScale{0.5}, 2.0) == Approx(1.5));

    for (const auto& g : all_graphs())
        for (double lam : {1e-3, 0.5, 10.0})
            CHECK(resolvent(g, YosidaScale{lam}, 0.0) == 0.0);
}

TEST_CASE("cubic resolvent matches the bisection oracle", "[monotone_graph]")
{
    const double oracle = bisect_resolvent(1.7, 0.3, [](double y) { return y * y * y; });
    const double y = resolvent(MonotoneGraph::cubic(), YosidaScale{0.3}, 1.7);
    CHECK(std::abs(y - oracle) <= 1e-12);
    // Root of y + 0.3 y^3 = 1.7 to 30 digits (mpmath).
    CHECK(std::abs(y - 1.19195569181208752652777385347) <= 1e-13);
}

TEST_CASE("power resolvent matches the bisection oracle", "[monotone_graph]")
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> xs(-10, 10);
    for (double p : {1.5, 2.5, 3.0, 5.0})
    {
        auto g = MonotoneGraph::power(p);
        auto beta = [p](double y) { return std::copysign(std::pow(std::abs(y), p - 1), y); };
        for (int i = 0; i < 200; ++i)
        {
            double x = xs(rng);
            for (double lam : {1e-3, 1e-1, 1.0, 10.0})
                CHECK(std::abs(resolvent(g, YosidaScale{lam}, x) - bisect_resolvent(x, lam, beta))
                      <= 1e-12);
        }
    }
}

TEST_CASE("yosida examples", "[monotone_graph]")
{
    CHECK(yosida(MonotoneGraph::linear(1.0), YosidaScale{1.0}, 2.0) == Approx(1.0));
    CHECK(yosida(MonotoneGraph::sign(), YosidaScale{0.5}, 0.25) == Approx(0.5));
    CHECK(yosida(MonotoneGraph::cubic(), YosidaScale{1.0}, 2.0) == Approx(1.0).epsilon(1e-13));
}

TEST_CASE("moreau envelope examples", "[monotone_graph]")
{
    CHECK(moreau(MonotoneGraph::linear(1.0), YosidaScale{1.0}, 2.0) == Approx(1.0));
    CHECK(moreau(MonotoneGraph::sign(), YosidaScale{0.5}, 0.25) == Approx(0.0625));
    for (const auto& g : all_graphs())
        CHECK(moreau(g, YosidaScale{0.3}, 0.0) == 0.0);
}

TEST_CASE("section examples", "[monotone_graph]")
{
    auto s = MonotoneGraph::sign().section(0.0);
    CHECK(s.lo == -1.0);
    CHECK(s.hi == 1.0);
    auto j = MonotoneGraph::jump(2.0).section(0.0);
    CHECK(j.lo == 0.0);
    CHECK(j.hi == 2.0);
    auto c = MonotoneGraph::cubic().section(2.0);
    CHECK(c.lo == 8.0);
    CHECK(c.hi == 8.0);
    CHECK(MonotoneGraph::jump(2.0).section(1.0).lo == 3.0);
    CHECK(MonotoneGraph::power(1.0).section(0.0).lo == -1.0);
}

TEST_CASE("graphs satisfy 0 in beta(0) and j(0) = 0", "[monotone_graph]")
{
    for (const auto& g : all_graphs())
    {
        CHECK(g.section(0.0).contains(0.0));
        CHECK(g.potential_at(0.0) == 0.0);
        for (double x : {-3.0, -0.1, 0.2, 4.0})
            CHECK(g.potential_at(x) >= 0.0);
    }
}

TEST_CASE("sections are ordered", "[monotone_graph]")
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> xs(-5, 5);
    for (const auto& g : all_graphs())
        for (int i = 0; i < 2000; ++i)
        {
            double a = xs(rng), b = xs(rng);
            if (i % 10 == 0)
                a = 0.0;
            if (a == b)
                continue;
            if (a > b)
                std::swap(a, b);
            auto sa = g.section(a), sb = g.section(b);
            CHECK(sa.lo <= sa.hi);
            CHECK(sa.hi <= sb.lo);
        }
}

TEST_CASE("special cases coincide", "[monotone_graph]")
{
    YosidaScale lam{0.7};
    for (double x : {-3.0, -0.2, 0.4, 2.5})
    {
        CHECK(resolvent(MonotoneGraph::power(1.0), lam, x)
              == resolvent(MonotoneGraph::sign(), lam, x));
        CHECK(resolvent(MonotoneGraph::power(2.0), lam, x)
              == Approx(resolvent(MonotoneGraph::linear(1.0), lam, x)).epsilon(1e-14));
    }
}

TEST_CASE("invalid parameters are rejected", "[monotone_graph]")
{
    CHECK_THROWS_AS(YosidaScale{0.0}, ParameterError);
    CHECK_THROWS_AS(YosidaScale{-1.0}, ParameterError);
    CHECK_THROWS_AS(YosidaScale{std::numeric_limits<double>::quiet_NaN()}, ParameterError);
    CHECK_THROWS_AS(MonotoneGraph::linear(-1.0), ParameterError);
    CHECK_THROWS_AS(MonotoneGraph::power(0.5), ParameterError);
    CHECK_THROWS_AS(MonotoneGraph::jump(0.0), ParameterError);
}

TEST_CASE("graph specs parse", "[monotone_graph]")
{
    CHECK(MonotoneGraph::parse("cubic").kind() == MonotoneGraph::Kind::Cubic);
    CHECK(MonotoneGraph::parse("sign").kind() == MonotoneGraph::Kind::Sign);
    auto lin = MonotoneGraph::parse("linear:2.5");
    CHECK(lin.kind() == MonotoneGraph::Kind::Linear);
    CHECK(lin.parameter() == 2.5);
    CHECK(MonotoneGraph::parse("power:3").parameter() == 3.0);
    CHECK(MonotoneGraph::parse("jump:0.5").parameter() == 0.5);
    CHECK(MonotoneGraph::parse(MonotoneGraph::jump(0.5).name()).parameter() == 0.5);

    CHECK_THROWS_AS(MonotoneGraph::parse("quartic"), ParameterError);
    CHECK_THROWS_AS(MonotoneGraph::parse("linear"), ParameterError);
    CHECK_THROWS_AS(MonotoneGraph::parse("linear:abc"), ParameterError);
    CHECK_THROWS_AS(MonotoneGraph::parse("cubic:2"), ParameterError);
}

TEST_CASE("convex-analysis properties on random pairs", "[monotone_graph][property]")
{
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> xs(-10.0, 10.0);
    std::uniform_real_distribution<double> log_lambda(-3.0, 1.0);

    for (const auto& g : all_graphs())
    {
        INFO("graph " << g.name());
        int bad_contraction = 0, bad_lipschitz = 0, bad_monotone = 0, bad_member = 0,
            bad_envelope = 0, bad_lambda_order = 0;
        for (int i = 0; i < 100000; ++i)
        {
            double x = xs(rng), y = xs(rng);
            if (x > y)
                std::swap(x, y);
            YosidaScale lam{std::pow(10.0, log_lambda(rng))};
            auto rx = resolve(g, lam, x);
            auto ry = resolve(g, lam, y);

            bad_contraction += std::abs(ry.resolvent - rx.resolvent) > (y - x) + 1e-13;
            bad_lipschitz += std::abs(ry.yosida - rx.yosida) > 2.0 / lam.value() * (y - x) + 1e-12;
            bad_monotone += rx.yosida > ry.yosida + 1e-12 * (1 + std::abs(ry.yosida));
            bad_member += !g.section(rx.resolvent).contains(rx.yosida, 1e-10);

            double jl = moreau(g, lam, x);
            bad_envelope += jl < 0 || jl > g.potential_at(x) * (1 + 1e-12) + 1e-15;
            bad_lambda_order +=
                moreau(g, YosidaScale{0.5 * lam.value()}, x) < jl * (1 - 1e-12) - 1e-15;
        }
        CHECK(bad_contraction == 0);
        CHECK(bad_lipschitz == 0);
        CHECK(bad_monotone == 0);
        CHECK(bad_member == 0);
        CHECK(bad_envelope == 0);
        CHECK(bad_lambda_order == 0);
    }
}

TEST_CASE("moreau derivative equals yosida away from kinks", "[monotone_graph][property]")
{
    // Sign and Jump have kinks of beta_lambda at +-lambda, 0 and lambda*a, where a
    // central difference straddling the kink is O(h / lambda) off; those points
    // are skipped here. Power(1.5) is excluded: j_lambda'' blows up at 0.
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> xs(-10.0, 10.0);
    std::uniform_real_distribution<double> log_lambda(-3.0, 1.0);
    const double h = 1e-5;
    for (const auto& g : {MonotoneGraph::linear(1.0), MonotoneGraph::power(3.0),
                          MonotoneGraph::cubic(), MonotoneGraph::sign(), MonotoneGraph::jump(2.0)})
    {
        INFO("graph " << g.name());
        double worst = 0.0;
        for (int i = 0; i < 20000; ++i)
        {
            double x = xs(rng);
            YosidaScale lam{std::pow(10.0, log_lambda(rng))};
            std::vector<double> kinks;
            if (g.kind() == MonotoneGraph::Kind::Sign)
                kinks = {-lam.value(), lam.value()};
            if (g.kind() == MonotoneGraph::Kind::Jump)
                kinks = {0.0, lam.value() * g.parameter()};
            bool near = false;
            for (double k : kinks)
                near |= std::abs(x - k) < 2 * h;
            if (near)
                continue;
            double fd = (moreau(g, lam, x + h) - moreau(g, lam, x - h)) / (2 * h);
            worst = std::max(worst, std::abs(fd - yosida(g, lam, x)));
        }
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("cubic resolvent is accurate when Newton converges onto the bracket edge",
          "[monotone_graph]")
{
    // Root of y + lambda y^3 = x from mpmath at 40 digits.
    const double x = 7.8768128705553728, lambda = 0.010398665836172284;
    auto r = resolve(MonotoneGraph::cubic(), YosidaScale{lambda}, x);
    CHECK(std::abs(r.resolvent - 5.823328293302209758882689270322531888323) <= 2e-15);
    CHECK(MonotoneGraph::cubic().section(r.resolvent).contains(r.yosida, 1e-10));
}
