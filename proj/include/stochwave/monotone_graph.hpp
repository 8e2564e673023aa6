// Copyright 2026 The stochwave Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

namespace stochwave {

//! Closed interval [lo, hi]; a singleton when lo == hi.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double y, double tol = 0.0) const noexcept
    {
        return y >= lo - tol && y <= hi + tol;
    }
};

//! Positive regularization parameter of the Yosida approximation.
class YosidaScale {
public:
    //! \throws ParameterError unless lambda is finite and > 0.
    explicit YosidaScale(double lambda);

    double value() const noexcept { return lambda_; }

private:
    double lambda_;
};

/*!
 * Maximal monotone graph beta on the real line with dom(beta) = R and
 * 0 in beta(0), stored together with its convex potential j (beta = dj,
 * j >= 0, j(0) = 0).
 *
 * Built-in kinds:
 *  - Linear(c):  beta(x) = c x,                j = c x^2 / 2
 *  - Power(p):   beta(x) = |x|^(p-1) sign(x),  j = |x|^p / p
 *  - Cubic:      beta(x) = x^3,                j = x^4 / 4
 *  - Sign:       beta = d|x|, beta(0) = [-1, 1]
 *  - Jump(a):    beta(x) = x + a H(x), beta(0) = [0, a],
 *                j = x^2 / 2 + a max(x, 0)
 *
 * Power(1) is the sign graph.
 */
class MonotoneGraph {
public:
    enum class Kind { Linear, Power, Cubic, Sign, Jump };

    static MonotoneGraph linear(double c);
    static MonotoneGraph power(double p);
    static MonotoneGraph cubic();
    static MonotoneGraph sign();
    static MonotoneGraph jump(double a);

    //! Parses "cubic", "sign", "linear:c", "power:p" or "jump:a".
    static MonotoneGraph parse(std::string_view spec);

    Kind kind() const noexcept { return kind_; }
    //! c, p or a for the parametrized kinds; 0 otherwise.
    double parameter() const noexcept { return param_; }
    std::string name() const;

    Interval section(double x) const;
    double potential_at(double x) const;

    //! Some element of beta(x); the midpoint of the section where multivalued.
    double selection(double x) const
    {
        auto s = section(x);
        return 0.5 * (s.lo + s.hi);
    }

private:
    MonotoneGraph(Kind kind, double param) : kind_(kind), param_(param) {}

    Kind kind_;
    double param_;
};

//! Resolvent (I + lambda beta)^{-1} x: the unique y with x in y + lambda beta(y).
double resolvent(const MonotoneGraph& g, YosidaScale lambda, double x);

//! Yosida approximation beta_lambda(x) = (x - resolvent(x)) / lambda.
double yosida(const MonotoneGraph& g, YosidaScale lambda, double x);

//! Moreau-Yosida envelope j_lambda(x) = min_y j(y) + |x - y|^2 / (2 lambda).
double moreau(const MonotoneGraph& g, YosidaScale lambda, double x);

//! Resolvent and Yosida value from a single root solve.
struct ResolventPair {
    double resolvent;
    double yosida;
};
ResolventPair resolve(const MonotoneGraph& g, YosidaScale lambda, double x);

}  // namespace stochwave
