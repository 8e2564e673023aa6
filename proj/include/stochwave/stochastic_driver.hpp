// Copyright 2026 The stochwave Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stochwave/rng.hpp"
#include "stochwave/spectral_domain.hpp"

namespace stochwave {

//! Diagonal trace-class covariance Q with per-mode variances q_k.
class NuclearCovariance {
public:
    //! \throws ParameterError if any q_k is negative or non-finite.
    explicit NuclearCovariance(std::vector<double> variances);

    //! q_k = q0 |k|^{-r}; requires q0 >= 0 and r > d so the trace converges.
    static NuclearCovariance power_law(const SpectralGrid& grid, double q0, double r);

    std::span<const double> variances() const noexcept { return q_; }
    std::size_t size() const noexcept { return q_.size(); }
    double trace() const;

private:
    std::vector<double> q_;
};

enum class NoiseKind { QWiener, CompensatedPoisson };

/*!
 * Square-integrable L^2-valued martingale with <<M>>(t) = t Q.
 *
 * QWiener increments are N(0, q_k dt) per mode. CompensatedPoisson jumps
 * at rate nu with jump J = sum_k sqrt(q_k / nu) xi_k e_k, xi_k iid uniform
 * on [-sqrt 3, sqrt 3] (mean 0, variance 1), so no compensator is needed.
 */
class MartingaleDriver {
public:
    static MartingaleDriver wiener(NuclearCovariance cov);
    static MartingaleDriver poisson(NuclearCovariance cov, double rate);

    NoiseKind kind() const noexcept { return kind_; }
    const NuclearCovariance& covariance() const noexcept { return cov_; }
    double rate() const noexcept { return rate_; }
    std::size_t size() const noexcept { return cov_.size(); }

    /*!
     * Increment over a step of length dt. Draws are consumed in mode order
     * (Poisson: jump count first, then each jump's modes).
     */
    SpectralField sample_increment(double dt, RngStream& stream) const;
    void sample_increment(double dt, RngStream& stream, std::span<double> out) const;

private:
    MartingaleDriver(NoiseKind kind, NuclearCovariance cov, double rate)
        : kind_(kind), cov_(std::move(cov)), rate_(rate)
    {
    }

    NoiseKind kind_;
    NuclearCovariance cov_;
    double rate_;
};

//! sigma in G_0(u)h = sigma(u) h. Bounded and Lipschitz.
class DiffusionMap {
public:
    enum class Kind { Zero, One, Clip, Sin };

    explicit DiffusionMap(Kind kind = Kind::One) : kind_(kind) {}
    //! "zero", "one", "clip" or "sin".
    static DiffusionMap parse(std::string_view name);

    Kind kind() const noexcept { return kind_; }
    std::string name() const;
    double operator()(double u) const noexcept;

    //! sup |sigma|.
    double bound() const noexcept;
    double lipschitz() const noexcept;
    bool is_constant() const noexcept { return kind_ == Kind::Zero || kind_ == Kind::One; }

private:
    Kind kind_;
};

//! to_modes(sigma(u(x_i)) dM(x_i)).
SpectralField apply_diffusion(const DiffusionMap& sigma, const SpectralGrid& grid,
                              const SpectralField& u, const SpectralField& dM);

//! |G_0(u)|_Q = (sum_k q_k |sigma(u) e_k|^2_{L^2})^{1/2} by nodal quadrature.
double hs_norm_q(const DiffusionMap& sigma, const SpectralGrid& grid, const SpectralField& u,
                 const NuclearCovariance& cov);

struct IsometryReport {
    double lhs_estimate = 0.0;  //!< Monte Carlo E|M(T)|^2
    double rhs = 0.0;           //!< T tr Q
    double std_error = 0.0;
    std::size_t n_paths = 0;
};

//! E|M(T)|^2_{L^2} against T tr Q with identity integrand.
IsometryReport ito_isometry_check(const MartingaleDriver& driver, double t_final,
                                  std::size_t n_steps, std::size_t n_paths,
                                  std::uint64_t master_seed, std::size_t workers = 1);

//! E sum_n |dM_n|^2_{L^2} against T tr Q.
IsometryReport quadratic_variation_check(const MartingaleDriver& driver, double t_final,
                                         std::size_t n_steps, std::size_t n_paths,
                                         std::uint64_t master_seed, std::size_t workers = 1);

}  // namespace stochwave
