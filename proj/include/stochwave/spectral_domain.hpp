// Copyright 2026 The stochwave Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "stochwave/errors.hpp"

namespace stochwave {

/*!
 * Coefficients of an L^2(D) element in the Dirichlet sine eigenbasis,
 * indexed lexicographically by multi-index k (k_1 slowest).
 */
class SpectralField {
public:
    SpectralField() = default;
    explicit SpectralField(std::size_t size) : coeffs_(size, 0.0) {}
    explicit SpectralField(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

    std::size_t size() const noexcept { return coeffs_.size(); }
    double& operator[](std::size_t i) { return coeffs_[i]; }
    double operator[](std::size_t i) const { return coeffs_[i]; }
    std::span<double> coeffs() noexcept { return coeffs_; }
    std::span<const double> coeffs() const noexcept { return coeffs_; }

    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator-=(const SpectralField& other);
    SpectralField& operator*=(double s);

    bool operator==(const SpectralField&) const = default;

private:
    std::vector<double> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

//! L^2 inner product (coefficient dot product; equal to the nodal quadrature).
double dot(const SpectralField& a, const SpectralField& b);

/*!
 * Dirichlet Laplacian eigenbasis on D = (0, pi)^d, d in {1, 2}.
 *
 * Modes k in {1..N}^d have eigenvalue mu_k = |k|^2 and eigenfunction
 * e_k(x) = (2/pi)^{d/2} prod_j sin(k_j x_j). Nodal values live on the
 * interior collocation nodes x_i = i pi / (N + 1), where the midpoint
 * quadrature with weight h^d, h = pi / (N + 1), makes the sampled e_k
 * exactly orthonormal. Transforms are dense orthogonal matrix products.
 */
class SpectralGrid {
public:
    SpectralGrid(int dim, std::size_t n_modes);

    int dim() const noexcept { return dim_; }
    std::size_t n_modes() const noexcept { return n_; }
    //! Number of retained modes (= number of nodes), N^d.
    std::size_t size() const noexcept { return size_; }

    std::span<const double> eigenvalues() const noexcept { return mu_; }
    double eigenvalue(std::size_t index) const { return mu_[index]; }
    std::array<std::size_t, 2> multi_index(std::size_t index) const;
    std::size_t index_of(std::size_t k1, std::size_t k2 = 1) const;

    //! 1-D node (i + 1) pi / (N + 1) for nodal array index i in {0..N-1}.
    double node(std::size_t i) const;
    //! Quadrature weight h^d.
    double cell_volume() const noexcept { return cell_volume_; }

    //! e_k evaluated at flattened node index.
    double basis_value(std::size_t mode, std::size_t node_index) const;
    SpectralField basis(std::size_t mode) const;
    SpectralField zeros() const { return SpectralField(size_); }

    std::vector<double> to_nodes(const SpectralField& field) const;
    SpectralField to_modes(std::span<const double> nodal) const;

    //! Allocation-free variants; `out` must have size() entries.
    void to_nodes(std::span<const double> coeffs, std::span<double> out) const;
    void to_modes(std::span<const double> nodal, std::span<double> out) const;

    //! Throws ShapeError unless `field` has size() entries.
    void check(const SpectralField& field, const char* what = "field") const;

private:
    void transform(std::span<const double> in, std::span<double> out, double scale) const;

    int dim_;
    std::size_t n_;
    std::size_t size_;
    double cell_volume_;
    std::vector<double> sine_;  // symmetric orthogonal DST-I matrix, N x N
    std::vector<double> mu_;
};

//! Multiplies each coefficient by phi(mu_k).
template <class Phi>
SpectralField apply_spectral(const SpectralGrid& grid, const SpectralField& field, Phi&& phi)
{
    grid.check(field);
    SpectralField out(field.size());
    for (std::size_t k = 0; k < field.size(); ++k)
    {
        double factor = phi(grid.eigenvalue(k));
        if (!std::isfinite(factor))
            throw NumericError("spectral multiplier is not finite at mode "
                               + std::to_string(k));
        out[k] = factor * field[k];
    }
    return out;
}

//! Pointwise map f applied at the collocation nodes.
template <class F>
SpectralField nemytskii(const SpectralGrid& grid, const SpectralField& field, F&& f)
{
    auto nodal = grid.to_nodes(field);
    for (auto& value : nodal)
    {
        value = f(value);
        if (!std::isfinite(value))
            throw NumericError("pointwise map produced a non-finite value");
    }
    return grid.to_modes(nodal);
}

//! Common spectral multipliers.
namespace multiplier {
inline auto laplacian() { return [](double mu) { return -mu; }; }
inline auto smoother(double eps) { return [eps](double mu) { return 1.0 / (1.0 + eps * mu); }; }
inline auto fractional(double s) { return [s](double mu) { return std::pow(mu, 0.5 * s); }; }
inline auto wave_cos(double t) { return [t](double mu) { return std::cos(t * std::sqrt(mu)); }; }
inline auto wave_sinc(double t)
{
    return [t](double mu) { return std::sin(t * std::sqrt(mu)) / std::sqrt(mu); };
}
}  // namespace multiplier

//! Norm of the scale h^m: (sum_k (1 + mu_k)^m c_k^2)^{1/2}.
double norm(const SpectralGrid& grid, const SpectralField& field, double m);
double l2_norm(const SpectralField& field);
//! |grad u|_{L^2} = (sum_k mu_k c_k^2)^{1/2}.
double gradient_seminorm(const SpectralGrid& grid, const SpectralField& field);

//! Quadrature L^2 norm of nodal values.
double nodal_l2_norm(const SpectralGrid& grid, std::span<const double> nodal);

//! CSV rows `k1[,k2],coeff` with a header line.
void write_field_csv(std::ostream& os, const SpectralGrid& grid, const SpectralField& field);

}  // namespace stochwave
