// Copyright 2026 The stochwave Authors
// SPDX-License-Identifier: Apache-2.0

#include "stochwave/spectral_domain.hpp"

#include <algorithm>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace stochwave {
namespace {

void check_same_size(const SpectralField& a, const SpectralField& b)
{
    if (a.size() != b.size())
        throw ShapeError("field sizes differ: " + std::to_string(a.size()) + " vs "
                         + std::to_string(b.size()));
}

// Fixed association order: four interleaved partial sums, combined left to right.
double row_dot(const double* a, const double* b, std::size_t n)
{
    double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
    {
        s0 += a[i] * b[i];
        s1 += a[i + 1] * b[i + 1];
        s2 += a[i + 2] * b[i + 2];
        s3 += a[i + 3] * b[i + 3];
    }
    for (; i < n; ++i)
        s0 += a[i] * b[i];
    return (s0 + s1) + (s2 + s3);
}

}  // namespace

SpectralField& SpectralField::operator+=(const SpectralField& other)
{
    check_same_size(*this, other);
    for (std::size_t i = 0; i < size(); ++i)
        coeffs_[i] += other.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other)
{
    check_same_size(*this, other);
    for (std::size_t i = 0; i < size(); ++i)
        coeffs_[i] -= other.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double s)
{
    for (auto& c : coeffs_)
        c *= s;
    return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

double dot(const SpectralField& a, const SpectralField& b)
{
    check_same_size(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

SpectralGrid::SpectralGrid(int dim, std::size_t n_modes) : dim_(dim), n_(n_modes)
{
    if (dim != 1 && dim != 2)
        throw ParameterError("dimension must be 1 or 2");
    if (n_modes < 1)
        throw ParameterError("need at least one mode per dimension");

    size_ = dim == 1 ? n_ : n_ * n_;
    const double h = std::numbers::pi / static_cast<double>(n_ + 1);
    cell_volume_ = dim == 1 ? h : h * h;

    const double norm = std::sqrt(2.0 / static_cast<double>(n_ + 1));
    sine_.resize(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = 0; k < n_; ++k)
            sine_[i * n_ + k] = norm * std::sin(static_cast<double>((i + 1) * (k + 1)) * h);

    mu_.resize(size_);
    for (std::size_t idx = 0; idx < size_; ++idx)
    {
        auto [k1, k2] = multi_index(idx);
        double m = static_cast<double>(k1 * k1);
        if (dim_ == 2)
            m += static_cast<double>(k2 * k2);
        mu_[idx] = m;
    }
}

std::array<std::size_t, 2> SpectralGrid::multi_index(std::size_t index) const
{
    if (dim_ == 1)
        return {index + 1, 0};
    return {index / n_ + 1, index % n_ + 1};
}

std::size_t SpectralGrid::index_of(std::size_t k1, std::size_t k2) const
{
    if (k1 < 1 || k1 > n_ || (dim_ == 2 && (k2 < 1 || k2 > n_)))
        throw ParameterError("mode index out of range");
    return dim_ == 1 ? k1 - 1 : (k1 - 1) * n_ + (k2 - 1);
}

double SpectralGrid::node(std::size_t i) const
{
    return static_cast<double>(i + 1) * std::numbers::pi / static_cast<double>(n_ + 1);
}

double SpectralGrid::basis_value(std::size_t mode, std::size_t node_index) const
{
    // sine_ entries are sqrt(h) * e_k(x_i) in 1-D.
    const double inv_sqrt_h = 1.0 / std::sqrt(std::numbers::pi / static_cast<double>(n_ + 1));
    auto [k1, k2] = multi_index(mode);
    if (dim_ == 1)
        return inv_sqrt_h * sine_[node_index * n_ + (k1 - 1)];
    std::size_t i1 = node_index / n_;
    std::size_t i2 = node_index % n_;
    return inv_sqrt_h * inv_sqrt_h * sine_[i1 * n_ + (k1 - 1)] * sine_[i2 * n_ + (k2 - 1)];
}

SpectralField SpectralGrid::basis(std::size_t mode) const
{
    SpectralField f(size_);
    f[mode] = 1.0;
    return f;
}

void SpectralGrid::check(const SpectralField& field, const char* what) const
{
    if (field.size() != size_)
        throw ShapeError(std::string(what) + " has " + std::to_string(field.size())
                         + " coefficients, grid expects " + std::to_string(size_));
}

void SpectralGrid::transform(std::span<const double> in, std::span<double> out,
                             double scale) const
{
    if (in.size() != size_ || out.size() != size_)
        throw ShapeError("transform input has " + std::to_string(in.size())
                         + " entries, grid expects " + std::to_string(size_));
    const double* s = sine_.data();
    if (dim_ == 1)
    {
        for (std::size_t i = 0; i < n_; ++i)
            out[i] = scale * row_dot(s + i * n_, in.data(), n_);
        return;
    }

    // Along the fast axis, then combine rows along the slow axis.
    std::vector<double> tmp(size_);
    for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t i = 0; i < n_; ++i)
            tmp[a * n_ + i] = row_dot(s + i * n_, in.data() + a * n_, n_);
    for (std::size_t i1 = 0; i1 < n_; ++i1)
    {
        double* row = out.data() + i1 * n_;
        std::fill(row, row + n_, 0.0);
        for (std::size_t k1 = 0; k1 < n_; ++k1)
        {
            const double w = scale * s[i1 * n_ + k1];
            const double* src = tmp.data() + k1 * n_;
            for (std::size_t j = 0; j < n_; ++j)
                row[j] += w * src[j];
        }
    }
}

void SpectralGrid::to_nodes(std::span<const double> coeffs, std::span<double> out) const
{
    transform(coeffs, out, 1.0 / std::sqrt(cell_volume_));
}

void SpectralGrid::to_modes(std::span<const double> nodal, std::span<double> out) const
{
    transform(nodal, out, std::sqrt(cell_volume_));
}

std::vector<double> SpectralGrid::to_nodes(const SpectralField& field) const
{
    check(field);
    std::vector<double> out(size_);
    to_nodes(field.coeffs(), out);
    return out;
}

SpectralField SpectralGrid::to_modes(std::span<const double> nodal) const
{
    SpectralField out(size_);
    to_modes(nodal, out.coeffs());
    return out;
}

double norm(const SpectralGrid& grid, const SpectralField& field, double m)
{
    grid.check(field);
    double s = 0.0;
    for (std::size_t k = 0; k < field.size(); ++k)
        s += std::pow(1.0 + grid.eigenvalue(k), m) * field[k] * field[k];
    return std::sqrt(s);
}

double l2_norm(const SpectralField& field) { return std::sqrt(dot(field, field)); }

double gradient_seminorm(const SpectralGrid& grid, const SpectralField& field)
{
    grid.check(field);
    double s = 0.0;
    for (std::size_t k = 0; k < field.size(); ++k)
        s += grid.eigenvalue(k) * field[k] * field[k];
    return std::sqrt(s);
}

double nodal_l2_norm(const SpectralGrid& grid, std::span<const double> nodal)
{
    double s = 0.0;
    for (double v : nodal)
        s += v * v;
    return std::sqrt(grid.cell_volume() * s);
}

void write_field_csv(std::ostream& os, const SpectralGrid& grid, const SpectralField& field)
{
    grid.check(field);
    char buf[64];
    os << (grid.dim() == 1 ? "k1,coeff\n" : "k1,k2,coeff\n");
    for (std::size_t idx = 0; idx < field.size(); ++idx)
    {
        auto [k1, k2] = grid.multi_index(idx);
        std::snprintf(buf, sizeof buf, "%.17g", field[idx]);
        os << k1 << ',';
        if (grid.dim() == 2)
            os << k2 << ',';
        os << buf << '\n';
    }
}

}  // namespace stochwave
