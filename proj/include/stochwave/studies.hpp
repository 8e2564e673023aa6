// Copyright 2026 The stochwave Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "stochwave/config.hpp"
#include "stochwave/report.hpp"

namespace stochwave {

//! Monte Carlo experiment over a descending (non-increasing) lambda grid.
struct StudySpec {
    SolverConfig base;
    std::vector<double> lambda_grid;
    std::size_t n_paths = 200;
    std::uint64_t seed = 42;
    std::size_t workers = 1;

    static StudySpec from(const RunConfig& run);
    //! Grid non-empty and non-increasing, lambdas positive, n_paths >= 1.
    void validate() const;
};

//! E sup_t (|grad u_lambda|^2 + |v_lambda|^2) per lambda.
StudyReport energy_study(const StudySpec& spec);

/*!
 * E int_0^T <J_lambda (I - eps Delta)^{-1} u_lambda, (I - eps Delta)^{-1} beta_lambda(u_lambda)> dt
 * per (lambda, eps); eps = 0 is the unsmoothed pairing <beta_lambda(u), J_lambda u>.
 */
StudyReport pairing_study(const StudySpec& spec, const std::vector<double>& eps_grid);

/*!
 * Coupled-noise Cauchy gaps between consecutive lambdas:
 *   sup_l2_gap  = E sup_n |u_{lambda_j} - u_{lambda_{j+1}}|_{L^2}
 *   beta_l1_gap = E dt sum_n |beta_{lambda_j}(u_{lambda_j}) - beta_{lambda_{j+1}}(u_{lambda_{j+1}})|_{L^1}
 *   beta_hm2_gap, beta_hm3_gap: the same beta difference in the H^{-2} and H^{-3} norms
 * Throws NumericError if the noise streams of a path differ across lambda.
 */
StudyReport lambda_convergence_study(const StudySpec& spec);

//! Ito isometry, discrete quadratic variation and integration-by-parts rows.
StudyReport isometry_study(const StudySpec& spec);

}  // namespace stochwave
