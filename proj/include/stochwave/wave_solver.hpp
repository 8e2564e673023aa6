// Copyright 2026 The stochwave Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stochwave/monotone_graph.hpp"
#include "stochwave/spectral_domain.hpp"
#include "stochwave/stochastic_driver.hpp"

namespace stochwave {

//! (u, v) = (displacement, velocity) on H^1_0 x L^2.
struct WaveState {
    SpectralField u;
    SpectralField v;

    bool operator==(const WaveState&) const = default;
};

/*!
 * Entries of the wave group S(dt) per mode, omega_k = sqrt(mu_k):
 *   cos_k  = cos(omega_k dt)
 *   sinc_k = sin(omega_k dt) / omega_k       (S_12)
 *   msin_k = -omega_k sin(omega_k dt)        (S_21)
 */
class GroupCache {
public:
    GroupCache(const SpectralGrid& grid, double dt);

    double dt() const noexcept { return dt_; }
    std::span<const double> cos() const noexcept { return cos_; }
    std::span<const double> sinc() const noexcept { return sinc_; }
    std::span<const double> msin() const noexcept { return msin_; }

    //! state <- S(dt) state.
    void rotate(WaveState& state) const;

private:
    double dt_;
    std::vector<double> cos_;
    std::vector<double> sinc_;
    std::vector<double> msin_;
};

//! Initial data u0 = sum_{k <= K} a_k e_k, v0 = 0.
struct InitialData {
    enum class Kind { Smooth, Random, Zero };
    Kind kind = Kind::Smooth;
    std::size_t modes = 8;  //!< K, per dimension

    //! "smooth:K" (a_k = |k|^{-2}), "random:K" (a_k ~ N(0, |k|^{-4})) or "zero".
    static InitialData parse(std::string_view spec);
    std::string name() const;
};

WaveState make_initial_state(const SpectralGrid& grid, const InitialData& init,
                             std::uint64_t master_seed, std::uint64_t path_index);

struct RecordFlags {
    bool states = false;      //!< (u_n, v_n) and beta_lambda(u_n) samples
    bool increments = false;  //!< dM_n

    //! '|' or ',' separated subset of {states, increments, functionals}.
    static RecordFlags parse(std::string_view spec);
};

struct SolverConfig {
    SpectralGrid grid{1, 64};
    MonotoneGraph graph = MonotoneGraph::cubic();
    double lambda = 1e-2;
    double dt = 1e-3;
    double t_final = 1.0;
    MartingaleDriver driver = MartingaleDriver::wiener(NuclearCovariance(std::vector<double>(64, 0.0)));
    DiffusionMap diffusion{DiffusionMap::Kind::One};
    InitialData initial;
    RecordFlags record;
    std::uint64_t seed = 42;

    //! Throws ParameterError/ShapeError on inconsistent settings.
    void validate() const;
    std::size_t n_steps() const;
};

//! Nodal and modal quantities derived from one state u_n.
struct StepRecord {
    std::vector<double> u_nodes;
    std::vector<double> resolvent_nodes;  //!< J_lambda u(x_i)
    std::vector<double> beta_nodes;       //!< beta_lambda(u(x_i))
    SpectralField beta_modes;
    double moreau_integral = 0.0;  //!< int_D j_lambda(u)
    double pairing = 0.0;          //!< <beta_lambda(u), J_lambda u>_{L^2}
};

/*!
 * Rotate-after-kick trigonometric Euler step for
 *   dU + AU dt + B_lambda(U) dt = G(U(t-)) dM:
 *   U_{n+1} = S(dt) [U_n + (0, -beta_lambda(u_n) dt + sigma(u_n) dM_n)].
 * The nonlinearity and the diffusion are both evaluated at u_n.
 */
class Stepper {
public:
    Stepper(const SpectralGrid& grid, const GroupCache& cache, const MonotoneGraph& graph,
            YosidaScale lambda, const DiffusionMap& diffusion);

    //! Evaluates beta_lambda etc. at `state` and keeps the result for advance().
    const StepRecord& evaluate(const WaveState& state);

    /*!
     * Advances `state` by one step using the record from the last evaluate()
     * of that same state. Returns the noise forcing sigma(u_n) dM_n.
     */
    const SpectralField& advance(WaveState& state, std::span<const double> dM);

    const StepRecord& record() const noexcept { return rec_; }

private:
    const SpectralGrid& grid_;
    const GroupCache& cache_;
    MonotoneGraph graph_;
    YosidaScale lambda_;
    DiffusionMap diffusion_;
    StepRecord rec_;
    std::vector<double> scratch_;
    SpectralField noise_;
};

//! One step from `state`; see Stepper.
WaveState step(const SpectralGrid& grid, const GroupCache& cache, const WaveState& state,
               const MonotoneGraph& graph, YosidaScale lambda, const DiffusionMap& diffusion,
               const SpectralField& dM);

//! |grad u|^2 + |v|^2.
double energy(const SpectralGrid& grid, const WaveState& state);
//! energy + 2 int_D j_lambda(u).
double lyapunov(const SpectralGrid& grid, const WaveState& state, const MonotoneGraph& graph,
                YosidaScale lambda);

struct TraceRow {
    double t, energy, lyapunov, l2_u, h1_u, l2_v, pairing_running;
};

struct PathFunctionals {
    double sup_energy = 0.0;
    double pairing = 0.0;    //!< dt sum_n <beta_lambda(u_n), J_lambda u_n>
    double chain_lhs = 0.0;  //!< dt sum_n <beta_lambda(u_n), v_n>
    double chain_rhs = 0.0;  //!< int j_lambda(u_N) - int j_lambda(u_0)
};

struct PathResult {
    std::vector<double> times;
    std::vector<WaveState> states;            //!< n = 0..N when recorded
    std::vector<SpectralField> beta;          //!< beta_lambda(u_n), n = 0..N-1
    std::vector<SpectralField> increments;    //!< dM_n, n = 0..N-1
    std::vector<TraceRow> trace;              //!< n = 0..N
    PathFunctionals functionals;
    std::uint64_t increment_hash = 0;
    WaveState final_state;
};

//! Called once per step before the state is advanced.
using PathObserver =
    std::function<void(std::size_t step, const WaveState& state, const StepRecord& rec)>;

/*!
 * Simulates one path with the noise stream (config.seed, path_index).
 * Aborts with NumericError carrying the step index if the state becomes
 * non-finite or the energy exceeds kBlowUpEnergy.
 */
PathResult simulate_path(const SolverConfig& config, std::uint64_t path_index,
                         const PathObserver& observer = {});

inline constexpr double kBlowUpEnergy = 1e12;

/*!
 * Max over n of |u_n - D_n|_{L^2}, where D_n re-sums the discrete Duhamel
 * formula from u_0, v_0 and the recorded forcings through the cos/sin
 * accumulators of the angle-addition split. Needs states and increments.
 */
double duhamel_residual(const PathResult& result, const SolverConfig& config);

struct ChainRuleReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
};

//! dt sum <beta_lambda(u_n), v_n> against int j_lambda(u_N) - int j_lambda(u_0).
ChainRuleReport chain_rule_check(const PathResult& result, const SolverConfig& config);

/*!
 * Discrete integration by parts for Z1 = <u, phi>, Z2 = <v, psi>:
 * max over n of |Z1 Z2(t_n) - Z1 Z2(0) - sum (Z1 dZ2 + Z2 dZ1 + dZ1 dZ2)|.
 */
double integration_by_parts_residual(const PathResult& result, const SpectralField& phi,
                                     const SpectralField& psi);

}  // namespace stochwave
