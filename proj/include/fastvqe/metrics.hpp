// Copyright 2026 The fastvqe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file metrics.hpp
 * @brief Operator importance metrics and pool selection.
 *
 * Three metrics rank pool operators:
 *   - the energy gradient dE/dtheta at theta = 0 (exact or shot-sampled),
 *   - the heuristic gradient alpha, a classical double sum over a determinant
 *     population of <D_k|H|D_j> with D_k the excitation of D_i,
 *   - the heuristic selected-CI weight beta, an Epstein–Nesbet-like ratio over
 *     the same double sum.
 *
 * Populations carry multiplicities: a shot-sampled multiset contributes its
 * counts, an exact state contributes |c_i|^2.
 */

#pragma once

#include "fastvqe/fock.hpp"
#include "fastvqe/hamio.hpp"
#include "fastvqe/qubitmap.hpp"
#include "fastvqe/simcore.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fastvqe {

enum class MetricKind { Gradient, HeuristicGradient, HeuristicSelectedCI };

[[nodiscard]] std::string to_string(MetricKind kind);

/// Determinants with non-negative weights, sorted by determinant.
struct Population {
    std::vector<std::pair<Determinant, double>> entries;

    static Population from_sample(const MultiSetSample& sample);
    /// Exact |c_i|^2 of every nonzero amplitude.
    static Population from_state(const StateVector& state);
};

/// Hermitian [H, A] whose expectation is dE/dtheta at theta = 0 for
/// exp(theta A) appended to the state.
[[nodiscard]] QubitOperator gradient_operator(const ExcitationOperator& op, const QubitOperator& h);

[[nodiscard]] double gradient_exact(const StateVector& state, const ExcitationOperator& op, const QubitOperator& h);
[[nodiscard]] double gradient_exact(const StateVector& state, const QubitOperator& grad_op);

/// Shot-noisy gradient; charges `shots` to the selection phase.
[[nodiscard]] double gradient_sampled(const StateVector& state, const QubitOperator& grad_op, std::uint64_t shots,
                                      Rng& rng, ShotLedger& ledger);

/// 2 Re sum_ij c_i^* c_j <D_i|A^dagger H|D_j> evaluated in the determinant basis.
[[nodiscard]] double gradient_determinant_route(const StateVector& state, const ExcitationOperator& op,
                                                const SpinOrbitalHamiltonian& hso);

[[nodiscard]] double hg_alpha(const Population& pop, const ExcitationOperator& op, const SpinOrbitalHamiltonian& hso);
[[nodiscard]] double hg_alpha(const MultiSetSample& sample, const ExcitationOperator& op,
                              const SpinOrbitalHamiltonian& hso);

inline constexpr double kDenominatorGuard = 1e-8;

[[nodiscard]] double hsci_beta(const Population& pop, const ExcitationOperator& op, const SpinOrbitalHamiltonian& hso,
                               double e_k);
[[nodiscard]] double hsci_beta(const MultiSetSample& sample, const ExcitationOperator& op,
                               const SpinOrbitalHamiltonian& hso, double e_k);

struct ImportanceReport {
    MetricKind kind = MetricKind::Gradient;
    std::vector<double> weights;        ///< one per pool operator
    std::optional<std::size_t> selected;  ///< empty when selection signals convergence
    bool replenished = false;
};

/// Picks argmax |w| over active operators (lowest index on ties). Gradient
/// selection leaves the pool alone; heuristic selection deactivates the pick.
/// If max |w| < epsilon every operator is reactivated and selection re-runs
/// once; if it is still below epsilon, or the pool is empty, nothing is selected.
[[nodiscard]] ImportanceReport rank_and_select(std::span<const double> weights, OperatorPool& pool, double epsilon,
                                               MetricKind kind);

}  // namespace fastvqe
