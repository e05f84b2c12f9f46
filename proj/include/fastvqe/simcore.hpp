// Copyright 2026 The fastvqe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file simcore.hpp
 * @brief Statevector simulation, finite-shot measurement models and
 *        shot accounting.
 *
 * Basis index bit p is the occupation of qubit (spin orbital) p.
 */

#pragma once

#include "fastvqe/fock.hpp"
#include "fastvqe/qubitmap.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

namespace fastvqe {

using Rng = std::mt19937_64;

/// Stable sub-seed for a logical task: (base, stream, index) -> seed.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index = 0) noexcept;

class StateVector {
public:
    StateVector() = default;
    explicit StateVector(int n_qubits);

    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dim() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const cplx> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] std::span<cplx> amplitudes() noexcept { return amps_; }
    cplx& operator[](std::size_t i) noexcept { return amps_[i]; }
    const cplx& operator[](std::size_t i) const noexcept { return amps_[i]; }

    [[nodiscard]] double norm() const noexcept;
    /// Basis indices carrying |amp| > 0.
    [[nodiscard]] std::vector<std::uint64_t> support() const;

private:
    int n_qubits_ = 0;
    std::vector<cplx> amps_;
};

[[nodiscard]] StateVector prepare_reference(Determinant d, int n_so);

/// Applies exp(theta (tau - tau^dagger)) in place: a Givens rotation on each
/// (source, target) pair, |s> -> cos|s> + sin|t>, |t> -> cos|t> - sin|s>.
void apply_qeb_evolution(StateVector& state, const ExcitationOperator& op, double theta) noexcept;

/// (tau - tau^dagger)|psi>, the generator applied without exponentiation.
[[nodiscard]] StateVector apply_qeb_generator(const StateVector& state, const ExcitationOperator& op);

/// <psi|P|psi> for a single word (complex in general).
[[nodiscard]] cplx pauli_expectation(const StateVector& state, PauliWord w);
[[nodiscard]] cplx pauli_expectation(const StateVector& state, std::span<const std::uint64_t> support, PauliWord w);

/// q|psi>.
[[nodiscard]] StateVector apply_operator(const StateVector& state, const QubitOperator& q);

/// Exact <psi|q|psi>. Throws std::invalid_argument for non-Hermitian q.
[[nodiscard]] double expectation(const StateVector& state, const QubitOperator& q);

/// Per-phase shot counters.
class ShotLedger {
public:
    enum class Phase { Selection, PopulationSampling };

    void charge(Phase phase, std::uint64_t shots) noexcept;
    [[nodiscard]] std::uint64_t cumulative() const noexcept { return selection_ + population_; }
    [[nodiscard]] std::uint64_t selection() const noexcept { return selection_; }
    [[nodiscard]] std::uint64_t population_sampling() const noexcept { return population_; }

private:
    std::uint64_t selection_ = 0;
    std::uint64_t population_ = 0;
};

struct MultiSetSample {
    std::map<Determinant, std::uint64_t> counts;
    std::uint64_t total = 0;
};

/// i.i.d. computational-basis draws from |c_i|^2; charges the population phase.
[[nodiscard]] MultiSetSample sample_determinants(const StateVector& state, std::uint64_t shots, Rng& rng,
                                                 ShotLedger& ledger);

/// Per-word binomial estimate k ~ B(shots, (1+<P>)/2) -> 2k/shots - 1, identity
/// words exact; charges `shots` once under the given phase.
[[nodiscard]] double sampled_expectation(const StateVector& state, const QubitOperator& q, std::uint64_t shots,
                                         Rng& rng, ShotLedger& ledger,
                                         ShotLedger::Phase phase = ShotLedger::Phase::Selection);

/// Basis states of one (N_alpha, N_beta) sector.
class Sector {
public:
    Sector(int n_orb, int n_alpha, int n_beta);

    [[nodiscard]] int n_qubits() const noexcept { return 2 * n_orb_; }
    [[nodiscard]] std::size_t size() const noexcept { return dets_.size(); }
    [[nodiscard]] const std::vector<Determinant>& determinants() const noexcept { return dets_; }
    [[nodiscard]] bool contains(std::uint64_t basis_index) const noexcept;
    [[nodiscard]] int n_alpha() const noexcept { return n_alpha_; }
    [[nodiscard]] int n_beta() const noexcept { return n_beta_; }

    /// Total probability outside the sector.
    [[nodiscard]] double leakage(const StateVector& state) const;

private:
    int n_orb_;
    int n_alpha_;
    int n_beta_;
    std::vector<Determinant> dets_;
};

/// A number-conserving operator projected onto one sector as a dense matrix;
/// used for the many repeated energy evaluations of the inner optimizer.
class SectorOperator {
public:
    SectorOperator(const QubitOperator& q, const Sector& sector);

    [[nodiscard]] const Eigen::MatrixXcd& matrix() const noexcept { return m_; }
    [[nodiscard]] const Sector& sector() const noexcept { return sector_; }

    [[nodiscard]] Eigen::VectorXcd gather(const StateVector& state) const;
    void scatter(const Eigen::VectorXcd& v, StateVector& state) const;

    [[nodiscard]] double expectation(const StateVector& state) const;
    [[nodiscard]] StateVector apply(const StateVector& state) const;

private:
    Sector sector_;
    Eigen::MatrixXcd m_;
};

struct CnotModel {
    int single = 2;
    int double_ = 13;
};

[[nodiscard]] std::uint64_t cnot_count(std::span<const ExcitationOperator> ansatz, CnotModel model = {});

}  // namespace fastvqe
