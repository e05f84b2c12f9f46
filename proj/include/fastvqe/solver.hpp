// Copyright 2026 The fastvqe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file solver.hpp
 * @brief Adaptive ansatz construction (gradient-selected and
 *        population-selected), the inner VQE optimizer and the FCI oracle.
 */

#pragma once

#include "fastvqe/fock.hpp"
#include "fastvqe/hamio.hpp"
#include "fastvqe/lbfgs.hpp"
#include "fastvqe/metrics.hpp"
#include "fastvqe/qubitmap.hpp"
#include "fastvqe/simcore.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fastvqe {

struct AnsatzElement {
    ExcitationOperator op;
    double theta = 0.0;
};

/// exp(theta_n A_n) ... exp(theta_1 A_1) |ref>, first element applied first.
[[nodiscard]] StateVector prepare_ansatz_state(Determinant ref, int n_so, std::span<const AnsatzElement> ansatz);
[[nodiscard]] StateVector prepare_ansatz_state(Determinant ref, int n_so, std::span<const ExcitationOperator> ops,
                                               const Eigen::VectorXd& thetas);

/// Energy with the analytic gradient (adjoint differentiation) written to grad.
[[nodiscard]] double ansatz_energy(Determinant ref, std::span<const ExcitationOperator> ops,
                                   const Eigen::VectorXd& thetas, const SectorOperator& h, Eigen::VectorXd* grad);

struct VqeResult {
    Eigen::VectorXd thetas;
    double energy = 0.0;
    double gradient_norm = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Minimizes the statevector energy over all ansatz angles. `warm` holds the
/// previous angles; missing trailing angles start at zero.
[[nodiscard]] VqeResult vqe_minimize(Determinant ref, std::span<const ExcitationOperator> ops,
                                     const Eigen::VectorXd& warm, const SectorOperator& h,
                                     const LbfgsOptions& options = {});

struct FciResult {
    double energy = 0.0;
    std::size_t dimension = 0;
};

inline constexpr std::size_t kMaxFciDimension = 100000;

/// Lowest eigenvalue of the Slater–Condon matrix in the (N_alpha, N_beta)
/// sector. Dense up to `dense_limit`, Lanczos beyond.
[[nodiscard]] FciResult fci_ground_energy(const SpinOrbitalHamiltonian& hso, int n_elec, int ms2,
                                          std::size_t dense_limit = 2500);

enum class Method { Adapt, FastHG, FastHSCI };
enum class Mode { Statevector, FiniteShot };

[[nodiscard]] std::string to_string(Method m);
[[nodiscard]] std::string to_string(Mode m);
[[nodiscard]] Method parse_method(const std::string& s);
[[nodiscard]] Mode parse_mode(const std::string& s);
[[nodiscard]] MetricKind metric_for(Method m) noexcept;

struct RunConfig {
    Method method = Method::FastHG;
    Mode mode = Mode::Statevector;
    std::uint64_t shots = 1000;  ///< per expectation value / population sample
    int max_operators = 40;
    double epsilon = 1e-6;
    double fci_cutoff = 1e-10;
    LbfgsOptions vqe;
    std::uint64_t seed = 1;
    std::string system = "h4";
    CnotModel cnots;

    /// Throws std::invalid_argument for infeasible combinations.
    void validate() const;
    [[nodiscard]] std::uint64_t shots_per_eval() const noexcept { return mode == Mode::FiniteShot ? shots : 0; }
};

/// Everything derived once from the integrals.
class System {
public:
    System(std::string name, MolecularIntegrals integrals);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] const MolecularIntegrals& integrals() const noexcept { return mi_; }
    [[nodiscard]] const SpinOrbitalHamiltonian& spin_hamiltonian() const noexcept { return hso_; }
    [[nodiscard]] const QubitOperator& qubit_hamiltonian() const noexcept { return hq_; }
    [[nodiscard]] const SectorOperator& sector_hamiltonian() const noexcept { return *hsec_; }
    [[nodiscard]] Determinant reference() const noexcept { return ref_; }
    [[nodiscard]] int n_so() const noexcept { return hso_.n_so; }
    [[nodiscard]] const OperatorPool& pool() const noexcept { return pool_; }
    [[nodiscard]] double fci_energy() const noexcept { return e_fci_; }
    [[nodiscard]] double hf_energy() const;

private:
    std::string name_;
    MolecularIntegrals mi_;
    SpinOrbitalHamiltonian hso_;
    QubitOperator hq_;
    std::unique_ptr<SectorOperator> hsec_;
    Determinant ref_;
    OperatorPool pool_;
    double e_fci_ = 0.0;
};

struct IterationRecord {
    int iteration = 0;
    ExcitationOperator selected;
    std::size_t selected_index = 0;
    double energy = 0.0;
    double error_vs_fci = 0.0;
    int n_params = 0;
    std::uint64_t n_cnots = 0;
    std::uint64_t cumulative_shots = 0;
    std::size_t active_pool_size = 0;  ///< active operators when weights were evaluated
    bool replenished = false;
    std::vector<double> weights;
};

struct RunResult {
    std::vector<IterationRecord> records;
    std::vector<AnsatzElement> ansatz;
    ShotLedger ledger;
    bool complete = true;
    bool converged = false;  ///< selection found nothing above epsilon
    std::string error;
};

/// The adaptive loop. Gradient selection evaluates the whole pool each
/// iteration; population selection first obtains determinant weights
/// (exact or sampled) and then scores every operator classically.
/// `on_iteration`, when set, sees every record as soon as it is produced.
[[nodiscard]] RunResult run_adaptive(const System& system, const RunConfig& config,
                                     const std::function<void(const IterationRecord&)>& on_iteration = {});

}  // namespace fastvqe
