// Copyright 2026 The fastvqe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file hamio.hpp
 * @brief Electronic-structure integral ingestion (FCIDUMP, synthetic fixtures)
 *        and expansion into the spin-orbital basis.
 *
 * Spatial-orbital integrals use chemists' notation (pq|rs). Spin orbitals use
 * BLOCKED ordering: indices [0, n_orb) are alpha, [n_orb, 2 n_orb) are beta.
 */

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace fastvqe {

/// Malformed FCIDUMP input. The message names the offending line when known.
class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& what, int line = 0);
    [[nodiscard]] int line() const noexcept { return line_; }

private:
    int line_;
};

/// Duplicate FCIDUMP records that disagree.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Four-index tensor of two-electron integrals, dense n^4 storage.
class Tensor4 {
public:
    Tensor4() = default;
    explicit Tensor4(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n * n, 0.0) {}

    [[nodiscard]] int dim() const noexcept { return n_; }

    double& operator()(int p, int q, int r, int s) noexcept { return data_[index(p, q, r, s)]; }
    double operator()(int p, int q, int r, int s) const noexcept { return data_[index(p, q, r, s)]; }

    [[nodiscard]] const std::vector<double>& raw() const noexcept { return data_; }

private:
    [[nodiscard]] std::size_t index(int p, int q, int r, int s) const noexcept {
        return ((static_cast<std::size_t>(p) * n_ + q) * n_ + r) * n_ + s;
    }

    int n_ = 0;
    std::vector<double> data_;
};

/// Spatial-orbital Hamiltonian in raw-integral form (Hartree).
struct MolecularIntegrals {
    int n_orb = 0;
    int n_elec = 0;
    int ms2 = 0;
    double e_core = 0.0;
    Eigen::MatrixXd h;  ///< one-electron integrals, n_orb x n_orb
    Tensor4 g;          ///< (pq|rs), chemists' notation

    /// Zero-initialized integrals of the given shape.
    static MolecularIntegrals zeros(int n_orb, int n_elec, int ms2);

    /// Throws std::invalid_argument when electron counts or symmetries are violated.
    void validate(double tol = 1e-12) const;

    /// Sets (pq|rs) and its seven permutation images.
    void set_eri(int p, int q, int r, int s, double value);
};

/// Spin-orbital Hamiltonian with antisymmetrized two-electron elements.
struct SpinOrbitalHamiltonian {
    int n_orb = 0;
    int n_so = 0;
    double e_core = 0.0;
    Eigen::MatrixXd h1;  ///< n_so x n_so
    Tensor4 v2;          ///< <pq||rs>, physicists' antisymmetrized

    [[nodiscard]] int spin(int so) const noexcept { return so >= n_orb ? 1 : 0; }
    [[nodiscard]] int spatial(int so) const noexcept { return so % n_orb; }
};

/// Reads an FCIDUMP stream. Leading '#' lines are treated as comments.
[[nodiscard]] MolecularIntegrals parse_fcidump(std::istream& in);
[[nodiscard]] MolecularIntegrals parse_fcidump_string(const std::string& text);
[[nodiscard]] MolecularIntegrals load_fcidump(const std::string& path);

/// Writes canonical unique records with round-trip precision.
void write_fcidump(const MolecularIntegrals& mi, std::ostream& out);

[[nodiscard]] SpinOrbitalHamiltonian to_spin_orbitals(const MolecularIntegrals& mi);

/// Seeded random integrals with full permutation symmetry, values in [-1, 1].
/// ms2 is set to the parity of n_elec.
[[nodiscard]] MolecularIntegrals synth_integrals(std::uint64_t seed, int n_orb, int n_elec);

}  // namespace fastvqe
