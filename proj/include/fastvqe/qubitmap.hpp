// Copyright 2026 The fastvqe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file qubitmap.hpp
 * @brief Pauli-operator algebra, Jordan–Wigner Hamiltonian mapping and
 *        qubit-excitation generators.
 *
 * A Pauli word is stored as an (x, z) bit pair per qubit: I=(0,0), X=(1,0),
 * Z=(0,1), Y=(1,1). With Y = iXZ, a word equals i^{|x&z|} X^x Z^z, which makes
 * products phase-exact with a handful of popcounts.
 */

#pragma once

#include "fastvqe/fock.hpp"
#include "fastvqe/hamio.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

namespace fastvqe {

using cplx = std::complex<double>;

inline constexpr double kPruneThreshold = 1e-14;

struct PauliWord {
    std::uint64_t x = 0;
    std::uint64_t z = 0;

    static PauliWord identity() noexcept { return {}; }
    static PauliWord single(int qubit, char letter);
    /// Reads "XIZY"; qubit 0 is the leftmost character.
    static PauliWord parse(const std::string& letters);

    [[nodiscard]] bool is_identity() const noexcept { return (x | z) == 0; }
    [[nodiscard]] bool is_diagonal() const noexcept { return x == 0; }
    [[nodiscard]] std::string to_string(int n_qubits) const;

    friend auto operator<=>(const PauliWord&, const PauliWord&) = default;
};

/// P * Q = phase * R with phase in {1, i, -1, -i}.
[[nodiscard]] std::pair<cplx, PauliWord> multiply(PauliWord p, PauliWord q) noexcept;

[[nodiscard]] inline bool anticommutes(PauliWord p, PauliWord q) noexcept {
    return (std::popcount((p.x & q.z) ^ (p.z & q.x)) & 1) != 0;
}

/// Weighted sum of Pauli words on a fixed number of qubits.
class QubitOperator {
public:
    using Terms = std::map<PauliWord, cplx>;

    QubitOperator() = default;
    explicit QubitOperator(int n_qubits) : n_qubits_(n_qubits) {}
    QubitOperator(int n_qubits, PauliWord w, cplx c);

    static QubitOperator identity(int n_qubits, cplx c = 1.0);

    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
    [[nodiscard]] bool empty() const noexcept { return terms_.empty(); }
    [[nodiscard]] cplx coefficient(PauliWord w) const;

    void add_term(PauliWord w, cplx c);
    QubitOperator& simplify(double threshold = kPruneThreshold);

    [[nodiscard]] QubitOperator adjoint() const;
    [[nodiscard]] bool is_hermitian(double tol = 1e-12) const;
    [[nodiscard]] double max_abs_coefficient() const;

    QubitOperator& operator+=(const QubitOperator& o);
    QubitOperator& operator-=(const QubitOperator& o);
    QubitOperator& operator*=(cplx s);

    friend QubitOperator operator+(QubitOperator a, const QubitOperator& b) { return a += b; }
    friend QubitOperator operator-(QubitOperator a, const QubitOperator& b) { return a -= b; }
    friend QubitOperator operator*(QubitOperator a, cplx s) { return a *= s; }
    friend QubitOperator operator*(cplx s, QubitOperator a) { return a *= s; }
    friend QubitOperator operator*(const QubitOperator& a, const QubitOperator& b);

    /// Multi-line "coef WORD" dump for debugging.
    [[nodiscard]] std::string to_string() const;

private:
    void check_width(const QubitOperator& o) const;

    int n_qubits_ = 0;
    Terms terms_;
};

/// ab - ba. Throws std::invalid_argument on width mismatch.
[[nodiscard]] QubitOperator commutator(const QubitOperator& a, const QubitOperator& b);

/// Splits q into the words built from {I, Z} and the remainder.
[[nodiscard]] std::pair<QubitOperator, QubitOperator> split_diagonal(const QubitOperator& q);

/// Fermionic ladder operators under Jordan–Wigner (Z string on qubits below p).
[[nodiscard]] QubitOperator jw_creation(int p, int n_qubits);
[[nodiscard]] QubitOperator jw_annihilation(int p, int n_qubits);

/// Qubit ladder operators without Z strings: Q† = (X - iY)/2, Q = (X + iY)/2.
[[nodiscard]] QubitOperator qubit_creation(int p, int n_qubits);
[[nodiscard]] QubitOperator qubit_annihilation(int p, int n_qubits);

/// Sum_p 1/2 (I - Z_p).
[[nodiscard]] QubitOperator number_operator(int n_qubits);

[[nodiscard]] QubitOperator jordan_wigner(const SpinOrbitalHamiltonian& hso);

/// A = tau - tau^dagger for the qubit excitation tau (anti-Hermitian).
[[nodiscard]] QubitOperator qeb_generator(const ExcitationOperator& op, int n_qubits);

}  // namespace fastvqe
