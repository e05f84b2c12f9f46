// Copyright 2026 The fastvqe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file fock.hpp
 * @brief Determinant algebra: HF reference, particle-hole operator pools,
 *        sign-free qubit-excitation application and Slater–Condon rules.
 *
 * A determinant is a 64-bit occupation word. Bit p set means spin orbital p
 * is occupied, with the basis-state index of a determinant equal to its word
 * (little-endian: qubit p is bit p).
 */

#pragma once

#include "fastvqe/hamio.hpp"

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fastvqe {

inline constexpr int kMaxSpinOrbitals = 64;

struct Determinant {
    std::uint64_t occ = 0;

    [[nodiscard]] bool test(int p) const noexcept { return (occ >> p) & 1U; }
    [[nodiscard]] int count() const noexcept { return std::popcount(occ); }

    friend auto operator<=>(const Determinant&, const Determinant&) = default;
};

/// Little-endian rendering, qubit 0 leftmost: "|0101>".
[[nodiscard]] std::string to_string(Determinant d, int n_so);

/// Number of electrons of each spin under blocked ordering.
[[nodiscard]] std::pair<int, int> spin_counts(Determinant d, int n_orb);

/// Spin-conserving single or double excitation; no fermionic sign on application.
struct ExcitationOperator {
    int rank = 1;               ///< 1 = single, 2 = double
    std::array<int, 2> occ{};   ///< annihilated spin orbitals, strictly increasing
    std::array<int, 2> virt{};  ///< created spin orbitals, strictly increasing

    static ExcitationOperator single(int i, int a);
    static ExcitationOperator double_(int i, int j, int a, int b);

    [[nodiscard]] std::uint64_t occ_mask() const noexcept;
    [[nodiscard]] std::uint64_t virt_mask() const noexcept;
    [[nodiscard]] bool is_double() const noexcept { return rank == 2; }

    /// Swaps annihilated and created orbitals (the adjoint excitation).
    [[nodiscard]] ExcitationOperator transposed() const noexcept;

    /// Compact label: "0->2" or "0_4->2_6".
    [[nodiscard]] std::string label() const;

    friend bool operator==(const ExcitationOperator& a, const ExcitationOperator& b) noexcept {
        return a.occ_mask() == b.occ_mask() && a.virt_mask() == b.virt_mask();
    }
};

/// Parses the output of ExcitationOperator::label().
[[nodiscard]] ExcitationOperator parse_excitation_label(const std::string& label);

/// Checks index ordering, disjointness and spin conservation (blocked ordering).
[[nodiscard]] bool is_valid_excitation(const ExcitationOperator& op, int n_so);

/// Additionally requires occ ⊆ ref and virt ∩ ref = ∅.
[[nodiscard]] bool is_particle_hole(const ExcitationOperator& op, Determinant ref, int n_so);

struct OperatorPool {
    std::vector<ExcitationOperator> ops;
    std::vector<bool> active;

    [[nodiscard]] std::size_t size() const noexcept { return ops.size(); }
    [[nodiscard]] std::size_t active_count() const noexcept;
    void activate_all() { active.assign(ops.size(), true); }
};

/// Aufbau reference: lowest alpha and lowest beta spin orbitals filled.
/// Throws std::invalid_argument when the spin counts are infeasible.
[[nodiscard]] Determinant hf_determinant(int n_elec, int ms2, int n_so);

/// All spin-conserving particle-hole singles then doubles, lexicographic.
[[nodiscard]] OperatorPool build_pool(Determinant ref, int n_so);

/// Clears occ bits and sets virt bits; nothing if the pattern does not match.
[[nodiscard]] std::optional<Determinant> apply_excitation(const ExcitationOperator& op,
                                                          Determinant d) noexcept;

/// Permutation sign of a_p^dagger acting on d (p must be empty) or a_p (p occupied).
[[nodiscard]] inline int ladder_sign(Determinant d, int p) noexcept {
    const std::uint64_t below = p == 0 ? 0 : (d.occ & ((std::uint64_t{1} << p) - 1));
    return (std::popcount(below) & 1) ? -1 : 1;
}

/// <di|H|dj> in Hartree, including e_core on the diagonal.
[[nodiscard]] double slater_condon(const SpinOrbitalHamiltonian& hso, Determinant di, Determinant dj);

/// All determinants with the given per-spin electron counts, ascending by word.
[[nodiscard]] std::vector<Determinant> sector_determinants(int n_orb, int n_alpha, int n_beta);

}  // namespace fastvqe
