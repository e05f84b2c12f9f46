// Copyright 2026 The fastvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastvqe/fock.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fastvqe {

std::string to_string(Determinant d, int n_so) {
    std::string s = "|";
    for (int p = 0; p < n_so; ++p) s += d.test(p) ? '1' : '0';
    s += ">";
    return s;
}

std::pair<int, int> spin_counts(Determinant d, int n_orb) {
    const std::uint64_t alpha_mask = n_orb >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_orb) - 1;
    return {std::popcount(d.occ & alpha_mask), std::popcount(d.occ & ~alpha_mask)};
}

ExcitationOperator ExcitationOperator::single(int i, int a) {
    ExcitationOperator op;
    op.rank = 1;
    op.occ = {i, -1};
    op.virt = {a, -1};
    return op;
}

ExcitationOperator ExcitationOperator::double_(int i, int j, int a, int b) {
    ExcitationOperator op;
    op.rank = 2;
    op.occ = {std::min(i, j), std::max(i, j)};
    op.virt = {std::min(a, b), std::max(a, b)};
    return op;
}

std::uint64_t ExcitationOperator::occ_mask() const noexcept {
    std::uint64_t m = 0;
    for (int k = 0; k < rank; ++k) m |= std::uint64_t{1} << occ[k];
    return m;
}

std::uint64_t ExcitationOperator::virt_mask() const noexcept {
    std::uint64_t m = 0;
    for (int k = 0; k < rank; ++k) m |= std::uint64_t{1} << virt[k];
    return m;
}

ExcitationOperator ExcitationOperator::transposed() const noexcept {
    ExcitationOperator t = *this;
    std::swap(t.occ, t.virt);
    return t;
}

std::string ExcitationOperator::label() const {
    if (rank == 1) return fmt::format("{}->{}", occ[0], virt[0]);
    return fmt::format("{}_{}->{}_{}", occ[0], occ[1], virt[0], virt[1]);
}

ExcitationOperator parse_excitation_label(const std::string& label) {
    const auto arrow = label.find("->");
    if (arrow == std::string::npos) throw std::invalid_argument("bad operator label '" + label + "'");
    auto split = [&](const std::string& part) {
        std::vector<int> out;
        std::istringstream ss(part);
        std::string tok;
        while (std::getline(ss, tok, '_')) out.push_back(std::stoi(tok));
        return out;
    };
    const auto lhs = split(label.substr(0, arrow));
    const auto rhs = split(label.substr(arrow + 2));
    if (lhs.size() == 1 && rhs.size() == 1) return ExcitationOperator::single(lhs[0], rhs[0]);
    if (lhs.size() == 2 && rhs.size() == 2) return ExcitationOperator::double_(lhs[0], lhs[1], rhs[0], rhs[1]);
    throw std::invalid_argument("bad operator label '" + label + "'");
}

bool is_valid_excitation(const ExcitationOperator& op, int n_so) {
    if (op.rank != 1 && op.rank != 2) return false;
    if (n_so % 2 != 0 || n_so > kMaxSpinOrbitals) return false;
    const int n_orb = n_so / 2;
    int spin_balance[2] = {0, 0};
    for (int k = 0; k < op.rank; ++k) {
        if (op.occ[k] < 0 || op.occ[k] >= n_so || op.virt[k] < 0 || op.virt[k] >= n_so) return false;
        ++spin_balance[op.occ[k] >= n_orb];
        --spin_balance[op.virt[k] >= n_orb];
    }
    if (op.rank == 2 && (op.occ[0] >= op.occ[1] || op.virt[0] >= op.virt[1])) return false;
    if (op.occ_mask() & op.virt_mask()) return false;
    return spin_balance[0] == 0 && spin_balance[1] == 0;
}

bool is_particle_hole(const ExcitationOperator& op, Determinant ref, int n_so) {
    return is_valid_excitation(op, n_so) && (op.occ_mask() & ~ref.occ) == 0 && (op.virt_mask() & ref.occ) == 0;
}

std::size_t OperatorPool::active_count() const noexcept {
    return static_cast<std::size_t>(std::count(active.begin(), active.end(), true));
}

Determinant hf_determinant(int n_elec, int ms2, int n_so) {
    if (n_so <= 0 || n_so % 2 != 0 || n_so > kMaxSpinOrbitals)
        throw std::invalid_argument(fmt::format("n_so={} must be even and at most {}", n_so, kMaxSpinOrbitals));
    if ((n_elec + ms2) % 2 != 0) throw std::invalid_argument("n_elec and ms2 parity mismatch");
    const int n_orb = n_so / 2;
    const int n_alpha = (n_elec + ms2) / 2;
    const int n_beta = (n_elec - ms2) / 2;
    if (n_alpha < 0 || n_beta < 0 || n_alpha > n_orb || n_beta > n_orb)
        throw std::invalid_argument(fmt::format(
            "infeasible reference: {} alpha / {} beta electrons in {} spatial orbitals", n_alpha, n_beta, n_orb));
    Determinant d;
    for (int p = 0; p < n_alpha; ++p) d.occ |= std::uint64_t{1} << p;
    for (int p = 0; p < n_beta; ++p) d.occ |= std::uint64_t{1} << (n_orb + p);
    return d;
}

OperatorPool build_pool(Determinant ref, int n_so) {
    std::vector<int> occupied, virtual_;
    for (int p = 0; p < n_so; ++p) (ref.test(p) ? occupied : virtual_).push_back(p);

    OperatorPool pool;
    for (int i : occupied)
        for (int a : virtual_) {
            auto op = ExcitationOperator::single(i, a);
            if (is_valid_excitation(op, n_so)) pool.ops.push_back(op);
        }
    for (std::size_t x = 0; x < occupied.size(); ++x)
        for (std::size_t y = x + 1; y < occupied.size(); ++y)
            for (std::size_t u = 0; u < virtual_.size(); ++u)
                for (std::size_t v = u + 1; v < virtual_.size(); ++v) {
                    auto op = ExcitationOperator::double_(occupied[x], occupied[y], virtual_[u], virtual_[v]);
                    if (is_valid_excitation(op, n_so)) pool.ops.push_back(op);
                }
    pool.activate_all();
    return pool;
}

std::optional<Determinant> apply_excitation(const ExcitationOperator& op, Determinant d) noexcept {
    const auto om = op.occ_mask();
    const auto vm = op.virt_mask();
    if ((d.occ & om) != om || (d.occ & vm) != 0) return std::nullopt;
    return Determinant{(d.occ & ~om) | vm};
}

namespace {

// Sign of the ladder operator and the determinant it leaves behind.
int annihilate(Determinant& d, int p) {
    const int s = ladder_sign(d, p);
    d.occ &= ~(std::uint64_t{1} << p);
    return s;
}

int create(Determinant& d, int p) {
    const int s = ladder_sign(d, p);
    d.occ |= std::uint64_t{1} << p;
    return s;
}

int lowest(std::uint64_t& bits) {
    const int p = std::countr_zero(bits);
    bits &= bits - 1;
    return p;
}

}  // namespace

double slater_condon(const SpinOrbitalHamiltonian& hso, Determinant di, Determinant dj) {
    const std::uint64_t diff = di.occ ^ dj.occ;
    const int n_diff = std::popcount(diff);
    if (n_diff > 4 || di.count() != dj.count()) return 0.0;

    if (n_diff == 0) {
        double e = hso.e_core;
        for (std::uint64_t a = di.occ; a;) {
            const int p = lowest(a);
            e += hso.h1(p, p);
            for (std::uint64_t b = a; b;) {
                const int q = lowest(b);
                e += hso.v2(p, q, p, q);
            }
        }
        return e;
    }

    std::uint64_t created = di.occ & ~dj.occ;
    std::uint64_t removed = dj.occ & ~di.occ;
    Determinant d = dj;

    if (n_diff == 2) {
        const int p = lowest(created);
        const int m = lowest(removed);
        int sign = annihilate(d, m);
        sign *= create(d, p);
        double v = hso.h1(p, m);
        for (std::uint64_t common = di.occ & dj.occ; common;) {
            const int k = lowest(common);
            v += hso.v2(p, k, m, k);
        }
        return sign * v;
    }

    const int p = lowest(created);
    const int q = lowest(created);
    const int m = lowest(removed);
    const int n = lowest(removed);
    int sign = annihilate(d, m);
    sign *= annihilate(d, n);
    sign *= create(d, q);
    sign *= create(d, p);
    return sign * hso.v2(p, q, m, n);
}

std::vector<Determinant> sector_determinants(int n_orb, int n_alpha, int n_beta) {
    auto strings = [n_orb](int k) {
        std::vector<std::uint64_t> out;
        if (k < 0 || k > n_orb) return out;
        if (k == 0) {
            out.push_back(0);
            return out;
        }
        // Gosper's hack over n_orb-bit words
        std::uint64_t s = (std::uint64_t{1} << k) - 1;
        const std::uint64_t limit = std::uint64_t{1} << n_orb;
        while (s < limit) {
            out.push_back(s);
            const std::uint64_t c = s & (~s + 1);
            const std::uint64_t r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
        }
        return out;
    };
    std::vector<Determinant> dets;
    for (auto b : strings(n_beta))
        for (auto a : strings(n_alpha)) dets.push_back(Determinant{a | (b << n_orb)});
    std::sort(dets.begin(), dets.end());
    return dets;
}

}  // namespace fastvqe
