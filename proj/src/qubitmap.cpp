// Copyright 2026 The fastvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastvqe/qubitmap.hpp"

#include <fmt/format.h>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fastvqe {

namespace {

constexpr cplx kIPow[4] = {cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}};

std::uint64_t bit(int q) { return std::uint64_t{1} << q; }

}  // namespace

PauliWord PauliWord::single(int qubit, char letter) {
    switch (letter) {
        case 'I': return {};
        case 'X': return {bit(qubit), 0};
        case 'Y': return {bit(qubit), bit(qubit)};
        case 'Z': return {0, bit(qubit)};
        default: throw std::invalid_argument(fmt::format("unknown Pauli letter '{}'", letter));
    }
}

PauliWord PauliWord::parse(const std::string& letters) {
    if (letters.size() > 64) throw std::invalid_argument("Pauli word wider than 64 qubits");
    PauliWord w;
    for (std::size_t q = 0; q < letters.size(); ++q) {
        const auto s = single(static_cast<int>(q), letters[q]);
        w.x |= s.x;
        w.z |= s.z;
    }
    return w;
}

std::string PauliWord::to_string(int n_qubits) const {
    std::string s(static_cast<std::size_t>(n_qubits), 'I');
    for (int q = 0; q < n_qubits; ++q) {
        const bool bx = (x >> q) & 1U, bz = (z >> q) & 1U;
        s[q] = bx ? (bz ? 'Y' : 'X') : (bz ? 'Z' : 'I');
    }
    return s;
}

std::pair<cplx, PauliWord> multiply(PauliWord p, PauliWord q) noexcept {
    const PauliWord r{p.x ^ q.x, p.z ^ q.z};
    const int e = std::popcount(p.x & p.z) + std::popcount(q.x & q.z) + 2 * std::popcount(p.z & q.x) -
                  std::popcount(r.x & r.z);
    return {kIPow[((e % 4) + 4) % 4], r};
}

QubitOperator::QubitOperator(int n_qubits, PauliWord w, cplx c) : n_qubits_(n_qubits) { add_term(w, c); }

QubitOperator QubitOperator::identity(int n_qubits, cplx c) { return QubitOperator(n_qubits, PauliWord{}, c); }

cplx QubitOperator::coefficient(PauliWord w) const {
    const auto it = terms_.find(w);
    return it == terms_.end() ? cplx{0.0} : it->second;
}

void QubitOperator::add_term(PauliWord w, cplx c) { terms_[w] += c; }

QubitOperator& QubitOperator::simplify(double threshold) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) <= threshold)
            it = terms_.erase(it);
        else
            ++it;
    }
    return *this;
}

QubitOperator QubitOperator::adjoint() const {
    QubitOperator out(n_qubits_);
    for (const auto& [w, c] : terms_) out.terms_.emplace(w, std::conj(c));
    return out;
}

bool QubitOperator::is_hermitian(double tol) const {
    for (const auto& [w, c] : terms_)
        if (std::abs(c.imag()) > tol) return false;
    return true;
}

double QubitOperator::max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& [w, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

void QubitOperator::check_width(const QubitOperator& o) const {
    if (n_qubits_ != o.n_qubits_)
        throw std::invalid_argument(fmt::format("qubit width mismatch: {} vs {}", n_qubits_, o.n_qubits_));
}

QubitOperator& QubitOperator::operator+=(const QubitOperator& o) {
    check_width(o);
    for (const auto& [w, c] : o.terms_) terms_[w] += c;
    return simplify();
}

QubitOperator& QubitOperator::operator-=(const QubitOperator& o) {
    check_width(o);
    for (const auto& [w, c] : o.terms_) terms_[w] -= c;
    return simplify();
}

QubitOperator& QubitOperator::operator*=(cplx s) {
    for (auto& [w, c] : terms_) c *= s;
    return simplify();
}

QubitOperator operator*(const QubitOperator& a, const QubitOperator& b) {
    a.check_width(b);
    QubitOperator out(a.n_qubits());
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms()) {
            const auto [phase, w] = multiply(wa, wb);
            out.terms_[w] += phase * ca * cb;
        }
    return out.simplify();
}

std::string QubitOperator::to_string() const {
    std::string s;
    for (const auto& [w, c] : terms_)
        s += fmt::format("({:+.12g}{:+.12g}i) {}\n", c.real(), c.imag(), w.to_string(n_qubits_));
    return s;
}

QubitOperator commutator(const QubitOperator& a, const QubitOperator& b) {
    if (a.n_qubits() != b.n_qubits())
        throw std::invalid_argument(fmt::format("commutator: width mismatch {} vs {}", a.n_qubits(), b.n_qubits()));
    // Only anticommuting word pairs survive: [P, Q] = 2PQ.
    QubitOperator out(a.n_qubits());
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms()) {
            if (!anticommutes(wa, wb)) continue;
            const auto [phase, w] = multiply(wa, wb);
            out.add_term(w, 2.0 * phase * ca * cb);
        }
    return out.simplify();
}

std::pair<QubitOperator, QubitOperator> split_diagonal(const QubitOperator& q) {
    QubitOperator diag(q.n_qubits()), off(q.n_qubits());
    for (const auto& [w, c] : q.terms()) (w.is_diagonal() ? diag : off).add_term(w, c);
    return {diag, off};
}

namespace {

QubitOperator ladder(int p, int n_qubits, bool with_z_string, bool raise) {
    if (p < 0 || p >= n_qubits) throw std::invalid_argument("ladder operator index out of range");
    std::uint64_t zs = with_z_string ? bit(p) - 1 : 0;
    QubitOperator op(n_qubits);
    op.add_term(PauliWord{bit(p), zs}, 0.5);
    // Y_p = i X_p Z_p contributes -/+ i/2 for raising/lowering
    op.add_term(PauliWord{bit(p), zs | bit(p)}, raise ? cplx{0, -0.5} : cplx{0, 0.5});
    return op;
}

}  // namespace

QubitOperator jw_creation(int p, int n_qubits) { return ladder(p, n_qubits, true, true); }
QubitOperator jw_annihilation(int p, int n_qubits) { return ladder(p, n_qubits, true, false); }
QubitOperator qubit_creation(int p, int n_qubits) { return ladder(p, n_qubits, false, true); }
QubitOperator qubit_annihilation(int p, int n_qubits) { return ladder(p, n_qubits, false, false); }

QubitOperator number_operator(int n_qubits) {
    QubitOperator n(n_qubits);
    for (int p = 0; p < n_qubits; ++p) {
        n.add_term(PauliWord{}, 0.5);
        n.add_term(PauliWord{0, bit(p)}, -0.5);
    }
    return n.simplify();
}

QubitOperator jordan_wigner(const SpinOrbitalHamiltonian& hso) {
    const int n = hso.n_so;
    std::vector<QubitOperator> cre, ann;
    for (int p = 0; p < n; ++p) {
        cre.push_back(jw_creation(p, n));
        ann.push_back(jw_annihilation(p, n));
    }

    QubitOperator h = QubitOperator::identity(n, hso.e_core);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            if (hso.h1(p, q) != 0.0) h += hso.h1(p, q) * (cre[p] * ann[q]);

    // 1/4 sum <pq||rs> a+p a+q a_s a_r  ==  sum_{p<q, r<s} <pq||rs> a+p a+q a_s a_r
    QubitOperator two(n);
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            const QubitOperator pair_cre = cre[p] * cre[q];
            for (int r = 0; r < n; ++r)
                for (int s = r + 1; s < n; ++s) {
                    const double v = hso.v2(p, q, r, s);
                    if (v == 0.0) continue;
                    const QubitOperator term = pair_cre * (ann[s] * ann[r]);
                    for (const auto& [w, c] : term.terms()) two.add_term(w, v * c);
                }
        }
    h += two;
    // Drop the round-off imaginary residue of a real Hamiltonian.
    QubitOperator out(n);
    for (const auto& [w, c] : h.terms()) {
        if (std::abs(c.imag()) > 1e-12)
            throw std::logic_error("jordan_wigner produced a complex coefficient from real integrals");
        out.add_term(w, c.real());
    }
    return out.simplify();
}

QubitOperator qeb_generator(const ExcitationOperator& op, int n_qubits) {
    QubitOperator tau = QubitOperator::identity(n_qubits);
    for (int k = 0; k < op.rank; ++k) tau = tau * qubit_creation(op.virt[k], n_qubits);
    for (int k = 0; k < op.rank; ++k) tau = tau * qubit_annihilation(op.occ[k], n_qubits);
    return (tau - tau.adjoint()).simplify();
}

}  // namespace fastvqe
