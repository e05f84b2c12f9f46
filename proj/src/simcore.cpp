// Copyright 2026 The fastvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastvqe/simcore.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace fastvqe {

namespace {

constexpr cplx kIPow[4] = {cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}};

// P|b> = phase(b) |b ^ x>
inline cplx word_phase(PauliWord w, std::uint64_t b) noexcept {
    const int e = std::popcount(w.x & w.z) + 2 * std::popcount(b & w.z);
    return kIPow[e & 3];
}

void require_hermitian(const QubitOperator& q) {
    if (!q.is_hermitian(1e-12))
        throw std::invalid_argument("expectation requires a Hermitian operator (real Pauli coefficients)");
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) noexcept {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(base) ^ stream) ^ index);
}

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 30)
        throw std::invalid_argument(fmt::format("statevector width {} outside [1, 30]", n_qubits));
    amps_.assign(std::size_t{1} << n_qubits, cplx{0.0});
}

double StateVector::norm() const noexcept {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

std::vector<std::uint64_t> StateVector::support() const {
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if (amps_[i] != cplx{0.0}) out.push_back(i);
    return out;
}

StateVector prepare_reference(Determinant d, int n_so) {
    StateVector s(n_so);
    if (n_so < 64 && (d.occ >> n_so) != 0) throw std::invalid_argument("determinant wider than the register");
    s[d.occ] = 1.0;
    return s;
}

void apply_qeb_evolution(StateVector& state, const ExcitationOperator& op, double theta) noexcept {
    const std::uint64_t om = op.occ_mask();
    const std::uint64_t vm = op.virt_mask();
    const std::uint64_t flip = om | vm;
    const double c = std::cos(theta), s = std::sin(theta);
    auto amps = state.amplitudes();
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        if ((b & flip) != om) continue;
        const std::uint64_t t = b ^ flip;
        const cplx src = amps[b], tgt = amps[t];
        amps[b] = c * src - s * tgt;
        amps[t] = s * src + c * tgt;
    }
}

StateVector apply_qeb_generator(const StateVector& state, const ExcitationOperator& op) {
    const std::uint64_t om = op.occ_mask();
    const std::uint64_t flip = om | op.virt_mask();
    StateVector out(state.n_qubits());
    for (std::uint64_t b = 0; b < state.dim(); ++b) {
        if ((b & flip) != om) continue;
        const std::uint64_t t = b ^ flip;
        out[t] += state[b];
        out[b] -= state[t];
    }
    return out;
}

cplx pauli_expectation(const StateVector& state, std::span<const std::uint64_t> support, PauliWord w) {
    cplx acc{0.0};
    for (std::uint64_t b : support) acc += std::conj(state[b ^ w.x]) * word_phase(w, b) * state[b];
    return acc;
}

cplx pauli_expectation(const StateVector& state, PauliWord w) {
    const auto sup = state.support();
    return pauli_expectation(state, sup, w);
}

StateVector apply_operator(const StateVector& state, const QubitOperator& q) {
    if (q.n_qubits() != state.n_qubits()) throw std::invalid_argument("operator/state width mismatch");
    StateVector out(state.n_qubits());
    const auto sup = state.support();
    for (const auto& [w, c] : q.terms())
        for (std::uint64_t b : sup) out[b ^ w.x] += c * word_phase(w, b) * state[b];
    return out;
}

double expectation(const StateVector& state, const QubitOperator& q) {
    require_hermitian(q);
    if (q.n_qubits() != state.n_qubits()) throw std::invalid_argument("operator/state width mismatch");
    const auto sup = state.support();
    cplx acc{0.0};
    for (const auto& [w, c] : q.terms()) acc += c * pauli_expectation(state, sup, w);
    return acc.real();
}

void ShotLedger::charge(Phase phase, std::uint64_t shots) noexcept {
    (phase == Phase::Selection ? selection_ : population_) += shots;
}

MultiSetSample sample_determinants(const StateVector& state, std::uint64_t shots, Rng& rng, ShotLedger& ledger) {
    if (shots < 1) throw std::invalid_argument("sample_determinants: shots must be >= 1");
    const auto sup = state.support();
    std::vector<double> probs;
    probs.reserve(sup.size());
    for (auto b : sup) probs.push_back(std::norm(state[b]));
    std::discrete_distribution<std::size_t> dist(probs.begin(), probs.end());

    std::vector<std::uint64_t> hits(sup.size(), 0);
    for (std::uint64_t k = 0; k < shots; ++k) ++hits[dist(rng)];

    MultiSetSample out;
    out.total = shots;
    for (std::size_t i = 0; i < sup.size(); ++i)
        if (hits[i] > 0) out.counts.emplace(Determinant{sup[i]}, hits[i]);
    ledger.charge(ShotLedger::Phase::PopulationSampling, shots);
    return out;
}

double sampled_expectation(const StateVector& state, const QubitOperator& q, std::uint64_t shots, Rng& rng,
                           ShotLedger& ledger, ShotLedger::Phase phase) {
    require_hermitian(q);
    if (shots < 1) throw std::invalid_argument("sampled_expectation: shots must be >= 1");
    const auto sup = state.support();
    double total = 0.0;
    for (const auto& [w, c] : q.terms()) {
        if (w.is_identity()) {
            total += c.real();
            continue;
        }
        const double p = std::clamp(pauli_expectation(state, sup, w).real(), -1.0, 1.0);
        const double prob_plus = 0.5 * (1.0 + p);
        std::uint64_t k;
        if (prob_plus <= 0.0) {
            k = 0;
        } else if (prob_plus >= 1.0) {
            k = shots;
        } else {
            std::binomial_distribution<std::uint64_t> binom(shots, prob_plus);
            k = binom(rng);
        }
        total += c.real() * (2.0 * static_cast<double>(k) / static_cast<double>(shots) - 1.0);
    }
    ledger.charge(phase, shots);
    return total;
}

Sector::Sector(int n_orb, int n_alpha, int n_beta)
    : n_orb_(n_orb), n_alpha_(n_alpha), n_beta_(n_beta), dets_(sector_determinants(n_orb, n_alpha, n_beta)) {}

bool Sector::contains(std::uint64_t b) const noexcept {
    const auto [a, be] = spin_counts(Determinant{b}, n_orb_);
    return a == n_alpha_ && be == n_beta_ && (b >> (2 * n_orb_)) == 0;
}

double Sector::leakage(const StateVector& state) const {
    double out = 0.0;
    for (std::uint64_t b = 0; b < state.dim(); ++b)
        if (!contains(b)) out += std::norm(state[b]);
    return out;
}

SectorOperator::SectorOperator(const QubitOperator& q, const Sector& sector) : sector_(sector) {
    const auto& dets = sector_.determinants();
    const auto n = static_cast<Eigen::Index>(dets.size());
    std::unordered_map<std::uint64_t, Eigen::Index> pos;
    for (Eigen::Index i = 0; i < n; ++i) pos.emplace(dets[i].occ, i);

    m_ = Eigen::MatrixXcd::Zero(n, n);
    std::unordered_map<std::uint64_t, cplx> outside;
    for (Eigen::Index j = 0; j < n; ++j) {
        const std::uint64_t b = dets[j].occ;
        outside.clear();
        for (const auto& [w, c] : q.terms()) {
            const std::uint64_t t = b ^ w.x;
            const cplx v = c * word_phase(w, b);
            if (auto it = pos.find(t); it != pos.end())
                m_(it->second, j) += v;
            else
                outside[t] += v;
        }
        for (const auto& [t, v] : outside)
            if (std::abs(v) > 1e-10)
                throw std::invalid_argument("operator does not preserve the particle-number sector");
    }
}

Eigen::VectorXcd SectorOperator::gather(const StateVector& state) const {
    const auto& dets = sector_.determinants();
    Eigen::VectorXcd v(static_cast<Eigen::Index>(dets.size()));
    for (std::size_t i = 0; i < dets.size(); ++i) v[static_cast<Eigen::Index>(i)] = state[dets[i].occ];
    return v;
}

void SectorOperator::scatter(const Eigen::VectorXcd& v, StateVector& state) const {
    const auto& dets = sector_.determinants();
    for (std::size_t i = 0; i < dets.size(); ++i) state[dets[i].occ] = v[static_cast<Eigen::Index>(i)];
}

double SectorOperator::expectation(const StateVector& state) const {
    const Eigen::VectorXcd v = gather(state);
    return v.dot(m_ * v).real();
}

StateVector SectorOperator::apply(const StateVector& state) const {
    StateVector out(state.n_qubits());
    scatter(m_ * gather(state), out);
    return out;
}

std::uint64_t cnot_count(std::span<const ExcitationOperator> ansatz, CnotModel model) {
    std::uint64_t n = 0;
    for (const auto& op : ansatz) n += static_cast<std::uint64_t>(op.is_double() ? model.double_ : model.single);
    return n;
}

}  // namespace fastvqe
