// Copyright 2026 The fastvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastvqe/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace fastvqe {

std::string to_string(MetricKind kind) {
    switch (kind) {
        case MetricKind::Gradient: return "gradient";
        case MetricKind::HeuristicGradient: return "heuristic-gradient";
        case MetricKind::HeuristicSelectedCI: return "heuristic-selected-ci";
    }
    return "unknown";
}

Population Population::from_sample(const MultiSetSample& sample) {
    Population p;
    p.entries.reserve(sample.counts.size());
    for (const auto& [d, n] : sample.counts) p.entries.emplace_back(d, static_cast<double>(n));
    return p;
}

Population Population::from_state(const StateVector& state) {
    Population p;
    for (std::uint64_t b : state.support()) p.entries.emplace_back(Determinant{b}, std::norm(state[b]));
    return p;
}

QubitOperator gradient_operator(const ExcitationOperator& op, const QubitOperator& h) {
    const QubitOperator a = qeb_generator(op, h.n_qubits());
    QubitOperator g = commutator(h, a);
    // [H, A] is Hermitian for anti-Hermitian A; strip round-off.
    QubitOperator out(h.n_qubits());
    for (const auto& [w, c] : g.terms()) out.add_term(w, c.real());
    return out.simplify();
}

double gradient_exact(const StateVector& state, const QubitOperator& grad_op) { return expectation(state, grad_op); }

double gradient_exact(const StateVector& state, const ExcitationOperator& op, const QubitOperator& h) {
    return gradient_exact(state, gradient_operator(op, h));
}

double gradient_sampled(const StateVector& state, const QubitOperator& grad_op, std::uint64_t shots, Rng& rng,
                        ShotLedger& ledger) {
    return sampled_expectation(state, grad_op, shots, rng, ledger, ShotLedger::Phase::Selection);
}

double gradient_determinant_route(const StateVector& state, const ExcitationOperator& op,
                                  const SpinOrbitalHamiltonian& hso) {
    // A|D_i> = tau|D_i> - tau^dagger|D_i>, so <D_i|A^dagger = <tau D_i| - <tau^dagger D_i|.
    const auto sup = state.support();
    const ExcitationOperator adj = op.transposed();
    double acc = 0.0;
    for (std::uint64_t bi : sup) {
        const Determinant di{bi};
        const cplx ci = std::conj(state[bi]);
        for (const auto& [image, sign] : {std::pair{apply_excitation(op, di), 1.0},
                                          std::pair{apply_excitation(adj, di), -1.0}}) {
            if (!image) continue;
            for (std::uint64_t bj : sup) acc += sign * (ci * state[bj]).real() * slater_condon(hso, *image, Determinant{bj});
        }
    }
    return 2.0 * acc;
}

double hg_alpha(const Population& pop, const ExcitationOperator& op, const SpinOrbitalHamiltonian& hso) {
    double acc = 0.0;
    for (const auto& [di, wi] : pop.entries) {
        const auto dk = apply_excitation(op, di);
        if (!dk) continue;
        double row = 0.0;
        for (const auto& [dj, wj] : pop.entries) row += wj * slater_condon(hso, *dk, dj);
        acc += wi * row;
    }
    return acc;
}

double hg_alpha(const MultiSetSample& sample, const ExcitationOperator& op, const SpinOrbitalHamiltonian& hso) {
    return hg_alpha(Population::from_sample(sample), op, hso);
}

double hsci_beta(const Population& pop, const ExcitationOperator& op, const SpinOrbitalHamiltonian& hso, double e_k) {
    double acc = 0.0;
    for (const auto& [di, wi] : pop.entries) {
        const auto dk = apply_excitation(op, di);
        if (!dk) continue;
        const double denom = e_k - slater_condon(hso, *dk, *dk);
        if (std::abs(denom) < kDenominatorGuard) continue;
        double row = 0.0;
        for (const auto& [dj, wj] : pop.entries) {
            const double hkj = slater_condon(hso, *dk, dj);
            row += wj * hkj * hkj;
        }
        acc += wi * row / denom;
    }
    return acc;
}

double hsci_beta(const MultiSetSample& sample, const ExcitationOperator& op, const SpinOrbitalHamiltonian& hso,
                 double e_k) {
    return hsci_beta(Population::from_sample(sample), op, hso, e_k);
}

namespace {

std::optional<std::size_t> argmax_active(std::span<const double> w, const OperatorPool& pool, double& best) {
    std::optional<std::size_t> idx;
    best = -1.0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (!pool.active[i]) continue;
        if (std::abs(w[i]) > best) {
            best = std::abs(w[i]);
            idx = i;
        }
    }
    return idx;
}

}  // namespace

ImportanceReport rank_and_select(std::span<const double> weights, OperatorPool& pool, double epsilon,
                                 MetricKind kind) {
    if (weights.size() != pool.size()) throw std::invalid_argument("rank_and_select: one weight per pool operator");
    ImportanceReport report;
    report.kind = kind;
    report.weights.assign(weights.begin(), weights.end());

    double best = 0.0;
    auto idx = argmax_active(weights, pool, best);
    if (!idx || best < epsilon) {
        pool.activate_all();
        report.replenished = true;
        idx = argmax_active(weights, pool, best);
        if (!idx || best < epsilon) return report;
    }
    report.selected = idx;
    if (kind != MetricKind::Gradient) pool.active[*idx] = false;
    return report;
}

}  // namespace fastvqe
