// Copyright 2026 The fastvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastvqe/solver.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace fastvqe {

// ---------------------------------------------------------------------------
// Ansatz evaluation
// ---------------------------------------------------------------------------

StateVector prepare_ansatz_state(Determinant ref, int n_so, std::span<const AnsatzElement> ansatz) {
    StateVector s = prepare_reference(ref, n_so);
    for (const auto& el : ansatz) apply_qeb_evolution(s, el.op, el.theta);
    return s;
}

StateVector prepare_ansatz_state(Determinant ref, int n_so, std::span<const ExcitationOperator> ops,
                                 const Eigen::VectorXd& thetas) {
    StateVector s = prepare_reference(ref, n_so);
    for (std::size_t k = 0; k < ops.size(); ++k) apply_qeb_evolution(s, ops[k], thetas[static_cast<Eigen::Index>(k)]);
    return s;
}

double ansatz_energy(Determinant ref, std::span<const ExcitationOperator> ops, const Eigen::VectorXd& thetas,
                     const SectorOperator& h, Eigen::VectorXd* grad) {
    const int n_so = h.sector().n_qubits();
    StateVector psi = prepare_ansatz_state(ref, n_so, ops, thetas);
    if (!grad) return h.expectation(psi);

    StateVector lambda = h.apply(psi);
    double energy = 0.0;
    {
        const auto a = psi.amplitudes();
        const auto b = lambda.amplitudes();
        cplx acc{0.0};
        for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
        energy = acc.real();
    }

    grad->resize(static_cast<Eigen::Index>(ops.size()));
    for (std::size_t k = ops.size(); k-- > 0;) {
        const auto& op = ops[k];
        const std::uint64_t om = op.occ_mask();
        const std::uint64_t flip = om | op.virt_mask();
        // <lambda| A |psi> with A|s> = |t>, A|t> = -|s>
        cplx acc{0.0};
        for (std::uint64_t b = 0; b < psi.dim(); ++b) {
            if ((b & flip) != om) continue;
            const std::uint64_t t = b ^ flip;
            acc += std::conj(lambda[t]) * psi[b] - std::conj(lambda[b]) * psi[t];
        }
        (*grad)[static_cast<Eigen::Index>(k)] = 2.0 * acc.real();
        const double theta = thetas[static_cast<Eigen::Index>(k)];
        apply_qeb_evolution(psi, op, -theta);
        apply_qeb_evolution(lambda, op, -theta);
    }
    return energy;
}

VqeResult vqe_minimize(Determinant ref, std::span<const ExcitationOperator> ops, const Eigen::VectorXd& warm,
                       const SectorOperator& h, const LbfgsOptions& options) {
    const auto n = static_cast<Eigen::Index>(ops.size());
    if (warm.size() > n) throw std::invalid_argument("vqe_minimize: more warm-start angles than operators");
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(n);
    x0.head(warm.size()) = warm;

    VqeResult out;
    if (n == 0) {
        out.thetas = x0;
        out.energy = ansatz_energy(ref, ops, x0, h, nullptr);
        out.converged = true;
        return out;
    }

    const Objective f = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) { return ansatz_energy(ref, ops, x, h, &g); };
    const LbfgsResult r = lbfgs_minimize(f, x0, options);
    out.thetas = r.x;
    out.energy = r.f;
    out.gradient_norm = r.gradient_norm;
    out.iterations = r.iterations;
    out.converged = r.converged;
    return out;
}

// ---------------------------------------------------------------------------
// FCI oracle
// ---------------------------------------------------------------------------

namespace {

std::vector<Determinant> connected_determinants(Determinant d, int n_orb) {
    const int n_so = 2 * n_orb;
    std::vector<int> occ, vir;
    for (int p = 0; p < n_so; ++p) (d.test(p) ? occ : vir).push_back(p);
    auto spin = [n_orb](int p) { return p >= n_orb; };
    std::vector<Determinant> out;
    for (int i : occ)
        for (int a : vir)
            if (spin(i) == spin(a)) out.push_back(Determinant{d.occ ^ (std::uint64_t{1} << i) ^ (std::uint64_t{1} << a)});
    for (std::size_t x = 0; x < occ.size(); ++x)
        for (std::size_t y = x + 1; y < occ.size(); ++y)
            for (std::size_t u = 0; u < vir.size(); ++u)
                for (std::size_t v = u + 1; v < vir.size(); ++v) {
                    const int i = occ[x], j = occ[y], a = vir[u], b = vir[v];
                    if (spin(i) + spin(j) != spin(a) + spin(b)) continue;
                    out.push_back(Determinant{d.occ ^ (std::uint64_t{1} << i) ^ (std::uint64_t{1} << j) ^
                                              (std::uint64_t{1} << a) ^ (std::uint64_t{1} << b)});
                }
    return out;
}

double lanczos_lowest(const Eigen::SparseMatrix<double>& h) {
    const Eigen::Index n = h.rows();
    const int m = static_cast<int>(std::min<Eigen::Index>(n, 120));
    Eigen::VectorXd start = Eigen::VectorXd::Ones(n).normalized();
    double previous = std::numeric_limits<double>::infinity();
    for (int restart = 0; restart < 50; ++restart) {
        Eigen::MatrixXd basis(n, m);
        Eigen::VectorXd alpha(m), beta(m);
        basis.col(0) = start;
        int used = m;
        for (int j = 0; j < m; ++j) {
            Eigen::VectorXd w = h * basis.col(j);
            alpha[j] = basis.col(j).dot(w);
            // full reorthogonalization, twice
            for (int pass = 0; pass < 2; ++pass) w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * w);
            beta[j] = w.norm();
            if (j + 1 == m) break;
            if (beta[j] < 1e-12) {
                used = j + 1;
                break;
            }
            basis.col(j + 1) = w / beta[j];
        }
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(used, used);
        for (int j = 0; j < used; ++j) {
            t(j, j) = alpha[j];
            if (j + 1 < used) t(j, j + 1) = t(j + 1, j) = beta[j];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        const double e0 = es.eigenvalues()[0];
        const Eigen::VectorXd ritz = basis.leftCols(used) * es.eigenvectors().col(0);
        const double residual = (h * ritz - e0 * ritz).norm();
        if (residual < 1e-10 || std::abs(e0 - previous) < 1e-14 || used < m) return e0;
        previous = e0;
        start = ritz.normalized();
    }
    return previous;
}

}  // namespace

FciResult fci_ground_energy(const SpinOrbitalHamiltonian& hso, int n_elec, int ms2, std::size_t dense_limit) {
    if ((n_elec + ms2) % 2 != 0) throw std::invalid_argument("fci: n_elec and ms2 parity mismatch");
    const int n_alpha = (n_elec + ms2) / 2, n_beta = (n_elec - ms2) / 2;
    if (n_alpha < 0 || n_beta < 0 || n_alpha > hso.n_orb || n_beta > hso.n_orb)
        throw std::invalid_argument("fci: infeasible electron counts");
    const auto dets = sector_determinants(hso.n_orb, n_alpha, n_beta);
    FciResult out;
    out.dimension = dets.size();
    if (dets.size() > kMaxFciDimension)
        throw std::invalid_argument(fmt::format(
            "fci: sector dimension {} exceeds {}; use a smaller active space", dets.size(), kMaxFciDimension));

    const auto n = static_cast<Eigen::Index>(dets.size());
    if (dets.size() <= dense_limit) {
        Eigen::MatrixXd h(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j <= i; ++j) h(i, j) = h(j, i) = slater_condon(hso, dets[i], dets[j]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
        out.energy = es.eigenvalues()[0];
        return out;
    }

    std::unordered_map<std::uint64_t, Eigen::Index> pos;
    for (Eigen::Index i = 0; i < n; ++i) pos.emplace(dets[i].occ, i);
    std::vector<Eigen::Triplet<double>> triplets;
    for (Eigen::Index j = 0; j < n; ++j) {
        triplets.emplace_back(j, j, slater_condon(hso, dets[j], dets[j]));
        for (const auto& dk : connected_determinants(dets[j], hso.n_orb)) {
            const double v = slater_condon(hso, dk, dets[j]);
            if (v != 0.0) triplets.emplace_back(pos.at(dk.occ), j, v);
        }
    }
    Eigen::SparseMatrix<double> h(n, n);
    h.setFromTriplets(triplets.begin(), triplets.end());
    out.energy = lanczos_lowest(h);
    return out;
}

// ---------------------------------------------------------------------------
// Adaptive loop
// ---------------------------------------------------------------------------

std::string to_string(Method m) {
    switch (m) {
        case Method::Adapt: return "adapt";
        case Method::FastHG: return "fast-hg";
        case Method::FastHSCI: return "fast-hsci";
    }
    return "unknown";
}

std::string to_string(Mode m) { return m == Mode::Statevector ? "statevector" : "finite"; }

Method parse_method(const std::string& s) {
    if (s == "adapt") return Method::Adapt;
    if (s == "fast-hg" || s == "hg") return Method::FastHG;
    if (s == "fast-hsci" || s == "hsci") return Method::FastHSCI;
    throw std::invalid_argument("unknown method '" + s + "' (adapt | fast-hg | fast-hsci)");
}

Mode parse_mode(const std::string& s) {
    if (s == "statevector" || s == "sv") return Mode::Statevector;
    if (s == "finite" || s == "finite-shot") return Mode::FiniteShot;
    throw std::invalid_argument("unknown mode '" + s + "' (statevector | finite)");
}

MetricKind metric_for(Method m) noexcept {
    switch (m) {
        case Method::Adapt: return MetricKind::Gradient;
        case Method::FastHG: return MetricKind::HeuristicGradient;
        case Method::FastHSCI: return MetricKind::HeuristicSelectedCI;
    }
    return MetricKind::Gradient;
}

void RunConfig::validate() const {
    if (mode == Mode::FiniteShot && shots < 1) throw std::invalid_argument("finite-shot mode requires shots >= 1");
    if (max_operators < 0) throw std::invalid_argument("max operators must be non-negative");
    if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be non-negative");
}

System::System(std::string name, MolecularIntegrals integrals)
    : name_(std::move(name)), mi_(std::move(integrals)), hso_(to_spin_orbitals(mi_)), hq_(jordan_wigner(hso_)) {
    ref_ = hf_determinant(mi_.n_elec, mi_.ms2, hso_.n_so);
    const auto [na, nb] = spin_counts(ref_, mi_.n_orb);
    hsec_ = std::make_unique<SectorOperator>(hq_, Sector(mi_.n_orb, na, nb));
    pool_ = build_pool(ref_, hso_.n_so);
    e_fci_ = fci_ground_energy(hso_, mi_.n_elec, mi_.ms2).energy;
}

double System::hf_energy() const { return slater_condon(hso_, ref_, ref_); }

RunResult run_adaptive(const System& system, const RunConfig& config,
                       const std::function<void(const IterationRecord&)>& on_iteration) {
    config.validate();
    RunResult result;
    OperatorPool pool = system.pool();
    const int n_so = system.n_so();
    const auto& hso = system.spin_hamiltonian();
    const MetricKind kind = metric_for(config.method);
    const bool finite = config.mode == Mode::FiniteShot;

    std::vector<QubitOperator> grad_ops;
    if (config.method == Method::Adapt) {
        grad_ops.reserve(pool.size());
        for (const auto& op : pool.ops) grad_ops.push_back(gradient_operator(op, system.qubit_hamiltonian()));
    }

    std::vector<ExcitationOperator> ops;
    Eigen::VectorXd thetas(0);
    StateVector state = prepare_reference(system.reference(), n_so);
    double energy = system.hf_energy();

    try {
        for (int k = 1; k <= config.max_operators; ++k) {
            const std::size_t active_before = pool.active_count();
            std::vector<double> weights(pool.size(), 0.0);

            if (kind == MetricKind::Gradient) {
                const std::uint64_t iter_seed = derive_seed(config.seed, 2, static_cast<std::uint64_t>(k));
                for (std::size_t mu = 0; mu < pool.size(); ++mu) {
                    if (!pool.active[mu]) continue;
                    if (finite) {
                        Rng rng(derive_seed(iter_seed, mu));
                        weights[mu] = gradient_sampled(state, grad_ops[mu], config.shots, rng, result.ledger);
                    } else {
                        weights[mu] = gradient_exact(state, grad_ops[mu]);
                    }
                }
            } else {
                Population pop;
                if (finite) {
                    Rng rng(derive_seed(config.seed, 1, static_cast<std::uint64_t>(k)));
                    pop = Population::from_sample(sample_determinants(state, config.shots, rng, result.ledger));
                } else {
                    pop = Population::from_state(state);
                }
                for (std::size_t mu = 0; mu < pool.size(); ++mu)
                    weights[mu] = kind == MetricKind::HeuristicGradient ? hg_alpha(pop, pool.ops[mu], hso)
                                                                        : hsci_beta(pop, pool.ops[mu], hso, energy);
            }

            ImportanceReport report = rank_and_select(weights, pool, config.epsilon, kind);
            if (!report.selected) {
                result.converged = true;
                break;
            }

            ops.push_back(pool.ops[*report.selected]);
            const VqeResult vqe = vqe_minimize(system.reference(), ops, thetas, system.sector_hamiltonian(), config.vqe);
            thetas = vqe.thetas;
            energy = vqe.energy;
            state = prepare_ansatz_state(system.reference(), n_so, ops, thetas);

            IterationRecord rec;
            rec.iteration = k;
            rec.selected = ops.back();
            rec.selected_index = *report.selected;
            rec.energy = energy;
            rec.error_vs_fci = energy - system.fci_energy();
            rec.n_params = static_cast<int>(ops.size());
            rec.n_cnots = cnot_count(ops, config.cnots);
            rec.cumulative_shots = result.ledger.cumulative();
            rec.active_pool_size = active_before;
            rec.replenished = report.replenished;
            rec.weights = std::move(report.weights);
            result.records.push_back(std::move(rec));
            if (on_iteration) on_iteration(result.records.back());

            if (std::abs(energy - system.fci_energy()) < config.fci_cutoff) break;
        }
    } catch (const std::exception& e) {
        result.complete = false;
        result.error = e.what();
    }

    for (std::size_t k = 0; k < ops.size(); ++k) {
        const auto idx = static_cast<Eigen::Index>(k);
        result.ansatz.push_back({ops[k], idx < thetas.size() ? thetas[idx] : 0.0});
    }
    return result;
}

}  // namespace fastvqe
