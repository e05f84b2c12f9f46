// Copyright 2026 The fastvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "oracles.hpp"

#include "fastvqe/bench.hpp"
#include "fastvqe/solver.hpp"

#include <random>

using namespace fastvqe;

namespace {

std::uint64_t binomial(int n, int k) {
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

const System& h2() {
    static const auto sys = load_system("h2");
    return *sys;
}

const System& h4() {
    static const auto sys = load_system("h4");
    return *sys;
}

void check_trace_invariants(const RunResult& r, const System& sys, const RunConfig& cfg) {
    REQUIRE(r.complete);
    double last_e = sys.hf_energy();
    int last_params = 0;
    std::uint64_t last_cnots = 0, last_shots = 0;
    std::vector<ExcitationOperator> prefix;
    for (const auto& rec : r.records) {
        prefix.push_back(rec.selected);
        CHECK(rec.energy >= sys.fci_energy() - 1e-9);
        if (cfg.mode == Mode::Statevector) CHECK(rec.energy <= last_e + 1e-10);
        CHECK(rec.n_params == last_params + 1);
        CHECK(rec.n_cnots >= last_cnots);
        CHECK(rec.n_cnots == cnot_count(prefix, cfg.cnots));
        CHECK(rec.cumulative_shots >= last_shots);
        CHECK(rec.error_vs_fci == doctest::Approx(rec.energy - sys.fci_energy()).epsilon(1e-15));
        last_e = rec.energy;
        last_params = rec.n_params;
        last_cnots = rec.n_cnots;
        last_shots = rec.cumulative_shots;
    }
}

}  // namespace

TEST_CASE("FCI oracle") {
    SUBCASE("one electron, diagonal one-body term") {
        auto mi = MolecularIntegrals::zeros(2, 1, 1);
        mi.h(0, 0) = -0.3;
        mi.h(1, 1) = -0.8;
        mi.e_core = 0.25;
        const auto r = fci_ground_energy(to_spin_orbitals(mi), 1, 1);
        CHECK(r.energy == doctest::Approx(-0.8 + 0.25).epsilon(1e-14));
        CHECK(r.dimension == 2);
    }
    SUBCASE("matches the dense Jordan-Wigner spectrum on random integrals") {
        for (std::uint64_t seed = 200; seed < 205; ++seed) {
            const auto mi = synth_integrals(seed, 3, 2);
            const auto dense = oracle::dense_hamiltonian(mi);
            const auto dets = sector_determinants(3, 1, 1);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(oracle::restrict_to_sector(dense, dets));
            const auto r = fci_ground_energy(to_spin_orbitals(mi), 2, 0);
            CHECK(std::abs(r.energy - es.eigenvalues()(0)) < 1e-10);
            CHECK(r.dimension == binomial(3, 1) * binomial(3, 1));
        }
    }
    SUBCASE("Lanczos and dense paths agree") {
        const auto so = to_spin_orbitals(synth_integrals(7, 5, 4));
        const auto dense = fci_ground_energy(so, 4, 0);
        const auto lanczos = fci_ground_energy(so, 4, 0, 10);
        CHECK(dense.dimension == 100);
        CHECK(std::abs(dense.energy - lanczos.energy) < 1e-10);
    }
    SUBCASE("shipped fixtures reproduce the reference FCI energies") {
        CHECK(h2().fci_energy() == doctest::Approx(-1.137306035753).epsilon(1e-11));
        CHECK(h4().fci_energy() == doctest::Approx(-1.996150325519).epsilon(1e-11));
        CHECK(h2().hf_energy() == doctest::Approx(-1.116998996754).epsilon(1e-11));
        CHECK(h4().hf_energy() == doctest::Approx(-1.829137412443).epsilon(1e-11));
    }
    CHECK_THROWS((void)fci_ground_energy(to_spin_orbitals(synth_integrals(1, 2, 2)), 2, 1));
    CHECK_THROWS((void)fci_ground_energy(to_spin_orbitals(synth_integrals(1, 2, 2)), 6, 0));
}

TEST_CASE("analytic ansatz gradient matches finite differences") {
    const auto& sys = h4();
    const auto& pool = sys.pool();
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> angle(-0.8, 0.8);
    std::vector<ExcitationOperator> ops(pool.ops.begin(), pool.ops.begin() + 12);
    for (int trial = 0; trial < 3; ++trial) {
        Eigen::VectorXd th(static_cast<Eigen::Index>(ops.size()));
        for (auto& t : th) t = angle(rng);
        Eigen::VectorXd g;
        const double e = ansatz_energy(sys.reference(), ops, th, sys.sector_hamiltonian(), &g);
        CHECK(e == doctest::Approx(ansatz_energy(sys.reference(), ops, th, sys.sector_hamiltonian(), nullptr)));
        const auto state = prepare_ansatz_state(sys.reference(), sys.n_so(), ops, th);
        CHECK(e == doctest::Approx(expectation(state, sys.qubit_hamiltonian())).epsilon(1e-12));
        for (Eigen::Index k = 0; k < th.size(); ++k) {
            const double fd = oracle::central_difference(
                [&](double t) {
                    Eigen::VectorXd x = th;
                    x[k] = t;
                    return ansatz_energy(sys.reference(), ops, x, sys.sector_hamiltonian(), nullptr);
                },
                th[k]);
            CHECK(std::abs(g[k] - fd) < 1e-6);
        }
    }
}

TEST_CASE("VQE") {
    const auto& sys = h2();
    SUBCASE("empty ansatz returns the HF energy") {
        const auto r = vqe_minimize(sys.reference(), {}, Eigen::VectorXd(0), sys.sector_hamiltonian());
        CHECK(r.energy == doctest::Approx(sys.hf_energy()).epsilon(1e-14));
    }
    SUBCASE("one double excitation is exact for H2") {
        const std::vector ops{ExcitationOperator::double_(0, 2, 1, 3)};
        const auto r = vqe_minimize(sys.reference(), ops, Eigen::VectorXd(0), sys.sector_hamiltonian());
        CHECK(std::abs(r.energy - sys.fci_energy()) < 1e-8);
        CHECK(r.converged);
    }
    SUBCASE("warm start keeps previous angles") {
        const std::vector ops{ExcitationOperator::double_(0, 2, 1, 3), ExcitationOperator::single(0, 1)};
        Eigen::VectorXd warm(1);
        warm << -0.11;
        const auto r = vqe_minimize(sys.reference(), ops, warm, sys.sector_hamiltonian());
        CHECK(r.thetas.size() == 2);
        CHECK(std::abs(r.energy - sys.fci_energy()) < 1e-8);
        CHECK_THROWS((void)vqe_minimize(sys.reference(), {}, warm, sys.sector_hamiltonian()));
    }
}

TEST_CASE("run configuration") {
    CHECK(parse_method("adapt") == Method::Adapt);
    CHECK(parse_method("fast-hg") == Method::FastHG);
    CHECK(parse_method("fast-hsci") == Method::FastHSCI);
    CHECK_THROWS((void)parse_method("vqe"));
    CHECK(parse_mode("finite") == Mode::FiniteShot);
    CHECK_THROWS((void)parse_mode("noisy"));
    CHECK(metric_for(Method::Adapt) == MetricKind::Gradient);

    RunConfig cfg;
    cfg.mode = Mode::FiniteShot;
    cfg.shots = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.shots = 10;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.shots_per_eval() == 10);
    cfg.mode = Mode::Statevector;
    CHECK(cfg.shots_per_eval() == 0);
}

TEST_CASE("all methods solve H2 in statevector mode within three operators") {
    for (auto m : {Method::Adapt, Method::FastHG, Method::FastHSCI}) {
        RunConfig cfg;
        cfg.method = m;
        cfg.max_operators = 3;
        const auto r = run_adaptive(h2(), cfg);
        CAPTURE(to_string(m));
        REQUIRE_FALSE(r.records.empty());
        CHECK(std::abs(r.records.back().energy - h2().fci_energy()) < 1e-8);
        check_trace_invariants(r, h2(), cfg);
    }
}

TEST_CASE("H4 statevector runs: invariants and convergence") {
    for (auto m : {Method::Adapt, Method::FastHG, Method::FastHSCI}) {
        RunConfig cfg;
        cfg.method = m;
        cfg.max_operators = 30;
        const auto r = run_adaptive(h4(), cfg);
        CAPTURE(to_string(m));
        check_trace_invariants(r, h4(), cfg);
        CHECK(r.records.back().error_vs_fci < 1e-6);
        CHECK(r.ledger.cumulative() == 0);
        CHECK(r.ansatz.size() == r.records.size());
    }
}

TEST_CASE("shot accounting in finite-shot mode") {
    const std::uint64_t s = 100;
    RunConfig fast;
    fast.method = Method::FastHG;
    fast.mode = Mode::FiniteShot;
    fast.shots = s;
    fast.max_operators = 8;
    const auto rf = run_adaptive(h4(), fast);
    check_trace_invariants(rf, h4(), fast);
    for (const auto& rec : rf.records) CHECK(rec.cumulative_shots == static_cast<std::uint64_t>(rec.iteration) * s);
    CHECK(rf.ledger.selection() == 0);

    RunConfig adapt = fast;
    adapt.method = Method::Adapt;
    const auto ra = run_adaptive(h4(), adapt);
    check_trace_invariants(ra, h4(), adapt);
    std::uint64_t expect = 0;
    for (const auto& rec : ra.records) {
        expect += s * rec.active_pool_size;
        CHECK(rec.active_pool_size == h4().pool().size());
        CHECK(rec.cumulative_shots == expect);
    }
    CHECK(ra.ledger.population_sampling() == 0);
}

TEST_CASE("fast modes remove selected operators until replenished") {
    RunConfig cfg;
    cfg.method = Method::FastHSCI;
    cfg.max_operators = 40;
    const auto r = run_adaptive(h4(), cfg);
    std::size_t expected_active = h4().pool().size();
    for (const auto& rec : r.records) {
        // The recorded count is taken before any replenishment.
        CHECK(rec.active_pool_size == expected_active);
        expected_active = (rec.replenished ? h4().pool().size() : expected_active) - 1;
    }
}

TEST_CASE("identical configurations give identical records") {
    RunConfig cfg;
    cfg.method = Method::FastHSCI;
    cfg.mode = Mode::FiniteShot;
    cfg.shots = 200;
    cfg.seed = 42;
    cfg.max_operators = 10;
    const auto a = run_adaptive(h4(), cfg);
    const auto b = run_adaptive(h4(), cfg);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].energy == b.records[i].energy);
        CHECK(a.records[i].selected == b.records[i].selected);
        CHECK(a.records[i].weights == b.records[i].weights);
    }
    cfg.seed = 43;
    const auto c = run_adaptive(h4(), cfg);
    bool differs = c.records.size() != a.records.size();
    for (std::size_t i = 0; !differs && i < a.records.size(); ++i)
        differs = a.records[i].weights != c.records[i].weights;
    CHECK(differs);
}

TEST_CASE("streaming callback sees every record in order") {
    RunConfig cfg;
    cfg.max_operators = 5;
    std::vector<int> seen;
    const auto r = run_adaptive(h4(), cfg, [&](const IterationRecord& rec) { seen.push_back(rec.iteration); });
    REQUIRE(seen.size() == r.records.size());
    for (std::size_t i = 0; i < seen.size(); ++i) CHECK(seen[i] == static_cast<int>(i) + 1);
}

TEST_CASE("max operators of zero yields an empty trace") {
    RunConfig cfg;
    cfg.max_operators = 0;
    const auto r = run_adaptive(h2(), cfg);
    CHECK(r.records.empty());
    CHECK(r.complete);
}
