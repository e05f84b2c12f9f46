// Copyright 2026 The fastvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "oracles.hpp"

#include "fastvqe/simcore.hpp"
#include "fastvqe/solver.hpp"

#include <cmath>
#include <numeric>
#include <random>

using namespace fastvqe;

namespace {

double variance(const std::vector<double>& v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return s / static_cast<double>(v.size() - 1);
}

}  // namespace

TEST_CASE("reference state encoding") {
    const auto s = prepare_reference(hf_determinant(2, 0, 4), 4);
    CHECK(s.dim() == 16);
    CHECK(s[5] == cplx(1.0));
    CHECK(s.norm() == doctest::Approx(1.0));
    CHECK(s.support() == std::vector<std::uint64_t>{5});
    CHECK_THROWS((void)prepare_reference(Determinant{0b10000}, 4));
}

TEST_CASE("reference energy equals the Slater-Condon diagonal") {
    const auto mi = synth_integrals(3, 3, 2);
    const auto so = to_spin_orbitals(mi);
    const auto h = jordan_wigner(so);
    const auto ref = hf_determinant(2, 0, 6);
    CHECK(expectation(prepare_reference(ref, 6), h) == doctest::Approx(slater_condon(so, ref, ref)).epsilon(1e-12));
    CHECK(expectation(prepare_reference(ref, 6), QubitOperator::identity(6)) == doctest::Approx(1.0));
}

TEST_CASE("expectation rejects non-Hermitian operators") {
    const auto s = prepare_reference(Determinant{1}, 2);
    CHECK_THROWS_AS((void)expectation(s, QubitOperator(2, PauliWord::parse("XI"), cplx(0, 1))),
                    std::invalid_argument);
}

TEST_CASE("evolution closed forms") {
    const auto hf = hf_determinant(2, 0, 4);
    const auto dbl = ExcitationOperator::double_(0, 2, 1, 3);

    auto s = prepare_reference(hf, 4);
    const auto before = s;
    apply_qeb_evolution(s, dbl, 0.0);
    for (std::size_t i = 0; i < s.dim(); ++i) CHECK(s[i] == before[i]);

    const double theta = 0.37;
    apply_qeb_evolution(s, dbl, theta);
    CHECK(s[0b0101].real() == doctest::Approx(std::cos(theta)));
    CHECK(s[0b1010].real() == doctest::Approx(std::sin(theta)));
    CHECK(s.support().size() == 2);
}

TEST_CASE("evolution matches dense exponentials, conserves norm and sector, and inverts") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> angle(-M_PI, M_PI);
    const int n = 6;
    const auto pool = build_pool(hf_determinant(2, 0, n), n);
    const auto dets = sector_determinants(3, 1, 1);
    for (const auto& op : pool.ops) {
        const auto state = oracle::random_sector_state(dets, n, rng);
        const double theta = angle(rng);
        auto evolved = state;
        apply_qeb_evolution(evolved, op, theta);

        const oracle::Mat u = oracle::expm(theta * oracle::dense_qeb_generator(op, n));
        const Eigen::VectorXcd expect = u * oracle::to_vector(state);
        CHECK((oracle::to_vector(evolved) - expect).cwiseAbs().maxCoeff() < 1e-10);

        CHECK(std::abs(evolved.norm() - 1.0) < 1e-12);
        CHECK(Sector(3, 1, 1).leakage(evolved) == 0.0);

        apply_qeb_evolution(evolved, op, -theta);
        CHECK((oracle::to_vector(evolved) - oracle::to_vector(state)).cwiseAbs().maxCoeff() < 1e-12);

        // The generator action equals the derivative of the rotation.
        const auto gen = apply_qeb_generator(state, op);
        const Eigen::VectorXcd dense_gen = oracle::dense_qeb_generator(op, n) * oracle::to_vector(state);
        CHECK((oracle::to_vector(gen) - dense_gen).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("operator application matches the dense matrix") {
    std::mt19937_64 rng(9);
    const auto mi = synth_integrals(4, 2, 2);
    const auto h = jordan_wigner(to_spin_orbitals(mi));
    const auto state = oracle::random_sector_state(sector_determinants(2, 1, 1), 4, rng);
    const Eigen::VectorXcd expect = oracle::dense_operator(h) * oracle::to_vector(state);
    CHECK((oracle::to_vector(apply_operator(state, h)) - expect).cwiseAbs().maxCoeff() < 1e-12);
    const double e = (oracle::to_vector(state).adjoint() * expect)(0).real();
    CHECK(expectation(state, h) == doctest::Approx(e).epsilon(1e-12));
}

TEST_CASE("FCI eigenvector expectation recovers the eigenvalue") {
    const auto mi = synth_integrals(61, 3, 2);
    const auto so = to_spin_orbitals(mi);
    const auto h = jordan_wigner(so);
    const Sector sector(3, 1, 1);
    const SectorOperator hs(h, sector);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(hs.matrix());
    StateVector ground(6);
    hs.scatter(eig.eigenvectors().col(0), ground);
    CHECK(expectation(ground, h) == doctest::Approx(eig.eigenvalues()(0)).epsilon(1e-9));
    CHECK(hs.expectation(ground) == doctest::Approx(eig.eigenvalues()(0)).epsilon(1e-9));
    CHECK(fci_ground_energy(so, 2, 0).energy == doctest::Approx(eig.eigenvalues()(0)).epsilon(1e-10));
}

TEST_CASE("sector operator equals the dense restriction") {
    const auto mi = synth_integrals(62, 3, 4);
    const auto h = jordan_wigner(to_spin_orbitals(mi));
    const Sector sector(3, 2, 2);
    const SectorOperator hs(h, sector);
    const auto dense = oracle::restrict_to_sector(oracle::dense_operator(h), sector.determinants());
    CHECK((hs.matrix() - dense).cwiseAbs().maxCoeff() < 1e-12);
    // Operators that leave the sector are rejected.
    CHECK_THROWS_AS(SectorOperator(QubitOperator(6, PauliWord::parse("XIIIII"), 1.0), sector), std::invalid_argument);
}

TEST_CASE("determinant sampling") {
    ShotLedger ledger;
    Rng rng(5);
    const auto ref = prepare_reference(Determinant{0b0101}, 4);
    const auto delta = sample_determinants(ref, 1000, rng, ledger);
    CHECK(delta.total == 1000);
    REQUIRE(delta.counts.size() == 1);
    CHECK(delta.counts.at(Determinant{0b0101}) == 1000);
    CHECK(ledger.population_sampling() == 1000);
    CHECK(ledger.selection() == 0);

    StateVector sup(4);
    sup[0b0101] = M_SQRT1_2;
    sup[0b1010] = M_SQRT1_2;
    const std::uint64_t shots = 100000;
    const auto two = sample_determinants(sup, shots, rng, ledger);
    const double sigma = 0.5 / std::sqrt(static_cast<double>(shots));
    for (const auto& [d, c] : two.counts) CHECK(std::abs(static_cast<double>(c) / shots - 0.5) < 5 * sigma);
    std::uint64_t total = 0;
    for (const auto& [d, c] : two.counts) total += c;
    CHECK(total == shots);

    Rng a(99), b(99);
    ShotLedger la, lb;
    CHECK(sample_determinants(sup, 500, a, la).counts == sample_determinants(sup, 500, b, lb).counts);
    CHECK_THROWS((void)sample_determinants(sup, 0, a, la));
}

TEST_CASE("empirical distribution converges in total variation") {
    std::mt19937_64 gen(123);
    const auto dets = sector_determinants(4, 2, 2);
    const auto state = oracle::random_sector_state(dets, 8, gen);
    Rng rng(321);
    ShotLedger ledger;
    const std::uint64_t shots = 100000;
    const auto sample = sample_determinants(state, shots, rng, ledger);
    double tv = 0.0;
    for (auto d : dets) {
        const auto it = sample.counts.find(d);
        const double f = it == sample.counts.end() ? 0.0 : static_cast<double>(it->second) / shots;
        tv += std::abs(f - std::norm(state[d.occ]));
    }
    CHECK(0.5 * tv < 0.02);
    for (const auto& [d, c] : sample.counts) CHECK(spin_counts(d, 4) == std::pair{2, 2});
}

TEST_CASE("sampled expectation") {
    ShotLedger ledger;
    Rng rng(8);

    // Diagonal operator on a basis state: exact for any shot count.
    QubitOperator zz(4);
    zz.add_term(PauliWord::parse("ZIZI"), 0.7);
    zz.add_term(PauliWord::parse("IZII"), -0.2);
    zz.add_term(PauliWord::identity(), 0.1);
    const auto basis = prepare_reference(Determinant{0b0101}, 4);
    CHECK(sampled_expectation(basis, zz, 3, rng, ledger) == doctest::Approx(expectation(basis, zz)));
    CHECK(ledger.selection() == 3);

    // Infinite-shot limit within 3 sigma.
    std::mt19937_64 gen(4);
    const auto mi = synth_integrals(71, 2, 2);
    const auto h = jordan_wigner(to_spin_orbitals(mi));
    const auto state = oracle::random_real_sector_state(sector_determinants(2, 1, 1), 4, gen);
    const std::uint64_t big = 1000000;
    double var = 0.0;
    for (const auto& [w, c] : h.terms()) {
        if (w.is_identity()) continue;
        const double p = pauli_expectation(state, w).real();
        var += std::norm(c) * (1.0 - p * p) / static_cast<double>(big);
    }
    const double est = sampled_expectation(state, h, big, rng, ledger);
    CHECK(std::abs(est - expectation(state, h)) < 3.0 * std::sqrt(var) + 1e-12);

    Rng r1(1), r2(1);
    CHECK(sampled_expectation(state, h, 100, r1, ledger) == sampled_expectation(state, h, 100, r2, ledger));
    CHECK_THROWS((void)sampled_expectation(state, h, 0, r1, ledger));
}

TEST_CASE("sampled expectation variance scales as 1/shots") {
    std::mt19937_64 gen(14);
    const auto mi = synth_integrals(72, 2, 2);
    const auto h = jordan_wigner(to_spin_orbitals(mi));
    const auto state = oracle::random_real_sector_state(sector_determinants(2, 1, 1), 4, gen);
    std::vector<double> log_s, log_v;
    for (std::uint64_t shots : {100u, 1000u, 10000u}) {
        std::vector<double> est;
        ShotLedger ledger;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            Rng rng(derive_seed(500, shots, seed));
            est.push_back(sampled_expectation(state, h, shots, rng, ledger));
        }
        CHECK(ledger.selection() == 100 * shots);
        log_s.push_back(std::log10(static_cast<double>(shots)));
        log_v.push_back(std::log10(variance(est)));
    }
    const double slope = (log_v.back() - log_v.front()) / (log_s.back() - log_s.front());
    CHECK(std::abs(slope + 1.0) < 0.2);
}

TEST_CASE("ledger conservation") {
    ShotLedger ledger;
    Rng rng(2);
    const auto s = prepare_reference(Determinant{0b0101}, 4);
    std::uint64_t expect = 0;
    for (std::uint64_t n : {10u, 20u, 35u}) {
        (void)sample_determinants(s, n, rng, ledger);
        expect += n;
        (void)sampled_expectation(s, QubitOperator::identity(4), n, rng, ledger);
        expect += n;
        CHECK(ledger.cumulative() == expect);
    }
    CHECK(ledger.cumulative() == ledger.selection() + ledger.population_sampling());
}

TEST_CASE("CNOT model") {
    const auto s = ExcitationOperator::single(0, 1);
    const auto d = ExcitationOperator::double_(0, 2, 1, 3);
    CHECK(cnot_count(std::vector<ExcitationOperator>{}) == 0);
    CHECK(cnot_count(std::vector{s, d, d}) == 28);
    CHECK(cnot_count(std::vector{s, d}, CnotModel{4, 20}) == 24);
    std::vector<ExcitationOperator> growing;
    std::uint64_t last = 0;
    for (int k = 0; k < 6; ++k) {
        growing.push_back(k % 2 ? s : d);
        const auto c = cnot_count(growing);
        CHECK(c >= last);
        last = c;
    }
}

TEST_CASE("seed derivation separates streams") {
    CHECK(derive_seed(1, 1, 0) != derive_seed(1, 2, 0));
    CHECK(derive_seed(1, 1, 0) != derive_seed(1, 1, 1));
    CHECK(derive_seed(1, 1, 0) != derive_seed(2, 1, 0));
    CHECK(derive_seed(7, 3, 4) == derive_seed(7, 3, 4));
}
