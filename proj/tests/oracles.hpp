// Copyright 2026 The fastvqe Authors
// SPDX-License-Identifier: Apache-2.0

// Independent reference implementations used only by the tests. Nothing here
// calls into the library's algebra: matrices are assembled from Kronecker
// products of 2x2 blocks and exponentials come from Eigen's MatrixFunctions.

#pragma once

#include "fastvqe/fock.hpp"
#include "fastvqe/hamio.hpp"
#include "fastvqe/qubitmap.hpp"
#include "fastvqe/simcore.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat pauli2(char c) {
    Mat m(2, 2);
    switch (c) {
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: m << 1, 0, 0, 1; break;
    }
    return m;
}

/// Kronecker product with qubit 0 as the least significant factor.
inline Mat kron_chain(const std::vector<Mat>& per_qubit) {
    Mat out = Mat::Identity(1, 1);
    for (const auto& m : per_qubit) out = Eigen::kroneckerProduct(m, out).eval();
    return out;
}

inline Mat dense_word(const std::string& letters) {
    // letters[0] is qubit 0
    std::vector<Mat> f;
    for (char c : letters) f.push_back(pauli2(c));
    return kron_chain(f);
}

inline Mat dense_operator(const fastvqe::QubitOperator& q) {
    const int n = q.n_qubits();
    Mat out = Mat::Zero(std::int64_t{1} << n, std::int64_t{1} << n);
    for (const auto& [w, c] : q.terms()) out += c * dense_word(w.to_string(n));
    return out;
}

using Sparse = Eigen::SparseMatrix<cplx>;

inline Sparse sparse2(const Mat& m) { return m.sparseView(); }

inline Sparse sparse_chain(const std::vector<Mat>& per_qubit) {
    Sparse out(1, 1);
    out.insert(0, 0) = 1.0;
    for (const auto& m : per_qubit) {
        Sparse next = Eigen::kroneckerProduct(sparse2(m), out);
        out = next;
    }
    return out;
}

inline Mat lower2() {
    Mat m(2, 2);
    m << 0, 1, 0, 0;
    return m;
}

/// |0><1| on qubit p with Z on every lower qubit: the textbook JW a_p.
inline Sparse jw_lower(int p, int n) {
    std::vector<Mat> f;
    for (int q = 0; q < n; ++q) f.push_back(q < p ? pauli2('Z') : q == p ? lower2() : pauli2('I'));
    return sparse_chain(f);
}

/// Same without the parity string (qubit ladder operator).
inline Sparse qubit_lower(int p, int n) {
    std::vector<Mat> f;
    for (int q = 0; q < n; ++q) f.push_back(q == p ? lower2() : pauli2('I'));
    return sparse_chain(f);
}

/// Second-quantized Hamiltonian from spatial integrals, blocked spin ordering:
/// E_core + sum h_pq a+_{p s} a_{q s} + 1/2 sum (pq|rs) a+_{p s} a+_{r t} a_{s t} a_{q s}.
inline Mat dense_hamiltonian(const fastvqe::MolecularIntegrals& mi) {
    const int n = mi.n_orb, nq = 2 * n;
    const auto dim = std::int64_t{1} << nq;
    std::vector<Sparse> a(nq), ad(nq);
    for (int p = 0; p < nq; ++p) {
        a[p] = jw_lower(p, nq);
        ad[p] = a[p].adjoint();
    }
    Sparse h(dim, dim);
    for (int s = 0; s < 2; ++s)
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                if (mi.h(p, q) != 0.0) h += Sparse(cplx(mi.h(p, q)) * (ad[p + s * n] * a[q + s * n]));
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2)
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q)
                    for (int r = 0; r < n; ++r)
                        for (int s = 0; s < n; ++s) {
                            const double v = mi.g(p, q, r, s);
                            if (v == 0.0) continue;
                            Sparse term = ad[p + s1 * n] * ad[r + s2 * n];
                            term = term * a[s + s2 * n];
                            term = term * a[q + s1 * n];
                            h += Sparse(cplx(0.5 * v) * term);
                        }
    return Mat(h) + mi.e_core * Mat::Identity(dim, dim);
}

/// Anti-Hermitian QEB generator tau - tau^dagger from qubit ladder matrices.
inline Mat dense_qeb_generator(const fastvqe::ExcitationOperator& op, int n) {
    const auto dim = std::int64_t{1} << n;
    Mat tau = Mat::Identity(dim, dim);
    for (int k = 0; k < op.rank; ++k) tau = (tau * Mat(qubit_lower(op.virt[k], n).adjoint())).eval();
    for (int k = 0; k < op.rank; ++k) tau = (tau * Mat(qubit_lower(op.occ[k], n))).eval();
    return tau - tau.adjoint();
}

inline Mat expm(const Mat& m) { return m.exp(); }

inline Eigen::VectorXcd to_vector(const fastvqe::StateVector& s) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(s.dim()));
    for (std::size_t i = 0; i < s.dim(); ++i) v(static_cast<Eigen::Index>(i)) = s[i];
    return v;
}

/// Restriction of a dense operator to basis indices with given (N_alpha, N_beta).
inline Mat restrict_to_sector(const Mat& m, const std::vector<fastvqe::Determinant>& dets) {
    const auto k = static_cast<Eigen::Index>(dets.size());
    Mat out(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j)
            out(i, j) = m(static_cast<Eigen::Index>(dets[i].occ), static_cast<Eigen::Index>(dets[j].occ));
    return out;
}

inline double central_difference(const std::function<double(double)>& f, double x, double step = 1e-5) {
    return (f(x + step) - f(x - step)) / (2.0 * step);
}

/// Counts particle-hole excitations by checking every (occ subset, virt subset)
/// pair of size 1 and 2 for spin conservation.
inline std::size_t brute_force_pool_size(fastvqe::Determinant ref, int n_so) {
    const int n_orb = n_so / 2;
    auto spin = [&](int p) { return p >= n_orb ? 1 : 0; };
    std::vector<int> occ, virt;
    for (int p = 0; p < n_so; ++p) (ref.test(p) ? occ : virt).push_back(p);
    std::size_t n = 0;
    for (int i : occ)
        for (int a : virt)
            if (spin(i) == spin(a)) ++n;
    for (std::size_t i = 0; i < occ.size(); ++i)
        for (std::size_t j = i + 1; j < occ.size(); ++j)
            for (std::size_t a = 0; a < virt.size(); ++a)
                for (std::size_t b = a + 1; b < virt.size(); ++b)
                    if (spin(occ[i]) + spin(occ[j]) == spin(virt[a]) + spin(virt[b])) ++n;
    return n;
}

/// Random normalized state supported on the given determinants.
inline fastvqe::StateVector random_sector_state(const std::vector<fastvqe::Determinant>& dets, int n_qubits,
                                                std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    fastvqe::StateVector s(n_qubits);
    double norm = 0.0;
    for (auto d : dets) {
        s[d.occ] = cplx(g(rng), g(rng));
        norm += std::norm(s[d.occ]);
    }
    for (auto d : dets) s[d.occ] /= std::sqrt(norm);
    return s;
}

/// Random real normalized state supported on the given determinants.
inline fastvqe::StateVector random_real_sector_state(const std::vector<fastvqe::Determinant>& dets, int n_qubits,
                                                     std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    fastvqe::StateVector s(n_qubits);
    double norm = 0.0;
    for (auto d : dets) {
        s[d.occ] = g(rng);
        norm += std::norm(s[d.occ]);
    }
    for (auto d : dets) s[d.occ] /= std::sqrt(norm);
    return s;
}

}  // namespace oracle
