// Copyright 2026 The gossipopt Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gossip/common.hpp"
#include "gossip/gossip_core.hpp"
#include "gossip/rng.hpp"
#include "gossip/topology.hpp"

namespace gossip::quantum {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

inline constexpr long kMaxDimension = 10000;
inline constexpr long kDenseCheckLimit = 4096;

struct GellMannBasis {
    int d = 0;
    std::vector<CMatrix> matrices;  // identity first, then symmetric, antisymmetric, diagonal
};

// tr(l_a l_b) = 2 delta_ab, identity scaled to match.
inline GellMannBasis gellmann_basis(int d) {
    if (d < 2) fail(ErrorKind::invalid_parameter, "gellmann_basis: d >= 2");
    GellMannBasis b{d, {}};
    b.matrices.push_back(CMatrix::Identity(d, d) * std::sqrt(2.0 / d));
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            CMatrix m = CMatrix::Zero(d, d);
            m(j, k) = m(k, j) = 1.0;
            b.matrices.push_back(m);
        }
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            CMatrix m = CMatrix::Zero(d, d);
            m(j, k) = Complex(0, -1);
            m(k, j) = Complex(0, 1);
            b.matrices.push_back(m);
        }
    for (int l = 1; l < d; ++l) {
        CMatrix m = CMatrix::Zero(d, d);
        double c = std::sqrt(2.0 / (l * (l + 1.0)));
        for (int j = 0; j < l; ++j) m(j, j) = c;
        m(l, l) = -c * l;
        b.matrices.push_back(m);
    }
    return b;
}

inline long ipow(long base, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

inline long dimension(int d, int n) { return ipow(static_cast<long>(d) * d, n); }

inline void check_guard(int d, int n) {
    if (d < 2 || n < 1) fail(ErrorKind::invalid_parameter, "need d >= 2 and N >= 1");
    // compare without overflow
    long dim = 1;
    for (int i = 0; i < n; ++i) {
        dim *= static_cast<long>(d) * d;
        if (dim > kMaxDimension) fail(ErrorKind::size_guard, "d^(2N) exceeds " + std::to_string(kMaxDimension));
    }
}

// Tuple (mu_1..mu_N) <-> index, mu_1 most significant, base d^2.
inline std::vector<int> tuple_of(long index, int d, int n) {
    std::vector<int> mu(n);
    const long base = static_cast<long>(d) * d;
    for (int p = n - 1; p >= 0; --p) {
        mu[p] = static_cast<int>(index % base);
        index /= base;
    }
    return mu;
}

inline long index_of(const std::vector<int>& mu, int d) {
    const long base = static_cast<long>(d) * d;
    long idx = 0;
    for (int v : mu) idx = idx * base + v;
    return idx;
}

inline long swapped_index(long index, int j, int k, int d, int n) {
    auto mu = tuple_of(index, d, n);
    std::swap(mu[j], mu[k]);
    return index_of(mu, d);
}

struct CoefficientState {
    int d = 0;
    int n = 0;
    std::vector<double> coeffs;
};

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

inline CMatrix basis_product(const GellMannBasis& b, const std::vector<int>& mu) {
    CMatrix m = b.matrices[mu[0]];
    for (std::size_t p = 1; p < mu.size(); ++p) m = kron(m, b.matrices[mu[p]]);
    return m;
}

// Coefficients scaled so that a unit-trace state has coefficient 1 at (0,...,0).
inline CoefficientState expand_density(const CMatrix& rho, int d, int n) {
    check_guard(d, n);
    if (rho.rows() != ipow(d, n) || rho.cols() != rho.rows()) fail(ErrorKind::dimension_mismatch, "density matrix has wrong size");
    auto b = gellmann_basis(d);
    const double scale = std::pow(d / 2.0, n / 2.0);
    CoefficientState s{d, n, std::vector<double>(dimension(d, n))};
    for (long idx = 0; idx < dimension(d, n); ++idx) {
        Complex c = (rho * basis_product(b, tuple_of(idx, d, n))).trace();
        s.coeffs[idx] = scale * c.real();
    }
    return s;
}

inline CMatrix reconstruct_density(const CoefficientState& s) {
    auto b = gellmann_basis(s.d);
    const long hd = ipow(s.d, s.n);
    const double scale = std::pow(s.d / 2.0, s.n / 2.0) * std::pow(2.0, s.n);
    CMatrix rho = CMatrix::Zero(hd, hd);
    for (long idx = 0; idx < static_cast<long>(s.coeffs.size()); ++idx)
        if (s.coeffs[idx] != 0.0) rho += s.coeffs[idx] / scale * basis_product(b, tuple_of(idx, s.d, s.n));
    return rho;
}

inline CoefficientState swap_coefficients(const CoefficientState& s, int j, int k) {
    if (j == k || j < 0 || k < 0 || j >= s.n || k >= s.n) fail(ErrorKind::invalid_parameter, "swap_coefficients: bad positions");
    CoefficientState out{s.d, s.n, std::vector<double>(s.coeffs.size())};
    for (long idx = 0; idx < static_cast<long>(s.coeffs.size()); ++idx) out.coeffs[swapped_index(idx, j, k, s.d, s.n)] = s.coeffs[idx];
    return out;
}

// Unitary exchanging qudits j and k on (C^d)^{(x)N}.
inline CMatrix swap_unitary(int j, int k, int d, int n) {
    const long hd = ipow(d, n);
    CMatrix u = CMatrix::Zero(hd, hd);
    for (long idx = 0; idx < hd; ++idx) {
        std::vector<int> digits(n);
        long rest = idx;
        for (int p = n - 1; p >= 0; --p) {
            digits[p] = static_cast<int>(rest % d);
            rest /= d;
        }
        std::swap(digits[j], digits[k]);
        long to = 0;
        for (int v : digits) to = to * d + v;
        u(to, idx) = 1.0;
    }
    return u;
}

// Random Hermitian PSD unit-trace matrix from a random complex square root.
inline CMatrix random_density(int dim, Rng& rng) {
    CMatrix a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = Complex(rng.normal(), rng.normal());
    CMatrix rho = a * a.adjoint();
    return rho / rho.trace().real();
}

struct QuantumGossipOperator {
    int d = 0;
    int n = 0;
    Eigen::SparseMatrix<double> matrix;
};

// sum over edges of (P_j P_jk + P_k P_kj) (I + Pi_jk) / 2
inline QuantumGossipOperator build_quantum_operator(const Topology& t, const ProbabilityAssignment& a, int d) {
    check_guard(d, t.n_vertices);
    validate(t, a);
    const long dim = dimension(d, t.n_vertices);
    auto q = edge_weights(t, a);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(dim * (2 * t.edges.size()));
    for (long x = 0; x < dim; ++x)
        for (std::size_t e = 0; e < t.edges.size(); ++e) {
            long y = swapped_index(x, t.edges[e].first, t.edges[e].second, d, t.n_vertices);
            trip.emplace_back(x, x, q[e]);
            trip.emplace_back(x, y, q[e]);
        }
    QuantumGossipOperator op{d, t.n_vertices, Eigen::SparseMatrix<double>(dim, dim)};
    op.matrix.setFromTriplets(trip.begin(), trip.end());
    return op;
}

struct Component {
    std::vector<int> partition;  // multiplicities of the tuple values, descending
    std::vector<long> members;
};

// Orbits of tuples under position permutations, i.e. tuples grouped by their
// multiset of values.
inline std::vector<Component> induced_components(int d, int n) {
    check_guard(d, n);
    std::map<std::vector<int>, std::size_t> by_sorted;
    std::vector<Component> out;
    for (long x = 0; x < dimension(d, n); ++x) {
        auto mu = tuple_of(x, d, n);
        std::sort(mu.begin(), mu.end());
        auto it = by_sorted.find(mu);
        if (it == by_sorted.end()) {
            std::vector<int> mult;
            for (std::size_t i = 0; i < mu.size();) {
                std::size_t j = i;
                while (j < mu.size() && mu[j] == mu[i]) ++j;
                mult.push_back(static_cast<int>(j - i));
                i = j;
            }
            std::sort(mult.rbegin(), mult.rend());
            it = by_sorted.emplace(mu, out.size()).first;
            out.push_back({mult, {}});
        }
        out[it->second].members.push_back(x);
    }
    return out;
}

inline std::string partition_label(const std::vector<int>& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
    return s + ")";
}

struct QuantumLambda2 {
    double power = 0.0;
    std::optional<double> dense;
    long iterations = 0;
};

// Largest eigenvalue on the complement of the eigenvalue-1 space, which is
// spanned by the component indicator vectors.
inline QuantumLambda2 quantum_lambda2(const QuantumGossipOperator& op, const std::vector<Component>& comps) {
    const long dim = op.matrix.rows();
    std::vector<int> comp_of(dim);
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (long x : comps[c].members) comp_of[x] = static_cast<int>(c);
    auto remove_fixed = [&](Eigen::VectorXd& v) {
        std::vector<double> mean(comps.size(), 0.0);
        for (long x = 0; x < dim; ++x) mean[comp_of[x]] += v(x);
        for (std::size_t c = 0; c < comps.size(); ++c) mean[c] /= comps[c].members.size();
        for (long x = 0; x < dim; ++x) v(x) -= mean[comp_of[x]];
    };
    QuantumLambda2 r;
    Rng rng(0x5eed, 1);
    Eigen::VectorXd v(dim);
    for (long x = 0; x < dim; ++x) v(x) = rng.uniform() - 0.5;
    remove_fixed(v);
    double rho = 0.0;
    const long max_iter = 2'000'000;
    for (long it = 0; it < max_iter; ++it) {
        double norm = v.norm();
        if (norm == 0.0) break;
        v /= norm;
        Eigen::VectorXd w = op.matrix * v;
        remove_fixed(w);
        rho = v.dot(w);
        r.iterations = it + 1;
        if ((w - rho * v).norm() < 1e-12) break;
        v = w;
    }
    r.power = rho;
    if (dim <= kDenseCheckLimit) {
        Eigen::MatrixXd dense = Eigen::MatrixXd(op.matrix);
        for (const auto& c : comps) {
            double inv = 1.0 / c.members.size();
            for (long x : c.members)
                for (long y : c.members) dense(x, y) -= inv;
        }
        r.dense = spectrum_of(0.5 * (dense + dense.transpose())).eigenvalues.front();
    }
    return r;
}

struct PartitionLambda2 {
    std::vector<int> partition;
    double lambda2 = 0.0;      // max over components of this type
    double lambda2_min = 0.0;  // min over components of this type
    int components = 0;
};

struct CollapseReport {
    double lambda2_quantum = 0.0;
    std::optional<double> lambda2_quantum_dense;
    double lambda2_classical = 0.0;
    std::vector<PartitionLambda2> per_partition;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

inline CollapseReport verify_spectral_collapse(const Topology& t, const ProbabilityAssignment& a, int d, double tol = 1e-9) {
    auto op = build_quantum_operator(t, a, d);
    auto comps = induced_components(d, t.n_vertices);
    CollapseReport rep;
    auto ql = quantum_lambda2(op, comps);
    rep.lambda2_quantum = ql.power;
    rep.lambda2_quantum_dense = ql.dense;
    rep.lambda2_classical = lambda2(t, a);
    if (std::abs(rep.lambda2_quantum - rep.lambda2_classical) > tol)
        rep.violations.push_back("quantum lambda2 differs from classical");
    if (ql.dense && std::abs(*ql.dense - ql.power) > tol) rep.violations.push_back("power iteration disagrees with dense eigensolver");

    std::map<std::vector<int>, std::size_t> slot;
    for (const auto& c : comps) {
        if (c.members.size() < 2) continue;
        const int m = static_cast<int>(c.members.size());
        Eigen::MatrixXd block(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) block(i, j) = op.matrix.coeff(c.members[i], c.members[j]);
        double l2 = spectrum_of(0.5 * (block + block.transpose())).lambda2;
        auto it = slot.find(c.partition);
        if (it == slot.end()) {
            it = slot.emplace(c.partition, rep.per_partition.size()).first;
            rep.per_partition.push_back({c.partition, l2, l2, 0});
        }
        auto& pp = rep.per_partition[it->second];
        pp.lambda2 = std::max(pp.lambda2, l2);
        pp.lambda2_min = std::min(pp.lambda2_min, l2);
        ++pp.components;
    }
    for (const auto& pp : rep.per_partition)
        if (std::abs(pp.lambda2 - rep.lambda2_classical) > tol || std::abs(pp.lambda2_min - rep.lambda2_classical) > tol)
            rep.violations.push_back("component " + partition_label(pp.partition) + " has a different lambda2");
    return rep;
}

}  // namespace gossip::quantum
