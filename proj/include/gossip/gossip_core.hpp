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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gossip/common.hpp"
#include "gossip/topology.hpp"

namespace gossip {

// Clock distribution P_i and row-stochastic neighbour selection P_ij.
struct ProbabilityAssignment {
    Eigen::VectorXd clock;
    Eigen::MatrixXd transition;

    int size() const { return static_cast<int>(clock.size()); }
};

inline Eigen::VectorXd uniform_clock(int n) { return Eigen::VectorXd::Constant(n, 1.0 / n); }

inline ProbabilityAssignment make_assignment(const Eigen::VectorXd& clock) {
    return {clock, Eigen::MatrixXd::Zero(clock.size(), clock.size())};
}

// Empty string when the assignment is valid on the topology.
inline std::string validation_error(const Topology& t, const ProbabilityAssignment& a, double tol = kStochasticTol) {
    const int n = t.n_vertices;
    if (a.clock.size() != n || a.transition.rows() != n || a.transition.cols() != n) return "dimension mismatch";
    if (a.clock.minCoeff() < -tol) return "negative clock probability";
    if (std::abs(a.clock.sum() - 1.0) > tol) return "clock probabilities do not sum to 1";
    auto deg = t.degrees();
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) {
            double p = a.transition(i, j);
            if (p == 0.0) continue;
            if (i == j || !t.has_edge(i, j)) return "transition off the edge set at " + std::to_string(i) + "-" + std::to_string(j);
            if (p < -tol || p > 1.0 + tol) return "transition out of [0,1] at " + std::to_string(i) + "-" + std::to_string(j);
            row += p;
        }
        if (deg[i] > 0 && std::abs(row - 1.0) > tol) return "row " + std::to_string(i) + " does not sum to 1";
    }
    return {};
}

inline void validate(const Topology& t, const ProbabilityAssignment& a) {
    auto err = validation_error(t, a);
    if (!err.empty()) {
        fail(err == "dimension mismatch" ? ErrorKind::dimension_mismatch : ErrorKind::invalid_assignment, err);
    }
}

// I - (e_i - e_j)(e_i - e_j)^T / 2
inline Eigen::MatrixXd averaging_matrix(int i, int j, int n) {
    if (i < 0 || j < 0 || i >= n || j >= n) fail(ErrorKind::invalid_parameter, "averaging_matrix: index out of range");
    if (i == j) fail(ErrorKind::invalid_parameter, "averaging_matrix: i == j");
    Eigen::MatrixXd w = Eigen::MatrixXd::Identity(n, n);
    w(i, i) = w(j, j) = 0.5;
    w(i, j) = w(j, i) = 0.5;
    return w;
}

struct GossipOperator {
    Eigen::MatrixXd matrix;
    std::vector<double> q;  // indexed like Topology::edges
};

inline Eigen::MatrixXd laplacian(const Topology& t, const std::vector<double>& w) {
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(t.n_vertices, t.n_vertices);
    for (std::size_t e = 0; e < t.edges.size(); ++e) {
        auto [a, b] = t.edges[e];
        l(a, a) += w[e];
        l(b, b) += w[e];
        l(a, b) -= w[e];
        l(b, a) -= w[e];
    }
    return l;
}

inline std::vector<double> edge_weights(const Topology& t, const ProbabilityAssignment& a) {
    std::vector<double> q(t.edges.size());
    for (std::size_t e = 0; e < t.edges.size(); ++e) {
        auto [i, j] = t.edges[e];
        q[e] = 0.5 * (a.clock(i) * a.transition(i, j) + a.clock(j) * a.transition(j, i));
    }
    return q;
}

// No validation: used for listed probabilities that are not row-stochastic.
inline GossipOperator build_operator_unchecked(const Topology& t, const ProbabilityAssignment& a) {
    if (a.size() != t.n_vertices) fail(ErrorKind::dimension_mismatch, "assignment size differs from topology");
    GossipOperator op;
    op.q = edge_weights(t, a);
    op.matrix = Eigen::MatrixXd::Identity(t.n_vertices, t.n_vertices) - laplacian(t, op.q);
    return op;
}

inline GossipOperator build_operator(const Topology& t, const ProbabilityAssignment& a) {
    validate(t, a);
    return build_operator_unchecked(t, a);
}

struct Spectrum {
    std::vector<double> eigenvalues;  // descending
    double lambda2 = 0.0;
    double gap = 1.0;
};

inline Spectrum spectrum_of(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) fail(ErrorKind::dimension_mismatch, "spectrum: non-square matrix");
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) fail(ErrorKind::invalid_parameter, "spectrum: matrix not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) fail(ErrorKind::solver_failure, "eigensolver did not converge");
    Spectrum s;
    s.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), std::greater<>());
    s.lambda2 = s.eigenvalues.size() > 1 ? s.eigenvalues[1] : 0.0;
    s.gap = 1.0 - s.lambda2;
    return s;
}

inline Spectrum spectrum(const GossipOperator& op) { return spectrum_of(op.matrix); }

inline double lambda2(const Topology& t, const ProbabilityAssignment& a) {
    return spectrum(build_operator(t, a)).lambda2;
}

// Second smallest eigenvalue of the weighted Laplacian.
inline double laplacian_lambda2(const Topology& t, const std::vector<double>& w) {
    auto s = spectrum_of(laplacian(t, w));
    return s.eigenvalues.size() > 1 ? s.eigenvalues[s.eigenvalues.size() - 2] : 0.0;
}

// Independent estimate: power iteration on W - 11^T/N, whose spectrum is
// nonnegative, so the dominant eigenvalue is lambda2.
inline double power_iteration_lambda2(const Eigen::MatrixXd& w, int max_iter = 200000, double tol = 1e-14) {
    const int n = static_cast<int>(w.rows());
    if (n < 2) return 0.0;
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = std::sin(1.0 + 0.7 * i) + 0.01 * i;
    v.array() -= v.mean();
    double est = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        double norm = v.norm();
        if (norm == 0.0) return 0.0;
        v /= norm;
        Eigen::VectorXd next = w * v;
        next.array() -= next.mean();
        double rayleigh = v.dot(next);
        if (it > 10 && std::abs(rayleigh - est) < tol) return rayleigh;
        est = rayleigh;
        v = next;
    }
    return est;
}

struct ConvergenceReport {
    double left_residual = 0.0;   // |1^T W - 1^T|_inf
    double right_residual = 0.0;  // |W 1 - 1|_inf
    double radius = 0.0;          // spectral radius of W - 11^T/N
    bool fixed_point_ok = false;
    bool contraction_ok = false;
    bool ok() const { return fixed_point_ok && contraction_ok; }
};

inline ConvergenceReport check_convergence_conditions(const GossipOperator& op) {
    const auto& w = op.matrix;
    const int n = static_cast<int>(w.rows());
    ConvergenceReport r;
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    r.right_residual = (w * ones - ones).cwiseAbs().maxCoeff();
    r.left_residual = (w.transpose() * ones - ones).cwiseAbs().maxCoeff();
    Eigen::MatrixXd centered = w - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (centered + centered.transpose()), Eigen::EigenvaluesOnly);
    r.radius = es.eigenvalues().cwiseAbs().maxCoeff();
    r.fixed_point_ok = r.left_residual <= kSpectralTol && r.right_residual <= kSpectralTol;
    r.contraction_ok = r.radius < 1.0 - kSpectralTol;
    return r;
}

}  // namespace gossip
