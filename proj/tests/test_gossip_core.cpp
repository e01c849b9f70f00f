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

#include <catch_amalgamated.hpp>

#include "gossip/four_vertex.hpp"
#include "gossip/gossip_core.hpp"
#include "gossip/rng.hpp"

using namespace gossip;
using Catch::Matchers::WithinAbs;

namespace {

ProbabilityAssignment random_assignment(const Topology& t, Rng& rng) {
    Eigen::VectorXd clock(t.n_vertices);
    for (int i = 0; i < t.n_vertices; ++i) clock(i) = rng.uniform();
    clock /= clock.sum();
    auto a = make_assignment(clock);
    auto adj = t.adjacency();
    for (int i = 0; i < t.n_vertices; ++i) {
        double s = 0.0;
        for (int j : adj[i]) s += (a.transition(i, j) = rng.uniform() + 1e-3);
        for (int j : adj[i]) a.transition(i, j) /= s;
    }
    return a;
}

const reference::FourVertexRow& row(const std::string& name) {
    static const auto table = reference::four_vertex_table();
    for (const auto& r : table)
        if (r.name == name) return r;
    throw std::logic_error("no row " + name);
}

}  // namespace

TEST_CASE("averaging matrix", "[core]") {
    Eigen::MatrixXd two(2, 2);
    two << 0.5, 0.5, 0.5, 0.5;
    CHECK(averaging_matrix(0, 1, 2).isApprox(two));
    Eigen::MatrixXd three(3, 3);
    three << 0.5, 0.5, 0, 0.5, 0.5, 0, 0, 0, 1;
    CHECK(averaging_matrix(0, 1, 3).isApprox(three));
    for (int n = 2; n <= 5; ++n)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                auto w = averaging_matrix(i, j, n);
                CHECK((w * w - w).cwiseAbs().maxCoeff() < 1e-15);
            }
}

TEST_CASE("edge weights from the four-vertex rows", "[core]") {
    const auto& p = row("path");
    auto q = edge_weights(p.topology, p.assignment);
    REQUIRE(q.size() == 3);
    CHECK_THAT(q[0], WithinAbs(3.0 / 20, 1e-15));
    CHECK_THAT(q[1], WithinAbs(1.0 / 5, 1e-15));
    CHECK_THAT(q[2], WithinAbs(3.0 / 20, 1e-15));

    const auto& c = row("complete");
    for (double w : edge_weights(c.topology, c.assignment)) CHECK_THAT(w, WithinAbs(1.0 / 12, 1e-15));
}

TEST_CASE("four-vertex spectra", "[core]") {
    CHECK_THAT(lambda2(row("complete").topology, row("complete").assignment), WithinAbs(2.0 / 3, 1e-12));
    CHECK_THAT(lambda2(row("path").topology, row("path").assignment), WithinAbs(0.9, 1e-12));
    CHECK_THAT(lambda2(row("star").topology, row("star").assignment), WithinAbs(5.0 / 6, 1e-12));
    CHECK_THAT(lambda2(row("lollipop").topology, row("lollipop").assignment),
               WithinAbs((3 + std::sqrt(3.0)) / (4 + std::sqrt(3.0)), 1e-12));
    CHECK_THAT(lambda2(row("cycle").topology, row("cycle").assignment), WithinAbs(0.75, 1e-12));
}

TEST_CASE("paw row is not stochastic", "[core]") {
    const auto& p = row("paw");
    CHECK_FALSE(validation_error(p.topology, p.assignment).empty());
    REQUIRE_THROWS_AS(build_operator(p.topology, p.assignment), Error);
    CHECK_THAT(spectrum(build_operator_unchecked(p.topology, p.assignment)).lambda2, WithinAbs(0.75, 1e-12));
}

TEST_CASE("operator invariants on random assignments", "[core]") {
    Rng rng(11, 0);
    for (const char* d : {"path:n=5", "star:n=5", "ccs:n=3,k=2", "wheel:n=5", "complete:n=3*cycle:n=4"}) {
        auto t = generate(d);
        for (int trial = 0; trial < 10; ++trial) {
            auto a = random_assignment(t, rng);
            REQUIRE(validation_error(t, a).empty());
            auto op = build_operator(t, a);
            Eigen::VectorXd ones = Eigen::VectorXd::Ones(t.n_vertices);
            CHECK((op.matrix * ones - ones).cwiseAbs().maxCoeff() < 1e-12);
            CHECK((op.matrix.transpose() * ones - ones).cwiseAbs().maxCoeff() < 1e-12);
            auto s = spectrum(op);
            CHECK(s.eigenvalues.front() <= 1.0 + 1e-12);
            CHECK(s.eigenvalues.back() >= -1e-12);
            CHECK_THAT(s.lambda2, WithinAbs(1.0 - laplacian_lambda2(t, op.q), 1e-10));
            CHECK_THAT(power_iteration_lambda2(op.matrix), WithinAbs(s.lambda2, 1e-8));
            // W = sum over ordered pairs of P_i P_ij W_ij
            Eigen::MatrixXd direct = Eigen::MatrixXd::Zero(t.n_vertices, t.n_vertices);
            for (int i = 0; i < t.n_vertices; ++i)
                for (int j = 0; j < t.n_vertices; ++j)
                    if (a.transition(i, j) > 0) direct += a.clock(i) * a.transition(i, j) * averaging_matrix(i, j, t.n_vertices);
            CHECK((direct - op.matrix).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("assignment validation", "[core]") {
    auto t = generate("path:n=3");
    auto a = make_assignment(uniform_clock(3));
    CHECK(a.clock(0) == 1.0 / 3);
    a.transition(0, 1) = a.transition(2, 1) = 1.0;
    a.transition(1, 0) = a.transition(1, 2) = 0.5;
    CHECK(validation_error(t, a).empty());

    auto off = a;
    off.transition(0, 2) = 0.1;
    off.transition(0, 1) = 0.9;
    CHECK_FALSE(validation_error(t, off).empty());

    auto bad_row = a;
    bad_row.transition(1, 0) = 0.7;
    CHECK_FALSE(validation_error(t, bad_row).empty());

    auto bad_clock = a;
    bad_clock.clock(0) = 0.5;
    CHECK_FALSE(validation_error(t, bad_clock).empty());

    auto neg = a;
    neg.clock << -0.1, 0.6, 0.5;
    CHECK_FALSE(validation_error(t, neg).empty());
    REQUIRE_THROWS_AS(validate(t, neg), Error);

    auto wrong_size = make_assignment(uniform_clock(4));
    CHECK_FALSE(validation_error(t, wrong_size).empty());
}

TEST_CASE("convergence conditions", "[core]") {
    const auto& c = row("cycle");
    auto rep = check_convergence_conditions(build_operator(c.topology, c.assignment));
    CHECK(rep.ok());
    CHECK_THAT(rep.radius, WithinAbs(0.75, 1e-12));

    auto split = custom(4, {{0, 1}, {2, 3}});
    auto a = make_assignment(uniform_clock(4));
    a.transition(0, 1) = a.transition(1, 0) = a.transition(2, 3) = a.transition(3, 2) = 1.0;
    auto bad = check_convergence_conditions(build_operator(split, a));
    CHECK(bad.fixed_point_ok);
    CHECK_FALSE(bad.contraction_ok);
    CHECK_THAT(bad.radius, WithinAbs(1.0, 1e-12));

    auto p3 = generate("path:n=3");
    Eigen::VectorXd clock(3);
    clock << 0.5, 0.0, 0.5;
    auto z = make_assignment(clock);
    z.transition(0, 1) = z.transition(2, 1) = 1.0;
    z.transition(1, 0) = z.transition(1, 2) = 0.5;
    CHECK(check_convergence_conditions(build_operator(p3, z)).ok());
}
