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

#include "gossip/analytic.hpp"
#include "gossip/dispatch.hpp"
#include "gossip/rng.hpp"

using namespace gossip;
using Catch::Matchers::WithinAbs;

namespace {

// Every solver output must be a valid assignment whose spectrum is the reported value.
void check_certified(const OptimizationResult& r) {
    INFO(r.topology.generator.name << " " << r.diagnostics.branch);
    REQUIRE(validation_error(r.topology, r.assignment).empty());
    CHECK_THAT(lambda2(r.topology, r.assignment), WithinAbs(r.lambda2, 1e-12));
    REQUIRE(r.diagnostics.formula_lambda2.has_value());
    if (!r.diagnostics.formula_mismatch) CHECK_THAT(*r.diagnostics.formula_lambda2, WithinAbs(r.lambda2, 1e-9));
}

double clock_sum(const OptimizationResult& r) { return r.assignment.clock.sum(); }

}  // namespace

TEST_CASE("complete graph", "[analytic]") {
    auto r4 = solve_complete_uniform(4);
    check_certified(r4);
    CHECK_THAT(r4.lambda2, WithinAbs(2.0 / 3, 1e-12));
    CHECK_THAT(r4.assignment.transition(0, 1), WithinAbs(1.0 / 3, 1e-15));
    CHECK_THAT(solve_complete_uniform(2).lambda2, WithinAbs(0.0, 1e-12));
    CHECK(solve_complete_uniform(2).assignment.transition(0, 1) == 1.0);
    CHECK_THAT(solve_complete_uniform(10).lambda2, WithinAbs(8.0 / 9, 1e-12));
    REQUIRE_THROWS_AS(solve_complete_uniform(1), Error);
}

TEST_CASE("cycle", "[analytic]") {
    CHECK_THAT(solve_cycle_uniform(4).lambda2, WithinAbs(0.75, 1e-12));
    CHECK_THAT(solve_cycle_uniform(3).lambda2, WithinAbs(0.5, 1e-12));
    CHECK_THAT(solve_cycle_uniform(6).lambda2, WithinAbs(11.0 / 12, 1e-12));
    for (int n = 3; n <= 12; ++n) check_certified(solve_cycle_uniform(n));
    REQUIRE_THROWS_AS(solve_cycle_uniform(2), Error);
}

TEST_CASE("wheel", "[analytic]") {
    for (int n = 3; n <= 6; ++n)
        for (auto mode : {ClockMode::uniform, ClockMode::nonuniform}) {
            auto r = solve_wheel(n, mode);
            check_certified(r);
            CHECK_FALSE(r.diagnostics.formula_mismatch);
        }
    CHECK_THAT(solve_wheel(6, ClockMode::uniform).lambda2, WithinAbs(11.0 / 12, 1e-12));
    CHECK_THAT(solve_wheel(5, ClockMode::uniform).assignment.transition(0, 1), WithinAbs(0.2, 1e-15));

    // n >= 7 uniform: the printed value is not attained by the printed probabilities
    auto u7 = solve_wheel(7, ClockMode::uniform);
    CHECK(u7.diagnostics.formula_mismatch);
    CHECK_THAT(*u7.diagnostics.formula_lambda2, WithinAbs(13.0 / 14, 1e-12));
    CHECK_THAT(u7.lambda2, WithinAbs(lambda2(u7.topology, u7.assignment), 1e-12));
    CHECK(u7.lambda2 > 13.0 / 14);

    auto nu7 = solve_wheel(7, ClockMode::nonuniform);
    check_certified(nu7);
    CHECK_FALSE(nu7.diagnostics.formula_mismatch);
    CHECK_THAT(clock_sum(nu7), WithinAbs(1.0, 1e-12));
}

TEST_CASE("cartesian products", "[analytic]") {
    auto prism = solve_cartesian_uniform({generate("complete:n=2"), generate("complete:n=3")});
    check_certified(prism);
    CHECK_THAT(prism.lambda2, WithinAbs(6.0 / 7, 1e-12));
    // vertex 0 = (0,0); (1,0) is vertex 3, (0,1) is vertex 1
    CHECK_THAT(prism.assignment.transition(0, 3), WithinAbs(3.0 / 7, 1e-12));
    CHECK_THAT(prism.assignment.transition(0, 1), WithinAbs(2.0 / 7, 1e-12));

    auto single = solve_cartesian_uniform({generate("complete:n=5")});
    CHECK_THAT(single.lambda2, WithinAbs(solve_complete_uniform(5).lambda2, 1e-12));
    check_certified(solve_cartesian_uniform({generate("cycle:n=4"), generate("complete:n=3")}));
    check_certified(solve_cartesian_uniform({generate("complete:n=2"), generate("complete:n=2"), generate("complete:n=2")}));
    REQUIRE_THROWS_AS(solve_cartesian_uniform({generate("path:n=3")}), Error);
}

TEST_CASE("symmetric star, uniform clocks", "[analytic]") {
    auto r52 = solve_symstar_uniform(5, 2);
    check_certified(r52);
    CHECK(r52.diagnostics.m == 0);

    auto r33 = solve_symstar_uniform(3, 3);
    check_certified(r33);
    CHECK(r33.diagnostics.m == 1);
    CHECK_THAT(r33.lambda2, WithinAbs(0.988548, 1e-5));

    auto r3_10 = solve_symstar_uniform(3, 10);
    check_certified(r3_10);
    CHECK(r3_10.diagnostics.m == 3);
    CHECK_THAT(r3_10.lambda2, WithinAbs(0.999619, 1e-5));

    // one leaf per branch is the star
    CHECK_THAT(solve_symstar_uniform(3, 1).lambda2, WithinAbs(5.0 / 6, 1e-12));
    for (int n = 2; n <= 6; ++n)
        for (int k = 1; k <= 6; ++k) {
            auto r = solve_symstar_uniform(n, k);
            check_certified(r);
            CHECK(r.diagnostics.x_star.value() < 0.0);
        }
}

TEST_CASE("path, uniform clocks", "[analytic]") {
    auto r4 = solve_path_uniform(4);
    check_certified(r4);
    CHECK_THAT(r4.lambda2, WithinAbs(0.9, 1e-12));
    CHECK_THAT(r4.diagnostics.x_star.value(), WithinAbs(-0.8, 1e-10));
    CHECK_THAT(r4.assignment.transition(0, 1), WithinAbs(1.0, 1e-12));
    CHECK_THAT(r4.assignment.transition(1, 0), WithinAbs(0.2, 1e-10));
    CHECK_THAT(r4.assignment.transition(1, 2), WithinAbs(0.8, 1e-10));
    CHECK_THAT(solve_path_uniform(2).lambda2, WithinAbs(0.0, 1e-12));
    CHECK_THAT(solve_path_uniform(3).lambda2, WithinAbs(0.75, 1e-12));
    for (int n = 2; n <= 16; ++n) check_certified(solve_path_uniform(n));
}

TEST_CASE("complete-core star, uniform clocks", "[analytic]") {
    auto r55 = solve_ccs_uniform(5, 5);
    check_certified(r55);
    CHECK(r55.diagnostics.m == 2);
    CHECK_THAT(r55.lambda2, WithinAbs(0.997917, 1e-5));

    auto r8_10 = solve_ccs_uniform(8, 10);
    check_certified(r8_10);
    CHECK(r8_10.diagnostics.m == 3);
    CHECK_THAT(r8_10.lambda2, WithinAbs(0.999842, 1e-5));

    // k = 2: the m-search keeps m = 1, whose spectrum is better than the m = 0 value 0.95
    auto r32 = solve_ccs_uniform(3, 2);
    check_certified(r32);
    CHECK(r32.diagnostics.m == 1);
    CHECK(r32.lambda2 < 0.95);
    for (int n = 2; n <= 6; ++n)
        for (int k = 1; k <= 6; ++k) check_certified(solve_ccs_uniform(n, k));
}

TEST_CASE("two coupled complete graphs", "[analytic]") {
    auto a = solve_two_coupled_uniform(2, 1, 2);
    check_certified(a);
    CHECK_THAT(a.lambda2, WithinAbs(7.0 / 8, 1e-12));
    // the middle group is vertex 2; with n2 = 1 there is no middle-middle edge, so check the top pair
    CHECK_THAT(a.assignment.transition(0, 1), WithinAbs(0.0, 1e-15));

    auto b = solve_two_coupled_uniform(1, 3, 1);
    check_certified(b);
    CHECK_THAT(b.lambda2, WithinAbs(11.0 / 14, 1e-12));

    auto c = solve_two_coupled_uniform(2, 2, 2);
    check_certified(c);
    // middle-middle edge between vertices 2 and 3 is unused in this branch
    CHECK_THAT(c.assignment.transition(2, 3), WithinAbs(0.0, 1e-15));
    for (int n1 = 1; n1 <= 3; ++n1)
        for (int n2 = 1; n2 <= 7; ++n2) check_certified(solve_two_coupled_uniform(n1, n2, n1));
    REQUIRE_THROWS_AS(solve_two_coupled_uniform(1, 2, 3), Error);
}

TEST_CASE("symmetric star, nonuniform clocks", "[analytic]") {
    CHECK_THAT(solve_symstar_nonuniform(3, 1).lambda2, WithinAbs(5.0 / 6, 1e-12));
    CHECK_THAT(solve_symstar_nonuniform(2, 1).lambda2, WithinAbs(0.75, 1e-12));
    auto r = solve_symstar_nonuniform(5, 2);
    check_certified(r);
    CHECK_THAT(r.lambda2, WithinAbs(0.98, 1e-12));
    CHECK(r.lambda2 < solve_symstar_uniform(5, 2).lambda2);
    for (double p0 : {0.0, 0.1, 0.3, 0.5}) {
        auto q = solve_symstar_nonuniform(5, 2, p0);
        check_certified(q);
        CHECK_THAT(q.lambda2, WithinAbs(0.98, 1e-12));
        CHECK_THAT(clock_sum(q), WithinAbs(1.0, 1e-12));
        CHECK(q.assignment.clock(0) == p0);
    }
    REQUIRE_THROWS_AS(solve_symstar_nonuniform(5, 2, 0.7), Error);
}

TEST_CASE("complete-core star, nonuniform clocks", "[analytic]") {
    auto r21 = solve_ccs_nonuniform(2, 1);
    check_certified(r21);
    CHECK(r21.topology.n_vertices == 4);
    CHECK_THAT(r21.lambda2, WithinAbs(0.9, 1e-12));
    CHECK_THAT(solve_ccs_nonuniform(2, 2).lambda2, WithinAbs(34.0 / 35, 1e-12));
    for (int n = 2; n <= 6; ++n)
        for (int k = 1; k <= 5; ++k) {
            auto r = solve_ccs_nonuniform(n, k);
            check_certified(r);
            CHECK_THAT(clock_sum(r), WithinAbs(1.0, 1e-12));
        }
}

TEST_CASE("two-tail complete-core star", "[analytic]") {
    auto r = solve_ccs2_nonuniform(5, 2, 1);
    check_certified(r);
    CHECK_THAT(r.lambda2, WithinAbs(0.9921008839, 1e-9));
    CHECK_THAT(clock_sum(r), WithinAbs(1.0, 1e-12));
    // clocks shrink outward along each tail
    auto big = solve_ccs2_nonuniform(4, 5, 3);
    for (int b = 0; b < 4; ++b) {
        int core = b * 9;
        for (int j = 2; j <= 5; ++j) CHECK(big.assignment.clock(core + j) <= big.assignment.clock(core + j - 1));
        for (int j = 2; j <= 3; ++j) CHECK(big.assignment.clock(core + 5 + j) <= big.assignment.clock(core + 5 + j - 1));
    }
    for (int n = 2; n <= 5; ++n)
        for (int k = 1; k <= 4; ++k)
            CHECK_THAT(solve_ccs2_nonuniform(n, k, 0).lambda2, WithinAbs(solve_ccs_nonuniform(n, k).lambda2, 1e-12));
}

TEST_CASE("palm", "[analytic]") {
    auto r = solve_palm_nonuniform(4, 2);
    check_certified(r);
    CHECK_THAT(r.lambda2, WithinAbs(17.0 / 18, 1e-12));
    CHECK(r.assignment.clock(0) == 0.0);
    auto p = solve_palm_nonuniform(1, 2);
    check_certified(p);
    CHECK_THAT(p.lambda2, WithinAbs(0.9, 1e-12));
    for (int n = 1; n <= 6; ++n)
        for (int k = 1; k <= 6; ++k) {
            auto q = solve_palm_nonuniform(n, k);
            check_certified(q);
            CHECK_THAT(clock_sum(q), WithinAbs(1.0, 1e-12));
        }
}

TEST_CASE("lollipop", "[analytic]") {
    auto r = solve_lollipop_nonuniform(4, 2);
    check_certified(r);
    CHECK(r.diagnostics.branch == "clique");
    CHECK_THAT(r.lambda2, WithinAbs(0.9444212125, 1e-9));
    CHECK_THAT(clock_sum(r), WithinAbs(1.0, 1e-12));
    for (int l = 2; l <= 4; ++l) CHECK_THAT(r.assignment.clock(l), WithinAbs(r.assignment.clock(1), 1e-15));

    auto d = solve_lollipop_nonuniform(2, 5);
    check_certified(d);
    CHECK(d.diagnostics.branch.rfind("palm:", 0) == 0);
    for (int n = 2; n <= 6; ++n)
        for (int k = 1; k <= 5; ++k) check_certified(solve_lollipop_nonuniform(n, k));
}

TEST_CASE("detailed balance construction", "[analytic]") {
    auto p3 = generate("path:n=3");
    auto a = detailed_balance_from_weights(p3, {0.25, 0.25});
    CHECK_THAT(a.clock(0), WithinAbs(0.25, 1e-15));
    CHECK_THAT(a.clock(1), WithinAbs(0.5, 1e-15));
    CHECK_THAT(a.transition(1, 0), WithinAbs(0.5, 1e-15));
    CHECK_THAT(a.transition(1, 2), WithinAbs(0.5, 1e-15));
    CHECK_THAT(lambda2(p3, a), WithinAbs(1.0 - laplacian_lambda2(p3, {0.25, 0.25}), 1e-12));

    auto k4 = generate("complete:n=4");
    auto b = detailed_balance_from_weights(k4, std::vector<double>(6, 1.0 / 12));
    CHECK_THAT(b.clock(2), WithinAbs(0.25, 1e-15));
    CHECK_THAT(b.transition(2, 0), WithinAbs(1.0 / 3, 1e-15));
    CHECK_THAT(lambda2(k4, b), WithinAbs(2.0 / 3, 1e-12));

    Rng rng(3, 0);
    auto t = generate("ccs:n=3,k=2");
    std::vector<double> w(t.edges.size());
    for (auto& x : w) x = rng.uniform();
    double s = 0;
    for (double x : w) s += x;
    for (auto& x : w) x *= 0.5 / s;
    auto c = detailed_balance_from_weights(t, w);
    auto q = edge_weights(t, c);
    for (std::size_t e = 0; e < w.size(); ++e) CHECK_THAT(q[e], WithinAbs(w[e], 1e-15));

    REQUIRE_THROWS_AS(detailed_balance_from_weights(p3, {0.25}), Error);
    REQUIRE_THROWS_AS(detailed_balance_from_weights(p3, {0.25, 0.3}), Error);
}

TEST_CASE("dispatch by generator", "[analytic]") {
    auto r = solve(generate("symstar:n=5,k=2"), ClockMode::uniform);
    CHECK(r.diagnostics.m == 0);
    CHECK(r.mode == "uniform-clock");
    CHECK_THAT(solve(generate("complete:n=4"), ClockMode::uniform).lambda2, WithinAbs(2.0 / 3, 1e-12));
    CHECK_THAT(solve(generate("star:n=4"), ClockMode::nonuniform).lambda2, WithinAbs(5.0 / 6, 1e-12));
    for (int n = 3; n <= 9; ++n) {
        auto p = solve(generate(Generator{"path", {{"n", n}}, {}}), ClockMode::nonuniform);
        check_certified(p);
        CHECK_THAT(p.lambda2, WithinAbs(1.0 - 6.0 / (n * (n - 1.0) * (n + 1.0)), 1e-12));
        CHECK(p.topology.generator.name == "path");
    }
    auto ccs = solve(generate("ccs:n=3,k=3"), ClockMode::nonuniform);
    CHECK_THAT(ccs.lambda2, WithinAbs(solve_ccs_nonuniform(3, 2).lambda2, 1e-12));

    auto num = solve(custom(4, {{0, 1}, {1, 2}, {2, 3}, {0, 2}}), ClockMode::uniform, 2000);
    CHECK(num.mode == "numeric");
    CHECK(validation_error(num.topology, num.assignment).empty());
    REQUIRE_THROWS_AS(solve(custom(4, {{0, 1}, {2, 3}}), ClockMode::uniform), Error);
}
