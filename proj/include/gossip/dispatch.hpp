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

#include <string>

#include "gossip/analytic.hpp"
#include "gossip/oracle.hpp"
#include "gossip/topology.hpp"

namespace gossip {

namespace detail {

// Same vertex set, different generator label: move the assignment over.
inline OptimizationResult relabel(OptimizationResult r, const Topology& target, const std::vector<int>& to_target) {
    const int n = target.n_vertices;
    ProbabilityAssignment a = make_assignment(Eigen::VectorXd::Zero(n));
    for (int i = 0; i < n; ++i) {
        a.clock(to_target[i]) = r.assignment.clock(i);
        for (int j = 0; j < n; ++j) a.transition(to_target[i], to_target[j]) = r.assignment.transition(i, j);
    }
    validate(target, a);
    r.topology = target;
    r.assignment = std::move(a);
    return r;
}

inline std::vector<int> identity_map(int n) {
    std::vector<int> m(n);
    for (int i = 0; i < n; ++i) m[i] = i;
    return m;
}

// Path vertices through the two-branch star / two-core CCS numbering.
inline OptimizationResult path_nonuniform(const Topology& path) {
    const int nv = path.n_vertices;
    if (nv == 2) {
        auto r = solve_complete_uniform(2);
        r.mode = mode_name(ClockMode::nonuniform);
        return relabel(r, path, identity_map(2));
    }
    std::vector<int> map(nv);
    if (nv % 2 == 1) {
        int k = nv / 2;
        auto r = solve_symstar_nonuniform(2, k, 0.0);
        map[0] = k;
        for (int j = 1; j <= k; ++j) {
            map[1 + (j - 1)] = k - j;
            map[1 + k + (j - 1)] = k + j;
        }
        return relabel(r, path, map);
    }
    int k = nv / 2 - 1;
    auto r = solve_ccs_nonuniform(2, k);
    for (int d = 0; d <= k; ++d) {
        map[d] = k - d;
        map[(k + 1) + d] = k + 1 + d;
    }
    return relabel(r, path, map);
}

}  // namespace detail

// Closed form when the generator has one for the requested clock mode,
// otherwise the numeric oracle seeded at uniform rows.
inline OptimizationResult solve(const Topology& t, ClockMode mode, long oracle_budget = 20000) {
    const auto& g = t.generator;
    const std::string& name = g.name;
    auto param = [&](const char* k) { return static_cast<int>(g.at(k)); };
    const bool uni = mode == ClockMode::uniform;
    auto same = [&](OptimizationResult r) {
        r.mode = mode_name(mode);
        return detail::relabel(std::move(r), t, detail::identity_map(t.n_vertices));
    };

    if (name == "complete" && t.n_vertices >= 2) return same(solve_complete_uniform(t.n_vertices));
    if (name == "cycle") return same(solve_cycle_uniform(t.n_vertices));
    if (name == "wheel") return solve_wheel(param("n"), mode);
    if (name == "cartesian") {
        std::vector<Topology> fs;
        for (const auto& f : g.factors) fs.push_back(generate(f));
        return same(solve_cartesian_uniform(fs));
    }
    if (name == "star" && t.n_vertices >= 3) {
        int leaves = t.n_vertices - 1;
        return same(uni ? solve_symstar_uniform(leaves, 1) : solve_symstar_nonuniform(leaves, 1, 0.0));
    }
    if (name == "path" && t.n_vertices >= 2) return uni ? solve_path_uniform(t.n_vertices) : detail::path_nonuniform(t);
    if (name == "symstar" && param("n") >= 2)
        return uni ? solve_symstar_uniform(param("n"), param("k")) : solve_symstar_nonuniform(param("n"), param("k"), 0.0);
    if (name == "ccs" && param("n") >= 2) {
        if (uni) return solve_ccs_uniform(param("n"), param("k"));
        if (param("k") >= 2) return solve_ccs_nonuniform(param("n"), param("k") - 1);
        return same(solve_complete_uniform(param("n")));
    }
    if (!uni && name == "ccs2" && param("n") >= 2) return solve_ccs2_nonuniform(param("n"), param("k1"), param("k2"));
    if (!uni && name == "palm") return solve_palm_nonuniform(param("n"), param("k"));
    if (!uni && name == "lollipop" && param("n") >= 2) return solve_lollipop_nonuniform(param("n"), param("k"));
    if (uni && name == "two-coupled" && param("n1") == param("n3"))
        return solve_two_coupled_uniform(param("n1"), param("n2"), param("n3"));

    if (!is_connected(t)) fail(ErrorKind::invalid_parameter, "topology is not connected");
    OrbitParameterization par(t, mode);
    auto seed = par.expand(par.center());
    auto r = local_search(t, mode, seed, oracle_budget);
    r.mode = "numeric";
    r.diagnostics.notes.push_back(std::string("clock ") + mode_name(mode));
    return r;
}

}  // namespace gossip
