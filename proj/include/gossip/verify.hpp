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

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "gossip/analytic.hpp"
#include "gossip/four_vertex.hpp"
#include "gossip/reference_tables.hpp"

namespace gossip::verify {

inline constexpr double kTableTol = 1e-5;
inline constexpr double kExactTol = 1e-9;

// Printed entries known not to be reproducible; each has a ledger entry.
struct KnownDiscrepancy {
    std::string table;  // "symstar-m", "symstar-s", "ccs-m", "ccs-s"
    int k = 0;
    int n = 0;  // 0 matches every n
};

inline const std::vector<KnownDiscrepancy>& known_discrepancies() {
    static const std::vector<KnownDiscrepancy> list = {
        {"symstar-s", 2, 0}, {"symstar-s", 3, 6}, {"symstar-s", 3, 7}, {"symstar-s", 3, 8},
        {"ccs-m", 2, 0},     {"ccs-s", 2, 0},
    };
    return list;
}

inline bool is_known(const std::string& table, int k, int n) {
    for (const auto& d : known_discrepancies())
        if (d.table == table && d.k == k && (d.n == 0 || d.n == n)) return true;
    return false;
}

struct Check {
    std::string table;
    std::string label;
    double expected = 0.0;
    double got = 0.0;
    bool ok = false;
    bool known = false;
};

struct Report {
    std::vector<Check> checks;
    int passed() const { return count([](const Check& c) { return c.ok; }); }
    int failed() const { return count([](const Check& c) { return !c.ok; }); }
    int unexplained() const { return count([](const Check& c) { return !c.ok && !c.known; }); }
    int count(const std::function<bool(const Check&)>& f) const {
        int n = 0;
        for (const auto& c : checks) n += f(c) ? 1 : 0;
        return n;
    }
    Report filter(const std::string& table) const {
        Report r;
        for (const auto& c : checks)
            if (c.table == table) r.checks.push_back(c);
        return r;
    }
};

// Printed probabilities of the four-vertex table, evaluated as printed.
inline Report four_vertex() {
    Report r;
    for (const auto& row : reference::four_vertex_table()) {
        double got = spectrum(build_operator_unchecked(row.topology, row.assignment)).lambda2;
        Check c{"four-vertex", row.name + (row.stochastic ? "" : " (rows not stochastic)"), row.lambda2, got, false, false};
        c.ok = std::abs(got - row.lambda2) <= kExactTol;
        r.checks.push_back(c);
    }
    return r;
}

inline std::string cell(int k, int n) { return "k=" + std::to_string(k) + " n=" + std::to_string(n); }

// Grid sweep for one family; solver(n, k) returns the m-searched result.
inline Report sweep(const std::string& family, const int (&m_tab)[9][6], const double (&s_tab)[9][6],
                    const std::function<OptimizationResult(int, int)>& solver) {
    using namespace reference;
    Report r;
    for (int k = kMinK; k <= kMaxK; ++k)
        for (int n = kMinN; n <= kMaxN; ++n) {
            auto res = solver(n, k);
            int m_exp = m_tab[k - kMinK][n - kMinN];
            double s_exp = s_tab[k - kMinK][n - kMinN];
            int m_got = res.diagnostics.m.value_or(-1);
            Check cm{family + "-m", cell(k, n), double(m_exp), double(m_got), m_got == m_exp, is_known(family + "-m", k, n)};
            Check cs{family + "-s", cell(k, n), s_exp, res.lambda2, std::abs(res.lambda2 - s_exp) <= kTableTol,
                     is_known(family + "-s", k, n)};
            r.checks.push_back(cm);
            r.checks.push_back(cs);
        }
    return r;
}

inline Report symstar_tables() {
    return sweep("symstar", reference::symstar_m, reference::symstar_s, [](int n, int k) { return solve_symstar_uniform(n, k); });
}

inline Report ccs_tables() {
    return sweep("ccs", reference::ccs_m, reference::ccs_s, [](int n, int k) { return solve_ccs_uniform(n, k); });
}

inline Report all_tables() {
    Report r = four_vertex();
    for (const auto& part : {symstar_tables(), ccs_tables()}) r.checks.insert(r.checks.end(), part.checks.begin(), part.checks.end());
    return r;
}

struct Case {
    std::string label;
    ClockMode mode;
    std::function<OptimizationResult()> solve;
};

// Every closed-form solver over the instances with at most max_vertices vertices.
inline std::vector<Case> analytic_catalogue(int max_vertices) {
    std::vector<Case> out;
    auto add = [&](std::string label, ClockMode mode, int nv, std::function<OptimizationResult()> f) {
        if (nv <= max_vertices) out.push_back({std::move(label), mode, std::move(f)});
    };
    const auto U = ClockMode::uniform, NU = ClockMode::nonuniform;
    auto s = [](auto... xs) {
        std::string r;
        ((r += (r.empty() ? "" : ",") + std::to_string(xs)), ...);
        return r;
    };
    for (int n = 2; n <= max_vertices; ++n) add("complete(" + s(n) + ")", U, n, [n] { return solve_complete_uniform(n); });
    for (int n = 3; n <= max_vertices; ++n) add("cycle(" + s(n) + ")", U, n, [n] { return solve_cycle_uniform(n); });
    for (int n = 2; n <= max_vertices; ++n) add("path(" + s(n) + ")", U, n, [n] { return solve_path_uniform(n); });
    for (int n = 3; n + 1 <= max_vertices; ++n)
        for (auto mode : {U, NU})
            add(std::string("wheel(") + s(n) + ") " + mode_name(mode), mode, n + 1, [n, mode] { return solve_wheel(n, mode); });
    const std::vector<std::vector<std::string>> products = {
        {"complete:n=2", "complete:n=3"}, {"complete:n=2", "complete:n=2"}, {"complete:n=3", "complete:n=3"},
        {"complete:n=2", "complete:n=2", "complete:n=2"}, {"cycle:n=4", "complete:n=3"}, {"cycle:n=5", "complete:n=2"},
        {"complete:n=2", "complete:n=4"}, {"cycle:n=3", "cycle:n=5"},
    };
    for (const auto& names : products) {
        std::vector<Topology> fs;
        int nv = 1;
        std::string label;
        for (const auto& d : names) {
            fs.push_back(generate(d));
            nv *= fs.back().n_vertices;
            label += (label.empty() ? "" : "*") + d;
        }
        add(label, U, nv, [fs] { return solve_cartesian_uniform(fs); });
    }
    for (int n = 2; n <= max_vertices; ++n)
        for (int k = 1; 1 + n * k <= max_vertices; ++k) {
            add("symstar(" + s(n, k) + ")", U, 1 + n * k, [n, k] { return solve_symstar_uniform(n, k); });
            add("symstar(" + s(n, k) + ")", NU, 1 + n * k, [n, k] { return solve_symstar_nonuniform(n, k); });
        }
    for (int n = 2; n <= max_vertices; ++n)
        for (int k = 1; n * k <= max_vertices; ++k) {
            add("ccs(" + s(n, k) + ")", U, n * k, [n, k] { return solve_ccs_uniform(n, k); });
            if (k >= 2) add("ccs(" + s(n, k) + ")", NU, n * k, [n, k] { return solve_ccs_nonuniform(n, k - 1); });
        }
    for (int n = 2; n <= max_vertices; ++n)
        for (int k1 = 1; n * (1 + k1) <= max_vertices; ++k1)
            for (int k2 = 1; k2 <= k1 && n * (1 + k1 + k2) <= max_vertices; ++k2)
                add("ccs2(" + s(n, k1, k2) + ")", NU, n * (1 + k1 + k2), [=] { return solve_ccs2_nonuniform(n, k1, k2); });
    for (int n = 1; n <= max_vertices; ++n)
        for (int k = 1; n + k + 1 <= max_vertices; ++k) {
            add("palm(" + s(n, k) + ")", NU, n + k + 1, [n, k] { return solve_palm_nonuniform(n, k); });
            if (n >= 2) add("lollipop(" + s(n, k) + ")", NU, n + k + 1, [n, k] { return solve_lollipop_nonuniform(n, k); });
        }
    for (int n1 = 1; 2 * n1 + 1 <= max_vertices; ++n1)
        for (int n2 = 1; 2 * n1 + n2 <= max_vertices; ++n2)
            add("two-coupled(" + s(n1, n2, n1) + ")", U, 2 * n1 + n2, [n1, n2] { return solve_two_coupled_uniform(n1, n2, n1); });
    return out;
}

// Printed wheel formulas for n >= 6 are compared but not required to match.
inline bool known_formula_mismatch(const std::string& label) {
    if (label.rfind("wheel(", 0) != 0) return false;
    return std::stoi(label.substr(6)) >= 6;
}

}  // namespace gossip::verify
