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
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "gossip/common.hpp"
#include "gossip/gossip_core.hpp"
#include "gossip/polynomials.hpp"
#include "gossip/topology.hpp"

namespace gossip {

enum class ClockMode { uniform, nonuniform };

inline const char* mode_name(ClockMode m) { return m == ClockMode::uniform ? "uniform-clock" : "nonuniform-clock"; }

struct Diagnostics {
    std::optional<int> m;
    std::optional<double> x_star;
    std::optional<double> s;  // from the final polynomial
    std::string branch;
    std::optional<double> formula_lambda2;
    double eigen_lambda2 = 0.0;
    bool formula_mismatch = false;
    bool next_m_feasible = false;
    std::string root_sign;
    std::vector<std::string> notes;
};

struct OptimizationResult {
    Topology topology;
    ProbabilityAssignment assignment;
    double lambda2 = 0.0;
    std::string mode;  // uniform-clock | nonuniform-clock | numeric
    Diagnostics diagnostics;
};

namespace detail {

inline double clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

inline bool in_unit(double p) { return p >= -kFeasibilityTol && p <= 1.0 + kFeasibilityTol; }

inline void set_pair(ProbabilityAssignment& a, int i, int j, double pij, double pji) {
    a.transition(i, j) = pij;
    a.transition(j, i) = pji;
}

// The eigensolver has the last word: a formula value that disagrees with the
// constructed assignment is kept only as a diagnostic.
inline OptimizationResult certify(Topology t, ProbabilityAssignment a, ClockMode mode, double formula, Diagnostics d) {
    double eig = lambda2(t, a);
    d.formula_lambda2 = formula;
    d.eigen_lambda2 = eig;
    OptimizationResult r{std::move(t), std::move(a), formula, mode_name(mode), std::move(d)};
    if (std::abs(eig - formula) > kCertificateTol) {
        r.lambda2 = eig;
        r.diagnostics.formula_mismatch = true;
    }
    return r;
}

struct Candidate {
    PolySolveResult poly;
    ProbabilityAssignment assignment;
    bool feasible = false;
};

// Increase m from 0 while the candidate stays feasible; keep the last feasible one.
template <class Build>
Diagnostics m_search(int m_max, Build build, Candidate& best) {
    Diagnostics d;
    bool found = false;
    for (int m = 0; m <= m_max; ++m) {
        std::optional<Candidate> c;
        try {
            c = build(m);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::solver_failure) throw;
        }
        if (!c || !c->feasible) break;
        best = std::move(*c);
        d.m = m;
        found = true;
    }
    if (!found) fail(ErrorKind::solver_failure, "no feasible m");
    d.x_star = best.poly.x_star;
    d.s = best.poly.s;
    d.root_sign = best.poly.x_star < 0 ? "negative" : "nonnegative";
    d.next_m_feasible = false;
    return d;
}

}  // namespace detail

// ---------------------------------------------------------------- LP families

inline OptimizationResult solve_complete_uniform(int n) {
    if (n < 2) fail(ErrorKind::invalid_parameter, "complete: n >= 2");
    Topology t = generate(Generator{"complete", {{"n", n}}, {}});
    auto a = make_assignment(uniform_clock(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) a.transition(i, j) = 1.0 / (n - 1);
    Diagnostics d;
    d.branch = "complete";
    return detail::certify(std::move(t), std::move(a), ClockMode::uniform, (n - 2.0) / (n - 1.0), d);
}

inline OptimizationResult solve_cycle_uniform(int n) {
    if (n < 3) fail(ErrorKind::invalid_parameter, "cycle: n >= 3");
    Topology t = generate(Generator{"cycle", {{"n", n}}, {}});
    auto a = make_assignment(uniform_clock(n));
    for (int i = 0; i < n; ++i) detail::set_pair(a, i, (i + 1) % n, 0.5, 0.5);
    Diagnostics d;
    d.branch = "cycle";
    double c = std::cos(2.0 * std::numbers::pi / n);
    return detail::certify(std::move(t), std::move(a), ClockMode::uniform, (n - (1.0 - c)) / n, d);
}

inline OptimizationResult solve_wheel(int n, ClockMode mode) {
    if (n < 3) fail(ErrorKind::invalid_parameter, "wheel: n >= 3");
    Topology t = generate(Generator{"wheel", {{"n", n}}, {}});
    const double c = std::cos(2.0 * std::numbers::pi / n);
    const double denom = n + 2.0 * (1.0 - c);
    const double closed = (n * double(n) + (n - 1.0) * (1.0 - c)) / (n * double(n) + 2.0 * n * (1.0 - c));
    double p10, p11, formula;
    Eigen::VectorXd clock = uniform_clock(n + 1);
    Diagnostics d;
    if (n < 6) {
        p11 = (n + 1.0) / (2.0 * denom);
        p10 = (1.0 - 2.0 * c) / denom;
        formula = closed;
        d.branch = "n<6";
    } else {
        p11 = 0.5;
        p10 = 0.0;
        if (mode == ClockMode::uniform) {
            formula = (2.0 * n - 1.0) / (2.0 * n);
            d.branch = "n>=6 uniform";
        } else {
            formula = closed;
            clock(0) = 2.0 * (1.0 - c) / denom;
            for (int i = 1; i <= n; ++i) clock(i) = 1.0 / denom;
            d.branch = "n>=6 nonuniform";
        }
        // The hub-only assignment reaches (2n-1)/(2n) with uniform clocks.
        d.notes.push_back("star assignment (P10=1, P11=0) gives " + std::to_string((2.0 * n - 1.0) / (2.0 * n)));
    }
    auto a = make_assignment(clock);
    for (int i = 1; i <= n; ++i) {
        detail::set_pair(a, 0, i, 1.0 / n, p10);
        int nxt = i % n + 1;
        detail::set_pair(a, i, nxt, p11, p11);
    }
    return detail::certify(std::move(t), std::move(a), mode, formula, d);
}

// Factors must be regular and edge-transitive; each gets a uniform edge probability.
inline OptimizationResult solve_cartesian_uniform(const std::vector<Topology>& factors) {
    if (factors.empty()) fail(ErrorKind::invalid_parameter, "cartesian: need at least one factor");
    Topology t = cartesian_product(factors);
    const int n = t.n_vertices;
    std::vector<double> lam(factors.size());
    double sum = 0.0;
    for (std::size_t f = 0; f < factors.size(); ++f) {
        const auto& g = factors[f];
        auto deg = g.degrees();
        bool regular = std::all_of(deg.begin(), deg.end(), [&](int x) { return x == deg[0]; });
        bool one_orbit = std::all_of(g.edge_orbit.begin(), g.edge_orbit.end(), [&](int o) { return o == g.edge_orbit[0]; });
        if (!regular || !one_orbit) fail(ErrorKind::invalid_parameter, "cartesian: factor " + std::to_string(f) + " is not edge-transitive and regular");
        lam[f] = laplacian_lambda2(g, std::vector<double>(g.edges.size(), 1.0));
        if (lam[f] <= 0.0) fail(ErrorKind::invalid_parameter, "cartesian: factor has zero algebraic connectivity");
        sum += g.edges.size() / (g.n_vertices * lam[f]);
    }
    auto a = make_assignment(uniform_clock(n));
    for (std::size_t e = 0; e < t.edges.size(); ++e) {
        double p = 1.0 / (2.0 * lam[t.edge_orbit[e]] * sum);
        detail::set_pair(a, t.edges[e].first, t.edges[e].second, p, p);
    }
    Diagnostics d;
    d.branch = "cartesian";
    return detail::certify(std::move(t), std::move(a), ClockMode::uniform, 1.0 - 1.0 / (2.0 * n * sum), d);
}

// ------------------------------------------------------- uniform, m-searched

inline OptimizationResult solve_symstar_uniform(int n, int k) {
    if (n < 2 || k < 1) fail(ErrorKind::invalid_parameter, "symstar: n >= 2, k >= 1");
    const int nv = 1 + n * k;
    Topology t = generate(Generator{"symstar", {{"n", n}, {"k", k}}, {}});
    auto vtx = [&](int i, int j) { return j == 0 ? 0 : 1 + i * k + (j - 1); };

    auto build = [&](int m) {
        detail::Candidate c;
        Poly lin = {6.0 * (1.0 + n * (m + 1.0) * (m + 2.0)), n * (m + 1.0) * (2.0 * m * m + 7.0 * m + 6.0)};
        Poly fp = add(mul_linear(f_poly(k - m - 1), lin[0], lin[1]), scale(f_poly(k - m - 2), -6.0 * n * (m + 1.0) * (m + 1.0)));
        c.poly = solve_final_polynomial(fp, nv);
        const double x = c.poly.x_star;
        // down[j] = P_{j,j-1}, up[j] = P_{j,j+1}
        std::vector<double> down(k + 1, 1.0), up(k + 1, 0.0);
        const double p10 = 1.0 - m / (n * (m + 1.0)) - m * (m + 2.0) / 6.0 * x;
        down[1] = p10;
        for (int i = 1; i < m; ++i) down[i + 1] = i * (1.0 / n - 1.0) + (i + 1) * p10 + i * (i + 1.0) * (i + 2.0) / 6.0 * x;
        c.feasible = detail::in_unit(c.poly.s);
        for (int j = 1; j <= k; ++j) {
            c.feasible = c.feasible && detail::in_unit(down[j]);
            down[j] = detail::clamp01(down[j]);
            up[j] = (j < k && j <= m) ? 1.0 - down[j] : 0.0;
            c.feasible = c.feasible && detail::in_unit(up[j]);
        }
        c.assignment = make_assignment(uniform_clock(nv));
        for (int i = 0; i < n; ++i) {
            c.assignment.transition(0, vtx(i, 1)) = 1.0 / n;
            for (int j = 1; j <= k; ++j) {
                c.assignment.transition(vtx(i, j), vtx(i, j - 1)) = down[j];
                if (j < k) c.assignment.transition(vtx(i, j), vtx(i, j + 1)) = up[j];
            }
        }
        return c;
    };
    detail::Candidate best;
    Diagnostics d = detail::m_search(k - 1, build, best);
    d.branch = "m-search";
    return detail::certify(std::move(t), std::move(best.assignment), ClockMode::uniform, *d.s, d);
}

inline OptimizationResult solve_ccs_uniform(int n, int k) {
    if (n < 2 || k < 1) fail(ErrorKind::invalid_parameter, "ccs: n >= 2, k >= 1");
    const int nv = n * k;
    Topology t = generate(Generator{"ccs", {{"n", n}, {"k", k}}, {}});
    if (k == 1) {
        // no tails: the core alone is K_n
        auto r = solve_complete_uniform(n);
        r.topology = std::move(t);
        return r;
    }
    auto vtx = [&](int i, int j) { return i * k + (j - 1); };
    const double g = std::sqrt(2.0 * n / (n - 1.0));

    auto build = [&](int m) {
        detail::Candidate c;
        const double mm = m;
        double c0 = 12 * n * g * mm * mm + (6 * (n - 1) * g * g + 12 * n * g + 12 * n) * mm + 18 * n * g - 6 * g;
        double c1 = 4 * n * g * mm * mm * mm + (3 * n * (g + 1) * (g + 1) + 3 * n - 3 * g * g) * mm * mm +
                    (3 * (n - 1) * g * g + (8 * n - 6) * g + 6 * n) * mm + 6 * g * (n - 1);
        double rhs = 6 * (1 + g * mm) * (2 * n * mm + g * (n - 1));
        Poly fp = add(mul_linear(f_poly(k - m - 1), c0, c1), scale(f_poly(k - m - 2), -rhs));
        c.poly = solve_final_polynomial(fp, nv);
        const double x = c.poly.x_star;
        double p11 = g * (mm + 1) / (2 * n * mm + g * (n - 1)) -
                     (3 * (mm + 1) * mm + g * mm * (mm - 1) * (mm + 1)) / (12 * n * mm + 6 * g * (n - 1)) * x;
        c.feasible = detail::in_unit(c.poly.s) && detail::in_unit(p11) && detail::in_unit(1.0 - (n - 1) * p11);
        p11 = std::min(detail::clamp01(p11), 1.0 / (n - 1));
        std::vector<double> down(k + 1, 1.0), up(k + 1, 0.0);
        up[1] = k > 1 ? 1.0 - (n - 1) * p11 : 0.0;
        for (int i = 1; i <= m - 1; ++i)
            down[i + 1] = -i + (2.0 * n * i / g + n - 1) * p11 + (i * (i + 1.0) / (2 * g) + i * (i + 1.0) * (i - 1.0) / 6) * x;
        for (int j = 2; j <= k; ++j) {
            c.feasible = c.feasible && detail::in_unit(down[j]);
            down[j] = detail::clamp01(down[j]);
            up[j] = (j < k && j <= m) ? 1.0 - down[j] : 0.0;
        }
        if (k == 1) p11 = 1.0 / (n - 1);
        c.assignment = make_assignment(uniform_clock(nv));
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b)
                if (a != b) c.assignment.transition(vtx(a, 1), vtx(b, 1)) = p11;
            for (int j = 1; j <= k; ++j) {
                if (j > 1) c.assignment.transition(vtx(a, j), vtx(a, j - 1)) = down[j];
                if (j < k) c.assignment.transition(vtx(a, j), vtx(a, j + 1)) = up[j];
            }
        }
        return c;
    };
    detail::Candidate best;
    Diagnostics d = detail::m_search(k - 1, build, best);
    d.branch = "m-search";
    return detail::certify(std::move(t), std::move(best.assignment), ClockMode::uniform, *d.s, d);
}

inline OptimizationResult solve_path_uniform(int nv) {
    if (nv < 2) fail(ErrorKind::invalid_parameter, "path: at least 2 vertices");
    Topology t = generate(Generator{"path", {{"n", nv}}, {}});
    if (nv == 2) {
        auto a = make_assignment(uniform_clock(2));
        detail::set_pair(a, 0, 1, 1.0, 1.0);
        Diagnostics d;
        d.branch = "single edge";
        return detail::certify(std::move(t), std::move(a), ClockMode::uniform, 0.0, d);
    }
    const bool even = nv % 2 == 0;
    const int k = nv / 2;
    auto build = [&](int m) {
        detail::Candidate c;
        const double mm = m;
        Poly fp;
        if (even) {
            fp = add(mul_linear(f_poly(k - m - 1), 12 * mm * mm + 24 * mm + 15, 4 * mm * mm * mm + 12 * mm * mm + 11 * mm + 3),
                     scale(f_poly(k - m - 2), -3 * (2 * mm + 1) * (2 * mm + 1)));
        } else {
            fp = add(mul_linear(f_poly(k - m - 1), 6 * mm * mm + 18 * mm + 15, 2 * mm * mm * mm + 9 * mm * mm + 13 * mm + 6),
                     scale(f_poly(k - m - 2), -6 * (mm + 1) * (mm + 1)));
        }
        c.poly = solve_final_polynomial(fp, nv);
        const double x = c.poly.x_star;
        // inward[i] for the left-half vertex i-1 (1-based i from the end)
        std::vector<double> inward(k + 1, 1.0), outward(k + 1, 0.0);
        if (even) {
            double pc = (12 * (mm + 1) - (6 * mm * mm + (mm - 1) * mm * (2 * mm - 1)) * x) / (12 * (2 * mm + 1));
            inward[k] = pc;
            for (int i = 1; i < m; ++i) inward[k - i] = (2 * i + 1) * pc - i + i * (i + 1.0) * (2 * i + 1.0) / 12 * x;
        } else {
            double pc = (3 * (mm + 2) - mm * (mm + 1) * (mm + 2) * x) / (6 * (mm + 1));
            inward[k] = pc;
            for (int i = 2; i <= m; ++i) inward[k - i + 1] = i * pc - (i - 1) / 2.0 + (i - 1.0) * i * (i + 1.0) / 6 * x;
        }
        c.feasible = detail::in_unit(c.poly.s);
        for (int i = 1; i <= k; ++i) {
            c.feasible = c.feasible && detail::in_unit(inward[i]);
            inward[i] = detail::clamp01(inward[i]);
            outward[i] = (i >= 2 && i > k - m) ? 1.0 - inward[i] : 0.0;
        }
        c.assignment = make_assignment(uniform_clock(nv));
        auto& p = c.assignment.transition;
        for (int i = 1; i <= k; ++i) {
            int a = i - 1, b = nv - i;  // mirrored pair
            p(a, a + 1) = inward[i];
            p(b, b - 1) = inward[i];
            if (i >= 2) {
                p(a, a - 1) = outward[i];
                p(b, b + 1) = outward[i];
            }
        }
        if (!even) p(k, k - 1) = p(k, k + 1) = 0.5;
        return c;
    };
    detail::Candidate best;
    Diagnostics d = detail::m_search(std::max(k - 1, 0), build, best);
    d.branch = even ? "even" : "odd";
    return detail::certify(std::move(t), std::move(best.assignment), ClockMode::uniform, *d.s, d);
}

inline OptimizationResult solve_two_coupled_uniform(int n1, int n2, int n3) {
    if (n1 < 1 || n2 < 1 || n3 < 1) fail(ErrorKind::invalid_parameter, "two-coupled: sizes >= 1");
    if (n1 != n3) fail(ErrorKind::unsupported, "two-coupled: closed form needs n1 == n3");
    Topology t = generate(Generator{"two-coupled", {{"n1", n1}, {"n2", n2}, {"n3", n3}}, {}});
    const double a1 = n1, a2 = n2;
    double p_mid_out, p_mid_mid, formula;
    Diagnostics d;
    if (n2 > 2 * n1) {
        double den = 4 * a1 * a2 + (a2 - 1) * (a2 - 2 * a1);
        p_mid_out = (2 * a2 * a2 - (a2 - 1) * (a2 - 2 * a1)) / (a2 * den);
        p_mid_mid = ((2 * a1 + a2) * (a2 - 2 * a1)) / (a2 * den);
        formula = (den - a2) / den;
        d.branch = "n2>2n1";
    } else {
        p_mid_out = 1.0 / (2 * a1);
        p_mid_mid = 0.0;
        formula = (4 * a1 - 1) / (4 * a1);
        d.branch = "n2<=2n1";
    }
    auto a = make_assignment(uniform_clock(t.n_vertices));
    for (std::size_t e = 0; e < t.edges.size(); ++e) {
        auto [x, y] = t.edges[e];
        switch (t.edge_orbit[e]) {
            case 0:
            case 4: detail::set_pair(a, x, y, 0.0, 0.0); break;
            case 1: detail::set_pair(a, x, y, 1.0 / n2, p_mid_out); break;
            case 2: detail::set_pair(a, x, y, p_mid_mid, p_mid_mid); break;
            case 3: detail::set_pair(a, x, y, p_mid_out, 1.0 / n2); break;
        }
    }
    return detail::certify(std::move(t), std::move(a), ClockMode::uniform, formula, d);
}

// ---------------------------------------------------------------- nonuniform

inline OptimizationResult solve_symstar_nonuniform(int n, int k, double p0 = 0.0) {
    if (n < 2 || k < 1) fail(ErrorKind::invalid_parameter, "symstar: n >= 2, k >= 1");
    if (!(p0 >= 0.0 && p0 < 3.0 / (2 * k + 1))) fail(ErrorKind::invalid_parameter, "symstar: p0 out of range");
    Topology t = generate(Generator{"symstar", {{"n", n}, {"k", k}}, {}});
    auto vtx = [&](int i, int j) { return j == 0 ? 0 : 1 + i * k + (j - 1); };
    const double den = n * double(k) * (k + 1) * (2 * k + 1);
    Eigen::VectorXd clock = Eigen::VectorXd::Zero(t.n_vertices);
    clock(0) = p0;
    auto a = make_assignment(clock);
    for (int i = 0; i < n; ++i) {
        a.transition(0, vtx(i, 1)) = 1.0 / n;
        for (int j = 1; j <= k; ++j) {
            a.transition(vtx(i, j), vtx(i, j - 1)) = 1.0;
            a.clock(vtx(i, j)) = 3.0 * (k + j) * (k - j + 1) / den;
        }
        // The hub's mass comes out of the first ring only.
        a.clock(vtx(i, 1)) -= p0 / n;
    }
    Diagnostics d;
    d.branch = "all-inward";
    return detail::certify(std::move(t), std::move(a), ClockMode::nonuniform, 1.0 - 3.0 / den, d);
}

// k counts tail edges, so each branch has k + 1 vertices: topology ccs(n, k + 1).
inline OptimizationResult solve_ccs_nonuniform(int n, int k) {
    if (n < 2 || k < 1) fail(ErrorKind::invalid_parameter, "ccs: n >= 2, k >= 1");
    Topology t = generate(Generator{"ccs", {{"n", n}, {"k", k + 1}}, {}});
    auto vtx = [&](int i, int j) { return i * (k + 1) + j; };
    const double r = std::sqrt(2.0 * n * (n - 1));
    const double kk = k;
    const double den = 3 * (n - 1) * (kk + 1) + 3 * r * kk * (kk + 1) + n * kk * (kk + 1) * (2 * kk + 1);
    auto a = make_assignment(Eigen::VectorXd::Zero(t.n_vertices));
    const double p_core = 3 * (2 * n - 2 + kk * r) / (2 * n * (3 * n - 3 + 3 * kk * r + 2 * n * kk * kk + n * kk));
    for (int i = 0; i < n; ++i) {
        for (int b = 0; b < n; ++b)
            if (b != i) a.transition(vtx(i, 0), vtx(b, 0)) = 1.0 / (n - 1);
        a.clock(vtx(i, 0)) = p_core;
        for (int j = 1; j <= k; ++j) {
            a.transition(vtx(i, j), vtx(i, j - 1)) = 1.0;
            a.clock(vtx(i, j)) = 3 * (r * (kk - j + 1) + n * (kk - j + 1) * (kk + j)) / (n * den);
        }
    }
    Diagnostics d;
    d.branch = "all-inward";
    return detail::certify(std::move(t), std::move(a), ClockMode::nonuniform, 1.0 - 3.0 / den, d);
}

inline OptimizationResult solve_ccs2_nonuniform(int n, int k1, int k2) {
    if (n < 2 || k1 < 1 || k2 < 0) fail(ErrorKind::invalid_parameter, "ccs2: n >= 2, k1 >= 1, k2 >= 0");
    Topology t = generate(Generator{"ccs2", {{"n", n}, {"k1", k1}, {"k2", k2}}, {}});
    const int block = 1 + k1 + k2;
    const double r = std::sqrt(2.0 * n * (n - 1));
    const double d1 = k1 * (k1 + 1.0) + k2 * (k2 + 1.0);
    const double d2 = k1 * (k1 + 1.0) * (2 * k1 + 1.0) + k2 * (k2 + 1.0) * (2 * k2 + 1.0);
    const double formula = 1.0 - 3.0 / (3 * (n - 1.0) * (k1 + k2 + 1) + 3 * r * d1 + n * d2);
    const double gap = 1.0 - formula;
    auto a = make_assignment(Eigen::VectorXd::Zero(t.n_vertices));
    auto tail_clock = [&](int kt, int dist) { return gap * (r * (kt - dist + 1) + n * (kt - dist + 1.0) * (kt + dist)) / n; };
    for (int i = 0; i < n; ++i) {
        int core = i * block;
        for (int b = 0; b < n; ++b)
            if (b != i) a.transition(core, b * block) = 1.0 / (n - 1);
        a.clock(core) = gap * (2 * (n - 1.0) * (k1 + k2 + 1) + r * d1) / (2 * n);
        for (int j = 1; j <= k1; ++j) {
            a.transition(core + j, j == 1 ? core : core + j - 1) = 1.0;
            a.clock(core + j) = tail_clock(k1, j);
        }
        for (int j = 1; j <= k2; ++j) {
            int v = core + k1 + j;
            a.transition(v, j == 1 ? core : v - 1) = 1.0;
            a.clock(v) = tail_clock(k2, j);
        }
    }
    Diagnostics d;
    d.branch = "all-inward";
    return detail::certify(std::move(t), std::move(a), ClockMode::nonuniform, formula, d);
}

namespace detail {

// Palm clocks and all-inward transitions on any graph that contains the palm
// (hub 0, leaves 1..n, tail n+1..n+k); extra edges get probability 0.
inline OptimizationResult palm_on(Topology t, int n, int k, Diagnostics d) {
    const double nn = n, kk = k;
    double formula;
    auto a = make_assignment(Eigen::VectorXd::Zero(t.n_vertices));
    if (2 * n > k * (k + 1)) {
        double den = 6 * nn + kk * (kk + 1) * (2 * kk + 1);
        formula = 1.0 - 3.0 / den;
        for (int l = 1; l <= n; ++l) a.clock(l) = 6.0 / den;
        for (int j = 1; j <= k; ++j) a.clock(n + j) = 3.0 * (kk - j + 1) * (kk + j) / den;
        d.branch = "2n>k(k+1)";
    } else {
        formula = 1.0 - 6 * (nn + kk + 1) / ((kk + 1) * (kk + 2) * (6 * nn + kk * (kk + 4 * nn + 1)));
        double gap = 1.0 - formula;
        for (int l = 1; l <= n; ++l) a.clock(l) = gap * (kk + 1) * (kk + 2) / (nn + kk + 1);
        for (int j = 1; j <= k; ++j) a.clock(n + j) = gap * (kk - j + 1) * (nn * (kk + j + 2) + (kk + 1) * j) / (nn + kk + 1);
        d.branch = "2n<=k(k+1)";
    }
    for (int l = 1; l <= n; ++l) a.transition(l, 0) = 1.0;
    for (int j = 1; j <= k; ++j) a.transition(n + j, j == 1 ? 0 : n + j - 1) = 1.0;
    // The hub never ticks; its row only has to be stochastic.
    a.transition(0, n + 1) = 1.0;
    return certify(std::move(t), std::move(a), ClockMode::nonuniform, formula, std::move(d));
}

}  // namespace detail

inline OptimizationResult solve_palm_nonuniform(int n, int k) {
    if (n < 1 || k < 1) fail(ErrorKind::invalid_parameter, "palm: n, k >= 1");
    return detail::palm_on(generate(Generator{"palm", {{"n", n}, {"k", k}}, {}}), n, k, {});
}

inline OptimizationResult solve_lollipop_nonuniform(int n, int k) {
    if (n < 2 || k < 1) fail(ErrorKind::invalid_parameter, "lollipop: n >= 2, k >= 1");
    Topology t = generate(Generator{"lollipop", {{"n", n}, {"k", k}}, {}});
    const double nn = n, kk = k;
    const double r = std::sqrt(2.0 * n * (n + 1));
    if (kk * (kk + 1) > r) {
        Diagnostics d;
        d.notes.push_back("clique edges unused; palm solution");
        auto res = detail::palm_on(std::move(t), n, k, d);
        res.diagnostics.branch = "palm:" + res.diagnostics.branch;
        return res;
    }
    const double big_a = 6 * (nn - 1) * (nn + kk + 1) + (kk + 1) * (6 * kk * r + (nn + 1) * (6 + kk * (kk + 2)) + kk * kk * (3 * nn + kk + 2));
    const double formula = 1.0 - 6 * (nn + kk + 1) / big_a;
    const double gap = 1.0 - formula;
    auto a = make_assignment(Eigen::VectorXd::Zero(t.n_vertices));
    const double p0 = gap * nn * (kk + 1) * (2 * (nn + 1) + kk * r) / ((nn + kk + 1) * (nn + 1));
    a.clock(0) = p0;
    for (int l = 1; l <= n; ++l) {
        a.clock(l) = (nn - 1) * (gap - p0 / (2 * nn)) / nn;
        a.transition(0, l) = 1.0 / n;
        for (int l2 = 1; l2 <= n; ++l2)
            if (l2 != l) a.transition(l, l2) = 1.0 / (n - 1);
    }
    for (int j = 1; j <= k; ++j) {
        a.clock(n + j) = gap * (kk - j + 1) * (r + j * (kk + nn + 1) + nn * kk) / (nn + kk + 1);
        a.transition(n + j, j == 1 ? 0 : n + j - 1) = 1.0;
    }
    Diagnostics d;
    d.branch = "clique";
    return detail::certify(std::move(t), std::move(a), ClockMode::nonuniform, formula, d);
}

// ------------------------------------------------------------ detailed balance

// Weights indexed like t.edges, summing to 1/2.
inline ProbabilityAssignment detailed_balance_from_weights(const Topology& t, const std::vector<double>& w) {
    if (w.size() != t.edges.size()) fail(ErrorKind::dimension_mismatch, "one weight per edge");
    double total = 0.0;
    for (double x : w) {
        if (x < 0.0) fail(ErrorKind::invalid_parameter, "negative weight");
        total += x;
    }
    if (std::abs(total - 0.5) > kStochasticTol) fail(ErrorKind::invalid_parameter, "weights must sum to 1/2");
    auto a = make_assignment(Eigen::VectorXd::Zero(t.n_vertices));
    for (std::size_t e = 0; e < w.size(); ++e) {
        a.clock(t.edges[e].first) += w[e];
        a.clock(t.edges[e].second) += w[e];
    }
    auto adj = t.adjacency();
    for (std::size_t e = 0; e < w.size(); ++e) {
        auto [i, j] = t.edges[e];
        if (a.clock(i) > 0) a.transition(i, j) = w[e] / a.clock(i);
        if (a.clock(j) > 0) a.transition(j, i) = w[e] / a.clock(j);
    }
    // isolated-by-weight vertices never tick; give them an arbitrary valid row
    for (int v = 0; v < t.n_vertices; ++v)
        if (a.clock(v) == 0.0)
            for (int u : adj[v]) a.transition(v, u) = 1.0 / adj[v].size();
    return a;
}

}  // namespace gossip
