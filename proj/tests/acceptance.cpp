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

// One line per acceptance criterion: "criterion N: PASS|FAIL  detail".

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "gossip/analytic.hpp"
#include "gossip/dispatch.hpp"
#include "gossip/oracle.hpp"
#include "gossip/quantum.hpp"
#include "gossip/simulator.hpp"
#include "gossip/verify.hpp"

using namespace gossip;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... xs) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, xs...);
    return buf;
}

std::string list_failures(const verify::Report& r, std::size_t limit = 8) {
    std::string out;
    std::size_t shown = 0;
    for (const auto& c : r.checks) {
        if (c.ok) continue;
        if (shown++ == limit) {
            out += " ...";
            break;
        }
        out += fmt(" [%s %s: got %.8g want %.8g]", c.table.c_str(), c.label.c_str(), c.got, c.expected);
    }
    return out;
}

Outcome four_vertex_table() {
    auto t0 = Clock::now();
    auto r = verify::four_vertex();
    double secs = seconds_since(t0);
    bool pass = r.failed() == 0 && secs < 1.0;
    return {pass, fmt("%d/%zu rows within 1e-9, %.3f s", r.passed(), r.checks.size(), secs) + list_failures(r)};
}

Outcome table_sweep(const verify::Report& r, double secs, double limit) {
    auto m = r.filter(r.checks.front().table);
    auto s = r.filter(r.checks.back().table);
    bool pass = r.failed() == 0 && secs < limit;
    return {pass, fmt("m %d/%zu, s %d/%zu cells, %.2f s;", m.passed(), m.checks.size(), s.passed(), s.checks.size(), secs) +
                      list_failures(r)};
}

Outcome symstar_sweep() {
    auto t0 = Clock::now();
    auto r = verify::symstar_tables();
    return table_sweep(r, seconds_since(t0), 30.0);
}

Outcome ccs_sweep() {
    auto t0 = Clock::now();
    auto r = verify::ccs_tables();
    return table_sweep(r, seconds_since(t0), 30.0);
}

Outcome certificate() {
    int checked = 0, flagged = 0, bad = 0;
    std::string detail;
    for (const auto& c : verify::analytic_catalogue(40)) {
        auto r = c.solve();
        ++checked;
        double eig = lambda2(r.topology, r.assignment);
        bool value_ok = std::abs(eig - r.lambda2) <= verify::kExactTol;
        bool formula_ok = r.diagnostics.formula_lambda2 && std::abs(*r.diagnostics.formula_lambda2 - eig) <= verify::kExactTol;
        bool flag_ok = r.diagnostics.formula_mismatch == !formula_ok;
        if (value_ok && formula_ok && flag_ok) continue;
        if (value_ok && flag_ok && verify::known_formula_mismatch(c.label)) {
            ++flagged;
            continue;
        }
        ++bad;
        if (bad <= 5) detail += fmt(" [%s %s eig %.12g formula %.12g]", c.label.c_str(), mode_name(c.mode), eig,
                                    r.diagnostics.formula_lambda2.value_or(NAN));
    }
    // the prism's printed 5/14 is text only; the closed form gives 6/7
    auto prism = solve_cartesian_uniform({generate("complete:n=2"), generate("complete:n=3")});
    std::string note = fmt(" prism eigensolver %.10g vs printed 5/14;", prism.lambda2);
    return {bad == 0, fmt("%d outputs, %d flagged wheel n>=6 formulas, %d unexplained;", checked, flagged, bad) + note + detail};
}

Outcome ordering() {
    using namespace reference;
    int violations = 0;
    std::string detail;
    for (int k = kMinK; k <= kMaxK; ++k)
        for (int n = kMinN; n <= kMaxN; ++n) {
            double su = solve_symstar_uniform(n, k).lambda2, sn = solve_symstar_nonuniform(n, k).lambda2;
            double cu = solve_ccs_uniform(n, k).lambda2, cn = solve_ccs_nonuniform(n, k - 1).lambda2;
            if (sn > su + 1e-12) {
                ++violations;
                detail += fmt(" [symstar k=%d n=%d]", k, n);
            }
            if (cn > cu + 1e-12) {
                ++violations;
                detail += fmt(" [ccs k=%d n=%d]", k, n);
            }
        }
    double u = solve_symstar_uniform(5, 2).lambda2, v = solve_symstar_nonuniform(5, 2).lambda2;
    bool margin = u - v >= 0.0029;
    return {violations == 0 && margin,
            fmt("%d ordering violations; symstar(5,2) uniform %.10f nonuniform %.10f, gain %.6f (need >= 0.0029)", violations, u,
                v, u - v) +
                detail};
}

Outcome detailed_balance() {
    Rng rng(2024, 0);
    double worst_balance = 0.0, worst_gap = 0.0;
    for (const char* d : {"path:n=5", "star:n=5", "ccs:n=3,k=2"}) {
        auto t = generate(d);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> w(t.edges.size());
            double sum = 0.0;
            for (auto& x : w) sum += (x = rng.uniform() + 1e-6);
            for (auto& x : w) x *= 0.5 / sum;
            sum = 0.0;
            for (double x : w) sum += x;
            w.back() += 0.5 - sum;
            auto a = detailed_balance_from_weights(t, w);
            for (auto [i, j] : t.edges)
                worst_balance = std::max(worst_balance, std::abs(a.clock(i) * a.transition(i, j) - a.clock(j) * a.transition(j, i)));
            worst_gap = std::max(worst_gap, std::abs(lambda2(t, a) - (1.0 - laplacian_lambda2(t, w))));
        }
    }
    return {worst_balance <= 1e-12 && worst_gap <= 1e-10,
            fmt("max |PiPij - PjPji| = %.3g, max spectral gap error = %.3g over 150 weight vectors", worst_balance, worst_gap)};
}

Outcome non_improvability() {
    int checked = 0, improved = 0;
    double worst = 0.0;
    std::string detail;
    for (const auto& c : verify::analytic_catalogue(15)) {
        auto r = c.solve();
        auto ls = local_search(r.topology, c.mode, r.assignment, 50000);
        double gain = r.lambda2 - ls.lambda2;
        ++checked;
        worst = std::max(worst, gain);
        if (gain >= 1e-6) {
            ++improved;
            detail += fmt(" [%s %s %.10f -> %.10f]", c.label.c_str(), mode_name(c.mode), r.lambda2, ls.lambda2);
        }
    }
    struct GridCase {
        const char* desc;
        double analytic;
    };
    int grid_bad = 0;
    std::string grid;
    for (auto g : {GridCase{"cycle:n=4", 0.75}, GridCase{"complete:n=4", 2.0 / 3}, GridCase{"wheel:n=6", 11.0 / 12}}) {
        auto res = exhaustive_grid(generate(g.desc), ClockMode::uniform, 1e-3);
        bool ok = std::abs(res.lambda2 - g.analytic) <= 1e-3;
        grid_bad += ok ? 0 : 1;
        grid += fmt(" %s grid %.6f analytic %.6f;", g.desc, res.lambda2, g.analytic);
    }
    return {improved == 0 && grid_bad == 0,
            fmt("%d seeds, %d improved by >= 1e-6 (largest gain %.3g);", checked, improved, worst) + grid + detail};
}

Outcome quantum_collapse() {
    int runs = 0, bad = 0;
    double worst = 0.0;
    Rng rng(77, 0);
    for (const char* d : {"path:n=3", "complete:n=3"}) {
        auto t = generate(d);
        std::vector<ProbabilityAssignment> as{solve(t, ClockMode::nonuniform).assignment};
        for (int i = 0; i < 20; ++i) {
            Eigen::VectorXd clock(3);
            for (int v = 0; v < 3; ++v) clock(v) = rng.uniform() + 1e-3;
            auto a = make_assignment(clock / clock.sum());
            auto adj = t.adjacency();
            for (int v = 0; v < 3; ++v) {
                double s = 0.0;
                for (int u : adj[v]) s += (a.transition(v, u) = rng.uniform() + 1e-3);
                for (int u : adj[v]) a.transition(v, u) /= s;
            }
            as.push_back(a);
        }
        for (int dd : {2, 3})
            for (const auto& a : as) {
                auto rep = quantum::verify_spectral_collapse(t, a, dd);
                ++runs;
                worst = std::max(worst, std::abs(rep.lambda2_quantum - rep.lambda2_classical));
                bad += rep.ok() ? 0 : 1;
            }
    }
    double swap_err = 0.0;
    for (int n : {2, 3}) {
        const int hd = static_cast<int>(quantum::ipow(2, n));
        for (int rep = 0; rep < 5; ++rep) {
            auto rho = quantum::random_density(hd, rng);
            auto c = quantum::expand_density(rho, 2, n);
            for (int j = 0; j < n; ++j)
                for (int k = j + 1; k < n; ++k) {
                    auto u = quantum::swap_unitary(j, k, 2, n);
                    auto lhs = quantum::expand_density(u * rho * u.adjoint(), 2, n);
                    auto rhs = quantum::swap_coefficients(c, j, k);
                    for (std::size_t i = 0; i < lhs.coeffs.size(); ++i) swap_err = std::max(swap_err, std::abs(lhs.coeffs[i] - rhs.coeffs[i]));
                }
        }
    }
    return {bad == 0 && worst <= 1e-9 && swap_err <= 1e-10,
            fmt("%d collapse checks, %d failed, max |lambda2_Q - lambda2| = %.3g; swap vs conjugation max error %.3g", runs, bad, worst,
                swap_err)};
}

Outcome simulator() {
    std::string detail;
    bool pass = true;
    for (const auto& row : reference::four_vertex_table()) {
        if (row.name != "complete" && row.name != "cycle" && row.name != "path") continue;
        double l2 = lambda2(row.topology, row.assignment);
        double est = sim::estimate_decay_rate(row.topology, row.assignment, 200, 400, 7);
        bool ok = est >= 0.9 * l2 * l2 && est < 1.0;
        pass &= ok;
        double exact = sim::second_moment_rate(row.topology, row.assignment);
        detail += fmt(" %s decay %.4f (exact %.4f, lambda2 %.4f, floor %.4f)%s;", row.name.c_str(), est, exact, l2, 0.9 * l2 * l2,
                      ok ? "" : " FAIL");
    }
    auto table = reference::four_vertex_table();
    const auto& p = table[0];
    sim::SimConfig cfg;
    cfg.seed = 7;
    cfg.rates = sim::rates_from_clock(p.assignment.clock);
    cfg.max_ticks = 100000;
    cfg.initial_state = Eigen::Vector4d(3.0, -1.0, 0.5, 2.0);
    std::ostringstream a, b;
    auto tr = sim::run(p.topology, p.assignment, cfg);
    sim::write_trace_csv(a, tr);
    sim::write_trace_csv(b, sim::run(p.topology, p.assignment, cfg));
    bool same = a.str() == b.str();
    bool conserved = tr.max_sum_drift <= 1e-12;
    pass &= same && conserved;
    detail += fmt(" traces %s (%zu bytes); sum drift %.3g over 1e5 ticks", same ? "identical" : "DIFFER", a.str().size(), tr.max_sum_drift);
    return {pass, detail};
}

Outcome desk_scale() {
    // Nothing is designated out of reach; the quantum checks stay inside the guard.
    bool fits = true;
    try {
        quantum::check_guard(3, 3);
    } catch (const Error&) {
        fits = false;
    }
    return {fits, "no claims designated as non-reproducible; quantum checks run at N <= 3, d <= 3 (dimension 729)"};
}

Outcome run(int n) {
    switch (n) {
        case 1: return four_vertex_table();
        case 2: return symstar_sweep();
        case 3: return ccs_sweep();
        case 4: return certificate();
        case 5: return ordering();
        case 6: return detailed_balance();
        case 7: return non_improvability();
        case 8: return quantum_collapse();
        case 9: return simulator();
        case 10: return desk_scale();
    }
    return {false, "unknown criterion"};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    int only = 0;
    app.add_option("--criterion", only, "run a single criterion (1-10)")->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);
    bool all = true;
    for (int n = 1; n <= 10; ++n) {
        if (only && n != only) continue;
        Outcome o;
        try {
            o = run(n);
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
        all &= o.pass;
    }
    return all ? 0 : 1;
}
