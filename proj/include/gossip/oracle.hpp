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
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gossip/analytic.hpp"
#include "gossip/common.hpp"
#include "gossip/gossip_core.hpp"
#include "gossip/topology.hpp"

namespace gossip {

inline double evaluate(const Topology& t, const ProbabilityAssignment& a) { return lambda2(t, a); }

// Free variables are one transition probability per (source vertex orbit,
// edge orbit) and, in nonuniform mode, one clock probability per vertex orbit.
class OrbitParameterization {
public:
    struct Row {
        std::vector<int> vars;      // transition variable ids
        std::vector<double> count;  // incident edges per variable
    };

    OrbitParameterization(const Topology& t, ClockMode mode) : topo_(t), mode_(mode) {
        std::map<std::pair<int, int>, int> key_to_var;
        std::map<int, int> orbit_row;
        auto adj = t.adjacency();
        for (int v = 0; v < t.n_vertices; ++v) {
            int ov = t.vertex_orbit[v];
            if (!orbit_row.count(ov)) {
                orbit_row[ov] = static_cast<int>(rows_.size());
                rows_.push_back({});
                row_members_.push_back({});
            }
            int r = orbit_row[ov];
            row_members_[r].push_back(v);
            if (row_members_[r].size() > 1) continue;
            for (int u : adj[v]) {
                auto key = std::make_pair(ov, t.edge_orbit[t.edge_index(v, u)]);
                auto it = key_to_var.find(key);
                if (it == key_to_var.end()) {
                    it = key_to_var.emplace(key, static_cast<int>(var_key_.size())).first;
                    var_key_.push_back(key);
                    rows_[r].vars.push_back(it->second);
                    rows_[r].count.push_back(0.0);
                }
                for (std::size_t s = 0; s < rows_[r].vars.size(); ++s)
                    if (rows_[r].vars[s] == it->second) rows_[r].count[s] += 1.0;
            }
        }
        // every member of an orbit must see the same incidence pattern
        for (std::size_t r = 0; r < rows_.size(); ++r)
            for (int v : row_members_[r]) {
                std::map<int, double> seen;
                for (int u : adj[v]) {
                    auto key = std::make_pair(t.vertex_orbit[v], t.edge_orbit[t.edge_index(v, u)]);
                    auto it = key_to_var.find(key);
                    if (it == key_to_var.end()) fail(ErrorKind::invalid_parameter, "orbit labels are inconsistent");
                    seen[it->second] += 1.0;
                }
                for (std::size_t s = 0; s < rows_[r].vars.size(); ++s)
                    if (seen[rows_[r].vars[s]] != rows_[r].count[s]) fail(ErrorKind::invalid_parameter, "orbit labels are inconsistent");
            }
        n_transition_ = static_cast<int>(var_key_.size());
        n_clock_ = mode == ClockMode::nonuniform ? static_cast<int>(rows_.size()) : 0;
    }

    int size() const { return n_transition_ + n_clock_; }
    int transition_count() const { return n_transition_; }
    const std::vector<Row>& rows() const { return rows_; }
    ClockMode mode() const { return mode_; }

    int free_count() const {
        int f = 0;
        for (const auto& r : rows_) f += r.vars.empty() ? 0 : static_cast<int>(r.vars.size()) - 1;
        if (mode_ == ClockMode::nonuniform) f += static_cast<int>(rows_.size()) - 1;
        return f;
    }

    ProbabilityAssignment expand(const std::vector<double>& x) const {
        const int n = topo_.n_vertices;
        ProbabilityAssignment a = make_assignment(uniform_clock(n));
        for (std::size_t r = 0; r < rows_.size(); ++r)
            for (int v : row_members_[r]) {
                if (mode_ == ClockMode::nonuniform) a.clock(v) = x[n_transition_ + r];
                for (int u : adj_[v]) {
                    auto key = std::make_pair(topo_.vertex_orbit[v], topo_.edge_orbit[topo_.edge_index(v, u)]);
                    a.transition(v, u) = x[var_of(key)];
                }
            }
        return a;
    }

    // Orbit averages of an assignment.
    std::vector<double> reduce(const ProbabilityAssignment& a) const {
        std::vector<double> x(size(), 0.0), hits(size(), 0.0);
        for (std::size_t r = 0; r < rows_.size(); ++r)
            for (int v : row_members_[r]) {
                if (mode_ == ClockMode::nonuniform) {
                    x[n_transition_ + r] += a.clock(v);
                    hits[n_transition_ + r] += 1.0;
                }
                for (int u : adj_[v]) {
                    int id = var_of({topo_.vertex_orbit[v], topo_.edge_orbit[topo_.edge_index(v, u)]});
                    x[id] += a.transition(v, u);
                    hits[id] += 1.0;
                }
            }
        for (int i = 0; i < size(); ++i)
            if (hits[i] > 0) x[i] /= hits[i];
        return x;
    }

    // Clamp to [0, inf) and rescale each row (and the clock vector) to sum to 1.
    void project(std::vector<double>& x) const {
        for (auto& v : x) v = std::max(0.0, v);
        for (const auto& r : rows_) {
            if (r.vars.empty()) continue;
            double s = 0.0, deg = 0.0;
            for (std::size_t i = 0; i < r.vars.size(); ++i) {
                s += r.count[i] * x[r.vars[i]];
                deg += r.count[i];
            }
            if (s <= 0.0) {
                for (int id : r.vars) x[id] = 1.0 / deg;
            } else if (std::abs(s - 1.0) > 1e-15) {
                for (int id : r.vars) x[id] /= s;
            }
        }
        if (mode_ == ClockMode::nonuniform) {
            double s = 0.0;
            for (std::size_t r = 0; r < rows_.size(); ++r) s += row_members_[r].size() * x[n_transition_ + r];
            if (s <= 0.0) {
                for (std::size_t r = 0; r < rows_.size(); ++r) x[n_transition_ + r] = 1.0 / topo_.n_vertices;
            } else if (std::abs(s - 1.0) > 1e-15) {
                for (std::size_t r = 0; r < rows_.size(); ++r) x[n_transition_ + r] /= s;
            }
        }
    }

    // Uniform rows and clocks.
    std::vector<double> center() const {
        std::vector<double> x(size(), 1.0);
        project(x);
        return x;
    }

    const std::vector<int>& members(int row) const { return row_members_[row]; }

private:
    int var_of(std::pair<int, int> key) const {
        for (int i = 0; i < n_transition_; ++i)
            if (var_key_[i] == key) return i;
        fail(ErrorKind::invalid_parameter, "unknown orbit key");
    }

    Topology topo_;
    ClockMode mode_;
    std::vector<std::vector<int>> adj_ = topo_.adjacency();
    std::vector<Row> rows_;
    std::vector<std::vector<int>> row_members_;
    std::vector<std::pair<int, int>> var_key_;
    int n_transition_ = 0;
    int n_clock_ = 0;
};

struct SearchTrace {
    std::vector<double> best;  // best-so-far value after each accepted move
    long evaluations = 0;
};

// Coordinate descent with projection and a halving step from 0.1 down to 1e-6.
inline OptimizationResult local_search(const Topology& t, ClockMode mode, const ProbabilityAssignment& seed, long budget,
                                       SearchTrace* trace = nullptr) {
    validate(t, seed);
    OrbitParameterization par(t, mode);
    std::vector<double> x = par.reduce(seed);
    par.project(x);
    const double seed_value = evaluate(t, seed);
    double best = evaluate(t, par.expand(x));
    long evals = 1;
    SearchTrace local;
    local.best.push_back(std::min(best, seed_value));
    for (double step = 0.1; step >= 1e-6 && evals < budget; step *= 0.5) {
        bool improved = true;
        while (improved && evals < budget) {
            improved = false;
            for (int i = 0; i < par.size() && evals < budget; ++i) {
                for (double dir : {1.0, -1.0}) {
                    std::vector<double> y = x;
                    y[i] += dir * step;
                    par.project(y);
                    if (y == x) continue;
                    double v = evaluate(t, par.expand(y));
                    ++evals;
                    if (v < best - 1e-15) {
                        best = v;
                        x = std::move(y);
                        improved = true;
                        local.best.push_back(std::min(best, seed_value));
                        break;
                    }
                    if (evals >= budget) break;
                }
            }
        }
    }
    local.evaluations = evals;
    if (trace) *trace = local;
    Diagnostics d;
    d.branch = "local-search";
    d.notes.push_back("evaluations " + std::to_string(evals));
    ProbabilityAssignment a = best <= seed_value ? par.expand(x) : seed;
    double value = std::min(best, seed_value);
    d.eigen_lambda2 = value;
    return OptimizationResult{t, a, value, mode_name(mode), d};
}

// Full scan of the orbit-reduced feasible set; at most three free variables.
inline OptimizationResult exhaustive_grid(const Topology& t, ClockMode mode, double resolution) {
    OrbitParameterization par(t, mode);
    if (par.free_count() > 3) fail(ErrorKind::invalid_parameter, "exhaustive_grid: more than 3 free variables");
    if (!(resolution > 0.0)) fail(ErrorKind::invalid_parameter, "exhaustive_grid: resolution must be positive");

    // Each constraint group fixes its last variable from the others.
    struct Group {
        std::vector<int> ids;
        std::vector<double> weight;
    };
    std::vector<Group> groups;
    for (const auto& r : par.rows())
        if (!r.vars.empty()) groups.push_back({r.vars, r.count});
    if (mode == ClockMode::nonuniform) {
        Group g;
        for (std::size_t r = 0; r < par.rows().size(); ++r) {
            g.ids.push_back(par.transition_count() + static_cast<int>(r));
            g.weight.push_back(static_cast<double>(par.members(static_cast<int>(r)).size()));
        }
        groups.push_back(g);
    }
    struct Axis {
        int group, slot;
        double hi;
    };
    std::vector<Axis> axes;
    for (std::size_t g = 0; g < groups.size(); ++g)
        for (std::size_t s = 0; s + 1 < groups[g].ids.size(); ++s)
            axes.push_back({static_cast<int>(g), static_cast<int>(s), 1.0 / groups[g].weight[s]});

    std::vector<long> steps(axes.size());
    for (std::size_t i = 0; i < axes.size(); ++i) steps[i] = static_cast<long>(std::floor(axes[i].hi / resolution + 1e-9)) + 1;

    std::vector<double> x(par.size(), 0.0), best_x;
    double best = 2.0;
    std::vector<long> idx(axes.size(), 0);
    long evals = 0;
    while (true) {
        for (std::size_t i = 0; i < axes.size(); ++i) x[groups[axes[i].group].ids[axes[i].slot]] = std::min(axes[i].hi, idx[i] * resolution);
        bool ok = true;
        for (const auto& g : groups) {
            double rest = 1.0;
            for (std::size_t s = 0; s + 1 < g.ids.size(); ++s) rest -= g.weight[s] * x[g.ids[s]];
            double last = rest / g.weight.back();
            if (last < -1e-12) ok = false;
            x[g.ids.back()] = std::max(0.0, last);
        }
        if (ok) {
            double v = evaluate(t, par.expand(x));
            ++evals;
            if (v < best) {
                best = v;
                best_x = x;
            }
        }
        int d = static_cast<int>(axes.size()) - 1;
        for (; d >= 0; --d) {
            if (++idx[d] < steps[d]) break;
            idx[d] = 0;
        }
        if (d < 0) break;
    }
    if (best_x.empty()) fail(ErrorKind::solver_failure, "exhaustive_grid: no feasible grid point");
    Diagnostics diag;
    diag.branch = "grid";
    diag.eigen_lambda2 = best;
    diag.notes.push_back("grid points " + std::to_string(evals));
    return OptimizationResult{t, par.expand(best_x), best, mode_name(mode), diag};
}

}  // namespace gossip
