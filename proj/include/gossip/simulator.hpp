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
#include <cstdint>
#include <cstdio>
#include <limits>
#include <ostream>
#include <vector>

#include "gossip/common.hpp"
#include "gossip/gossip_core.hpp"
#include "gossip/rng.hpp"
#include "gossip/topology.hpp"

namespace gossip::sim {

struct SimConfig {
    std::uint64_t seed = 0;
    Eigen::VectorXd rates;  // per-vertex Poisson rates
    long max_ticks = 1000;
    Eigen::VectorXd initial_state;
    bool record_states = false;
};

// lambda_i = total * P_i; the total defaults to N (unit rate per vertex on average).
inline Eigen::VectorXd rates_from_clock(const Eigen::VectorXd& clock, double total = -1.0) {
    if (total <= 0.0) total = static_cast<double>(clock.size());
    return clock * total;
}

struct Event {
    long tick = 0;
    double time = 0.0;
    int initiator = 0;
    int partner = 0;
};

struct SimulationTrace {
    std::vector<Event> events;
    std::vector<Eigen::VectorXd> states;  // only with record_states; index 0 is the start
    std::vector<double> error_curve;      // index 0 is the start
    double max_sum_drift = 0.0;           // relative
};

namespace detail {

inline int categorical(Rng& rng, const double* w, int n, double total) {
    double u = rng.uniform() * total, acc = 0.0;
    int last = -1;
    for (int i = 0; i < n; ++i) {
        if (w[i] <= 0.0) continue;
        acc += w[i];
        last = i;
        if (u < acc) return i;
    }
    return last;
}

inline void check_rates(const Eigen::VectorXd& rates) {
    if (rates.size() == 0 || rates.minCoeff() < 0.0 || !(rates.sum() > 0.0))
        fail(ErrorKind::invalid_parameter, "rates must be nonnegative with a positive sum");
}

struct Step {
    int initiator;
    int partner;
    double wait;
};

}  // namespace detail

struct Tick {
    double wait = 0.0;
    int vertex = 0;
};

// Merged clocks: the wait is exponential in the total rate and the ticking
// vertex is drawn independently in proportion to its rate.
inline Tick next_event(Rng& rng, const Eigen::VectorXd& rates) {
    detail::check_rates(rates);
    double total = rates.sum();
    Tick t;
    t.wait = rng.exponential(total);
    t.vertex = detail::categorical(rng, rates.data(), static_cast<int>(rates.size()), total);
    return t;
}

class Sampler {
public:
    Sampler(const Topology& t, const ProbabilityAssignment& a, const Eigen::VectorXd& rates) : rates_(rates) {
        validate(t, a);
        detail::check_rates(rates);
        if (rates.size() != t.n_vertices) fail(ErrorKind::dimension_mismatch, "one rate per vertex");
        auto adj = t.adjacency();
        nbr_ = adj;
        prob_.resize(t.n_vertices);
        for (int v = 0; v < t.n_vertices; ++v)
            for (int u : adj[v]) prob_[v].push_back(a.transition(v, u));
    }

    detail::Step draw(Rng& rng) const {
        Tick tk = next_event(rng, rates_);
        const auto& p = prob_[tk.vertex];
        int slot = detail::categorical(rng, p.data(), static_cast<int>(p.size()), 1.0);
        if (slot < 0) fail(ErrorKind::invalid_assignment, "vertex with no usable neighbour ticked");
        return {tk.vertex, nbr_[tk.vertex][slot], tk.wait};
    }

private:
    Eigen::VectorXd rates_;
    std::vector<std::vector<int>> nbr_;
    std::vector<std::vector<double>> prob_;
};

inline double deviation(const Eigen::VectorXd& x) { return (x.array() - x.mean()).matrix().norm(); }

inline SimulationTrace run(const Topology& t, const ProbabilityAssignment& a, const SimConfig& cfg) {
    if (cfg.initial_state.size() != t.n_vertices) fail(ErrorKind::dimension_mismatch, "initial state length differs from N");
    Sampler sampler(t, a, cfg.rates);
    Rng rng(cfg.seed, 0);
    Eigen::VectorXd x = cfg.initial_state;
    const double norm0 = x.norm();
    const double sum0 = x.sum();
    const double scale = std::max(x.cwiseAbs().sum(), std::numeric_limits<double>::min());
    SimulationTrace tr;
    tr.error_curve.reserve(cfg.max_ticks + 1);
    tr.error_curve.push_back(norm0 > 0 ? deviation(x) / norm0 : 0.0);
    if (cfg.record_states) tr.states.push_back(x);
    double time = 0.0;
    for (long k = 1; k <= cfg.max_ticks; ++k) {
        auto s = sampler.draw(rng);
        time += s.wait;
        double avg = 0.5 * (x(s.initiator) + x(s.partner));
        x(s.initiator) = x(s.partner) = avg;
        tr.events.push_back({k, time, s.initiator, s.partner});
        tr.error_curve.push_back(norm0 > 0 ? deviation(x) / norm0 : 0.0);
        tr.max_sum_drift = std::max(tr.max_sum_drift, std::abs(x.sum() - sum0) / scale);
        if (cfg.record_states) tr.states.push_back(x);
    }
    return tr;
}

// log of E||x(k) - mean||^2 per tick, from random unit-norm zero-mean starts.
// The deviation is re-centred and rescaled every tick (both commute with the
// pairwise averaging), so values far below machine epsilon stay measurable.
inline std::vector<double> log_mean_square_error(const Topology& t, const ProbabilityAssignment& a, int trials, long ticks,
                                                 std::uint64_t seed) {
    const int n = t.n_vertices;
    Sampler sampler(t, a, rates_from_clock(a.clock));
    std::vector<std::vector<double>> logs(trials, std::vector<double>(ticks + 1));
    for (int tr = 0; tr < trials; ++tr) {
        Rng rng(seed, static_cast<std::uint64_t>(tr));
        Eigen::VectorXd y(n);
        for (int i = 0; i < n; ++i) y(i) = rng.normal();
        y.array() -= y.mean();
        double nrm = y.norm();
        if (nrm == 0.0) fail(ErrorKind::invalid_parameter, "degenerate start");
        y /= nrm;
        double log_scale = 0.0;
        logs[tr][0] = 0.0;
        for (long k = 1; k <= ticks; ++k) {
            auto s = sampler.draw(rng);
            double avg = 0.5 * (y(s.initiator) + y(s.partner));
            y(s.initiator) = y(s.partner) = avg;
            y.array() -= y.mean();
            double m = y.norm();
            if (m == 0.0) {
                for (long r = k; r <= ticks; ++r) logs[tr][r] = -std::numeric_limits<double>::infinity();
                break;
            }
            log_scale += std::log(m);
            y /= m;
            logs[tr][k] = 2.0 * log_scale;
        }
    }
    std::vector<double> out(ticks + 1);
    for (long k = 0; k <= ticks; ++k) {
        double mx = -std::numeric_limits<double>::infinity();
        for (int tr = 0; tr < trials; ++tr) mx = std::max(mx, logs[tr][k]);
        if (!std::isfinite(mx)) {
            out[k] = mx;
            continue;
        }
        double acc = 0.0;
        for (int tr = 0; tr < trials; ++tr) acc += std::exp(logs[tr][k] - mx);
        out[k] = mx + std::log(acc / trials);
    }
    return out;
}

// Exact per-tick contraction of E||x||^2: the spectral radius of
// S -> E[W S W] on mean-zero matrices. Dense in N^2, so small N only.
inline double second_moment_rate(const Topology& t, const ProbabilityAssignment& a) {
    const int n = t.n_vertices;
    if (n > 30) fail(ErrorKind::invalid_parameter, "second_moment_rate: N > 30");
    Eigen::MatrixXd sup = Eigen::MatrixXd::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double p = a.clock(i) * a.transition(i, j);
            if (i == j || p == 0.0) continue;
            Eigen::MatrixXd w = averaging_matrix(i, j, n);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c)
                    if (w(r, c) != 0.0) sup.block(r * n, c * n, n, n) += p * w(r, c) * w;
        }
    Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
    Eigen::MatrixXd qq(n * n, n * n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) qq.block(r * n, c * n, n, n) = q(r, c) * q;
    Eigen::MatrixXd m = qq * sup * qq;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

// Per-tick contraction factor of the mean squared error, fitted by least
// squares where the mean has fallen to between 1e-1 and 1e-6 of its start.
// Later ticks are dominated by a few slow trials and bias the fit low.
inline double estimate_decay_rate(const Topology& t, const ProbabilityAssignment& a, int trials, long ticks, std::uint64_t seed) {
    if (trials < 100 || ticks < 100) fail(ErrorKind::invalid_parameter, "need trials >= 100 and ticks >= 100");
    auto curve = log_mean_square_error(t, a, trials, ticks, seed);
    const double hi = std::log(1e-1), lo = std::log(1e-6);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long cnt = 0;
    for (long k = 1; k <= ticks; ++k) {
        if (!std::isfinite(curve[k]) || curve[k] < lo) break;
        if (curve[k] > hi) continue;
        double xk = static_cast<double>(k);
        sx += xk;
        sy += curve[k];
        sxx += xk * xk;
        sxy += xk * curve[k];
        ++cnt;
    }
    if (cnt < 2) fail(ErrorKind::invalid_parameter, "fit window empty: too few ticks or the error vanished");
    double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    return std::exp(slope);
}

// Smallest k at which at most a fraction epsilon of trials still has relative
// error >= epsilon, maximised over the recentred coordinate starts.
inline long estimate_averaging_time(const Topology& t, const ProbabilityAssignment& a, double epsilon, int trials,
                                    std::uint64_t seed, long tick_cap = 10'000'000) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) fail(ErrorKind::invalid_parameter, "epsilon must lie in (0, 1)");
    if (trials < 1) fail(ErrorKind::invalid_parameter, "trials >= 1");
    const int n = t.n_vertices;
    Sampler sampler(t, a, rates_from_clock(a.clock));
    long worst = 0;
    for (int start = 0; start < n; ++start) {
        std::vector<long> hit(trials);
        for (int tr = 0; tr < trials; ++tr) {
            Rng rng(seed, static_cast<std::uint64_t>(start) * static_cast<std::uint64_t>(trials) + tr);
            Eigen::VectorXd x = Eigen::VectorXd::Constant(n, -1.0 / n);
            x(start) += 1.0;
            const double norm0 = x.norm();
            long k = 0;
            // the deviation norm never increases, so the first crossing is final
            while (deviation(x) / norm0 >= epsilon && k < tick_cap) {
                auto s = sampler.draw(rng);
                double avg = 0.5 * (x(s.initiator) + x(s.partner));
                x(s.initiator) = x(s.partner) = avg;
                ++k;
            }
            hit[tr] = k;
        }
        std::sort(hit.begin(), hit.end());
        // allowed number of trials still above epsilon
        long allowed = static_cast<long>(std::floor(epsilon * trials + 1e-12));
        long idx = std::max(0L, static_cast<long>(trials) - 1 - allowed);
        worst = std::max(worst, hit[idx]);
    }
    return worst;
}

// CSV with header tick,time,initiator,partner,error; row 0 is the start.
// Reals use %.17g so equal traces give equal bytes.
inline void write_trace_csv(std::ostream& os, const SimulationTrace& tr) {
    char buf[128];
    os << "tick,time,initiator,partner,error\n";
    std::snprintf(buf, sizeof buf, "0,0,,,%.17g\n", tr.error_curve.empty() ? 0.0 : tr.error_curve[0]);
    os << buf;
    for (std::size_t i = 0; i < tr.events.size(); ++i) {
        const auto& e = tr.events[i];
        std::snprintf(buf, sizeof buf, "%ld,%.17g,%d,%d,%.17g\n", e.tick, e.time, e.initiator, e.partner, tr.error_curve[i + 1]);
        os << buf;
    }
}

}  // namespace gossip::sim
