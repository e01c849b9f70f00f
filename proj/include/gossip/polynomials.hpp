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

#include <algorithm>
#include <cmath>
#include <vector>

#include "gossip/common.hpp"

namespace gossip {

// Coefficients in X, lowest degree first.
using Poly = std::vector<double>;

inline double eval(const Poly& p, double x) {
    double acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

inline Poly add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

inline Poly scale(const Poly& a, double c) {
    Poly r(a);
    for (auto& v : r) v *= c;
    return r;
}

// (c0 + c1 X) * p
inline Poly mul_linear(const Poly& p, double c0, double c1) {
    Poly r(p.size() + 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        r[i] += c0 * p[i];
        r[i + 1] += c1 * p[i];
    }
    return r;
}

inline Poly derivative(const Poly& p) {
    if (p.size() <= 1) return {0.0};
    Poly r(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) r[i - 1] = static_cast<double>(i) * p[i];
    return r;
}

enum class Convention { ccs, path };

// CCS convention: F_0 = 1, F_1 = X + 1, F_i = (X + 2) F_{i-1} - F_{i-2}.
// Running the recursion backwards gives F_{-1} = 1, which the m = k - 1 case needs.
inline Poly f_poly(int order, Convention c = Convention::ccs) {
    if (c == Convention::path) {
        if (order < 1) fail(ErrorKind::invalid_parameter, "path convention starts at F_1");
        return f_poly(order - 1, Convention::ccs);
    }
    if (order < -1) fail(ErrorKind::invalid_parameter, "F order below -1");
    if (order <= 0) return {1.0};
    Poly prev{1.0}, cur{1.0, 1.0};
    for (int i = 2; i <= order; ++i) {
        Poly next = add(mul_linear(cur, 2.0, 1.0), scale(prev, -1.0));
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

inline double f_recursion(int order, double x, Convention c = Convention::ccs) {
    if (c == Convention::path) {
        if (order < 1) fail(ErrorKind::invalid_parameter, "path convention starts at F_1");
        return f_recursion(order - 1, x, Convention::ccs);
    }
    if (order < -1) fail(ErrorKind::invalid_parameter, "F order below -1");
    if (order <= 0) return 1.0;
    double prev = 1.0, cur = x + 1.0;
    for (int i = 2; i <= order; ++i) {
        double next = (x + 2.0) * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

namespace detail {

inline double bisect(const Poly& p, double lo, double hi) {
    double flo = eval(p, lo);
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double fm = eval(p, mid);
        if (fm == 0.0) return mid;
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    double a = std::abs(eval(p, lo)), b = std::abs(eval(p, hi));
    return a <= b ? lo : hi;
}

}  // namespace detail

inline constexpr double kRootScanLo = -4.0;
inline constexpr double kRootScanStep = 1e-3;

// All real roots in (-4, 0), in decreasing order. Cells where the derivative
// changes sign are rescanned finely so close root pairs are not missed.
inline std::vector<double> negative_roots(const Poly& p) {
    bool nonzero = std::any_of(p.begin(), p.end(), [](double c) { return c != 0.0; });
    if (!nonzero || p.size() < 2) fail(ErrorKind::invalid_parameter, "need a nonzero polynomial of degree >= 1");
    Poly dp = derivative(p);
    std::vector<double> roots;
    auto scan = [&](double hi, double lo, int cells, auto& self, int depth) -> void {
        double h = (hi - lo) / cells;
        for (int c = 0; c < cells; ++c) {
            double b = hi - c * h, a = hi - (c + 1) * h;
            double fa = eval(p, a), fb = eval(p, b);
            if (fb == 0.0 && b < 0.0) {
                if (roots.empty() || std::abs(roots.back() - b) > 1e-14) roots.push_back(b);
                if (depth < 3) self(b, a, 64, self, depth + 1);
                continue;
            }
            if ((fa < 0) != (fb < 0) && fa != 0.0) {
                roots.push_back(detail::bisect(p, a, b));
            } else if (depth < 3 && (eval(dp, a) < 0) != (eval(dp, b) < 0)) {
                self(b, a, 64, self, depth + 1);
            }
        }
    };
    int cells = static_cast<int>(std::lround(-kRootScanLo / kRootScanStep));
    scan(-1e-300, kRootScanLo, cells, scan, 0);
    return roots;
}

inline double largest_negative_root(const Poly& p) {
    auto roots = negative_roots(p);
    if (roots.empty()) fail(ErrorKind::solver_failure, "no sign change of the polynomial on (-4, 0)");
    return roots.front();
}

struct PolySolveResult {
    Poly coefficients;
    std::vector<double> roots;
    double x_star = 0.0;
    double s = 0.0;
    double residual = 0.0;
};

// s = X / (2N) + 1 at the largest negative root.
inline PolySolveResult solve_final_polynomial(const Poly& p, int n_vertices) {
    PolySolveResult r;
    r.coefficients = p;
    r.roots = negative_roots(p);
    if (r.roots.empty()) fail(ErrorKind::solver_failure, "no sign change of the final polynomial on (-4, 0)");
    r.x_star = r.roots.front();
    r.s = r.x_star / (2.0 * n_vertices) + 1.0;
    r.residual = std::abs(eval(p, r.x_star));
    return r;
}

}  // namespace gossip
