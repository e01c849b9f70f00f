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
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gossip/common.hpp"

namespace gossip {

using Edge = std::pair<int, int>;

// Tagged family descriptor, e.g. symstar with {n: 5, k: 2}.
struct Generator {
    std::string name = "custom";
    std::map<std::string, long> params;
    std::vector<Generator> factors;  // cartesian only

    long at(const std::string& key) const {
        auto it = params.find(key);
        if (it == params.end()) fail(ErrorKind::invalid_parameter, name + ": missing parameter '" + key + "'");
        return it->second;
    }
    bool operator==(const Generator&) const = default;
};

struct Topology {
    int n_vertices = 0;
    std::vector<Edge> edges;  // sorted, first < second
    Generator generator;
    std::vector<int> vertex_orbit;
    std::vector<int> edge_orbit;

    std::size_t edge_count() const { return edges.size(); }

    // Index of the undirected edge {i, j}, or -1.
    int edge_index(int i, int j) const {
        Edge e = i < j ? Edge{i, j} : Edge{j, i};
        auto it = std::lower_bound(edges.begin(), edges.end(), e);
        if (it == edges.end() || *it != e) return -1;
        return static_cast<int>(it - edges.begin());
    }
    bool has_edge(int i, int j) const { return edge_index(i, j) >= 0; }

    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(n_vertices);
        for (auto [a, b] : edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        for (auto& row : adj) std::sort(row.begin(), row.end());
        return adj;
    }

    std::vector<int> degrees() const {
        std::vector<int> deg(n_vertices, 0);
        for (auto [a, b] : edges) {
            ++deg[a];
            ++deg[b];
        }
        return deg;
    }
};

namespace detail {

struct Builder {
    int n = 0;
    std::vector<Edge> edges;
    std::vector<int> edge_orbit;
    std::vector<int> vertex_orbit;

    explicit Builder(int n_vertices) : n(n_vertices), vertex_orbit(n_vertices, 0) {}

    void add(int a, int b, int orbit) {
        if (a == b) fail(ErrorKind::invalid_parameter, "self-loop");
        if (a < 0 || b < 0 || a >= n || b >= n) fail(ErrorKind::invalid_parameter, "vertex out of range");
        edges.push_back(a < b ? Edge{a, b} : Edge{b, a});
        edge_orbit.push_back(orbit);
    }

    Topology finish(Generator gen) {
        std::vector<std::size_t> order(edges.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](auto x, auto y) { return edges[x] < edges[y]; });
        Topology t;
        t.n_vertices = n;
        t.generator = std::move(gen);
        t.vertex_orbit = vertex_orbit;
        for (auto idx : order) {
            if (!t.edges.empty() && t.edges.back() == edges[idx])
                fail(ErrorKind::invalid_parameter, "duplicate edge");
            t.edges.push_back(edges[idx]);
            t.edge_orbit.push_back(edge_orbit[idx]);
        }
        return t;
    }
};

inline void require(bool ok, const std::string& what) {
    if (!ok) fail(ErrorKind::invalid_parameter, what);
}

inline int checked_int(long v, const std::string& name) {
    require(v >= 0 && v <= 1'000'000, "parameter " + name + " out of range");
    return static_cast<int>(v);
}

}  // namespace detail

inline bool is_connected(const Topology& t) {
    if (t.n_vertices == 0) return false;
    auto adj = t.adjacency();
    std::vector<char> seen(t.n_vertices, 0);
    std::queue<int> todo;
    todo.push(0);
    seen[0] = 1;
    int count = 1;
    while (!todo.empty()) {
        int v = todo.front();
        todo.pop();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                todo.push(w);
            }
    }
    return count == t.n_vertices;
}

// Custom graphs carry no symmetry: every vertex and edge is its own orbit.
inline Topology custom(int n_vertices, const std::vector<Edge>& edges) {
    detail::require(n_vertices >= 1, "custom: need at least one vertex");
    detail::Builder b(n_vertices);
    for (int v = 0; v < n_vertices; ++v) b.vertex_orbit[v] = v;
    for (auto [x, y] : edges) b.add(x, y, 0);
    Topology t = b.finish(Generator{});
    std::iota(t.edge_orbit.begin(), t.edge_orbit.end(), 0);
    return t;
}

inline Topology cartesian_product(const std::vector<Topology>& factors);

inline Topology generate(const Generator& g) {
    using detail::require;
    auto p = [&](const char* key) { return detail::checked_int(g.at(key), key); };
    const std::string& name = g.name;

    if (name == "path") {
        int n = p("n");
        require(n >= 1, "path: n >= 1");
        detail::Builder b(n);
        for (int i = 0; i < n; ++i) b.vertex_orbit[i] = std::min(i, n - 1 - i);
        for (int i = 0; i + 1 < n; ++i) b.add(i, i + 1, std::min(i, n - 2 - i));
        return b.finish(g);
    }
    if (name == "cycle") {
        int n = p("n");
        require(n >= 3, "cycle: n >= 3");
        detail::Builder b(n);
        for (int i = 0; i < n; ++i) b.add(i, (i + 1) % n, 0);
        return b.finish(g);
    }
    if (name == "complete") {
        int n = p("n");
        require(n >= 1, "complete: n >= 1");
        detail::Builder b(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) b.add(i, j, 0);
        return b.finish(g);
    }
    if (name == "star") {
        // n counts all vertices; 0 is the hub
        int n = p("n");
        require(n >= 2, "star: n >= 2");
        detail::Builder b(n);
        for (int i = 1; i < n; ++i) {
            b.vertex_orbit[i] = 1;
            b.add(0, i, 0);
        }
        return b.finish(g);
    }
    if (name == "symstar") {
        int n = p("n"), k = p("k");
        require(n >= 1 && k >= 1, "symstar: n, k >= 1");
        detail::Builder b(1 + n * k);
        for (int i = 0; i < n; ++i)
            for (int j = 1; j <= k; ++j) {
                int v = 1 + i * k + (j - 1);
                b.vertex_orbit[v] = j;
                b.add(j == 1 ? 0 : v - 1, v, j - 1);
            }
        return b.finish(g);
    }
    if (name == "ccs") {
        int n = p("n"), k = p("k");
        require(n >= 1 && k >= 1, "ccs: n, k >= 1");
        detail::Builder b(n * k);
        for (int a = 0; a < n; ++a)
            for (int c = a + 1; c < n; ++c) b.add(a * k, c * k, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 1; j <= k; ++j) {
                int v = i * k + (j - 1);
                b.vertex_orbit[v] = j - 1;
                if (j > 1) b.add(v - 1, v, j - 1);
            }
        return b.finish(g);
    }
    if (name == "ccs2") {
        int n = p("n"), k1 = p("k1"), k2 = p("k2");
        require(n >= 1 && k1 >= 1, "ccs2: n, k1 >= 1");
        int block = 1 + k1 + k2;
        detail::Builder b(n * block);
        for (int a = 0; a < n; ++a)
            for (int c = a + 1; c < n; ++c) b.add(a * block, c * block, 0);
        for (int i = 0; i < n; ++i) {
            int core = i * block;
            for (int j = 1; j <= k1; ++j) {
                b.vertex_orbit[core + j] = j;
                b.add(j == 1 ? core : core + j - 1, core + j, j);
            }
            for (int j = 1; j <= k2; ++j) {
                int v = core + k1 + j;
                b.vertex_orbit[v] = k1 + j;
                b.add(j == 1 ? core : v - 1, v, k1 + j);
            }
        }
        return b.finish(g);
    }
    if (name == "palm") {
        int n = p("n"), k = p("k");
        require(n >= 1 && k >= 1, "palm: n, k >= 1");
        detail::Builder b(n + k + 1);
        for (int l = 1; l <= n; ++l) {
            b.vertex_orbit[l] = 1;
            b.add(0, l, 0);
        }
        for (int j = 1; j <= k; ++j) {
            b.vertex_orbit[n + j] = 1 + j;
            b.add(j == 1 ? 0 : n + j - 1, n + j, j);
        }
        return b.finish(g);
    }
    if (name == "lollipop") {
        int n = p("n"), k = p("k");
        require(n >= 1 && k >= 1, "lollipop: n, k >= 1");
        detail::Builder b(n + 1 + k);
        for (int l = 1; l <= n; ++l) {
            b.vertex_orbit[l] = 1;
            b.add(0, l, 1);
            for (int l2 = l + 1; l2 <= n; ++l2) b.add(l, l2, 0);
        }
        for (int j = 1; j <= k; ++j) {
            b.vertex_orbit[n + j] = 1 + j;
            b.add(j == 1 ? 0 : n + j - 1, n + j, 1 + j);
        }
        return b.finish(g);
    }
    if (name == "wheel") {
        int n = p("n");
        require(n >= 3, "wheel: n >= 3");
        detail::Builder b(n + 1);
        for (int i = 1; i <= n; ++i) {
            b.vertex_orbit[i] = 1;
            b.add(0, i, 0);
            b.add(i, i % n + 1, 1);
        }
        return b.finish(g);
    }
    if (name == "two-coupled") {
        int n1 = p("n1"), n2 = p("n2"), n3 = p("n3");
        require(n1 >= 1 && n2 >= 1 && n3 >= 1, "two-coupled: n1, n2, n3 >= 1");
        detail::Builder b(n1 + n2 + n3);
        auto group = [&](int v) { return v < n1 ? 0 : (v < n1 + n2 ? 1 : 2); };
        for (int v = 0; v < b.n; ++v) b.vertex_orbit[v] = group(v);
        // top-top 0, top-mid 1, mid-mid 2, mid-bottom 3, bottom-bottom 4
        for (int x = 0; x < b.n; ++x)
            for (int y = x + 1; y < b.n; ++y) {
                int gx = group(x), gy = group(y);
                if (gx == 0 && gy == 2) continue;
                b.add(x, y, gx + gy);
            }
        return b.finish(g);
    }
    if (name == "cartesian") {
        require(!g.factors.empty(), "cartesian: empty factor list");
        std::vector<Topology> fs;
        for (const auto& f : g.factors) fs.push_back(generate(f));
        Topology t = cartesian_product(fs);
        t.generator = g;
        return t;
    }
    fail(ErrorKind::unsupported, "unsupported generator '" + name + "'");
}

inline Topology cartesian_product(const std::vector<Topology>& factors) {
    if (factors.empty()) fail(ErrorKind::invalid_parameter, "cartesian: empty factor list");
    for (const auto& f : factors)
        detail::require(f.n_vertices >= 2 && is_connected(f), "cartesian: factors must be connected with >= 2 vertices");
    int n = 1;
    for (const auto& f : factors) n *= f.n_vertices;
    detail::Builder b(n);
    // mixed radix, first factor most significant
    std::vector<int> stride(factors.size(), 1);
    for (int f = static_cast<int>(factors.size()) - 2; f >= 0; --f)
        stride[f] = stride[f + 1] * factors[f + 1].n_vertices;
    std::vector<int> orbit_stride(factors.size(), 1);
    for (int f = static_cast<int>(factors.size()) - 2; f >= 0; --f) {
        int span = *std::max_element(factors[f + 1].vertex_orbit.begin(), factors[f + 1].vertex_orbit.end()) + 1;
        orbit_stride[f] = orbit_stride[f + 1] * span;
    }
    for (int v = 0; v < n; ++v) {
        int orbit = 0;
        for (std::size_t f = 0; f < factors.size(); ++f) {
            int coord = (v / stride[f]) % factors[f].n_vertices;
            orbit += factors[f].vertex_orbit[coord] * orbit_stride[f];
            for (auto [a, c] : factors[f].edges)
                if (a == coord) b.add(v, v + (c - a) * stride[f], static_cast<int>(f));
        }
        b.vertex_orbit[v] = orbit;
    }
    Generator g{"cartesian", {}, {}};
    for (const auto& f : factors) g.factors.push_back(f.generator);
    return b.finish(g);
}

// Descriptor grammar: name:key=val,key=val ; factors of a cartesian product joined by '*'.
inline Generator parse_descriptor(const std::string& text) {
    if (text.find('*') != std::string::npos) {
        Generator g{"cartesian", {}, {}};
        std::stringstream ss(text);
        std::string part;
        while (std::getline(ss, part, '*')) g.factors.push_back(parse_descriptor(part));
        return g;
    }
    Generator g;
    auto colon = text.find(':');
    g.name = text.substr(0, colon);
    if (g.name.empty()) fail(ErrorKind::invalid_parameter, "empty descriptor");
    if (colon == std::string::npos) return g;
    std::stringstream ss(text.substr(colon + 1));
    std::string kv;
    while (std::getline(ss, kv, ',')) {
        if (kv.empty()) continue;
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) fail(ErrorKind::invalid_parameter, "bad descriptor field '" + kv + "'");
        std::size_t used = 0;
        long value = 0;
        try {
            value = std::stol(kv.substr(eq + 1), &used);
        } catch (const std::exception&) {
            fail(ErrorKind::invalid_parameter, "non-integer value in '" + kv + "'");
        }
        if (used != kv.size() - eq - 1) fail(ErrorKind::invalid_parameter, "non-integer value in '" + kv + "'");
        g.params[kv.substr(0, eq)] = value;
    }
    return g;
}

inline std::string to_descriptor(const Generator& g) {
    if (g.name == "cartesian") {
        std::string out;
        for (std::size_t i = 0; i < g.factors.size(); ++i) out += (i ? "*" : "") + to_descriptor(g.factors[i]);
        return out;
    }
    std::string out = g.name;
    char sep = ':';
    for (const auto& [k, v] : g.params) {
        out += sep + k + "=" + std::to_string(v);
        sep = ',';
    }
    return out;
}

inline Topology generate(const std::string& descriptor) { return generate(parse_descriptor(descriptor)); }

}  // namespace gossip
