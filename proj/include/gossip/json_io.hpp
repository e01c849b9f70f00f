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

#include "json.hpp"

#include "gossip/analytic.hpp"
#include "gossip/gossip_core.hpp"
#include "gossip/quantum.hpp"
#include "gossip/topology.hpp"

namespace gossip::io {

using nlohmann::json;

inline json generator_to_json(const Generator& g) {
    json j;
    j["generator"] = g.name;
    if (g.name == "cartesian") {
        j["factors"] = json::array();
        for (const auto& f : g.factors) j["factors"].push_back(generator_to_json(f));
    } else {
        j["params"] = json::object();
        for (const auto& [k, v] : g.params) j["params"][k] = v;
    }
    return j;
}

inline Generator generator_from_json(const json& j) {
    Generator g;
    g.name = j.at("generator").get<std::string>();
    if (j.contains("params"))
        for (const auto& [k, v] : j.at("params").items()) {
            if (!v.is_number_integer()) fail(ErrorKind::invalid_parameter, "parameter '" + k + "' must be an integer");
            g.params[k] = v.get<long>();
        }
    if (j.contains("factors"))
        for (const auto& f : j.at("factors")) g.factors.push_back(generator_from_json(f));
    return g;
}

inline json topology_to_json(const Topology& t) {
    json j = t.generator.name == "custom" ? json::object() : generator_to_json(t.generator);
    j["n_vertices"] = t.n_vertices;
    j["edges"] = json::array();
    for (auto [a, b] : t.edges) j["edges"].push_back({a, b});
    return j;
}

inline Topology topology_from_json(const json& j) {
    if (j.contains("generator") && j.at("generator").get<std::string>() != "custom") return generate(generator_from_json(j));
    if (!j.contains("edges")) fail(ErrorKind::invalid_parameter, "topology JSON needs 'generator' or 'edges'");
    std::vector<Edge> edges;
    int n = 0;
    for (const auto& e : j.at("edges")) {
        int a = e.at(0).get<int>(), b = e.at(1).get<int>();
        if (a < 0 || b < 0) fail(ErrorKind::invalid_parameter, "negative vertex id");
        edges.emplace_back(a, b);
        n = std::max({n, a + 1, b + 1});
    }
    if (j.contains("n_vertices")) n = std::max(n, j.at("n_vertices").get<int>());
    return custom(n, edges);
}

inline json assignment_to_json(const Topology& t, const ProbabilityAssignment& a) {
    json j;
    j["clock"] = json::array();
    for (int i = 0; i < a.size(); ++i) j["clock"].push_back(a.clock(i));
    j["transition"] = json::object();
    for (auto [x, y] : t.edges) {
        j["transition"][std::to_string(x) + "-" + std::to_string(y)] = a.transition(x, y);
        j["transition"][std::to_string(y) + "-" + std::to_string(x)] = a.transition(y, x);
    }
    return j;
}

inline ProbabilityAssignment assignment_from_json(const Topology& t, const json& j) {
    const int n = t.n_vertices;
    const auto& clock = j.at("clock");
    if (static_cast<int>(clock.size()) != n) fail(ErrorKind::dimension_mismatch, "clock length differs from N");
    ProbabilityAssignment a = make_assignment(Eigen::VectorXd::Zero(n));
    for (int i = 0; i < n; ++i) a.clock(i) = clock.at(i).get<double>();
    for (const auto& [key, val] : j.at("transition").items()) {
        auto dash = key.find('-');
        if (dash == std::string::npos) fail(ErrorKind::invalid_parameter, "transition key must look like 'i-j'");
        int x = std::stoi(key.substr(0, dash)), y = std::stoi(key.substr(dash + 1));
        if (x < 0 || y < 0 || x >= n || y >= n) fail(ErrorKind::invalid_parameter, "transition key out of range: " + key);
        a.transition(x, y) = val.get<double>();
    }
    return a;
}

inline json spectrum_to_json(const Spectrum& s) { return {{"eigenvalues", s.eigenvalues}, {"lambda2", s.lambda2}}; }

inline json result_to_json(const OptimizationResult& r) {
    const auto& d = r.diagnostics;
    json diag;
    diag["m"] = d.m ? json(*d.m) : json(nullptr);
    diag["x_star"] = d.x_star ? json(*d.x_star) : json(nullptr);
    diag["branch"] = d.branch;
    if (d.s) diag["s"] = *d.s;
    if (d.formula_lambda2) diag["formula_lambda2"] = *d.formula_lambda2;
    diag["eigen_lambda2"] = d.eigen_lambda2;
    diag["formula_mismatch"] = d.formula_mismatch;
    if (!d.root_sign.empty()) diag["root_sign"] = d.root_sign;
    if (!d.notes.empty()) diag["notes"] = d.notes;
    json j;
    j["lambda2"] = r.lambda2;
    j["mode"] = r.mode;
    j["diagnostics"] = diag;
    j["topology"] = topology_to_json(r.topology);
    j["assignment"] = assignment_to_json(r.topology, r.assignment);
    return j;
}

inline json collapse_to_json(const quantum::CollapseReport& rep) {
    json j;
    j["lambda2_quantum"] = rep.lambda2_quantum;
    j["lambda2_classical"] = rep.lambda2_classical;
    if (rep.lambda2_quantum_dense) j["lambda2_quantum_dense"] = *rep.lambda2_quantum_dense;
    j["per_partition"] = json::array();
    for (const auto& p : rep.per_partition)
        j["per_partition"].push_back({{"partition", p.partition}, {"lambda2", p.lambda2}, {"components", p.components}});
    j["ok"] = rep.ok();
    j["violations"] = rep.violations;
    return j;
}

}  // namespace gossip::io
