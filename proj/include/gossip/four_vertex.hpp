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
#include <string>
#include <vector>

#include "gossip/gossip_core.hpp"
#include "gossip/topology.hpp"

namespace gossip::reference {

// One row of the four-vertex table: the printed probabilities and the printed
// optimum. `stochastic` is false when the printed rows do not sum to 1.
struct FourVertexRow {
    std::string name;
    Topology topology;
    ProbabilityAssignment assignment;
    double lambda2 = 0.0;
    std::string lambda2_text;
    bool stochastic = true;
};

inline std::vector<FourVertexRow> four_vertex_table() {
    const double r3 = std::sqrt(3.0);
    std::vector<FourVertexRow> rows;
    auto uniform = [] { return make_assignment(uniform_clock(4)); };

    {
        // -2, -1, 1, 2 -> 0, 1, 2, 3
        auto a = uniform();
        a.transition(0, 1) = a.transition(3, 2) = 1.0;
        a.transition(1, 0) = a.transition(2, 3) = 0.2;
        a.transition(1, 2) = a.transition(2, 1) = 0.8;
        rows.push_back({"path", generate("path:n=4"), a, 0.9, "9/10", true});
    }
    {
        auto a = uniform();
        for (int l = 1; l <= 3; ++l) {
            a.transition(l, 0) = 1.0;
            a.transition(0, l) = 1.0 / 3.0;
        }
        rows.push_back({"star", generate("star:n=4"), a, 5.0 / 6.0, "5/6", true});
    }
    {
        // triangle {0, 2, 3} with pendant 1 on vertex 0
        auto a = uniform();
        a.transition(0, 1) = (5 + 2 * r3) / 13;
        a.transition(1, 0) = 1.0;
        a.transition(0, 2) = a.transition(0, 3) = (4 - r3) / 13;
        a.transition(2, 0) = a.transition(3, 0) = (24 + 7 * r3) / 39;
        a.transition(2, 3) = a.transition(3, 2) = (15 - 7 * r3) / 39;
        rows.push_back({"lollipop", custom(4, {{0, 1}, {0, 2}, {0, 3}, {2, 3}}), a, (3 + r3) / (4 + r3), "(3+sqrt3)/(4+sqrt3)", true});
    }
    {
        auto a = uniform();
        for (int i = 0; i < 4; ++i) a.transition(i, (i + 1) % 4) = a.transition((i + 1) % 4, i) = 0.5;
        rows.push_back({"cycle", generate("cycle:n=4"), a, 0.75, "3/4", true});
    }
    {
        // 1..4 -> 0..3; edges 12, 23, 34, 14, 24, every listed probability 1/2
        auto t = custom(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {1, 3}});
        auto a = uniform();
        for (auto [i, j] : t.edges) a.transition(i, j) = a.transition(j, i) = 0.5;
        rows.push_back({"paw", t, a, 0.75, "3/4", false});
    }
    {
        auto a = uniform();
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (i != j) a.transition(i, j) = 1.0 / 3.0;
        rows.push_back({"complete", generate("complete:n=4"), a, 2.0 / 3.0, "2/3", true});
    }
    return rows;
}

}  // namespace gossip::reference
