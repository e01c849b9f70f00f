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

// Reference values for the symmetric-star and CCS sweeps, stored as printed:
// rows k = 2..10, columns n = 3..8.

namespace gossip::reference {

inline constexpr int kMinK = 2, kMaxK = 10, kMinN = 3, kMaxN = 8;

// optimal m, symmetric star
inline constexpr int symstar_m[9][6] = {
    {0, 0, 0, 0, 0, 0},
    {1, 1, 0, 0, 0, 0},
    {1, 1, 1, 1, 1, 0},
    {1, 1, 1, 1, 1, 1},
    {2, 1, 1, 1, 1, 1},
    {2, 2, 1, 1, 1, 1},
    {2, 2, 2, 1, 1, 1},
    {2, 2, 2, 2, 2, 1},
    {3, 2, 2, 2, 2, 2},
};

// optimal s, symmetric star
inline constexpr double symstar_s[9][6] = {
    {0.971428, 0.97863247, 0.98295454, 0.98582995, 0.987878, 0.9894117},
    {0.988548, 0.99146614, 0.99320128, 0.9942928, 0.995122, 0.995741},
    {0.994781, 0.996114, 0.996906, 0.99743, 0.9978028, 0.9980817},
    {0.997205, 0.997917, 0.998341, 0.998622, 0.998822, 0.998971},
    {0.998334, 0.998758, 0.999011, 0.999178, 0.999297, 0.999386},
    {0.998929, 0.999201, 0.999363, 0.999471, 0.999547, 0.9996},
    {0.999272, 0.999456, 0.999567, 0.99964, 0.999692, 0.999731},
    {0.999482, 0.999614, 0.999692, 0.999744, 0.99978, 0.999808},
    {0.999619, 0.999715, 0.999773, 0.999811, 0.999838, 0.999859},
};

// optimal m, CCS star
inline constexpr int ccs_m[9][6] = {
    {0, 0, 0, 0, 0, 0},
    {1, 1, 1, 1, 1, 1},
    {1, 1, 1, 1, 1, 1},
    {2, 2, 2, 2, 2, 2},
    {2, 2, 2, 2, 2, 2},
    {2, 2, 2, 2, 2, 2},
    {3, 2, 2, 2, 2, 2},
    {3, 3, 3, 3, 3, 3},
    {3, 3, 3, 3, 3, 3},
};

// optimal s, CCS star
inline constexpr double ccs_s[9][6] = {
    {0.95, 0.964285, 0.972222, 0.977272, 0.980769, 0.983333},
    {0.982725, 0.987533, 0.990242, 0.991983, 0.993196, 0.99409},
    {0.992852, 0.994793, 0.995903, 0.996623, 0.997127, 0.9975},
    {0.996396, 0.99736, 0.997917, 0.998279, 0.998534, 0.998723},
    {0.997937, 0.998483, 0.998801, 0.999008, 0.999154, 0.999263},
    {0.998712, 0.999051, 0.999248, 0.999377, 0.999469, 0.999536},
    {0.999143, 0.999367, 0.999498, 0.999584, 0.999645, 0.99969},
    {0.999401, 0.999557, 0.999648, 0.999708, 0.999751, 0.999783},
    {0.999566, 0.999678, 0.999744, 0.999788, 0.999819, 0.999842},
};

}  // namespace gossip::reference
