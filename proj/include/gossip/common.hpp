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

#include <stdexcept>
#include <string>

namespace gossip {

// Tolerances used across the library.
inline constexpr double kStochasticTol = 1e-12;
inline constexpr double kSpectralTol = 1e-10;
inline constexpr double kSymmetryTol = 1e-9;
inline constexpr double kCertificateTol = 1e-9;
inline constexpr double kFeasibilityTol = 1e-9;

enum class ErrorKind {
    invalid_parameter,
    unsupported,
    dimension_mismatch,
    invalid_assignment,
    solver_failure,
    size_guard,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace gossip
