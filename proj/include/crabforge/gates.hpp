// Copyright 2026 The crabforge Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include <Eigen/Dense>

namespace crabforge {

using Matrix4c = Eigen::Matrix4cd;

enum class GateName { cnot, hadamard, phase, pi8, identity };

std::string to_string(GateName name);
/// Accepts cnot | hadamard | phase | pi8 | identity.
GateName parse_gate_name(const std::string& text);

/// Ideal two-qubit target on |00>, |01>, |10>, |11> (qubit 1 is the left factor).
struct GateTarget {
    GateName name = GateName::identity;
    int target_qubit = 2;
    int control_qubit = 1;
    Matrix4c matrix = Matrix4c::Identity();
};

/// Single-qubit gates act on `target_qubit` and are tensored with identity on the other
/// qubit. CNOT uses `control_qubit` as control and the other qubit as target.
GateTarget build_gate(GateName name, int target_qubit = 2, int control_qubit = 1);

}  // namespace crabforge
