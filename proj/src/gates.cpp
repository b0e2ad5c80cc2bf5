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

#include "crabforge/gates.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "crabforge/errors.hpp"

namespace crabforge {

namespace {

using Matrix2c = Eigen::Matrix2cd;

Matrix4c kron2(const Matrix2c& a, const Matrix2c& b)
{
    Matrix4c out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

Matrix4c on_qubit(const Matrix2c& u, int qubit)
{
    const Matrix2c id = Matrix2c::Identity();
    return qubit == 1 ? kron2(u, id) : kron2(id, u);
}

}  // namespace

std::string to_string(GateName name)
{
    switch (name) {
    case GateName::cnot: return "cnot";
    case GateName::hadamard: return "hadamard";
    case GateName::phase: return "phase";
    case GateName::pi8: return "pi8";
    case GateName::identity: return "identity";
    }
    return "?";
}

GateName parse_gate_name(const std::string& text)
{
    for (auto g : {GateName::cnot, GateName::hadamard, GateName::phase, GateName::pi8, GateName::identity})
        if (text == to_string(g))
            return g;
    throw Error(Errc::invalid_input, "unknown gate '" + text + "'");
}

GateTarget build_gate(GateName name, int target_qubit, int control_qubit)
{
    if (target_qubit != 1 && target_qubit != 2)
        throw Error(Errc::invalid_input, "target_qubit must be 1 or 2");
    if (control_qubit != 1 && control_qubit != 2)
        throw Error(Errc::invalid_input, "control_qubit must be 1 or 2");

    GateTarget gate;
    gate.name = name;
    gate.target_qubit = target_qubit;
    gate.control_qubit = control_qubit;

    const std::complex<double> i{0.0, 1.0};
    Matrix2c u;
    switch (name) {
    case GateName::identity:
        gate.matrix = Matrix4c::Identity();
        return gate;
    case GateName::cnot: {
        Matrix2c p0 = Matrix2c::Zero(), p1 = Matrix2c::Zero(), x;
        p0(0, 0) = 1.0;
        p1(1, 1) = 1.0;
        x << 0.0, 1.0, 1.0, 0.0;
        const Matrix2c id = Matrix2c::Identity();
        gate.matrix = control_qubit == 1 ? Matrix4c(kron2(p0, id) + kron2(p1, x))
                                         : Matrix4c(kron2(id, p0) + kron2(x, p1));
        return gate;
    }
    case GateName::hadamard:
        u << 1.0, 1.0, 1.0, -1.0;
        u /= std::sqrt(2.0);
        break;
    case GateName::phase:
        u << 1.0, 0.0, 0.0, i;
        break;
    case GateName::pi8:
        u << 1.0, 0.0, 0.0, std::exp(i * (std::numbers::pi / 4.0));
        break;
    }
    gate.matrix = on_qubit(u, target_qubit);
    return gate;
}

}  // namespace crabforge
