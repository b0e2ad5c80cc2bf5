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

#include "crabforge/crab.hpp"
#include "crabforge/gates.hpp"
#include "crabforge/model.hpp"

namespace crabforge {

/// Normalization of the trace-overlap infidelity.
enum class FidelityForm {
    linear,   ///< 1 - |Tr(V^dagger U)| / d
    squared,  ///< 1 - |Tr(V^dagger U)|^2 / d^2
};

std::string to_string(FidelityForm form);
FidelityForm parse_fidelity_form(const std::string& text);

struct PropagationResult {
    ComplexMatrix full_unitary;
    /// Rows/columns |00>, |01>, |10>, |11>; not unitary when population leaks to |2>.
    Matrix4c computational_block;
    /// 1 - mean squared column norm of the computational block.
    double leakage = 0.0;
};

/// exp(-i * scale * h) through a Hermitian eigendecomposition.
ComplexMatrix matrix_exp_hermitian(const ComplexMatrix& h, double scale);

/// U(T) = prod_m exp(-i H(t_m) dt), latest slice leftmost.
PropagationResult propagate(const TransmonModel& model, const ControlGrid& grid);

/// Computational block of U(T) alone. Evolves only the four computational columns and is
/// the kernel behind the optimizer cost.
Matrix4c propagate_computational_block(const TransmonModel& model, const ControlGrid& grid);

double leakage_of(const Matrix4c& block);

double infidelity(const Matrix4c& block, const Matrix4c& target, FidelityForm form = FidelityForm::linear);
double infidelity(const PropagationResult& result, const GateTarget& target,
                  FidelityForm form = FidelityForm::linear);
/// Dynamic-size overload; both matrices must be 4x4.
double infidelity(const ComplexMatrix& block, const ComplexMatrix& target,
                  FidelityForm form = FidelityForm::linear);

}  // namespace crabforge
