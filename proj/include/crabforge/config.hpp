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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "crabforge/gates.hpp"
#include "crabforge/model.hpp"
#include "crabforge/optimize.hpp"
#include "crabforge/robustness.hpp"

namespace crabforge {

std::string to_string(FrequencyConvention convention);
FrequencyConvention parse_frequency_convention(const std::string& text);

struct ModelConfig {
    int levels_per_mode = 3;
    double anharmonicity_ghz = 0.2;
    double gate_time_ns = 40.0;
    FrequencyConvention convention = FrequencyConvention::as_quoted;

    TransmonModel build() const { return {levels_per_mode, anharmonicity_ghz, gate_time_ns, convention}; }
    static ModelConfig of(const TransmonModel& model);
};

/// Everything needed to reproduce a campaign.
///
/// Seed derivation from the single base `seed`:
///   campaign of gate G:        derive_seed(seed, {1, G}) + run index
///   tolerance search, kind K:  derive_seed(seed, {2, K, solution rng_seed})
///   emitted sweeps, kind K:    derive_seed(seed, {3, K, solution rng_seed})
struct RunConfig {
    ModelConfig model;
    CrabSettings crab;
    OptimizerConfig optimizer;
    DisturbanceConfig disturbance;
    std::vector<double> sweep_sigmas = default_sweep_sigmas();
    int sweep_realizations = 30;
    std::vector<GateName> gates{GateName::cnot, GateName::hadamard, GateName::phase, GateName::pi8};
    int single_qubit_target = 2;
    int cnot_control = 1;
    int campaign_size = 30;
    std::uint64_t seed = 1;
    std::string output_dir = "crabforge-out";

    /// Checks every module precondition up front; throws Error(invalid_input).
    void validate() const;

    GateTarget gate(GateName name) const { return build_gate(name, single_qubit_target, cnot_control); }
    OptimizerConfig campaign_optimizer(GateName name) const;
    DisturbanceConfig search_config(DisturbanceKind kind, const CrabSolution& solution) const;
    std::uint64_t sweep_seed(DisturbanceKind kind, const CrabSolution& solution) const;

    std::string to_json_text() const;
    /// Missing keys keep their defaults; unknown keys are rejected.
    static RunConfig from_json_text(std::string_view text);

    /// 0 followed by 0.1 rad/ns stepped down in -3 dB steps to -60 dB.
    static std::vector<double> default_sweep_sigmas();
};

}  // namespace crabforge
