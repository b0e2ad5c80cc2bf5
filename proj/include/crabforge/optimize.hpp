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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crabforge/crab.hpp"
#include "crabforge/gates.hpp"
#include "crabforge/model.hpp"
#include "crabforge/nelder_mead.hpp"
#include "crabforge/propagate.hpp"

namespace crabforge {

/// Discretization and cost options shared by optimization and robustness evaluation.
struct CrabSettings {
    int num_components = 10;
    Randomization randomization = Randomization::qutip;
    int num_steps = 1000;
    FidelityForm fidelity_form = FidelityForm::linear;
    /// Optional symmetric clamp on every channel's samples, rad/ns. Off by default.
    std::optional<double> amplitude_clamp;

    void validate() const;
    bool operator==(const CrabSettings&) const = default;
};

struct OptimizerConfig {
    double target_infidelity = 1e-2;
    long max_cost_evaluations = 200000;
    /// Initial coefficients are uniform in [-scale, +scale], rad/ns.
    double initial_coefficient_scale = 0.05;
    double initial_simplex_spread = 0.1;
    double spread_tolerance = 1e-6;
    int restart_limit = 5;
    std::uint64_t seed = 0;
    /// Keep searching after the target is reached (until spread or budget).
    bool polish = false;

    void validate() const;
};

struct CrabSolution {
    CrabBasis basis;
    CrabCoefficients coefficients;
    TransmonModel model;
    GateTarget gate;
    CrabSettings settings;
    double achieved_infidelity = 1.0;
    std::uint64_t rng_seed = 0;
    bool converged = false;
    /// Attempts beyond the first (each with a freshly sampled basis).
    int restarts = 0;
    /// Cost evaluations summed over all attempts.
    long evaluations = 0;
    /// Position inside a campaign.
    int index = 0;

    /// Stable identifier, e.g. "cnot_007".
    std::string id() const;
};

/// Infidelity of a flattened coefficient vector for one basis and target.
///
/// Thread-safe; the cos/sin tables are precomputed once.
class CostFunction {
public:
    CostFunction(TransmonModel model, const CrabBasis& basis, GateTarget target, CrabSettings settings);

    double operator()(std::span<const double> flat) const;
    double operator()(const CrabCoefficients& coeffs) const { return (*this)(coeffs.flatten()); }

    /// Grid actually fed to the propagator, clamp included.
    ControlGrid grid(std::span<const double> flat) const;

    const TransmonModel& model() const { return model_; }
    const GateTarget& target() const { return target_; }
    const CrabSettings& settings() const { return settings_; }

private:
    TransmonModel model_;
    GateTarget target_;
    CrabSettings settings_;
    BasisTable table_;
};

/// unflatten -> grid -> propagate -> infidelity.
double cost(const TransmonModel& model, const CrabBasis& basis, std::span<const double> flat,
            const GateTarget& target, const CrabSettings& settings = {});

/// Infidelity of a stored solution; `num_steps_override` re-discretizes the same signals.
double evaluate_solution(const CrabSolution& solution, std::optional<int> num_steps_override = std::nullopt);

CrabSolution optimize_gate(const TransmonModel& model, const GateTarget& gate, const CrabSettings& settings,
                           const OptimizerConfig& config, std::uint64_t seed,
                           const IterationObserver& observer = {});

struct CampaignResult {
    GateTarget gate;
    /// Every run, converged or not, sorted by index.
    std::vector<CrabSolution> solutions;
    int converged_count = 0;
    int failed_count = 0;
    /// Over converged runs only; NaN when none converged.
    double average_infidelity = 0.0;
    double minimum_infidelity = 0.0;

    std::vector<const CrabSolution*> converged() const;
};

/// Aggregates Table-style statistics over the converged members of `solutions`.
CampaignResult summarize_campaign(const GateTarget& gate, std::vector<CrabSolution> solutions);

/// Runs `num_solutions` independent optimizations with seeds config.seed + index.
CampaignResult run_campaign(const TransmonModel& model, const GateTarget& gate, const CrabSettings& settings,
                            const OptimizerConfig& config, int num_solutions, int jobs = 1,
                            const std::function<void(const CrabSolution&)>& on_solution = {});

}  // namespace crabforge
