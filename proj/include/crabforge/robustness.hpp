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
#include <span>
#include <string>
#include <vector>

#include "crabforge/crab.hpp"
#include "crabforge/optimize.hpp"

namespace crabforge {

enum class DisturbanceKind {
    noise,       ///< white Gaussian noise added to every signal sample
    distortion,  ///< Gaussian perturbation of every basis coefficient
};

std::string to_string(DisturbanceKind kind);
DisturbanceKind parse_disturbance_kind(const std::string& text);

struct DisturbanceConfig {
    /// First sigma tried, rad/ns.
    double start_sigma = 0.1;
    double step_db = -1.0;
    int realizations_required = 30;
    int max_steps = 120;
    std::uint64_t seed = 0;
    /// A realization passes when its infidelity is strictly below this.
    double threshold = 1e-2;

    void validate() const;
    /// start_sigma * 10^(step * step_db / 20)
    double sigma_at(int step) const;
};

struct ToleranceStep {
    double sigma = 0.0;
    /// Realizations that passed before the first failure (all of them on acceptance).
    int pass_count = 0;
    /// NaN when every realization passed.
    double first_fail_infidelity = 0.0;
};

struct ToleranceReport {
    DisturbanceKind kind = DisturbanceKind::noise;
    std::string solution_id;
    double clean_infidelity = 0.0;
    bool found = false;
    /// Index of the accepting step; -1 when max_steps ran out.
    int accepting_step = -1;
    /// rad/ns; 0 when not found.
    double tolerated_sigma = 0.0;
    double tolerated_sigma_ev = 0.0;
    std::vector<ToleranceStep> steps;
};

ControlGrid apply_white_noise(const ControlGrid& grid, double sigma, std::uint64_t seed);
CrabCoefficients apply_coefficient_distortion(const CrabSolution& solution, double sigma, std::uint64_t seed);

/// Infidelity of one disturbed realization at the given sigma.
using DisturbedEvaluator = std::function<double(double sigma, std::uint64_t seed)>;

DisturbedEvaluator make_disturbed_evaluator(const CrabSolution& solution, const GateTarget& gate,
                                            DisturbanceKind kind);

/// dB-stepped search driven by an arbitrary evaluator. Realization r of step n uses
/// derive_seed(config.seed, {n, r}).
ToleranceReport tolerance_search(const DisturbedEvaluator& evaluator, DisturbanceKind kind,
                                 const DisturbanceConfig& config);

/// Throws invalid_input when the clean solution does not beat the threshold.
ToleranceReport tolerance_search(const CrabSolution& solution, const GateTarget& gate, DisturbanceKind kind,
                                 const DisturbanceConfig& config);

/// E|X| for X ~ N(0, sigma^2).
double half_normal_mean(double sigma);
/// n_coefficients * half_normal_mean(sigma).
double distortion_energy_bound(double sigma, int n_coefficients);

struct SweepRow {
    double sigma = 0.0;
    double mean_infidelity = 0.0;
    double min_infidelity = 0.0;
    double max_infidelity = 0.0;
};

std::vector<SweepRow> sweep_infidelity_vs_sigma(const CrabSolution& solution, const GateTarget& gate,
                                                DisturbanceKind kind, std::span<const double> sigmas,
                                                int realizations, std::uint64_t seed);

}  // namespace crabforge
