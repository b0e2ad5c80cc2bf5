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

#include "crabforge/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include "crabforge/errors.hpp"
#include "crabforge/random.hpp"

namespace crabforge {

namespace {

void require_sigma(double sigma)
{
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw Error(Errc::invalid_input, "sigma must be finite and non-negative");
}

}  // namespace

std::string to_string(DisturbanceKind kind)
{
    return kind == DisturbanceKind::noise ? "noise" : "distortion";
}

DisturbanceKind parse_disturbance_kind(const std::string& text)
{
    if (text == "noise")
        return DisturbanceKind::noise;
    if (text == "distortion")
        return DisturbanceKind::distortion;
    throw Error(Errc::invalid_input, "unknown disturbance kind '" + text + "'");
}

void DisturbanceConfig::validate() const
{
    if (!(start_sigma > 0.0))
        throw Error(Errc::invalid_input, "start_sigma must be positive");
    if (!(step_db < 0.0))
        throw Error(Errc::invalid_input, "step_db must be negative");
    if (realizations_required < 1 || max_steps < 1)
        throw Error(Errc::invalid_input, "realizations_required and max_steps must be >= 1");
    if (!(threshold > 0.0 && threshold < 1.0))
        throw Error(Errc::invalid_input, "threshold must lie in (0, 1)");
}

double DisturbanceConfig::sigma_at(int step) const
{
    return start_sigma * std::pow(10.0, step * step_db / 20.0);
}

ControlGrid apply_white_noise(const ControlGrid& grid, double sigma, std::uint64_t seed)
{
    require_sigma(sigma);
    ControlGrid noisy = grid;
    if (sigma == 0.0)
        return noisy;
    Rng rng = make_rng(seed);
    std::normal_distribution<double> normal(0.0, sigma);
    for (Eigen::Index ch = 0; ch < noisy.values.rows(); ++ch)
        for (Eigen::Index m = 0; m < noisy.values.cols(); ++m)
            noisy.values(ch, m) += normal(rng);
    return noisy;
}

CrabCoefficients apply_coefficient_distortion(const CrabSolution& solution, double sigma, std::uint64_t seed)
{
    require_sigma(sigma);
    CrabCoefficients out = solution.coefficients;
    if (sigma == 0.0)
        return out;
    Rng rng = make_rng(seed);
    std::normal_distribution<double> normal(0.0, sigma);
    for (auto& ch : out.channels)
        for (auto& c : ch)
            c += normal(rng);
    return out;
}

DisturbedEvaluator make_disturbed_evaluator(const CrabSolution& solution, const GateTarget& gate,
                                            DisturbanceKind kind)
{
    auto cost = std::make_shared<const CostFunction>(solution.model, solution.basis, gate, solution.settings);
    if (kind == DisturbanceKind::noise) {
        auto clean = std::make_shared<const ControlGrid>(cost->grid(solution.coefficients.flatten()));
        return [cost, clean](double sigma, std::uint64_t seed) {
            const ControlGrid noisy = apply_white_noise(*clean, sigma, seed);
            const Matrix4c block = propagate_computational_block(cost->model(), noisy);
            return infidelity(block, cost->target().matrix, cost->settings().fidelity_form);
        };
    }
    auto sol = std::make_shared<const CrabSolution>(solution);
    return [cost, sol](double sigma, std::uint64_t seed) {
        return (*cost)(apply_coefficient_distortion(*sol, sigma, seed));
    };
}

ToleranceReport tolerance_search(const DisturbedEvaluator& evaluator, DisturbanceKind kind,
                                 const DisturbanceConfig& config)
{
    config.validate();
    ToleranceReport report;
    report.kind = kind;
    for (int step = 0; step < config.max_steps; ++step) {
        ToleranceStep s;
        s.sigma = config.sigma_at(step);
        s.first_fail_infidelity = std::numeric_limits<double>::quiet_NaN();
        for (int r = 0; r < config.realizations_required; ++r) {
            const double value = evaluator(
                s.sigma, derive_seed(config.seed, {static_cast<std::uint64_t>(step), static_cast<std::uint64_t>(r)}));
            if (!(value < config.threshold)) {
                s.first_fail_infidelity = value;
                break;
            }
            ++s.pass_count;
        }
        report.steps.push_back(s);
        if (s.pass_count == config.realizations_required) {
            report.found = true;
            report.accepting_step = step;
            report.tolerated_sigma = s.sigma;
            return report;
        }
    }
    return report;
}

ToleranceReport tolerance_search(const CrabSolution& solution, const GateTarget& gate, DisturbanceKind kind,
                                 const DisturbanceConfig& config)
{
    config.validate();
    CrabSolution probe = solution;
    probe.gate = gate;
    const double clean = evaluate_solution(probe);
    if (!(clean < config.threshold))
        throw Error(Errc::invalid_input, "solution " + solution.id() + " has clean infidelity " +
                                             std::to_string(clean) + ", not below the threshold");
    ToleranceReport report = tolerance_search(make_disturbed_evaluator(solution, gate, kind), kind, config);
    report.solution_id = solution.id();
    report.clean_infidelity = clean;
    report.tolerated_sigma_ev = solution.model.to_ev(report.tolerated_sigma);
    return report;
}

double half_normal_mean(double sigma)
{
    require_sigma(sigma);
    return sigma * std::sqrt(2.0 / std::numbers::pi);
}

double distortion_energy_bound(double sigma, int n_coefficients)
{
    if (n_coefficients < 1)
        throw Error(Errc::invalid_input, "n_coefficients must be >= 1");
    return n_coefficients * half_normal_mean(sigma);
}

std::vector<SweepRow> sweep_infidelity_vs_sigma(const CrabSolution& solution, const GateTarget& gate,
                                                DisturbanceKind kind, std::span<const double> sigmas,
                                                int realizations, std::uint64_t seed)
{
    if (sigmas.empty())
        throw Error(Errc::invalid_input, "sigma list is empty");
    if (realizations < 1)
        throw Error(Errc::invalid_input, "realizations must be >= 1");
    for (double s : sigmas)
        require_sigma(s);
    const DisturbedEvaluator evaluate = make_disturbed_evaluator(solution, gate, kind);
    std::vector<SweepRow> rows;
    rows.reserve(sigmas.size());
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        SweepRow row;
        row.sigma = sigmas[i];
        row.min_infidelity = std::numeric_limits<double>::infinity();
        row.max_infidelity = -std::numeric_limits<double>::infinity();
        double sum = 0.0;
        for (int r = 0; r < realizations; ++r) {
            const double v = evaluate(sigmas[i], derive_seed(seed, {i, static_cast<std::uint64_t>(r)}));
            sum += v;
            row.min_infidelity = std::min(row.min_infidelity, v);
            row.max_infidelity = std::max(row.max_infidelity, v);
        }
        row.mean_infidelity = sum / realizations;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace crabforge
