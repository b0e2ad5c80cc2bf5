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

#include "crabforge/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>

#include "crabforge/errors.hpp"
#include "crabforge/parallel.hpp"
#include "crabforge/random.hpp"

namespace crabforge {

void CrabSettings::validate() const
{
    if (num_components < 1)
        throw Error(Errc::invalid_input, "num_components must be >= 1");
    if (num_steps < 2)
        throw Error(Errc::invalid_input, "num_steps must be >= 2");
    if (amplitude_clamp && !(*amplitude_clamp > 0.0))
        throw Error(Errc::invalid_input, "amplitude_clamp must be positive");
}

void OptimizerConfig::validate() const
{
    if (!(target_infidelity > 0.0 && target_infidelity < 1.0))
        throw Error(Errc::invalid_input, "target_infidelity must lie in (0, 1)");
    if (max_cost_evaluations < 1 || restart_limit < 0)
        throw Error(Errc::invalid_input, "evaluation budget must be >= 1 and restart_limit >= 0");
    if (!(initial_coefficient_scale > 0.0) || !(initial_simplex_spread > 0.0))
        throw Error(Errc::invalid_input, "initial coefficient scale and simplex spread must be positive");
    if (!(spread_tolerance >= 0.0))
        throw Error(Errc::invalid_input, "spread_tolerance must be non-negative");
}

std::string CrabSolution::id() const
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%03d", to_string(gate.name).c_str(), index);
    return buf;
}

CostFunction::CostFunction(TransmonModel model, const CrabBasis& basis, GateTarget target, CrabSettings settings)
    : model_(std::move(model)),
      target_(std::move(target)),
      settings_(std::move(settings)),
      table_(basis, settings_.num_steps)
{
    settings_.validate();
    if (std::abs(basis.gate_time - model_.gate_time()) > 1e-12 * model_.gate_time())
        throw Error(Errc::invalid_input, "basis gate time does not match the model");
}

ControlGrid CostFunction::grid(std::span<const double> flat) const
{
    ControlGrid g;
    table_.synthesize(flat, g);
    if (settings_.amplitude_clamp) {
        const double c = *settings_.amplitude_clamp;
        g.values = g.values.cwiseMax(-c).cwiseMin(c);
    }
    return g;
}

double CostFunction::operator()(std::span<const double> flat) const
{
    const Matrix4c block = propagate_computational_block(model_, grid(flat));
    return infidelity(block, target_.matrix, settings_.fidelity_form);
}

double cost(const TransmonModel& model, const CrabBasis& basis, std::span<const double> flat,
            const GateTarget& target, const CrabSettings& settings)
{
    return CostFunction(model, basis, target, settings)(flat);
}

double evaluate_solution(const CrabSolution& solution, std::optional<int> num_steps_override)
{
    CrabSettings settings = solution.settings;
    if (num_steps_override)
        settings.num_steps = *num_steps_override;
    return CostFunction(solution.model, solution.basis, solution.gate, settings)(solution.coefficients);
}

CrabSolution optimize_gate(const TransmonModel& model, const GateTarget& gate, const CrabSettings& settings,
                           const OptimizerConfig& config, std::uint64_t seed, const IterationObserver& observer)
{
    settings.validate();
    config.validate();

    NelderMeadOptions options;
    options.target_value = config.polish ? -std::numeric_limits<double>::infinity() : config.target_infidelity;
    options.spread_tolerance = config.spread_tolerance;
    options.max_evaluations = config.max_cost_evaluations;
    options.relative_step = config.initial_simplex_spread;
    options.step_floor = config.initial_coefficient_scale;

    CrabSolution best;
    best.model = model;
    best.gate = gate;
    best.settings = settings;
    best.rng_seed = seed;
    best.achieved_infidelity = std::numeric_limits<double>::infinity();

    const std::size_t dim = static_cast<std::size_t>(kNumChannels) * 2 * settings.num_components;
    for (int attempt = 0; attempt <= config.restart_limit; ++attempt) {
        const auto a = static_cast<std::uint64_t>(attempt);
        const CrabBasis basis = sample_basis(model, settings.num_components, settings.randomization,
                                             derive_seed(seed, {a, 0}));
        Rng rng = make_rng(seed, {a, 1});
        std::uniform_real_distribution<double> init(-config.initial_coefficient_scale,
                                                    config.initial_coefficient_scale);
        std::vector<double> x0(dim);
        for (auto& x : x0)
            x = init(rng);

        const CostFunction objective(model, basis, gate, settings);
        const NelderMeadResult run = nelder_mead(
            [&objective](std::span<const double> x) { return objective(x); }, std::move(x0), options, observer);

        best.evaluations += run.evaluations;
        best.restarts = attempt;
        if (run.value < best.achieved_infidelity) {
            best.basis = basis;
            best.coefficients = CrabCoefficients::unflatten(run.best, settings.num_components);
            best.achieved_infidelity = run.value;
        }
        if (best.achieved_infidelity < config.target_infidelity)
            break;
    }
    best.converged = best.achieved_infidelity < config.target_infidelity;
    return best;
}

std::vector<const CrabSolution*> CampaignResult::converged() const
{
    std::vector<const CrabSolution*> out;
    for (const auto& s : solutions)
        if (s.converged)
            out.push_back(&s);
    return out;
}

CampaignResult summarize_campaign(const GateTarget& gate, std::vector<CrabSolution> solutions)
{
    std::sort(solutions.begin(), solutions.end(),
              [](const CrabSolution& a, const CrabSolution& b) { return a.index < b.index; });
    CampaignResult result;
    result.gate = gate;
    result.solutions = std::move(solutions);
    double sum = 0.0;
    double minimum = std::numeric_limits<double>::infinity();
    for (const auto& s : result.solutions) {
        if (!s.converged) {
            ++result.failed_count;
            continue;
        }
        ++result.converged_count;
        sum += s.achieved_infidelity;
        minimum = std::min(minimum, s.achieved_infidelity);
    }
    if (result.converged_count > 0) {
        result.average_infidelity = sum / result.converged_count;
        result.minimum_infidelity = minimum;
    } else {
        result.average_infidelity = std::numeric_limits<double>::quiet_NaN();
        result.minimum_infidelity = std::numeric_limits<double>::quiet_NaN();
    }
    return result;
}

CampaignResult run_campaign(const TransmonModel& model, const GateTarget& gate, const CrabSettings& settings,
                            const OptimizerConfig& config, int num_solutions, int jobs,
                            const std::function<void(const CrabSolution&)>& on_solution)
{
    if (num_solutions < 1)
        throw Error(Errc::invalid_input, "num_solutions must be >= 1");
    std::vector<CrabSolution> solutions(static_cast<std::size_t>(num_solutions));
    std::mutex report_mutex;
    parallel_for(solutions.size(), jobs, [&](std::size_t i) {
        CrabSolution s = optimize_gate(model, gate, settings, config, config.seed + i);
        s.index = static_cast<int>(i);
        if (on_solution) {
            std::lock_guard lock(report_mutex);
            on_solution(s);
        }
        solutions[i] = std::move(s);
    });
    return summarize_campaign(gate, std::move(solutions));
}

}  // namespace crabforge
