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

#include "crabforge/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "crabforge/errors.hpp"

namespace crabforge {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

double rank_value(double v)
{
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

}  // namespace

const char* to_string(Termination t)
{
    switch (t) {
    case Termination::target_reached: return "target_reached";
    case Termination::spread: return "spread";
    case Termination::budget: return "budget";
    }
    return "?";
}

NelderMeadResult nelder_mead(const Objective& objective, std::vector<double> initial,
                             const NelderMeadOptions& options, const IterationObserver& observer)
{
    const std::size_t n = initial.size();
    if (n == 0)
        throw Error(Errc::invalid_input, "nelder_mead needs at least one dimension");
    if (options.max_evaluations < static_cast<long>(n + 1))
        throw Error(Errc::invalid_input, "evaluation budget smaller than the initial simplex");

    NelderMeadResult result;
    auto eval = [&](const std::vector<double>& x) {
        ++result.evaluations;
        return rank_value(objective(x));
    };

    std::vector<std::vector<double>> simplex(n + 1, initial);
    for (std::size_t i = 0; i < n; ++i)
        simplex[i + 1][i] += options.relative_step * std::max(std::abs(initial[i]), options.step_floor);
    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        values[i] = eval(simplex[i]);
        if (!std::isfinite(values[i]))
            throw Error(Errc::invalid_input, "objective is not finite on the initial simplex");
    }

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);
    auto along = [&](double factor, const std::vector<double>& from, std::vector<double>& out) {
        // out = centroid + factor * (from - centroid)
        for (std::size_t j = 0; j < n; ++j)
            out[j] = centroid[j] + factor * (from[j] - centroid[j]);
    };

    while (true) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[n - 1];

        if (observer)
            observer(result.iterations, values[best]);
        if (values[best] < options.target_value) {
            result.termination = Termination::target_reached;
            break;
        }
        if (values[worst] - values[best] < options.spread_tolerance) {
            result.termination = Termination::spread;
            break;
        }
        // Worst case for one iteration is reflection + contraction + n shrink evaluations.
        if (result.evaluations + static_cast<long>(n) + 2 > options.max_evaluations) {
            result.termination = Termination::budget;
            break;
        }
        ++result.iterations;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                centroid[j] += simplex[i][j];
        }
        for (auto& c : centroid)
            c /= static_cast<double>(n);

        along(-kReflect, simplex[worst], trial);
        const double f_reflect = eval(trial);

        if (f_reflect < values[best]) {
            along(-kExpand, simplex[worst], trial2);
            const double f_expand = eval(trial2);
            if (f_expand < f_reflect) {
                simplex[worst] = trial2;
                values[worst] = f_expand;
            } else {
                simplex[worst] = trial;
                values[worst] = f_reflect;
            }
            continue;
        }
        if (f_reflect < values[second_worst]) {
            simplex[worst] = trial;
            values[worst] = f_reflect;
            continue;
        }

        if (f_reflect < values[worst]) {
            along(kContract, trial, trial2);
            const double f_contract = eval(trial2);
            if (f_contract <= f_reflect) {
                simplex[worst] = trial2;
                values[worst] = f_contract;
                continue;
            }
        } else {
            along(kContract, simplex[worst], trial2);
            const double f_contract = eval(trial2);
            if (f_contract < values[worst]) {
                simplex[worst] = trial2;
                values[worst] = f_contract;
                continue;
            }
        }

        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                simplex[i][j] = simplex[best][j] + kShrink * (simplex[i][j] - simplex[best][j]);
            values[i] = eval(simplex[i]);
        }
    }

    const auto best_it = std::min_element(values.begin(), values.end());
    result.value = *best_it;
    result.best = simplex[static_cast<std::size_t>(best_it - values.begin())];
    return result;
}

}  // namespace crabforge
