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

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace crabforge {

enum class Termination {
    target_reached,  ///< best value dropped below the target
    spread,          ///< worst - best fell below the spread tolerance
    budget,          ///< evaluation budget exhausted
};

const char* to_string(Termination t);

struct NelderMeadOptions {
    /// Stop as soon as the best vertex is strictly below this value.
    double target_value = -std::numeric_limits<double>::infinity();
    double spread_tolerance = 1e-6;
    long max_evaluations = 200000;
    /// Vertex i of the initial simplex is x0 + relative_step * max(|x0_i|, step_floor) e_i.
    double relative_step = 0.1;
    double step_floor = 0.05;
};

struct NelderMeadResult {
    std::vector<double> best;
    double value = std::numeric_limits<double>::infinity();
    long evaluations = 0;
    long iterations = 0;
    Termination termination = Termination::budget;
};

using Objective = std::function<double(std::span<const double>)>;
/// Called once per iteration with the best value seen so far.
using IterationObserver = std::function<void(long iteration, double best_value)>;

/// Nelder-Mead direct search with reflection 1, expansion 2, contraction 1/2 and shrink 1/2.
/// Non-finite objective values are ranked as +infinity.
NelderMeadResult nelder_mead(const Objective& objective, std::vector<double> initial,
                             const NelderMeadOptions& options, const IterationObserver& observer = {});

}  // namespace crabforge
