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

#include <filesystem>
#include <string>
#include <string_view>

#include "crabforge/config.hpp"
#include "crabforge/optimize.hpp"

namespace crabforge {

inline constexpr int kSolutionSchemaVersion = 1;

/// On-disk form of one optimized solution.
///
/// Frequencies are stored explicitly rather than regenerated from the basis seed, and all
/// doubles are written with round-trip precision, so load(save(s)) reproduces s exactly.
struct SolutionFile {
    int schema_version = kSolutionSchemaVersion;
    CrabSolution solution;
    RunConfig config;
    /// ISO-8601 UTC; the only field that differs between otherwise identical runs.
    std::string created_utc;
};

std::string solution_to_json_text(const SolutionFile& file);
SolutionFile solution_from_json_text(std::string_view text);

void save_solution(const std::filesystem::path& path, const SolutionFile& file);
SolutionFile load_solution(const std::filesystem::path& path);

std::string utc_timestamp();

}  // namespace crabforge
