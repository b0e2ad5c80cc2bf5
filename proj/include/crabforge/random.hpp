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
#include <initializer_list>
#include <random>
#include <vector>

namespace crabforge {

using Rng = std::mt19937_64;

/// Deterministically mixes a base seed with stream indices (run, step, realization, ...).
///
/// Both std::seed_seq and mt19937_64 are fully specified by the standard, so the derived
/// streams are identical on every conforming toolchain.
inline Rng make_rng(std::uint64_t base, std::initializer_list<std::uint64_t> indices = {})
{
    std::vector<std::uint32_t> words;
    words.reserve(2 + 2 * indices.size());
    auto push = [&words](std::uint64_t v) {
        words.push_back(static_cast<std::uint32_t>(v));
        words.push_back(static_cast<std::uint32_t>(v >> 32));
    };
    push(base);
    for (auto v : indices)
        push(v);
    std::seed_seq seq(words.begin(), words.end());
    return Rng(seq);
}

/// A 64-bit seed derived from `base` and `indices`.
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> indices)
{
    return make_rng(base, indices)();
}

}  // namespace crabforge
