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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "crabforge/model.hpp"

namespace crabforge {

/// Uniformly sampled control signals, one row per channel, sampled at slice midpoints.
struct ControlGrid {
    int num_steps = 0;
    double dt = 0.0;
    /// kNumChannels x num_steps, rad/ns.
    Eigen::MatrixXd values;

    double time(int step) const { return (step + 0.5) * dt; }
    ControlValues at(int step) const;
};

enum class Randomization {
    qutip,     ///< omega_k = k 2pi/T + r, r uniform in [-0.5, 0.5) rad/ns
    original,  ///< omega_k = (k + r) 2pi/T, r uniform in [-0.5, 0.5)
};

std::string to_string(Randomization mode);
Randomization parse_randomization(const std::string& text);

struct CrabBasis {
    int num_components = 0;
    Randomization randomization = Randomization::qutip;
    std::uint64_t seed = 0;
    double gate_time = 0.0;
    /// Per channel, num_components angular frequencies in rad/ns.
    std::array<std::vector<double>, kNumChannels> frequencies;

    bool operator==(const CrabBasis&) const = default;
};

/// Per channel: num_components cosine coefficients followed by num_components sine
/// coefficients. The flattened layout used by the optimizer concatenates channels in
/// Channel order.
struct CrabCoefficients {
    std::array<std::vector<double>, kNumChannels> channels;

    static CrabCoefficients zeros(int num_components);
    static CrabCoefficients unflatten(std::span<const double> flat, int num_components);
    std::vector<double> flatten() const;
    int num_components() const { return static_cast<int>(channels[0].size() / 2); }

    bool operator==(const CrabCoefficients&) const = default;
};

CrabBasis sample_basis(const TransmonModel& model, int num_components, Randomization mode, std::uint64_t seed);

/// Basis with every random offset set to zero: the plain Fourier harmonics k 2pi/T.
CrabBasis harmonic_basis(const TransmonModel& model, int num_components, Randomization mode);

/// Gamma_j(t) = sum_k [a_k cos(omega_k t) + b_k sin(omega_k t)]; the initial guess is 1.
double synthesize_signal(const CrabBasis& basis, const CrabCoefficients& coeffs, int channel, double t);

ControlGrid sample_grid(const CrabBasis& basis, const CrabCoefficients& coeffs, int num_steps);

/// Precomputed cos/sin tables of one basis on a midpoint grid, for repeated synthesis
/// with changing coefficients.
class BasisTable {
public:
    BasisTable(const CrabBasis& basis, int num_steps);

    int num_steps() const { return num_steps_; }
    int num_components() const { return num_components_; }
    /// Writes the grid for a flattened coefficient vector into `grid` (resized as needed).
    void synthesize(std::span<const double> flat, ControlGrid& grid) const;

private:
    int num_steps_;
    int num_components_;
    double dt_;
    /// Per channel: num_steps x (2 num_components), cos block then sin block.
    std::array<Eigen::MatrixXd, kNumChannels> tables_;
};

}  // namespace crabforge
