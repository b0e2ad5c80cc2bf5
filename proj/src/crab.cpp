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

#include "crabforge/crab.hpp"

#include <cmath>
#include <numbers>

#include "crabforge/errors.hpp"
#include "crabforge/random.hpp"

namespace crabforge {

namespace {

void check_channel(int channel)
{
    if (channel < 0 || channel >= kNumChannels)
        throw Error(Errc::invalid_input, "channel index out of range: " + std::to_string(channel));
}

void check_shape(const CrabBasis& basis, const CrabCoefficients& coeffs)
{
    for (int c = 0; c < kNumChannels; ++c) {
        if (static_cast<int>(basis.frequencies[c].size()) != basis.num_components ||
            static_cast<int>(coeffs.channels[c].size()) != 2 * basis.num_components)
            throw Error(Errc::invalid_input, "coefficient/basis size mismatch on channel " + std::to_string(c));
    }
}

}  // namespace

ControlValues ControlGrid::at(int step) const
{
    return {values(0, step), values(1, step), values(2, step), values(3, step), values(4, step)};
}

std::string to_string(Randomization mode)
{
    return mode == Randomization::qutip ? "qutip" : "original";
}

Randomization parse_randomization(const std::string& text)
{
    if (text == "qutip")
        return Randomization::qutip;
    if (text == "original")
        return Randomization::original;
    throw Error(Errc::invalid_input, "unknown randomization mode '" + text + "'");
}

CrabCoefficients CrabCoefficients::zeros(int num_components)
{
    CrabCoefficients c;
    for (auto& ch : c.channels)
        ch.assign(2 * num_components, 0.0);
    return c;
}

CrabCoefficients CrabCoefficients::unflatten(std::span<const double> flat, int num_components)
{
    const std::size_t per = 2 * static_cast<std::size_t>(num_components);
    if (flat.size() != per * kNumChannels)
        throw Error(Errc::invalid_input, "flattened coefficient vector has length " + std::to_string(flat.size()) +
                                             ", expected " + std::to_string(per * kNumChannels));
    CrabCoefficients c;
    for (int ch = 0; ch < kNumChannels; ++ch)
        c.channels[ch].assign(flat.begin() + ch * per, flat.begin() + (ch + 1) * per);
    return c;
}

std::vector<double> CrabCoefficients::flatten() const
{
    std::vector<double> flat;
    for (const auto& ch : channels)
        flat.insert(flat.end(), ch.begin(), ch.end());
    return flat;
}

CrabBasis harmonic_basis(const TransmonModel& model, int num_components, Randomization mode)
{
    if (num_components < 1)
        throw Error(Errc::invalid_input, "num_components must be >= 1");
    CrabBasis basis;
    basis.num_components = num_components;
    basis.randomization = mode;
    basis.gate_time = model.gate_time();
    const double w0 = 2.0 * std::numbers::pi / model.gate_time();
    for (auto& freqs : basis.frequencies) {
        freqs.resize(num_components);
        for (int k = 0; k < num_components; ++k)
            freqs[k] = (k + 1) * w0;
    }
    return basis;
}

CrabBasis sample_basis(const TransmonModel& model, int num_components, Randomization mode, std::uint64_t seed)
{
    CrabBasis basis = harmonic_basis(model, num_components, mode);
    basis.seed = seed;
    const double w0 = 2.0 * std::numbers::pi / model.gate_time();
    Rng rng = make_rng(seed);
    std::uniform_real_distribution<double> offset(-0.5, 0.5);
    for (auto& freqs : basis.frequencies) {
        for (int k = 0; k < num_components; ++k) {
            const double r = offset(rng);
            freqs[k] = mode == Randomization::qutip ? (k + 1) * w0 + r : (k + 1 + r) * w0;
        }
    }
    return basis;
}

double synthesize_signal(const CrabBasis& basis, const CrabCoefficients& coeffs, int channel, double t)
{
    check_channel(channel);
    check_shape(basis, coeffs);
    if (!(t >= 0.0 && t <= basis.gate_time))
        throw Error(Errc::domain, "time " + std::to_string(t) + " outside [0, T]");
    const auto& w = basis.frequencies[channel];
    const auto& c = coeffs.channels[channel];
    const int n = basis.num_components;
    double s = 0.0;
    for (int k = 0; k < n; ++k)
        s += c[k] * std::cos(w[k] * t) + c[n + k] * std::sin(w[k] * t);
    return s;
}

ControlGrid sample_grid(const CrabBasis& basis, const CrabCoefficients& coeffs, int num_steps)
{
    if (num_steps < 2)
        throw Error(Errc::invalid_input, "num_steps must be >= 2");
    check_shape(basis, coeffs);
    ControlGrid grid;
    grid.num_steps = num_steps;
    grid.dt = basis.gate_time / num_steps;
    grid.values.resize(kNumChannels, num_steps);
    for (int ch = 0; ch < kNumChannels; ++ch)
        for (int m = 0; m < num_steps; ++m)
            grid.values(ch, m) = synthesize_signal(basis, coeffs, ch, grid.time(m));
    return grid;
}

BasisTable::BasisTable(const CrabBasis& basis, int num_steps)
    : num_steps_(num_steps), num_components_(basis.num_components), dt_(basis.gate_time / num_steps)
{
    if (num_steps < 2)
        throw Error(Errc::invalid_input, "num_steps must be >= 2");
    for (int ch = 0; ch < kNumChannels; ++ch) {
        auto& table = tables_[ch];
        table.resize(num_steps, 2 * num_components_);
        for (int m = 0; m < num_steps; ++m) {
            const double t = (m + 0.5) * dt_;
            for (int k = 0; k < num_components_; ++k) {
                table(m, k) = std::cos(basis.frequencies[ch][k] * t);
                table(m, num_components_ + k) = std::sin(basis.frequencies[ch][k] * t);
            }
        }
    }
}

void BasisTable::synthesize(std::span<const double> flat, ControlGrid& grid) const
{
    const Eigen::Index per = 2 * num_components_;
    if (static_cast<Eigen::Index>(flat.size()) != per * kNumChannels)
        throw Error(Errc::invalid_input, "flattened coefficient vector has wrong length");
    grid.num_steps = num_steps_;
    grid.dt = dt_;
    grid.values.resize(kNumChannels, num_steps_);
    for (int ch = 0; ch < kNumChannels; ++ch) {
        Eigen::Map<const Eigen::VectorXd> c(flat.data() + ch * per, per);
        grid.values.row(ch) = (tables_[ch] * c).transpose();
    }
}

}  // namespace crabforge
