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
#include <complex>
#include <memory>

#include <Eigen/Dense>

namespace crabforge {

using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

/// Control channels of the two-transmon Hamiltonian, in storage order.
enum class Channel : int { delta1 = 0, delta2 = 1, drive1 = 2, drive2 = 3, coupling = 4 };

inline constexpr int kNumChannels = 5;

const char* channel_name(int channel);

/// How quoted GHz figures map onto the rad/ns values fed to the Hamiltonian.
enum class FrequencyConvention {
    as_quoted,  ///< value in rad/ns equals the quoted GHz number
    ordinary,   ///< quoted GHz is an ordinary frequency; multiply by 2*pi
};

/// Planck constant in eV per GHz.
inline constexpr double kEvPerGhz = 4.1357e-6;

/// Instantaneous values of the five channels, rad/ns.
struct ControlValues {
    double delta1 = 0.0;
    double delta2 = 0.0;
    double f1 = 0.0;
    double f2 = 0.0;
    double g = 0.0;

    double operator[](int channel) const;
    double& operator[](int channel);
};

/// Hamiltonian building blocks on the two-mode space, built once per model.
///
/// `drive*` hold i(a - a^dagger) embedded per mode. The `gauge_*` members are the same
/// operators after the basis change |n1 n2> -> i^(n1+n2) |n1 n2>, under which every
/// term is real symmetric: i(a - a^dagger) becomes -(a + a^dagger), everything else is
/// unchanged.
struct HamiltonianTerms {
    ComplexMatrix drift;
    ComplexMatrix number1;
    ComplexMatrix number2;
    ComplexMatrix drive1;
    ComplexMatrix drive2;
    ComplexMatrix coupling;

    RealMatrix gauge_drift;
    RealMatrix gauge_drive1;
    RealMatrix gauge_drive2;
    RealMatrix gauge_coupling;
    Eigen::VectorXd number1_diag;
    Eigen::VectorXd number2_diag;
    /// Excitation count n1 + n2 per basis index.
    Eigen::VectorXi excitations;
};

/// Two coupled transmons truncated to `levels_per_mode` levels each.
///
/// Basis ordering is mode-1-major: index = levels_per_mode * n1 + n2. Immutable and safe
/// to share across threads.
class TransmonModel {
public:
    TransmonModel(int levels_per_mode = 3, double anharmonicity = 0.2, double gate_time = 40.0,
                  FrequencyConvention convention = FrequencyConvention::as_quoted);

    int levels_per_mode() const { return levels_; }
    /// Anharmonicity as it enters the Hamiltonian, rad/ns.
    double anharmonicity() const { return anharmonicity_; }
    /// Anharmonicity as configured, in GHz.
    double quoted_anharmonicity() const { return quoted_anharmonicity_; }
    double gate_time() const { return gate_time_; }
    FrequencyConvention convention() const { return convention_; }
    int dimension() const { return levels_ * levels_; }

    int basis_index(int n1, int n2) const { return levels_ * n1 + n2; }
    /// Indices of |00>, |01>, |10>, |11>.
    std::array<int, 4> computational_indices() const;

    /// Hamiltonian value (rad/ns) to GHz under this model's convention.
    double to_ghz(double rad_per_ns) const;
    double to_ev(double rad_per_ns) const { return kEvPerGhz * to_ghz(rad_per_ns); }

    const HamiltonianTerms& terms() const { return *terms_; }

private:
    int levels_;
    double quoted_anharmonicity_;
    double anharmonicity_;
    double gate_time_;
    FrequencyConvention convention_;
    std::shared_ptr<const HamiltonianTerms> terms_;
};

ComplexMatrix annihilation_op(int d);
ComplexMatrix number_op(int d);

/// H = sum_j [delta_j n_j + (eta/2) n_j (n_j - 1) + i(a_j - a_j^dagger) F_j] + g (a1 a2^dagger + a2 a1^dagger)
ComplexMatrix assemble_hamiltonian(const TransmonModel& model, const ControlValues& cv);

/// Same Hamiltonian in the real gauge described on HamiltonianTerms.
RealMatrix assemble_gauge_hamiltonian(const TransmonModel& model, const ControlValues& cv);

}  // namespace crabforge
