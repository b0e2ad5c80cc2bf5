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

#include <vector>

#include "crabforge/crab.hpp"

namespace crabforge {

/// One-sided amplitude spectrum of a single channel.
struct SpectrumTable {
    int channel = 0;
    /// Cycles per ns, k / (N dt) for k = 0 .. N/2.
    std::vector<double> frequencies_ghz;
    /// Same units as the signal; a unit-amplitude sinusoid on a bin reads 1.
    std::vector<double> amplitudes;
};

/// Plain DFT without windowing: amplitude 2|X_k|/N for k >= 1 and |X_0|/N at DC. For an
/// even-length signal the Nyquist bin has no mirror image, so its power is A^2/4 rather
/// than A^2/2.
SpectrumTable dft_spectrum(const ControlGrid& grid, int channel);

}  // namespace crabforge
