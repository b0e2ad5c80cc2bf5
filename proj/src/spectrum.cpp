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

#include "crabforge/spectrum.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "crabforge/errors.hpp"

namespace crabforge {

SpectrumTable dft_spectrum(const ControlGrid& grid, int channel)
{
    if (channel < 0 || channel >= kNumChannels || channel >= grid.values.rows())
        throw Error(Errc::invalid_input, "invalid channel " + std::to_string(channel));
    const int n = grid.num_steps;
    if (n < 2 || grid.values.cols() != n)
        throw Error(Errc::invalid_input, "spectrum needs at least two samples");

    // twiddle[j] = exp(-2 pi i j / N); indexing with (k m) mod N keeps every factor exact
    // to one rounding instead of accumulating a recurrence.
    std::vector<std::complex<double>> twiddle(n);
    for (int j = 0; j < n; ++j)
        twiddle[j] = std::polar(1.0, -2.0 * std::numbers::pi * j / n);

    const auto x = grid.values.row(channel);
    SpectrumTable table;
    table.channel = channel;
    const int bins = n / 2 + 1;
    table.frequencies_ghz.resize(bins);
    table.amplitudes.resize(bins);
    for (int k = 0; k < bins; ++k) {
        std::complex<double> acc{0.0, 0.0};
        long long idx = 0;
        for (int m = 0; m < n; ++m) {
            acc += x(m) * twiddle[idx];
            idx += k;
            if (idx >= n)
                idx -= n;
        }
        table.frequencies_ghz[k] = k / (n * grid.dt);
        table.amplitudes[k] = (k == 0 ? 1.0 : 2.0) * std::abs(acc) / n;
    }
    return table;
}

}  // namespace crabforge
