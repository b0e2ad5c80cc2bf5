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

#include "crabforge/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "crabforge/errors.hpp"

namespace crabforge {

namespace {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b)
{
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

void require_dimension(int d)
{
    if (d < 2)
        throw Error(Errc::invalid_dimension, "mode dimension must be >= 2, got " + std::to_string(d));
}

std::shared_ptr<const HamiltonianTerms> build_terms(int d, double eta)
{
    const ComplexMatrix a = annihilation_op(d);
    const ComplexMatrix ad = a.adjoint();
    const ComplexMatrix n = number_op(d);
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    const ComplexMatrix anharm = 0.5 * eta * n * (n - id);
    const std::complex<double> i{0.0, 1.0};

    auto t = std::make_shared<HamiltonianTerms>();
    t->number1 = kron(n, id);
    t->number2 = kron(id, n);
    t->drift = kron(anharm, id) + kron(id, anharm);
    t->drive1 = kron(i * (a - ad), id);
    t->drive2 = kron(id, i * (a - ad));
    t->coupling = kron(a, id) * kron(id, ad) + kron(id, a) * kron(ad, id);

    t->gauge_drift = t->drift.real();
    t->gauge_drive1 = -kron(a + ad, id).real();
    t->gauge_drive2 = -kron(id, a + ad).real();
    t->gauge_coupling = t->coupling.real();
    t->number1_diag = t->number1.diagonal().real();
    t->number2_diag = t->number2.diagonal().real();
    t->excitations.resize(d * d);
    for (int n1 = 0; n1 < d; ++n1)
        for (int n2 = 0; n2 < d; ++n2)
            t->excitations(d * n1 + n2) = n1 + n2;
    return t;
}

void require_finite(const ControlValues& cv)
{
    for (int c = 0; c < kNumChannels; ++c)
        if (!std::isfinite(cv[c]))
            throw Error(Errc::invalid_input, std::string("non-finite control value on channel ") + channel_name(c));
}

}  // namespace

const char* channel_name(int channel)
{
    switch (channel) {
    case 0: return "delta1";
    case 1: return "delta2";
    case 2: return "f1";
    case 3: return "f2";
    case 4: return "g";
    default: return "?";
    }
}

double ControlValues::operator[](int channel) const
{
    return const_cast<ControlValues&>(*this)[channel];
}

double& ControlValues::operator[](int channel)
{
    switch (channel) {
    case 0: return delta1;
    case 1: return delta2;
    case 2: return f1;
    case 3: return f2;
    case 4: return g;
    default: throw Error(Errc::invalid_input, "channel index out of range: " + std::to_string(channel));
    }
}

TransmonModel::TransmonModel(int levels_per_mode, double anharmonicity, double gate_time,
                             FrequencyConvention convention)
    : levels_(levels_per_mode),
      quoted_anharmonicity_(anharmonicity),
      gate_time_(gate_time),
      convention_(convention)
{
    require_dimension(levels_per_mode);
    if (!(gate_time > 0.0) || !std::isfinite(gate_time))
        throw Error(Errc::invalid_input, "gate_time must be positive and finite");
    if (!std::isfinite(anharmonicity))
        throw Error(Errc::invalid_input, "anharmonicity must be finite");
    anharmonicity_ = convention == FrequencyConvention::ordinary ? 2.0 * std::numbers::pi * anharmonicity
                                                                  : anharmonicity;
    terms_ = build_terms(levels_, anharmonicity_);
}

std::array<int, 4> TransmonModel::computational_indices() const
{
    return {basis_index(0, 0), basis_index(0, 1), basis_index(1, 0), basis_index(1, 1)};
}

double TransmonModel::to_ghz(double rad_per_ns) const
{
    return convention_ == FrequencyConvention::ordinary ? rad_per_ns / (2.0 * std::numbers::pi) : rad_per_ns;
}

ComplexMatrix annihilation_op(int d)
{
    require_dimension(d);
    ComplexMatrix a = ComplexMatrix::Zero(d, d);
    for (int n = 1; n < d; ++n)
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

ComplexMatrix number_op(int d)
{
    require_dimension(d);
    ComplexMatrix n = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k)
        n(k, k) = static_cast<double>(k);
    return n;
}

ComplexMatrix assemble_hamiltonian(const TransmonModel& model, const ControlValues& cv)
{
    require_finite(cv);
    const auto& t = model.terms();
    return t.drift + cv.delta1 * t.number1 + cv.delta2 * t.number2 + cv.f1 * t.drive1 + cv.f2 * t.drive2 +
           cv.g * t.coupling;
}

RealMatrix assemble_gauge_hamiltonian(const TransmonModel& model, const ControlValues& cv)
{
    require_finite(cv);
    const auto& t = model.terms();
    RealMatrix h = t.gauge_drift + cv.f1 * t.gauge_drive1 + cv.f2 * t.gauge_drive2 + cv.g * t.gauge_coupling;
    h.diagonal() += cv.delta1 * t.number1_diag + cv.delta2 * t.number2_diag;
    return h;
}

}  // namespace crabforge
