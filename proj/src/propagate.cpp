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

#include "crabforge/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "crabforge/errors.hpp"

namespace crabforge {

namespace {

using cd = std::complex<double>;

void check_grid(const TransmonModel& model, const ControlGrid& grid)
{
    if (grid.num_steps < 1 || grid.values.rows() != kNumChannels || grid.values.cols() != grid.num_steps)
        throw Error(Errc::invalid_input, "control grid has inconsistent shape");
    const double span = grid.dt * grid.num_steps;
    if (std::abs(span - model.gate_time()) > 1e-9 * model.gate_time())
        throw Error(Errc::invalid_input, "control grid spans " + std::to_string(span) + " ns, model gate time is " +
                                             std::to_string(model.gate_time()) + " ns");
    if (!grid.values.allFinite())
        throw Error(Errc::invalid_input, "control grid contains non-finite values");
}

// i^n for integer n >= 0.
cd i_pow(int n)
{
    switch (n % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
    }
}

// Evolves the columns `cols` of the identity through the grid in the real gauge and
// returns the corresponding columns of U(T) in the physical basis.
//
// With H_gauge = V diag(lambda) V^T real symmetric, each slice maps
// psi -> V diag(exp(-i lambda dt)) V^T psi, done on real and imaginary parts separately.
ComplexMatrix evolve_columns(const TransmonModel& model, const ControlGrid& grid, const std::vector<int>& cols)
{
    check_grid(model, grid);
    const int d = model.dimension();
    const int k = static_cast<int>(cols.size());
    const auto& exc = model.terms().excitations;

    Eigen::MatrixXd re = Eigen::MatrixXd::Zero(d, k);
    Eigen::MatrixXd im = Eigen::MatrixXd::Zero(d, k);
    for (int j = 0; j < k; ++j)
        re(cols[j], j) = 1.0;

    const auto& t = model.terms();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(d);
    Eigen::MatrixXd h(d, d), wr(d, k), wi(d, k), zr(d, k), zi(d, k);
    Eigen::VectorXd c(d), s(d);
    for (int m = 0; m < grid.num_steps; ++m) {
        const auto v_m = grid.values.col(m);
        h = t.gauge_drift + v_m(2) * t.gauge_drive1 + v_m(3) * t.gauge_drive2 + v_m(4) * t.gauge_coupling;
        h.diagonal() += v_m(0) * t.number1_diag + v_m(1) * t.number2_diag;
        solver.compute(h);
        const auto& v = solver.eigenvectors();
        const auto& lambda = solver.eigenvalues();
        for (int q = 0; q < d; ++q) {
            c(q) = std::cos(lambda(q) * grid.dt);
            s(q) = std::sin(lambda(q) * grid.dt);
        }
        wr.noalias() = v.transpose() * re;
        wi.noalias() = v.transpose() * im;
        zr = c.asDiagonal() * wr + s.asDiagonal() * wi;
        zi = c.asDiagonal() * wi - s.asDiagonal() * wr;
        re.noalias() = v * zr;
        im.noalias() = v * zi;
    }

    ComplexMatrix out(d, k);
    for (int j = 0; j < k; ++j) {
        const cd phase_col = std::conj(i_pow(exc(cols[j])));
        for (int r = 0; r < d; ++r)
            out(r, j) = i_pow(exc(r)) * cd(re(r, j), im(r, j)) * phase_col;
    }
    return out;
}

double finish(double value)
{
    return std::clamp(value, 0.0, 1.0);
}

}  // namespace

std::string to_string(FidelityForm form)
{
    return form == FidelityForm::linear ? "linear" : "squared";
}

FidelityForm parse_fidelity_form(const std::string& text)
{
    if (text == "linear")
        return FidelityForm::linear;
    if (text == "squared")
        return FidelityForm::squared;
    throw Error(Errc::invalid_input, "unknown fidelity form '" + text + "'");
}

ComplexMatrix matrix_exp_hermitian(const ComplexMatrix& h, double scale)
{
    if (h.rows() != h.cols())
        throw Error(Errc::invalid_dimension, "matrix_exp_hermitian needs a square matrix");
    if (h.size() > 0 && (h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
        throw Error(Errc::invalid_input, "matrix_exp_hermitian input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    const Eigen::VectorXd& lambda = solver.eigenvalues();
    Eigen::VectorXcd phases(lambda.size());
    for (Eigen::Index q = 0; q < lambda.size(); ++q)
        phases(q) = std::polar(1.0, -scale * lambda(q));
    const ComplexMatrix& v = solver.eigenvectors();
    return v * phases.asDiagonal() * v.adjoint();
}

PropagationResult propagate(const TransmonModel& model, const ControlGrid& grid)
{
    std::vector<int> all(model.dimension());
    for (int q = 0; q < model.dimension(); ++q)
        all[q] = q;
    PropagationResult result;
    result.full_unitary = evolve_columns(model, grid, all);
    const auto idx = model.computational_indices();
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            result.computational_block(r, c) = result.full_unitary(idx[r], idx[c]);
    result.leakage = leakage_of(result.computational_block);
    return result;
}

Matrix4c propagate_computational_block(const TransmonModel& model, const ControlGrid& grid)
{
    const auto idx = model.computational_indices();
    const ComplexMatrix cols = evolve_columns(model, grid, {idx.begin(), idx.end()});
    Matrix4c block;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            block(r, c) = cols(idx[r], c);
    return block;
}

double leakage_of(const Matrix4c& block)
{
    return finish(1.0 - block.squaredNorm() / 4.0);
}

double infidelity(const Matrix4c& block, const Matrix4c& target, FidelityForm form)
{
    const double overlap = std::abs((target.adjoint() * block).trace());
    if (form == FidelityForm::linear)
        return finish(1.0 - overlap / 4.0);
    return finish(1.0 - overlap * overlap / 16.0);
}

double infidelity(const PropagationResult& result, const GateTarget& target, FidelityForm form)
{
    return infidelity(result.computational_block, target.matrix, form);
}

double infidelity(const ComplexMatrix& block, const ComplexMatrix& target, FidelityForm form)
{
    if (block.rows() != 4 || block.cols() != 4 || target.rows() != 4 || target.cols() != 4)
        throw Error(Errc::invalid_input, "infidelity expects 4x4 block and target");
    return infidelity(Matrix4c(block), Matrix4c(target), form);
}

}  // namespace crabforge
