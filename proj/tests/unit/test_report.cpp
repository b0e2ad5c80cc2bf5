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

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "crabforge/gates.hpp"
#include "crabforge/report.hpp"

using namespace crabforge;

namespace {

std::vector<std::string> lines_of(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        out.push_back(line);
    return out;
}

}  // namespace

TEST(FormatNumber, ShortestRoundTrip)
{
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(1.0), "1");
    EXPECT_EQ(format_number(-2.5e-9), "-2.5e-09");
    EXPECT_EQ(format_number(std::nan("")), "nan");
    EXPECT_EQ(format_number(-INFINITY), "-inf");
    const double x = 0.1 + 0.2;
    EXPECT_EQ(std::stod(format_number(x)), x);
}

TEST(SignalsCsv, HeaderAndZeroColumns)
{
    const TransmonModel m;
    const ControlGrid g = sample_grid(harmonic_basis(m, 2, Randomization::qutip), CrabCoefficients::zeros(2), 4);
    std::ostringstream out;
    write_signals_csv(out, g);
    const std::string text = out.str();
    EXPECT_EQ(text.find('\r'), std::string::npos);
    const auto lines = lines_of(text);
    ASSERT_EQ(lines.size(), 5u);
    EXPECT_EQ(lines[0], "t_ns,delta1,delta2,f1,f2,g");
    EXPECT_EQ(lines[1], "5,0,0,0,0,0");
    EXPECT_EQ(lines[4], "35,0,0,0,0,0");
}

TEST(SpectrumCsv, RowCount)
{
    ControlGrid g;
    g.num_steps = 1000;
    g.dt = 0.04;
    g.values = Eigen::MatrixXd::Ones(kNumChannels, 1000);
    std::ostringstream out;
    write_spectrum_csv(out, dft_spectrum(g, 0));
    const auto lines = lines_of(out.str());
    ASSERT_EQ(lines.size(), 1u + 501u);
    EXPECT_EQ(lines[0], "freq_ghz,amplitude");
    EXPECT_EQ(lines[1], "0,1");
}

TEST(SweepCsv, ElectronVoltColumn)
{
    const std::vector<SweepRow> rows{{0.0, 0.009, 0.009, 0.009}, {0.1, 0.5, 0.2, 0.8}};
    std::ostringstream out;
    write_sweep_csv(out, rows, TransmonModel());
    const auto lines = lines_of(out.str());
    ASSERT_EQ(lines.size(), 3u);
    EXPECT_EQ(lines[0], "sigma_rad_ns,sigma_ev,mean_infidelity,min_infidelity,max_infidelity");
    EXPECT_EQ(lines[1], "0,0,0.009,0.009,0.009");
    EXPECT_EQ(lines[2].substr(0, 4), "0.1,");
    EXPECT_NEAR(std::stod(lines[2].substr(4)), 4.1357e-7, 1e-19);
}

TEST(ToleranceCsv, MarksAcceptingStep)
{
    ToleranceReport r;
    r.found = true;
    r.accepting_step = 1;
    r.steps = {{0.1, 3, 0.02}, {0.089, 30, std::nan("")}};
    std::ostringstream out;
    write_tolerance_csv(out, r, TransmonModel());
    const auto lines = lines_of(out.str());
    ASSERT_EQ(lines.size(), 3u);
    EXPECT_EQ(lines[0], "step,sigma_rad_ns,sigma_ev,pass_count,first_fail_infidelity,accepted");
    EXPECT_EQ(lines[1].substr(0, 6), "0,0.1,");
    EXPECT_EQ(lines[1].substr(lines[1].size() - 9), ",3,0.02,0");
    EXPECT_EQ(lines[2].substr(0, 8), "1,0.089,");
    EXPECT_EQ(lines[2].substr(lines[2].size() - 6), ",30,,1");
}

TEST(CampaignSummary, CsvAndText)
{
    CampaignResult a;
    a.gate = build_gate(GateName::cnot);
    a.solutions.resize(5);
    a.converged_count = 4;
    a.failed_count = 1;
    a.average_infidelity = 0.0099;
    a.minimum_infidelity = 0.0095;
    std::ostringstream csv, text;
    write_campaign_summary_csv(csv, std::vector<CampaignResult>{a});
    EXPECT_EQ(csv.str(), "gate,runs,converged,failed,average_infidelity,minimum_infidelity\n"
                         "cnot,5,4,1,0.0099,0.0095\n");
    write_campaign_summary_text(text, std::vector<CampaignResult>{a});
    EXPECT_NE(text.str().find("9.9000e-03"), std::string::npos);
    EXPECT_NE(text.str().find("9.5000e-03"), std::string::npos);
}

TEST(ToleranceSummary, NoiseAndDistortionBounds)
{
    const TransmonModel m;
    std::vector<ToleranceReport> reports(3);
    reports[0].found = true;
    reports[0].tolerated_sigma = 0.004;
    reports[1].found = true;
    reports[1].tolerated_sigma = 0.002;
    reports[2].found = false;
    const ToleranceSummary noise = summarize_tolerance("cnot", DisturbanceKind::noise, reports, m, 10);
    EXPECT_EQ(noise.searched, 3);
    EXPECT_EQ(noise.found, 2);
    EXPECT_DOUBLE_EQ(noise.average_sigma, 0.003);
    EXPECT_DOUBLE_EQ(noise.maximum_sigma, 0.004);
    EXPECT_DOUBLE_EQ(noise.average_sigma_ev, 4.1357e-6 * 0.003);
    EXPECT_DOUBLE_EQ(noise.energy_bound_ev, half_normal_mean(4.1357e-6 * 0.003));
    const ToleranceSummary dist = summarize_tolerance("cnot", DisturbanceKind::distortion, reports, m, 10);
    EXPECT_DOUBLE_EQ(dist.energy_bound_ev, 20 * half_normal_mean(4.1357e-6 * 0.003));

    std::ostringstream csv;
    write_tolerance_summary_csv(csv, std::vector<ToleranceSummary>{noise});
    const auto lines = lines_of(csv.str());
    ASSERT_EQ(lines.size(), 2u);
    EXPECT_EQ(lines[1].substr(0, 26), "cnot,noise,3,2,0.003,0.004");

    const ToleranceSummary none = summarize_tolerance("pi8", DisturbanceKind::noise, {}, m, 10);
    EXPECT_TRUE(std::isnan(none.average_sigma));
}
