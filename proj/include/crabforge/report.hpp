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

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "crabforge/crab.hpp"
#include "crabforge/optimize.hpp"
#include "crabforge/robustness.hpp"
#include "crabforge/spectrum.hpp"

namespace crabforge {

// CSV writers: comma separated, '.' decimal, header row, LF line endings. Numbers use the
// shortest representation that round-trips, so equal inputs give byte-identical files.

std::string format_number(double value);

/// t_ns,delta1,delta2,f1,f2,g
void write_signals_csv(std::ostream& out, const ControlGrid& grid);
/// freq_ghz,amplitude
void write_spectrum_csv(std::ostream& out, const SpectrumTable& table);
/// sigma_rad_ns,sigma_ev,mean_infidelity,min_infidelity,max_infidelity
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows, const TransmonModel& model);
/// step,sigma_rad_ns,sigma_ev,pass_count,first_fail_infidelity,accepted
void write_tolerance_csv(std::ostream& out, const ToleranceReport& report, const TransmonModel& model);

/// gate,runs,converged,failed,average_infidelity,minimum_infidelity
void write_campaign_summary_csv(std::ostream& out, std::span<const CampaignResult> campaigns);
void write_campaign_summary_text(std::ostream& out, std::span<const CampaignResult> campaigns);

/// Tolerated sigma statistics for one gate and disturbance kind.
struct ToleranceSummary {
    std::string gate;
    DisturbanceKind kind = DisturbanceKind::noise;
    int searched = 0;
    int found = 0;
    double average_sigma = 0.0;
    double maximum_sigma = 0.0;
    double average_sigma_ev = 0.0;
    double maximum_sigma_ev = 0.0;
    /// half_normal_mean of the average, times 2 N_c for distortion.
    double energy_bound_ev = 0.0;
};

ToleranceSummary summarize_tolerance(const std::string& gate, DisturbanceKind kind,
                                     std::span<const ToleranceReport> reports, const TransmonModel& model,
                                     int num_components);

/// gate,kind,searched,found,average_sigma_rad_ns,maximum_sigma_rad_ns,average_sigma_ev,maximum_sigma_ev,energy_bound_ev
void write_tolerance_summary_csv(std::ostream& out, std::span<const ToleranceSummary> rows);
void write_tolerance_summary_text(std::ostream& out, std::span<const ToleranceSummary> rows);

}  // namespace crabforge
