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

#include "crabforge/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace crabforge {

std::string format_number(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

void write_signals_csv(std::ostream& out, const ControlGrid& grid)
{
    out << "t_ns";
    for (int c = 0; c < kNumChannels; ++c)
        out << ',' << channel_name(c);
    out << '\n';
    for (int m = 0; m < grid.num_steps; ++m) {
        out << format_number(grid.time(m));
        for (int c = 0; c < kNumChannels; ++c)
            out << ',' << format_number(grid.values(c, m));
        out << '\n';
    }
}

void write_spectrum_csv(std::ostream& out, const SpectrumTable& table)
{
    out << "freq_ghz,amplitude\n";
    for (std::size_t k = 0; k < table.amplitudes.size(); ++k)
        out << format_number(table.frequencies_ghz[k]) << ',' << format_number(table.amplitudes[k]) << '\n';
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows, const TransmonModel& model)
{
    out << "sigma_rad_ns,sigma_ev,mean_infidelity,min_infidelity,max_infidelity\n";
    for (const auto& r : rows)
        out << format_number(r.sigma) << ',' << format_number(model.to_ev(r.sigma)) << ','
            << format_number(r.mean_infidelity) << ',' << format_number(r.min_infidelity) << ','
            << format_number(r.max_infidelity) << '\n';
}

void write_tolerance_csv(std::ostream& out, const ToleranceReport& report, const TransmonModel& model)
{
    out << "step,sigma_rad_ns,sigma_ev,pass_count,first_fail_infidelity,accepted\n";
    for (std::size_t n = 0; n < report.steps.size(); ++n) {
        const auto& s = report.steps[n];
        const bool accepted = report.found && static_cast<int>(n) == report.accepting_step;
        out << n << ',' << format_number(s.sigma) << ',' << format_number(model.to_ev(s.sigma)) << ','
            << s.pass_count << ',' << (std::isnan(s.first_fail_infidelity) ? "" : format_number(s.first_fail_infidelity))
            << ',' << (accepted ? 1 : 0) << '\n';
    }
}

void write_campaign_summary_csv(std::ostream& out, std::span<const CampaignResult> campaigns)
{
    out << "gate,runs,converged,failed,average_infidelity,minimum_infidelity\n";
    for (const auto& c : campaigns)
        out << to_string(c.gate.name) << ',' << c.solutions.size() << ',' << c.converged_count << ','
            << c.failed_count << ',' << format_number(c.average_infidelity) << ','
            << format_number(c.minimum_infidelity) << '\n';
}

void write_campaign_summary_text(std::ostream& out, std::span<const CampaignResult> campaigns)
{
    char line[160];
    std::snprintf(line, sizeof line, "%-10s %6s %10s %20s %20s\n", "gate", "runs", "converged", "average infidelity",
                  "minimum infidelity");
    out << line;
    for (const auto& c : campaigns) {
        std::snprintf(line, sizeof line, "%-10s %6zu %10d %20.4e %20.4e\n", to_string(c.gate.name).c_str(),
                      c.solutions.size(), c.converged_count, c.average_infidelity, c.minimum_infidelity);
        out << line;
    }
}

ToleranceSummary summarize_tolerance(const std::string& gate, DisturbanceKind kind,
                                     std::span<const ToleranceReport> reports, const TransmonModel& model,
                                     int num_components)
{
    ToleranceSummary s;
    s.gate = gate;
    s.kind = kind;
    s.searched = static_cast<int>(reports.size());
    double sum = 0.0;
    for (const auto& r : reports) {
        if (!r.found)
            continue;
        ++s.found;
        sum += r.tolerated_sigma;
        s.maximum_sigma = std::max(s.maximum_sigma, r.tolerated_sigma);
    }
    if (s.found == 0) {
        s.average_sigma = s.maximum_sigma = std::nan("");
        s.average_sigma_ev = s.maximum_sigma_ev = s.energy_bound_ev = std::nan("");
        return s;
    }
    s.average_sigma = sum / s.found;
    s.average_sigma_ev = model.to_ev(s.average_sigma);
    s.maximum_sigma_ev = model.to_ev(s.maximum_sigma);
    s.energy_bound_ev = kind == DisturbanceKind::noise ? half_normal_mean(s.average_sigma_ev)
                                                       : distortion_energy_bound(s.average_sigma_ev, 2 * num_components);
    return s;
}

void write_tolerance_summary_csv(std::ostream& out, std::span<const ToleranceSummary> rows)
{
    out << "gate,kind,searched,found,average_sigma_rad_ns,maximum_sigma_rad_ns,average_sigma_ev,maximum_sigma_ev,"
           "energy_bound_ev\n";
    for (const auto& r : rows)
        out << r.gate << ',' << to_string(r.kind) << ',' << r.searched << ',' << r.found << ','
            << format_number(r.average_sigma) << ',' << format_number(r.maximum_sigma) << ','
            << format_number(r.average_sigma_ev) << ',' << format_number(r.maximum_sigma_ev) << ','
            << format_number(r.energy_bound_ev) << '\n';
}

void write_tolerance_summary_text(std::ostream& out, std::span<const ToleranceSummary> rows)
{
    char line[200];
    std::snprintf(line, sizeof line, "%-10s %-10s %6s %14s %14s %14s %14s %14s\n", "gate", "kind", "found",
                  "avg [rad/ns]", "max [rad/ns]", "avg [eV]", "max [eV]", "bound [eV]");
    out << line;
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%-10s %-10s %3d/%-2d %14.4e %14.4e %14.4e %14.4e %14.4e\n", r.gate.c_str(),
                      to_string(r.kind).c_str(), r.found, r.searched, r.average_sigma, r.maximum_sigma,
                      r.average_sigma_ev, r.maximum_sigma_ev, r.energy_bound_ev);
        out << line;
    }
}

}  // namespace crabforge
