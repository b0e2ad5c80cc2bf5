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

#include "crabforge/crabforge.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "crabforge/config.hpp"
#include "crabforge/errors.hpp"
#include "crabforge/optimize.hpp"
#include "crabforge/parallel.hpp"
#include "crabforge/persistence.hpp"
#include "crabforge/report.hpp"
#include "crabforge/robustness.hpp"
#include "crabforge/spectrum.hpp"

using namespace crabforge;

struct cf_config {
    RunConfig config;
    std::vector<std::string> gate_names;
};

struct cf_solution {
    SolutionFile file;
};

struct cf_campaign {
    CampaignResult result;
    std::vector<cf_solution> handles;
};

struct cf_tolerance {
    ToleranceReport report;
    std::string gate;
    TransmonModel model;
    int num_components = 0;
};

namespace {

thread_local std::string last_error;

cf_status fail(cf_status status, const std::string& message)
{
    last_error = message;
    return status;
}

cf_status status_of(Errc code)
{
    switch (code) {
    case Errc::invalid_dimension: return CF_ERR_INVALID_DIMENSION;
    case Errc::invalid_input: return CF_ERR_INVALID_ARGUMENT;
    case Errc::domain: return CF_ERR_DOMAIN;
    case Errc::io: return CF_ERR_IO;
    case Errc::parse: return CF_ERR_PARSE;
    }
    return CF_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into status codes.
template <class Body>
cf_status guarded(Body&& body)
{
    try {
        body();
        return CF_OK;
    } catch (const Error& e) {
        return fail(status_of(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(CF_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(CF_ERR_INTERNAL, e.what());
    }
}

#define CF_REQUIRE(cond)                                                             \
    do {                                                                             \
        if (!(cond))                                                                 \
            return fail(CF_ERR_INVALID_ARGUMENT, "invalid argument: " #cond);        \
    } while (0)

char* duplicate(const std::string& text)
{
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

template <std::size_t N>
void copy_into(char (&dst)[N], const std::string& src)
{
    std::snprintf(dst, N, "%s", src.c_str());
}

cf_config* make_config(RunConfig config)
{
    auto* handle = new cf_config{std::move(config), {}};
    for (auto g : handle->config.gates)
        handle->gate_names.push_back(to_string(g));
    return handle;
}

std::ofstream open_output(const char* path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(Errc::io, std::string("cannot write ") + path);
    return out;
}

void finish_output(std::ofstream& out, const char* path)
{
    out.flush();
    if (!out)
        throw Error(Errc::io, std::string("failed writing ") + path);
}

DisturbanceKind kind_of(cf_disturbance kind)
{
    switch (kind) {
    case CF_DISTURBANCE_NOISE: return DisturbanceKind::noise;
    case CF_DISTURBANCE_DISTORTION: return DisturbanceKind::distortion;
    }
    throw Error(Errc::invalid_input, "unknown disturbance kind");
}

const RunConfig& config_or_snapshot(const cf_solution* solution, const cf_config* config)
{
    return config ? config->config : solution->file.config;
}

}  // namespace

extern "C" {

const char* cf_version(void)
{
    return "1.0.0";
}

const char* cf_status_string(cf_status status)
{
    switch (status) {
    case CF_OK: return "ok";
    case CF_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CF_ERR_INVALID_DIMENSION: return "invalid dimension";
    case CF_ERR_DOMAIN: return "domain error";
    case CF_ERR_IO: return "i/o error";
    case CF_ERR_PARSE: return "parse error";
    case CF_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* cf_last_error(void)
{
    return last_error.c_str();
}

int cf_default_jobs(void)
{
    return default_jobs();
}

void cf_string_free(char* text)
{
    std::free(text);
}

cf_status cf_config_from_json(const char* json_text, cf_config** out)
{
    CF_REQUIRE(json_text && out);
    return guarded([&] {
        RunConfig config = RunConfig::from_json_text(json_text);
        config.validate();
        *out = make_config(std::move(config));
    });
}

cf_status cf_config_to_json(const cf_config* config, char** json_out)
{
    CF_REQUIRE(config && json_out);
    return guarded([&] { *json_out = duplicate(config->config.to_json_text()); });
}

void cf_config_free(cf_config* config)
{
    delete config;
}

cf_status cf_config_gate_count(const cf_config* config, int* out)
{
    CF_REQUIRE(config && out);
    *out = static_cast<int>(config->gate_names.size());
    return CF_OK;
}

cf_status cf_config_gate_name(const cf_config* config, int index, const char** out)
{
    CF_REQUIRE(config && out);
    CF_REQUIRE(index >= 0 && index < static_cast<int>(config->gate_names.size()));
    *out = config->gate_names[index].c_str();
    return CF_OK;
}

cf_status cf_config_campaign_size(const cf_config* config, int* out)
{
    CF_REQUIRE(config && out);
    *out = config->config.campaign_size;
    return CF_OK;
}

cf_status cf_config_seed(const cf_config* config, uint64_t* out)
{
    CF_REQUIRE(config && out);
    *out = config->config.seed;
    return CF_OK;
}

cf_status cf_config_output_dir(const cf_config* config, const char** out)
{
    CF_REQUIRE(config && out);
    *out = config->config.output_dir.c_str();
    return CF_OK;
}

cf_status cf_solution_load(const char* path, cf_solution** out)
{
    CF_REQUIRE(path && out);
    return guarded([&] { *out = new cf_solution{load_solution(path)}; });
}

cf_status cf_solution_save(const cf_solution* solution, const char* path)
{
    CF_REQUIRE(solution && path);
    return guarded([&] { save_solution(path, solution->file); });
}

cf_status cf_solution_to_json(const cf_solution* solution, char** json_out)
{
    CF_REQUIRE(solution && json_out);
    return guarded([&] { *json_out = duplicate(solution_to_json_text(solution->file)); });
}

void cf_solution_free(cf_solution* solution)
{
    delete solution;
}

cf_status cf_solution_get_info(const cf_solution* solution, cf_solution_info* out)
{
    CF_REQUIRE(solution && out);
    const CrabSolution& s = solution->file.solution;
    *out = cf_solution_info{};
    copy_into(out->id, s.id());
    copy_into(out->gate, to_string(s.gate.name));
    out->index = s.index;
    out->converged = s.converged ? 1 : 0;
    out->achieved_infidelity = s.achieved_infidelity;
    out->restarts = s.restarts;
    out->evaluations = s.evaluations;
    out->num_components = s.settings.num_components;
    out->num_steps = s.settings.num_steps;
    out->rng_seed = s.rng_seed;
    return CF_OK;
}

cf_status cf_solution_config(const cf_solution* solution, cf_config** out)
{
    CF_REQUIRE(solution && out);
    return guarded([&] { *out = make_config(solution->file.config); });
}

cf_status cf_solution_evaluate(const cf_solution* solution, int num_steps, double* infidelity)
{
    CF_REQUIRE(solution && infidelity);
    return guarded([&] {
        *infidelity = num_steps > 0 ? evaluate_solution(solution->file.solution, num_steps)
                                    : evaluate_solution(solution->file.solution);
    });
}

cf_status cf_campaign_run(const cf_config* config, const char* gate, int runs, int jobs, cf_progress_fn progress,
                          void* user, cf_campaign** out)
{
    CF_REQUIRE(config && gate && out);
    CF_REQUIRE(runs >= 1);
    return guarded([&] {
        const RunConfig& rc = config->config;
        const GateName name = parse_gate_name(gate);
        const std::string stamp = utc_timestamp();
        std::function<void(const CrabSolution&)> on_solution;
        if (progress) {
            on_solution = [&](const CrabSolution& s) {
                const cf_solution handle{SolutionFile{kSolutionSchemaVersion, s, rc, stamp}};
                progress(user, &handle);
            };
        }
        auto* campaign = new cf_campaign;
        campaign->result = run_campaign(rc.model.build(), rc.gate(name), rc.crab, rc.campaign_optimizer(name), runs,
                                        jobs < 1 ? default_jobs() : jobs, on_solution);
        for (const auto& s : campaign->result.solutions)
            campaign->handles.push_back(cf_solution{SolutionFile{kSolutionSchemaVersion, s, rc, stamp}});
        *out = campaign;
    });
}

cf_status cf_campaign_from_solutions(const cf_solution* const* solutions, int count, cf_campaign** out)
{
    CF_REQUIRE(solutions && out && count >= 1);
    for (int i = 0; i < count; ++i)
        CF_REQUIRE(solutions[i]);
    return guarded([&] {
        const GateName name = solutions[0]->file.solution.gate.name;
        std::vector<CrabSolution> list;
        for (int i = 0; i < count; ++i) {
            if (solutions[i]->file.solution.gate.name != name)
                throw Error(Errc::invalid_input, "cf_campaign_from_solutions needs solutions of a single gate");
            list.push_back(solutions[i]->file.solution);
        }
        auto* campaign = new cf_campaign;
        campaign->result = summarize_campaign(solutions[0]->file.solution.gate, std::move(list));
        for (int i = 0; i < count; ++i)
            campaign->handles.push_back(*solutions[i]);
        std::sort(campaign->handles.begin(), campaign->handles.end(), [](const cf_solution& a, const cf_solution& b) {
            return a.file.solution.index < b.file.solution.index;
        });
        *out = campaign;
    });
}

void cf_campaign_free(cf_campaign* campaign)
{
    delete campaign;
}

cf_status cf_campaign_size(const cf_campaign* campaign, int* out)
{
    CF_REQUIRE(campaign && out);
    *out = static_cast<int>(campaign->handles.size());
    return CF_OK;
}

cf_status cf_campaign_solution(const cf_campaign* campaign, int index, const cf_solution** out)
{
    CF_REQUIRE(campaign && out);
    CF_REQUIRE(index >= 0 && index < static_cast<int>(campaign->handles.size()));
    *out = &campaign->handles[index];
    return CF_OK;
}

cf_status cf_campaign_get_summary(const cf_campaign* campaign, cf_campaign_summary* out)
{
    CF_REQUIRE(campaign && out);
    const CampaignResult& r = campaign->result;
    *out = cf_campaign_summary{};
    copy_into(out->gate, to_string(r.gate.name));
    out->runs = static_cast<int>(r.solutions.size());
    out->converged = r.converged_count;
    out->failed = r.failed_count;
    out->average_infidelity = r.average_infidelity;
    out->minimum_infidelity = r.minimum_infidelity;
    return CF_OK;
}

cf_status cf_campaigns_write_summary(const cf_campaign* const* campaigns, int count, const char* csv_path,
                                     char** text_out)
{
    CF_REQUIRE(campaigns && count >= 0);
    for (int i = 0; i < count; ++i)
        CF_REQUIRE(campaigns[i]);
    return guarded([&] {
        std::vector<CampaignResult> results;
        for (int i = 0; i < count; ++i)
            results.push_back(campaigns[i]->result);
        if (csv_path) {
            auto out = open_output(csv_path);
            write_campaign_summary_csv(out, results);
            finish_output(out, csv_path);
        }
        if (text_out) {
            std::ostringstream text;
            write_campaign_summary_text(text, results);
            *text_out = duplicate(text.str());
        }
    });
}

cf_status cf_tolerance_search(const cf_solution* solution, const cf_config* config, cf_disturbance kind,
                              cf_tolerance** out)
{
    CF_REQUIRE(solution && out);
    return guarded([&] {
        const RunConfig& rc = config_or_snapshot(solution, config);
        const CrabSolution& s = solution->file.solution;
        const DisturbanceKind k = kind_of(kind);
        auto* handle = new cf_tolerance{tolerance_search(s, s.gate, k, rc.search_config(k, s)), to_string(s.gate.name),
                                        s.model, s.settings.num_components};
        *out = handle;
    });
}

void cf_tolerance_free(cf_tolerance* report)
{
    delete report;
}

cf_status cf_tolerance_get_info(const cf_tolerance* report, cf_tolerance_info* out)
{
    CF_REQUIRE(report && out);
    const ToleranceReport& r = report->report;
    *out = cf_tolerance_info{};
    copy_into(out->solution_id, r.solution_id);
    out->found = r.found ? 1 : 0;
    out->accepting_step = r.accepting_step;
    out->steps = static_cast<int>(r.steps.size());
    out->clean_infidelity = r.clean_infidelity;
    out->tolerated_sigma = r.tolerated_sigma;
    out->tolerated_sigma_ev = r.tolerated_sigma_ev;
    return CF_OK;
}

cf_status cf_tolerance_write_csv(const cf_tolerance* report, const char* path)
{
    CF_REQUIRE(report && path);
    return guarded([&] {
        auto out = open_output(path);
        write_tolerance_csv(out, report->report, report->model);
        finish_output(out, path);
    });
}

cf_status cf_tolerance_write_summary(const cf_tolerance* const* reports, int count, const char* csv_path,
                                     char** text_out)
{
    CF_REQUIRE(reports && count >= 0);
    for (int i = 0; i < count; ++i)
        CF_REQUIRE(reports[i]);
    return guarded([&] {
        // Group by (gate, kind) in order of first appearance.
        std::vector<std::pair<std::string, DisturbanceKind>> keys;
        for (int i = 0; i < count; ++i) {
            const auto key = std::make_pair(reports[i]->gate, reports[i]->report.kind);
            if (std::find(keys.begin(), keys.end(), key) == keys.end())
                keys.push_back(key);
        }
        std::vector<ToleranceSummary> rows;
        for (const auto& [gate, kind] : keys) {
            std::vector<ToleranceReport> group;
            const cf_tolerance* first = nullptr;
            for (int i = 0; i < count; ++i) {
                if (reports[i]->gate == gate && reports[i]->report.kind == kind) {
                    group.push_back(reports[i]->report);
                    if (!first)
                        first = reports[i];
                }
            }
            rows.push_back(summarize_tolerance(gate, kind, group, first->model, first->num_components));
        }
        if (csv_path) {
            auto out = open_output(csv_path);
            write_tolerance_summary_csv(out, rows);
            finish_output(out, csv_path);
        }
        if (text_out) {
            std::ostringstream text;
            write_tolerance_summary_text(text, rows);
            *text_out = duplicate(text.str());
        }
    });
}

cf_status cf_half_normal_mean(double sigma, double* out)
{
    CF_REQUIRE(out);
    return guarded([&] { *out = half_normal_mean(sigma); });
}

cf_status cf_distortion_energy_bound(double sigma, int n_coefficients, double* out)
{
    CF_REQUIRE(out);
    return guarded([&] { *out = distortion_energy_bound(sigma, n_coefficients); });
}

cf_status cf_emit_signals(const cf_solution* solution, const char* path)
{
    CF_REQUIRE(solution && path);
    return guarded([&] {
        const CrabSolution& s = solution->file.solution;
        const ControlGrid grid = sample_grid(s.basis, s.coefficients, s.settings.num_steps);
        auto out = open_output(path);
        write_signals_csv(out, grid);
        finish_output(out, path);
    });
}

cf_status cf_emit_spectrum(const cf_solution* solution, int channel, const char* path)
{
    CF_REQUIRE(solution && path);
    return guarded([&] {
        const CrabSolution& s = solution->file.solution;
        const ControlGrid grid = sample_grid(s.basis, s.coefficients, s.settings.num_steps);
        const SpectrumTable table = dft_spectrum(grid, channel);
        auto out = open_output(path);
        write_spectrum_csv(out, table);
        finish_output(out, path);
    });
}

cf_status cf_emit_sweep(const cf_solution* solution, const cf_config* config, cf_disturbance kind, const char* path)
{
    CF_REQUIRE(solution && path);
    return guarded([&] {
        const RunConfig& rc = config_or_snapshot(solution, config);
        const CrabSolution& s = solution->file.solution;
        const DisturbanceKind k = kind_of(kind);
        const auto rows =
            sweep_infidelity_vs_sigma(s, s.gate, k, rc.sweep_sigmas, rc.sweep_realizations, rc.sweep_seed(k, s));
        auto out = open_output(path);
        write_sweep_csv(out, rows, s.model);
        finish_output(out, path);
    });
}

const char* cf_channel_name(int channel)
{
    return channel_name(channel);
}

}  // extern "C"
