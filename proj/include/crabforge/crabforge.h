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

/* C interface to the crabforge library.
 *
 * All objects are opaque handles created by the library and released with the matching
 * *_free function. Every fallible call returns a cf_status; on failure a description is
 * available from cf_last_error() on the calling thread until the next failing call there.
 * Handles are immutable after creation and may be shared across threads.
 */
#ifndef CRABFORGE_H
#define CRABFORGE_H

#include <stddef.h>
#include <stdint.h>

#if defined(CRABFORGE_BUILDING_LIBRARY)
#define CRABFORGE_API __attribute__((visibility("default")))
#else
#define CRABFORGE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cf_status {
    CF_OK = 0,
    CF_ERR_INVALID_ARGUMENT = 1,
    CF_ERR_INVALID_DIMENSION = 2,
    CF_ERR_DOMAIN = 3,
    CF_ERR_IO = 4,
    CF_ERR_PARSE = 5,
    CF_ERR_INTERNAL = 6
} cf_status;

typedef enum cf_disturbance {
    CF_DISTURBANCE_NOISE = 0,
    CF_DISTURBANCE_DISTORTION = 1
} cf_disturbance;

typedef struct cf_config cf_config;
typedef struct cf_solution cf_solution;
typedef struct cf_campaign cf_campaign;
typedef struct cf_tolerance cf_tolerance;

CRABFORGE_API const char* cf_version(void);
CRABFORGE_API const char* cf_status_string(cf_status status);
CRABFORGE_API const char* cf_last_error(void);
/* Machine parallelism, at least 1. */
CRABFORGE_API int cf_default_jobs(void);
/* Releases strings returned through char** out-parameters. */
CRABFORGE_API void cf_string_free(char* text);

/* ---- run configuration ------------------------------------------------------------ */

/* Parses and validates a JSON config; missing keys take defaults, unknown keys fail. */
CRABFORGE_API cf_status cf_config_from_json(const char* json_text, cf_config** out);
CRABFORGE_API cf_status cf_config_to_json(const cf_config* config, char** json_out);
CRABFORGE_API void cf_config_free(cf_config* config);

CRABFORGE_API cf_status cf_config_gate_count(const cf_config* config, int* out);
/* Borrowed string, valid while the config lives. */
CRABFORGE_API cf_status cf_config_gate_name(const cf_config* config, int index, const char** out);
CRABFORGE_API cf_status cf_config_campaign_size(const cf_config* config, int* out);
CRABFORGE_API cf_status cf_config_seed(const cf_config* config, uint64_t* out);
CRABFORGE_API cf_status cf_config_output_dir(const cf_config* config, const char** out);

/* ---- solutions -------------------------------------------------------------------- */

typedef struct cf_solution_info {
    char id[64];
    char gate[16];
    int index;
    int converged;
    double achieved_infidelity;
    int restarts;
    long evaluations;
    int num_components;
    int num_steps;
    uint64_t rng_seed;
} cf_solution_info;

CRABFORGE_API cf_status cf_solution_load(const char* path, cf_solution** out);
/* Writes the solution together with the config snapshot it was produced under. */
CRABFORGE_API cf_status cf_solution_save(const cf_solution* solution, const char* path);
CRABFORGE_API cf_status cf_solution_to_json(const cf_solution* solution, char** json_out);
CRABFORGE_API void cf_solution_free(cf_solution* solution);

CRABFORGE_API cf_status cf_solution_get_info(const cf_solution* solution, cf_solution_info* out);
/* Copy of the config snapshot stored with the solution. */
CRABFORGE_API cf_status cf_solution_config(const cf_solution* solution, cf_config** out);
/* Re-evaluates the infidelity; num_steps <= 0 uses the stored discretization. */
CRABFORGE_API cf_status cf_solution_evaluate(const cf_solution* solution, int num_steps, double* infidelity);

/* ---- optimization campaigns ------------------------------------------------------- */

typedef void (*cf_progress_fn)(void* user, const cf_solution* finished);

typedef struct cf_campaign_summary {
    char gate[16];
    int runs;
    int converged;
    int failed;
    double average_infidelity; /* NaN when nothing converged */
    double minimum_infidelity;
} cf_campaign_summary;

/* Runs `runs` independent optimizations of `gate` (cnot | hadamard | phase | pi8 | identity).
 * `progress` may be NULL; it is called once per finished run, serialized. */
CRABFORGE_API cf_status cf_campaign_run(const cf_config* config, const char* gate, int runs, int jobs,
                                        cf_progress_fn progress, void* user, cf_campaign** out);
/* Groups already-optimized solutions (all of one gate) into a campaign for reporting. */
CRABFORGE_API cf_status cf_campaign_from_solutions(const cf_solution* const* solutions, int count,
                                                   cf_campaign** out);
CRABFORGE_API void cf_campaign_free(cf_campaign* campaign);

CRABFORGE_API cf_status cf_campaign_size(const cf_campaign* campaign, int* out);
/* Borrowed handle, valid while the campaign lives. */
CRABFORGE_API cf_status cf_campaign_solution(const cf_campaign* campaign, int index, const cf_solution** out);
CRABFORGE_API cf_status cf_campaign_get_summary(const cf_campaign* campaign, cf_campaign_summary* out);
/* Table of average/minimum infidelity per gate, as CSV (csv_path may be NULL) and text. */
CRABFORGE_API cf_status cf_campaigns_write_summary(const cf_campaign* const* campaigns, int count,
                                                   const char* csv_path, char** text_out);

/* ---- robustness ------------------------------------------------------------------- */

typedef struct cf_tolerance_info {
    char solution_id[64];
    int found;
    int accepting_step;
    int steps;
    double clean_infidelity;
    double tolerated_sigma;    /* rad/ns */
    double tolerated_sigma_ev;
} cf_tolerance_info;

/* dB-stepped tolerance search under the solution's gate with `config`'s disturbance settings
 * (NULL uses the solution's own config snapshot). */
CRABFORGE_API cf_status cf_tolerance_search(const cf_solution* solution, const cf_config* config,
                                            cf_disturbance kind, cf_tolerance** out);
CRABFORGE_API void cf_tolerance_free(cf_tolerance* report);
CRABFORGE_API cf_status cf_tolerance_get_info(const cf_tolerance* report, cf_tolerance_info* out);
CRABFORGE_API cf_status cf_tolerance_write_csv(const cf_tolerance* report, const char* path);
/* Per-gate average and maximum tolerated sigma, grouped by gate in order of appearance. */
CRABFORGE_API cf_status cf_tolerance_write_summary(const cf_tolerance* const* reports, int count,
                                                   const char* csv_path, char** text_out);

CRABFORGE_API cf_status cf_half_normal_mean(double sigma, double* out);
CRABFORGE_API cf_status cf_distortion_energy_bound(double sigma, int n_coefficients, double* out);

/* ---- plot data -------------------------------------------------------------------- */

/* t_ns plus one column per channel. */
CRABFORGE_API cf_status cf_emit_signals(const cf_solution* solution, const char* path);
/* One-sided amplitude spectrum of channel 0..4 (delta1, delta2, f1, f2, g). */
CRABFORGE_API cf_status cf_emit_spectrum(const cf_solution* solution, int channel, const char* path);
/* Infidelity statistics over the config's sweep sigmas (NULL config: solution snapshot). */
CRABFORGE_API cf_status cf_emit_sweep(const cf_solution* solution, const cf_config* config, cf_disturbance kind,
                                      const char* path);
CRABFORGE_API const char* cf_channel_name(int channel);

#ifdef __cplusplus
}
#endif

#endif /* CRABFORGE_H */
