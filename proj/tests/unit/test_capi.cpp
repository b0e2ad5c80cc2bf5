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

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "crabforge/crabforge.h"

namespace fs = std::filesystem;

namespace {

const char* kSmallConfig = R"({
  "crab": {"num_components": 2, "num_steps": 80},
  "optimizer": {"target_infidelity": 0.45, "max_cost_evaluations": 3000, "restart_limit": 2},
  "disturbance": {"realizations_required": 4, "max_steps": 60},
  "sweep": {"sigmas": [0.0, 0.01, 0.1], "realizations": 3},
  "gates": ["phase"],
  "campaign_size": 2,
  "seed": 4
})";

fs::path scratch_dir()
{
    const fs::path dir = fs::temp_directory_path() / "crabforge_capi_test";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int count_lines(const std::string& text)
{
    int n = 0;
    for (char c : text)
        n += c == '\n';
    return n;
}

cf_config* small_config()
{
    cf_config* c = nullptr;
    EXPECT_EQ(cf_config_from_json(kSmallConfig, &c), CF_OK) << cf_last_error();
    return c;
}

// One shared campaign keeps the optimizer cost to a single run of the suite.
class CapiCampaign : public ::testing::Test {
protected:
    static void SetUpTestSuite()
    {
        config_ = small_config();
        ASSERT_EQ(cf_campaign_run(config_, "phase", 2, 1, nullptr, nullptr, &campaign_), CF_OK) << cf_last_error();
    }
    static void TearDownTestSuite()
    {
        cf_campaign_free(campaign_);
        cf_config_free(config_);
    }
    static const cf_solution* first()
    {
        const cf_solution* s = nullptr;
        EXPECT_EQ(cf_campaign_solution(campaign_, 0, &s), CF_OK);
        return s;
    }

    static cf_config* config_;
    static cf_campaign* campaign_;
};

cf_config* CapiCampaign::config_ = nullptr;
cf_campaign* CapiCampaign::campaign_ = nullptr;

}  // namespace

TEST(Capi, VersionAndStatusStrings)
{
    EXPECT_STREQ(cf_version(), "1.0.0");
    EXPECT_STREQ(cf_status_string(CF_OK), "ok");
    for (int s = CF_OK; s <= CF_ERR_INTERNAL; ++s)
        EXPECT_GT(std::strlen(cf_status_string(static_cast<cf_status>(s))), 0u);
    EXPECT_GE(cf_default_jobs(), 1);
    EXPECT_STREQ(cf_channel_name(0), "delta1");
    EXPECT_STREQ(cf_channel_name(4), "g");
}

TEST(Capi, NullArgumentsAreRejected)
{
    cf_config* c = nullptr;
    EXPECT_EQ(cf_config_from_json(nullptr, &c), CF_ERR_INVALID_ARGUMENT);
    EXPECT_GT(std::strlen(cf_last_error()), 0u);
    EXPECT_EQ(cf_config_from_json("{}", nullptr), CF_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(cf_solution_load(nullptr, nullptr), CF_ERR_INVALID_ARGUMENT);
    double x = 0;
    EXPECT_EQ(cf_solution_evaluate(nullptr, 0, &x), CF_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(cf_emit_signals(nullptr, "x.csv"), CF_ERR_INVALID_ARGUMENT);
    cf_config_free(nullptr);
    cf_solution_free(nullptr);
    cf_campaign_free(nullptr);
    cf_tolerance_free(nullptr);
    cf_string_free(nullptr);
}

TEST(Capi, ConfigParseAndValidationErrors)
{
    cf_config* c = nullptr;
    EXPECT_EQ(cf_config_from_json("{oops", &c), CF_ERR_PARSE);
    EXPECT_EQ(c, nullptr);
    EXPECT_EQ(cf_config_from_json(R"({"crab": {"num_steps": 1}})", &c), CF_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(cf_config_from_json(R"({"model": {"levels_per_mode": 1}})", &c), CF_ERR_INVALID_DIMENSION);
    EXPECT_NE(std::string(cf_last_error()).find("dimension"), std::string::npos);
}

TEST(Capi, ConfigAccessorsAndRoundTrip)
{
    cf_config* c = small_config();
    ASSERT_NE(c, nullptr);
    int n = 0;
    ASSERT_EQ(cf_config_gate_count(c, &n), CF_OK);
    EXPECT_EQ(n, 1);
    const char* name = nullptr;
    ASSERT_EQ(cf_config_gate_name(c, 0, &name), CF_OK);
    EXPECT_STREQ(name, "phase");
    EXPECT_EQ(cf_config_gate_name(c, 1, &name), CF_ERR_INVALID_ARGUMENT);
    ASSERT_EQ(cf_config_campaign_size(c, &n), CF_OK);
    EXPECT_EQ(n, 2);
    uint64_t seed = 0;
    ASSERT_EQ(cf_config_seed(c, &seed), CF_OK);
    EXPECT_EQ(seed, 4u);

    char* text = nullptr;
    ASSERT_EQ(cf_config_to_json(c, &text), CF_OK);
    cf_config* back = nullptr;
    ASSERT_EQ(cf_config_from_json(text, &back), CF_OK);
    char* text2 = nullptr;
    ASSERT_EQ(cf_config_to_json(back, &text2), CF_OK);
    EXPECT_STREQ(text, text2);
    cf_string_free(text);
    cf_string_free(text2);
    cf_config_free(back);
    cf_config_free(c);
}

TEST(Capi, AnalyticBounds)
{
    double v = 0;
    ASSERT_EQ(cf_half_normal_mean(1.0, &v), CF_OK);
    EXPECT_NEAR(v, std::sqrt(2.0 / M_PI), 1e-15);
    ASSERT_EQ(cf_distortion_energy_bound(1.0, 20, &v), CF_OK);
    EXPECT_NEAR(v, 20 * std::sqrt(2.0 / M_PI), 1e-13);
    EXPECT_EQ(cf_distortion_energy_bound(1.0, 0, &v), CF_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(cf_half_normal_mean(-1.0, &v), CF_ERR_INVALID_ARGUMENT);
}

TEST(Capi, MissingSolutionFileIsIoError)
{
    cf_solution* s = nullptr;
    EXPECT_EQ(cf_solution_load((scratch_dir() / "absent.json").c_str(), &s), CF_ERR_IO);
    EXPECT_EQ(s, nullptr);
}

TEST(Capi, UnknownGateIsRejected)
{
    cf_config* c = small_config();
    cf_campaign* out = nullptr;
    EXPECT_EQ(cf_campaign_run(c, "swap", 1, 1, nullptr, nullptr, &out), CF_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(cf_campaign_run(c, "phase", 0, 1, nullptr, nullptr, &out), CF_ERR_INVALID_ARGUMENT);
    cf_config_free(c);
}

TEST_F(CapiCampaign, SummaryAndInfo)
{
    int n = 0;
    ASSERT_EQ(cf_campaign_size(campaign_, &n), CF_OK);
    ASSERT_EQ(n, 2);
    cf_campaign_summary sum{};
    ASSERT_EQ(cf_campaign_get_summary(campaign_, &sum), CF_OK);
    EXPECT_STREQ(sum.gate, "phase");
    EXPECT_EQ(sum.runs, 2);
    EXPECT_EQ(sum.converged + sum.failed, 2);
    ASSERT_GE(sum.converged, 1);

    cf_solution_info info{};
    ASSERT_EQ(cf_solution_get_info(first(), &info), CF_OK);
    EXPECT_STREQ(info.id, "phase_000");
    EXPECT_STREQ(info.gate, "phase");
    EXPECT_EQ(info.num_components, 2);
    EXPECT_EQ(info.num_steps, 80);
    EXPECT_GT(info.evaluations, 0);
    EXPECT_LE(info.evaluations, 3000L * 3);

    double inf = 0;
    ASSERT_EQ(cf_solution_evaluate(first(), 0, &inf), CF_OK);
    EXPECT_DOUBLE_EQ(inf, info.achieved_infidelity);

    const cf_solution* s = nullptr;
    EXPECT_EQ(cf_campaign_solution(campaign_, 2, &s), CF_ERR_INVALID_ARGUMENT);
}

TEST_F(CapiCampaign, ProgressCallbackSeesEveryRun)
{
    std::vector<int> seen;
    auto cb = [](void* user, const cf_solution* s) {
        cf_solution_info info{};
        cf_solution_get_info(s, &info);
        static_cast<std::vector<int>*>(user)->push_back(info.index);
    };
    cf_campaign* c = nullptr;
    ASSERT_EQ(cf_campaign_run(config_, "identity", 2, 1, cb, &seen, &c), CF_OK) << cf_last_error();
    std::sort(seen.begin(), seen.end());
    EXPECT_EQ(seen, (std::vector<int>{0, 1}));
    cf_campaign_free(c);
}

TEST_F(CapiCampaign, SaveLoadPreservesSolution)
{
    const fs::path p = scratch_dir() / "saved.json";
    ASSERT_EQ(cf_solution_save(first(), p.c_str()), CF_OK);
    cf_solution* back = nullptr;
    ASSERT_EQ(cf_solution_load(p.c_str(), &back), CF_OK);
    char *a = nullptr, *b = nullptr;
    ASSERT_EQ(cf_solution_to_json(first(), &a), CF_OK);
    ASSERT_EQ(cf_solution_to_json(back, &b), CF_OK);
    EXPECT_STREQ(a, b);
    cf_string_free(a);
    cf_string_free(b);

    cf_config* snap = nullptr;
    ASSERT_EQ(cf_solution_config(back, &snap), CF_OK);
    uint64_t seed = 0;
    cf_config_seed(snap, &seed);
    EXPECT_EQ(seed, 4u);
    cf_config_free(snap);

    const cf_solution* arr[] = {back, first()};
    cf_campaign* grouped = nullptr;
    ASSERT_EQ(cf_campaign_from_solutions(arr, 2, &grouped), CF_OK);
    int n = 0;
    cf_campaign_size(grouped, &n);
    EXPECT_EQ(n, 2);
    const cf_campaign* cs[] = {grouped};
    char* text = nullptr;
    const fs::path csv = scratch_dir() / "summary.csv";
    ASSERT_EQ(cf_campaigns_write_summary(cs, 1, csv.c_str(), &text), CF_OK);
    EXPECT_NE(std::string(text).find("phase"), std::string::npos);
    EXPECT_EQ(slurp(csv).substr(0, 5), "gate,");
    cf_string_free(text);
    cf_campaign_free(grouped);
    cf_solution_free(back);
}

TEST_F(CapiCampaign, ToleranceSearchBothKinds)
{
    std::vector<cf_tolerance*> reports;
    for (cf_disturbance kind : {CF_DISTURBANCE_NOISE, CF_DISTURBANCE_DISTORTION}) {
        cf_tolerance* t = nullptr;
        ASSERT_EQ(cf_tolerance_search(first(), nullptr, kind, &t), CF_OK) << cf_last_error();
        cf_tolerance_info info{};
        ASSERT_EQ(cf_tolerance_get_info(t, &info), CF_OK);
        EXPECT_STREQ(info.solution_id, "phase_000");
        EXPECT_GT(info.steps, 0);
        if (info.found) {
            EXPECT_EQ(info.accepting_step, info.steps - 1);
            EXPECT_NEAR(info.tolerated_sigma, 0.1 * std::pow(10.0, -info.accepting_step / 20.0), 1e-15);
            EXPECT_NEAR(info.tolerated_sigma_ev, 4.1357e-6 * info.tolerated_sigma, 1e-20);
        }
        const fs::path csv = scratch_dir() / "tol.csv";
        ASSERT_EQ(cf_tolerance_write_csv(t, csv.c_str()), CF_OK);
        EXPECT_EQ(count_lines(slurp(csv)), 1 + info.steps);
        reports.push_back(t);
    }
    char* text = nullptr;
    const fs::path csv = scratch_dir() / "tol_summary.csv";
    ASSERT_EQ(cf_tolerance_write_summary(reports.data(), 2, csv.c_str(), &text), CF_OK);
    EXPECT_EQ(count_lines(slurp(csv)), 3);
    cf_string_free(text);
    for (auto* t : reports)
        cf_tolerance_free(t);
}

TEST_F(CapiCampaign, EmitFiles)
{
    const fs::path dir = scratch_dir();
    ASSERT_EQ(cf_emit_signals(first(), (dir / "signals.csv").c_str()), CF_OK);
    EXPECT_EQ(count_lines(slurp(dir / "signals.csv")), 81);
    ASSERT_EQ(cf_emit_spectrum(first(), 2, (dir / "spectrum.csv").c_str()), CF_OK);
    EXPECT_EQ(count_lines(slurp(dir / "spectrum.csv")), 1 + 41);
    EXPECT_EQ(cf_emit_spectrum(first(), 5, (dir / "bad.csv").c_str()), CF_ERR_INVALID_ARGUMENT);
    ASSERT_EQ(cf_emit_sweep(first(), nullptr, CF_DISTURBANCE_NOISE, (dir / "sweep.csv").c_str()), CF_OK);
    const std::string sweep = slurp(dir / "sweep.csv");
    EXPECT_EQ(count_lines(sweep), 4);
    EXPECT_EQ(sweep.find('\r'), std::string::npos);
    EXPECT_EQ(cf_emit_signals(first(), "/nonexistent_dir_xyz/signals.csv"), CF_ERR_IO);
}
