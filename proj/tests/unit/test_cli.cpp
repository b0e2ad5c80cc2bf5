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

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const char* kConfig = R"({
  "crab": {"num_components": 2, "num_steps": 80},
  "optimizer": {"target_infidelity": 0.45, "max_cost_evaluations": 3000, "restart_limit": 2},
  "disturbance": {"realizations_required": 4, "max_steps": 60},
  "sweep": {"sigmas": [0.0, 0.001, 0.01, 0.1], "realizations": 3},
  "gates": ["phase"],
  "campaign_size": 2,
  "seed": 4
})";

const fs::path& root()
{
    static const fs::path dir = [] {
        const fs::path d = fs::temp_directory_path() / "crabforge_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args, const std::string& env = "")
{
    const std::string cmd = env + (env.empty() ? "" : " ") + "'" + CRABFORGE_CLI_PATH + "' " + args + " >>'" +
                            (root() / "cli.log").string() + "' 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
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
    return static_cast<int>(std::count(text.begin(), text.end(), '\n'));
}

fs::path write_config(const std::string& name, const std::string& text)
{
    const fs::path p = root() / name;
    std::ofstream(p) << text;
    return p;
}

std::string q(const fs::path& p)
{
    return "'" + p.string() + "'";
}

// Every CSV below the directory, keyed by relative path.
std::vector<std::pair<std::string, std::string>> csv_tree(const fs::path& dir)
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& e : fs::recursive_directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".csv")
            out.emplace_back(fs::relative(e.path(), dir).string(), slurp(e.path()));
    std::sort(out.begin(), out.end());
    return out;
}

class CliPipeline : public ::testing::Test {
protected:
    static void SetUpTestSuite()
    {
        config_ = write_config("small.json", kConfig);
        ASSERT_EQ(run("optimize --config " + q(config_) + " --jobs 1 --out " + q(root() / "a")), 0);
    }
    static fs::path config_;
};

fs::path CliPipeline::config_;

}  // namespace

TEST(Cli, UsageErrorsExitTwo)
{
    EXPECT_EQ(run(""), 2);
    EXPECT_EQ(run("frobnicate"), 2);
    EXPECT_EQ(run("optimize --gate toffoli"), 2);
    EXPECT_EQ(run("optimize --config " + q(root() / "missing.json")), 2);
    EXPECT_EQ(run("optimize --runs 0"), 2);
    EXPECT_EQ(run("emit"), 2);
    EXPECT_EQ(run("robust-noise"), 2);
    const fs::path bad = write_config("bad.json", R"({"crab": {"num_steps": 1}})");
    EXPECT_EQ(run("optimize --config " + q(bad) + " --out " + q(root() / "never")), 2);
    const fs::path garbled = write_config("garbled.json", "{not json");
    EXPECT_EQ(run("optimize --config " + q(garbled) + " --out " + q(root() / "never")), 2);
    EXPECT_EQ(run("optimize --out " + q(root() / "never"), "CRABFORGE_SEED=abc"), 2);
    EXPECT_FALSE(fs::exists(root() / "never" / "solutions"));
}

TEST(Cli, HelpExitsZero)
{
    EXPECT_EQ(run("--help"), 0);
    EXPECT_EQ(run("optimize --help"), 0);
}

TEST(Cli, RuntimeFailuresExitOne)
{
    fs::create_directories(root() / "empty");
    EXPECT_EQ(run("robust-noise --dir " + q(root() / "empty")), 1);
    EXPECT_EQ(run("report --dir " + q(root() / "empty")), 1);
    const fs::path corrupt = write_config("corrupt_solution.json", "{\"schema_version\": 1}");
    EXPECT_EQ(run("emit --solution " + q(corrupt) + " --out " + q(root() / "x")), 1);
}

TEST_F(CliPipeline, OptimizeOutputsAreConsumedDownstream)
{
    const fs::path a = root() / "a";
    ASSERT_TRUE(fs::exists(a / "summary_infidelity.csv"));
    ASSERT_TRUE(fs::exists(a / "summary_infidelity.txt"));
    const std::string summary = slurp(a / "summary_infidelity.csv");
    EXPECT_EQ(summary.substr(0, summary.find('\n')), "gate,runs,converged,failed,average_infidelity,minimum_infidelity");
    EXPECT_EQ(summary.find('\r'), std::string::npos);
    ASSERT_TRUE(fs::exists(a / "solutions" / "phase_000.json"));

    EXPECT_EQ(run("robust-noise --jobs 1 --dir " + q(a)), 0);
    EXPECT_EQ(run("robust-distort --jobs 1 --dir " + q(a)), 0);
    EXPECT_TRUE(fs::exists(a / "robust_noise" / "phase_000.csv"));
    EXPECT_TRUE(fs::exists(a / "robust_distortion" / "phase_000.csv"));
    const std::string tol = slurp(a / "tolerance_noise.csv");
    EXPECT_EQ(count_lines(tol), 2);
    EXPECT_EQ(tol.substr(tol.find('\n') + 1, 12), "phase,noise,");

    const fs::path emit = a / "emit";
    EXPECT_EQ(run("emit --what all --solution " + q(a / "solutions" / "phase_000.json") + " --out " + q(emit)), 0);
    EXPECT_EQ(count_lines(slurp(emit / "signals.csv")), 1 + 80);
    for (const char* ch : {"delta1", "delta2", "f1", "f2", "g"})
        EXPECT_EQ(count_lines(slurp(emit / (std::string("spectrum_") + ch + ".csv"))), 1 + 80 / 2 + 1) << ch;
    EXPECT_EQ(count_lines(slurp(emit / "sweep_noise.csv")), 1 + 4);
    EXPECT_EQ(count_lines(slurp(emit / "sweep_distortion.csv")), 1 + 4);

    EXPECT_EQ(run("report --dir " + q(a)), 0);
}

TEST_F(CliPipeline, RerunIsByteIdenticalAcrossJobCounts)
{
    const fs::path b = root() / "b";
    ASSERT_EQ(run("optimize --config " + q(config_) + " --jobs 2 --out " + q(b)), 0);
    EXPECT_EQ(slurp(root() / "a" / "summary_infidelity.csv"), slurp(b / "summary_infidelity.csv"));

    const fs::path c = root() / "c", d = root() / "d";
    ASSERT_EQ(run("optimize --config " + q(config_) + " --jobs 1 --out " + q(c)), 0);
    ASSERT_EQ(run("robust-noise --jobs 1 --dir " + q(c)), 0);
    ASSERT_EQ(run("emit --what all --solution " + q(c / "solutions" / "phase_001.json") + " --out " + q(c / "e")), 0);
    ASSERT_EQ(run("optimize --config " + q(config_) + " --jobs 2 --out " + q(d)), 0);
    ASSERT_EQ(run("robust-noise --jobs 2 --dir " + q(d)), 0);
    ASSERT_EQ(run("emit --what all --solution " + q(d / "solutions" / "phase_001.json") + " --out " + q(d / "e")), 0);
    const auto tc = csv_tree(c), td = csv_tree(d);
    ASSERT_FALSE(tc.empty());
    EXPECT_EQ(tc, td);
}

TEST_F(CliPipeline, SeedEnvironmentOverride)
{
    const fs::path e = root() / "env", f = root() / "flag", g = root() / "other";
    ASSERT_EQ(run("optimize --runs 1 --config " + q(config_) + " --out " + q(e), "CRABFORGE_SEED=9"), 0);
    ASSERT_EQ(run("optimize --runs 1 --seed 9 --config " + q(config_) + " --out " + q(f)), 0);
    ASSERT_EQ(run("optimize --runs 1 --config " + q(config_) + " --out " + q(g)), 0);
    const auto coeffs = [](const fs::path& dir) {
        return nlohmann::json::parse(slurp(dir / "solutions" / "phase_000.json")).at("coefficients");
    };
    EXPECT_EQ(coeffs(e), coeffs(f));
    EXPECT_NE(coeffs(e), coeffs(g));
    EXPECT_EQ(nlohmann::json::parse(slurp(e / "solutions" / "phase_000.json")).at("config").at("seed"), 9);
}

TEST_F(CliPipeline, ZeroSolutionEmitsZeroSignals)
{
    auto j = nlohmann::json::parse(slurp(root() / "a" / "solutions" / "phase_000.json"));
    for (auto& ch : j.at("coefficients"))
        for (auto& v : ch)
            v = 0.0;
    const fs::path p = write_config("zero_solution.json", j.dump());
    const fs::path out = root() / "zero";
    ASSERT_EQ(run("emit --what signals --solution " + q(p) + " --out " + q(out)), 0);
    std::istringstream in(slurp(out / "signals.csv"));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "t_ns,delta1,delta2,f1,f2,g");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        EXPECT_EQ(line.substr(line.find(',')), ",0,0,0,0,0");
    }
    EXPECT_EQ(rows, 80);
}
