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

// Command-line driver for the crabforge library.
//
//   crabforge optimize       --gate cnot|hadamard|phase|pi8|all [--runs N] [--out DIR]
//   crabforge robust-noise   --dir DIR
//   crabforge robust-distort --dir DIR
//   crabforge emit           --solution FILE --what signals|spectrum|sweep-noise|sweep-distortion|all --out DIR
//   crabforge report         --dir DIR
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or config error.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "crabforge/crabforge.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct Failure {
    int exit_code;
    std::string message;
};

[[noreturn]] void raise(int code, std::string message)
{
    throw Failure{code, std::move(message)};
}

void check(cf_status status, const std::string& what, int code = kExitRuntime)
{
    if (status != CF_OK)
        raise(code, what + ": " + cf_last_error());
}

std::string take_string(char* text)
{
    std::string out = text ? text : "";
    cf_string_free(text);
    return out;
}

template <class T, void (*Free)(T*)>
struct Handle {
    T* ptr = nullptr;
    Handle() = default;
    explicit Handle(T* p) : ptr(p) {}
    Handle(Handle&& o) noexcept : ptr(o.ptr) { o.ptr = nullptr; }
    Handle& operator=(Handle&& o) noexcept
    {
        std::swap(ptr, o.ptr);
        return *this;
    }
    ~Handle()
    {
        if (ptr)
            Free(ptr);
    }
    T* get() const { return ptr; }
};

using ConfigHandle = Handle<cf_config, cf_config_free>;
using SolutionHandle = Handle<cf_solution, cf_solution_free>;
using CampaignHandle = Handle<cf_campaign, cf_campaign_free>;
using ToleranceHandle = Handle<cf_tolerance, cf_tolerance_free>;

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        raise(kExitUsage, "cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::optional<std::uint64_t> env_seed()
{
    const char* text = std::getenv("CRABFORGE_SEED");
    if (!text || !*text)
        return std::nullopt;
    char* end = nullptr;
    errno = 0;
    const unsigned long long value = std::strtoull(text, &end, 10);
    if (errno != 0 || *end != '\0' || text[0] == '-')
        raise(kExitUsage, std::string("CRABFORGE_SEED is not an unsigned integer: ") + text);
    return value;
}

// Base seed precedence: --seed flag, then CRABFORGE_SEED, then the config file.
std::optional<std::uint64_t> seed_override(const std::optional<std::uint64_t>& flag)
{
    return flag ? flag : env_seed();
}

json parse_json(const std::string& text, const std::string& origin)
{
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        raise(kExitUsage, origin + " is not valid JSON: " + e.what());
    }
}

ConfigHandle build_config(const json& document)
{
    cf_config* config = nullptr;
    check(cf_config_from_json(document.dump().c_str(), &config), "invalid config", kExitUsage);
    return ConfigHandle(config);
}

json config_document(const std::string& path)
{
    if (path.empty())
        return json::object();
    json doc = parse_json(read_file(path), "config file " + path);
    if (!doc.is_object())
        raise(kExitUsage, "config file " + path + " must hold a JSON object");
    return doc;
}

json solution_config_document(const cf_solution* solution)
{
    cf_config* snapshot = nullptr;
    check(cf_solution_config(solution, &snapshot), "cannot read solution config");
    ConfigHandle owner(snapshot);
    char* text = nullptr;
    check(cf_config_to_json(snapshot, &text), "cannot serialize config");
    return json::parse(take_string(text));
}

std::vector<fs::path> solution_files(const fs::path& dir)
{
    std::vector<fs::path> files;
    const fs::path root = dir / "solutions";
    std::error_code ec;
    if (fs::is_directory(root, ec)) {
        for (const auto& entry : fs::directory_iterator(root, ec))
            if (entry.is_regular_file() && entry.path().extension() == ".json")
                files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

struct LoadedSolutions {
    std::vector<SolutionHandle> solutions;
    int warnings = 0;
};

LoadedSolutions load_solutions(const fs::path& dir)
{
    LoadedSolutions out;
    for (const auto& path : solution_files(dir)) {
        cf_solution* s = nullptr;
        if (cf_solution_load(path.string().c_str(), &s) != CF_OK) {
            std::cerr << "warning: skipping " << path.string() << ": " << cf_last_error() << '\n';
            ++out.warnings;
            continue;
        }
        out.solutions.emplace_back(s);
    }
    if (out.solutions.empty())
        raise(kExitRuntime, "no solutions found in " + (dir / "solutions").string());
    return out;
}

void make_directories(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        raise(kExitRuntime, "cannot create directory " + dir.string() + ": " + ec.message());
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out)
        raise(kExitRuntime, "cannot write " + path.string());
}

int resolve_jobs(int jobs)
{
    return jobs > 0 ? jobs : cf_default_jobs();
}

// ---- optimize --------------------------------------------------------------------------

struct OptimizeOptions {
    std::string config_path;
    std::string gate = "all";
    std::optional<int> runs;
    std::optional<std::uint64_t> seed;
    std::string out;
    int jobs = 0;
    bool polish = false;
};

void on_run_finished(void* user, const cf_solution* solution)
{
    auto* lock = static_cast<std::mutex*>(user);
    cf_solution_info info{};
    if (cf_solution_get_info(solution, &info) != CF_OK)
        return;
    std::lock_guard<std::mutex> guard(*lock);
    std::fprintf(stderr, "%s: infidelity %.4e after %ld evaluations%s\n", info.id, info.achieved_infidelity,
                 info.evaluations, info.converged ? "" : " (not converged)");
}

int cmd_optimize(const OptimizeOptions& opt)
{
    json doc = config_document(opt.config_path);
    if (opt.gate != "all")
        doc["gates"] = json::array({opt.gate});
    if (opt.runs)
        doc["campaign_size"] = *opt.runs;
    if (auto seed = seed_override(opt.seed))
        doc["seed"] = *seed;
    if (!opt.out.empty())
        doc["output_dir"] = opt.out;
    if (opt.polish) {
        if (!doc.contains("optimizer") || !doc["optimizer"].is_object())
            doc["optimizer"] = json::object();
        doc["optimizer"]["polish"] = true;
    }
    ConfigHandle config = build_config(doc);

    const char* out_dir = nullptr;
    int runs = 0, gate_count = 0;
    check(cf_config_output_dir(config.get(), &out_dir), "config");
    check(cf_config_campaign_size(config.get(), &runs), "config");
    check(cf_config_gate_count(config.get(), &gate_count), "config");
    const fs::path root(out_dir);
    make_directories(root / "solutions");

    std::mutex progress_lock;
    std::vector<CampaignHandle> campaigns;
    int warnings = 0;
    for (int g = 0; g < gate_count; ++g) {
        const char* gate = nullptr;
        check(cf_config_gate_name(config.get(), g, &gate), "config");
        std::fprintf(stderr, "optimizing %s: %d runs\n", gate, runs);
        cf_campaign* campaign = nullptr;
        check(cf_campaign_run(config.get(), gate, runs, resolve_jobs(opt.jobs), on_run_finished, &progress_lock,
                              &campaign),
              std::string("campaign for ") + gate + " failed");
        campaigns.emplace_back(campaign);

        int size = 0;
        check(cf_campaign_size(campaign, &size), "campaign");
        for (int i = 0; i < size; ++i) {
            const cf_solution* s = nullptr;
            cf_solution_info info{};
            check(cf_campaign_solution(campaign, i, &s), "campaign");
            check(cf_solution_get_info(s, &info), "campaign");
            if (!info.converged) {
                std::cerr << "warning: " << info.id << " did not converge (infidelity " << info.achieved_infidelity
                          << ")\n";
                ++warnings;
                continue;
            }
            const fs::path file = root / "solutions" / (std::string(info.id) + ".json");
            check(cf_solution_save(s, file.string().c_str()), "cannot save solution");
        }
    }

    std::vector<const cf_campaign*> list;
    for (const auto& c : campaigns)
        list.push_back(c.get());
    char* text = nullptr;
    const fs::path csv = root / "summary_infidelity.csv";
    check(cf_campaigns_write_summary(list.data(), static_cast<int>(list.size()), csv.string().c_str(), &text),
          "cannot write summary");
    const std::string summary = take_string(text);
    write_text(root / "summary_infidelity.txt", summary);
    std::cout << summary;
    if (warnings > 0)
        std::cerr << warnings << " warning(s): non-converged runs are not saved\n";
    return kExitOk;
}

// ---- robust-noise / robust-distort -----------------------------------------------------

struct RobustOptions {
    std::string dir;
    std::string config_path;
    std::optional<std::uint64_t> seed;
    int jobs = 0;
};

// Config used for one solution: the --config file when given, else the solution's own
// snapshot. A seed override is applied on top of either.
std::optional<ConfigHandle> robust_config(const RobustOptions& opt, const cf_solution* solution)
{
    const auto seed = seed_override(opt.seed);
    if (opt.config_path.empty() && !seed)
        return std::nullopt;
    json doc = opt.config_path.empty() ? solution_config_document(solution) : config_document(opt.config_path);
    if (seed)
        doc["seed"] = *seed;
    return build_config(doc);
}

int cmd_robust(const RobustOptions& opt, cf_disturbance kind)
{
    const std::string kind_name = kind == CF_DISTURBANCE_NOISE ? "noise" : "distortion";
    const fs::path root(opt.dir);
    LoadedSolutions loaded = load_solutions(root);
    const fs::path report_dir = root / ("robust_" + kind_name);
    make_directories(report_dir);

    // Configs are resolved up front so usage errors surface before any work starts.
    std::vector<std::optional<ConfigHandle>> configs;
    for (const auto& s : loaded.solutions)
        configs.push_back(robust_config(opt, s.get()));

    const std::size_t count = loaded.solutions.size();
    std::vector<ToleranceHandle> reports(count);
    std::vector<std::string> errors(count);
    std::atomic<std::size_t> next{0};
    std::mutex print_lock;
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            const cf_solution* s = loaded.solutions[i].get();
            cf_solution_info info{};
            cf_solution_get_info(s, &info);
            cf_tolerance* report = nullptr;
            const cf_config* config = configs[i] ? configs[i]->get() : nullptr;
            if (cf_tolerance_search(s, config, kind, &report) != CF_OK) {
                errors[i] = std::string(info.id) + ": " + cf_last_error();
                continue;
            }
            reports[i] = ToleranceHandle(report);
            cf_tolerance_info t{};
            cf_tolerance_get_info(report, &t);
            std::lock_guard<std::mutex> guard(print_lock);
            if (t.found)
                std::fprintf(stderr, "%s: tolerated %s sigma %.4e rad/ns (%.4e eV)\n", info.id, kind_name.c_str(),
                             t.tolerated_sigma, t.tolerated_sigma_ev);
            else
                std::fprintf(stderr, "%s: no tolerated %s sigma within the search range\n", info.id,
                             kind_name.c_str());
        }
    };
    std::vector<std::thread> pool;
    const int jobs = std::min<int>(resolve_jobs(opt.jobs), static_cast<int>(count));
    for (int j = 0; j < jobs; ++j)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();

    int warnings = loaded.warnings;
    std::vector<const cf_tolerance*> list;
    for (std::size_t i = 0; i < count; ++i) {
        if (!reports[i].get()) {
            std::cerr << "warning: skipping " << errors[i] << '\n';
            ++warnings;
            continue;
        }
        cf_tolerance_info t{};
        check(cf_tolerance_get_info(reports[i].get(), &t), "report");
        const fs::path csv = report_dir / (std::string(t.solution_id) + ".csv");
        check(cf_tolerance_write_csv(reports[i].get(), csv.string().c_str()), "cannot write report");
        list.push_back(reports[i].get());
    }
    if (list.empty())
        raise(kExitRuntime, "no solution could be searched");

    char* text = nullptr;
    const fs::path csv = root / ("tolerance_" + kind_name + ".csv");
    check(cf_tolerance_write_summary(list.data(), static_cast<int>(list.size()), csv.string().c_str(), &text),
          "cannot write summary");
    const std::string summary = take_string(text);
    write_text(root / ("tolerance_" + kind_name + ".txt"), summary);
    std::cout << summary;
    if (warnings > 0)
        std::cerr << warnings << " warning(s)\n";
    return kExitOk;
}

// ---- emit ------------------------------------------------------------------------------

struct EmitOptions {
    std::string solution;
    std::string what = "all";
    std::string out = ".";
    std::string config_path;
    std::optional<std::uint64_t> seed;
};

int cmd_emit(const EmitOptions& opt)
{
    cf_solution* raw = nullptr;
    check(cf_solution_load(opt.solution.c_str(), &raw), "cannot load solution");
    SolutionHandle solution(raw);
    const fs::path root(opt.out);
    make_directories(root);

    RobustOptions as_robust;
    as_robust.config_path = opt.config_path;
    as_robust.seed = opt.seed;
    const std::optional<ConfigHandle> config = robust_config(as_robust, solution.get());
    const cf_config* cfg = config ? config->get() : nullptr;

    const bool all = opt.what == "all";
    if (all || opt.what == "signals")
        check(cf_emit_signals(solution.get(), (root / "signals.csv").string().c_str()), "cannot emit signals");
    if (all || opt.what == "spectrum") {
        for (int c = 0; c < 5; ++c) {
            const fs::path path = root / (std::string("spectrum_") + cf_channel_name(c) + ".csv");
            check(cf_emit_spectrum(solution.get(), c, path.string().c_str()), "cannot emit spectrum");
        }
    }
    if (all || opt.what == "sweep-noise")
        check(cf_emit_sweep(solution.get(), cfg, CF_DISTURBANCE_NOISE, (root / "sweep_noise.csv").string().c_str()),
              "cannot emit noise sweep");
    if (all || opt.what == "sweep-distortion")
        check(cf_emit_sweep(solution.get(), cfg, CF_DISTURBANCE_DISTORTION,
                            (root / "sweep_distortion.csv").string().c_str()),
              "cannot emit distortion sweep");
    return kExitOk;
}

// ---- report ----------------------------------------------------------------------------

int cmd_report(const std::string& dir)
{
    const fs::path root(dir);
    LoadedSolutions loaded = load_solutions(root);

    // Group by gate in the canonical order.
    std::vector<CampaignHandle> campaigns;
    for (const char* gate : {"cnot", "hadamard", "phase", "pi8", "identity"}) {
        std::vector<const cf_solution*> group;
        for (const auto& s : loaded.solutions) {
            cf_solution_info info{};
            check(cf_solution_get_info(s.get(), &info), "solution");
            if (std::string(info.gate) == gate)
                group.push_back(s.get());
        }
        if (group.empty())
            continue;
        cf_campaign* c = nullptr;
        check(cf_campaign_from_solutions(group.data(), static_cast<int>(group.size()), &c), "cannot group solutions");
        campaigns.emplace_back(c);
    }
    std::vector<const cf_campaign*> list;
    for (const auto& c : campaigns)
        list.push_back(c.get());
    char* text = nullptr;
    check(cf_campaigns_write_summary(list.data(), static_cast<int>(list.size()), nullptr, &text),
          "cannot summarize");
    std::cout << "Stored solutions\n" << take_string(text);

    for (const char* kind : {"noise", "distortion"}) {
        const fs::path table = root / (std::string("tolerance_") + kind + ".txt");
        std::error_code ec;
        if (!fs::exists(table, ec))
            continue;
        std::ifstream in(table, std::ios::binary);
        std::cout << "\nTolerated " << kind << " sigma\n" << in.rdbuf();
    }
    if (loaded.warnings > 0)
        std::cerr << loaded.warnings << " warning(s)\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"crabforge: CRAB pulse synthesis and robustness campaigns for two coupled transmons"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(cf_version()));

    const std::vector<std::string> gates{"cnot", "hadamard", "phase", "pi8", "all"};
    const std::vector<std::string> whats{"signals", "spectrum", "sweep-noise", "sweep-distortion", "all"};

    OptimizeOptions opt;
    auto* optimize = app.add_subcommand("optimize", "run optimization campaigns and write solutions and summary");
    optimize->add_option("--config", opt.config_path, "JSON config file")->check(CLI::ExistingFile);
    optimize->add_option("--gate", opt.gate, "gate to optimize")->check(CLI::IsMember(gates))->capture_default_str();
    optimize->add_option("--runs", opt.runs, "runs per gate (overrides campaign_size)")->check(CLI::PositiveNumber);
    optimize->add_option("--seed", opt.seed, "base seed (overrides CRABFORGE_SEED and config)");
    optimize->add_option("--out", opt.out, "output directory (overrides output_dir)");
    optimize->add_option("--jobs", opt.jobs, "worker threads (default: machine parallelism)")
        ->check(CLI::NonNegativeNumber);
    optimize->add_flag("--polish", opt.polish, "keep optimizing past the target until the simplex collapses");

    RobustOptions robust;
    auto add_robust = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--dir", robust.dir, "output directory of an optimize run")->required();
        sub->add_option("--config", robust.config_path, "JSON config (default: each solution's snapshot)")
            ->check(CLI::ExistingFile);
        sub->add_option("--seed", robust.seed, "base seed (overrides CRABFORGE_SEED and config)");
        sub->add_option("--jobs", robust.jobs, "worker threads (default: machine parallelism)")
            ->check(CLI::NonNegativeNumber);
        return sub;
    };
    auto* robust_noise = add_robust("robust-noise", "tolerated white-noise amplitude per stored solution");
    auto* robust_distort = add_robust("robust-distort", "tolerated coefficient distortion per stored solution");

    EmitOptions emit;
    auto* emit_cmd = app.add_subcommand("emit", "write plot data for one solution");
    emit_cmd->add_option("--solution", emit.solution, "solution JSON file")->required();
    emit_cmd->add_option("--what", emit.what, "which data")->check(CLI::IsMember(whats))->capture_default_str();
    emit_cmd->add_option("--out", emit.out, "output directory")->capture_default_str();
    emit_cmd->add_option("--config", emit.config_path, "JSON config for sweeps (default: solution snapshot)")
        ->check(CLI::ExistingFile);
    emit_cmd->add_option("--seed", emit.seed, "base seed for sweeps");

    std::string report_dir;
    auto* report = app.add_subcommand("report", "print summaries of an output directory");
    report->add_option("--dir", report_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (optimize->parsed())
            return cmd_optimize(opt);
        if (robust_noise->parsed())
            return cmd_robust(robust, CF_DISTURBANCE_NOISE);
        if (robust_distort->parsed())
            return cmd_robust(robust, CF_DISTURBANCE_DISTORTION);
        if (emit_cmd->parsed())
            return cmd_emit(emit);
        if (report->parsed())
            return cmd_report(report_dir);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << '\n';
        return f.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}
