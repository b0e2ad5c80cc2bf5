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

#include "crabforge/persistence.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "crabforge/errors.hpp"
#include "json.hpp"

namespace crabforge {

using nlohmann::json;

namespace {

template <class T>
T field(const json& j, const char* key)
{
    auto it = j.find(key);
    if (it == j.end())
        throw Error(Errc::parse, std::string("solution file is missing '") + key + "'");
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        throw Error(Errc::parse, std::string("solution file field '") + key + "' has the wrong type");
    }
}

template <class Parse>
auto parse_field(const json& j, const char* key, Parse parse)
{
    try {
        return parse(field<std::string>(j, key));
    } catch (const Error& e) {
        if (e.code() == Errc::parse)
            throw;
        throw Error(Errc::parse, std::string("solution file field '") + key + "': " + e.what());
    }
}

json channels_to_json(const std::array<std::vector<double>, kNumChannels>& channels)
{
    json out = json::array();
    for (const auto& ch : channels)
        out.push_back(ch);
    return out;
}

std::array<std::vector<double>, kNumChannels> channels_from_json(const json& j, const char* key)
{
    const auto rows = field<std::vector<std::vector<double>>>(j, key);
    if (rows.size() != kNumChannels)
        throw Error(Errc::parse, std::string("solution file field '") + key + "' must have 5 channel rows");
    std::array<std::vector<double>, kNumChannels> out;
    for (int c = 0; c < kNumChannels; ++c)
        out[c] = rows[c];
    return out;
}

}  // namespace

std::string solution_to_json_text(const SolutionFile& file)
{
    const CrabSolution& s = file.solution;
    const ModelConfig model = ModelConfig::of(s.model);
    json j;
    j["schema_version"] = file.schema_version;
    j["solution_id"] = s.id();
    j["index"] = s.index;
    j["gate"] = {{"name", to_string(s.gate.name)},
                 {"target_qubit", s.gate.target_qubit},
                 {"control_qubit", s.gate.control_qubit}};
    j["model"] = {{"levels_per_mode", model.levels_per_mode},
                  {"anharmonicity_ghz", model.anharmonicity_ghz},
                  {"gate_time_ns", model.gate_time_ns},
                  {"frequency_convention", to_string(model.convention)}};
    j["settings"] = {{"num_components", s.settings.num_components},
                     {"randomization", to_string(s.settings.randomization)},
                     {"num_steps", s.settings.num_steps},
                     {"fidelity_form", to_string(s.settings.fidelity_form)},
                     {"amplitude_clamp",
                      s.settings.amplitude_clamp ? json(*s.settings.amplitude_clamp) : json(nullptr)}};
    j["basis"] = {{"num_components", s.basis.num_components},
                  {"randomization", to_string(s.basis.randomization)},
                  {"seed", s.basis.seed},
                  {"gate_time_ns", s.basis.gate_time},
                  {"frequencies", channels_to_json(s.basis.frequencies)}};
    j["coefficients"] = channels_to_json(s.coefficients.channels);
    j["achieved_infidelity"] = s.achieved_infidelity;
    j["rng_seed"] = s.rng_seed;
    j["converged"] = s.converged;
    j["restarts"] = s.restarts;
    j["evaluations"] = s.evaluations;
    j["config"] = json::parse(file.config.to_json_text());
    j["created_utc"] = file.created_utc;
    return j.dump(2);
}

namespace {

SolutionFile parse_solution(const json& j)
{
    if (!j.is_object())
        throw Error(Errc::parse, "solution file must be a JSON object");

    SolutionFile file;
    file.schema_version = field<int>(j, "schema_version");
    if (file.schema_version != kSolutionSchemaVersion)
        throw Error(Errc::parse, "unsupported solution schema version " + std::to_string(file.schema_version));

    CrabSolution& s = file.solution;
    s.index = field<int>(j, "index");

    const json& gate = j.at("gate");
    s.gate = build_gate(parse_field(gate, "name", parse_gate_name), field<int>(gate, "target_qubit"),
                        field<int>(gate, "control_qubit"));

    const json& model = j.at("model");
    try {
        s.model = TransmonModel(field<int>(model, "levels_per_mode"), field<double>(model, "anharmonicity_ghz"),
                                field<double>(model, "gate_time_ns"),
                                parse_field(model, "frequency_convention", parse_frequency_convention));
    } catch (const Error& e) {
        throw Error(Errc::parse, std::string("solution file model is invalid: ") + e.what());
    }

    const json& settings = j.at("settings");
    s.settings.num_components = field<int>(settings, "num_components");
    s.settings.randomization = parse_field(settings, "randomization", parse_randomization);
    s.settings.num_steps = field<int>(settings, "num_steps");
    s.settings.fidelity_form = parse_field(settings, "fidelity_form", parse_fidelity_form);
    if (auto it = settings.find("amplitude_clamp"); it != settings.end() && !it->is_null())
        s.settings.amplitude_clamp = it->get<double>();

    const json& basis = j.at("basis");
    s.basis.num_components = field<int>(basis, "num_components");
    s.basis.randomization = parse_field(basis, "randomization", parse_randomization);
    s.basis.seed = field<std::uint64_t>(basis, "seed");
    s.basis.gate_time = field<double>(basis, "gate_time_ns");
    s.basis.frequencies = channels_from_json(basis, "frequencies");
    s.coefficients.channels = channels_from_json(j, "coefficients");
    for (int c = 0; c < kNumChannels; ++c) {
        if (static_cast<int>(s.basis.frequencies[c].size()) != s.basis.num_components ||
            static_cast<int>(s.coefficients.channels[c].size()) != 2 * s.basis.num_components)
            throw Error(Errc::parse, "solution file basis/coefficient sizes are inconsistent");
    }

    s.achieved_infidelity = field<double>(j, "achieved_infidelity");
    s.rng_seed = field<std::uint64_t>(j, "rng_seed");
    s.converged = field<bool>(j, "converged");
    s.restarts = field<int>(j, "restarts");
    s.evaluations = field<long>(j, "evaluations");
    file.config = RunConfig::from_json_text(j.at("config").dump());
    file.created_utc = field<std::string>(j, "created_utc");
    return file;
}

}  // namespace

SolutionFile solution_from_json_text(std::string_view text)
{
    try {
        return parse_solution(json::parse(text));
    } catch (const json::exception& e) {
        throw Error(Errc::parse, std::string("malformed solution file: ") + e.what());
    }
}

void save_solution(const std::filesystem::path& path, const SolutionFile& file)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(Errc::io, "cannot write " + path.string());
    out << solution_to_json_text(file) << '\n';
    if (!out)
        throw Error(Errc::io, "failed writing " + path.string());
}

SolutionFile load_solution(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Errc::io, "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return solution_from_json_text(buf.str());
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace crabforge
