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

#include "crabforge/config.hpp"

#include <cmath>
#include <set>

#include "crabforge/errors.hpp"
#include "crabforge/random.hpp"
#include "json.hpp"

namespace crabforge {

using nlohmann::json;

namespace {

// Reads fields out of one JSON object and rejects keys nobody asked for.
class Section {
public:
    Section(const json& j, std::string name) : j_(j), name_(std::move(name))
    {
        if (!j_.is_object())
            throw Error(Errc::parse, "config section '" + name_ + "' must be an object");
    }

    void done() const
    {
        for (const auto& [key, value] : j_.items())
            if (!seen_.count(key))
                throw Error(Errc::parse, "unknown config key '" + qualified(key) + "'");
    }

    template <class T>
    void get(const char* key, T& out)
    {
        seen_.insert(key);
        auto it = j_.find(key);
        if (it == j_.end())
            return;
        try {
            if constexpr (std::is_same_v<T, int> || std::is_same_v<T, long>) {
                if (!it->is_number_integer())
                    throw Error(Errc::parse, "");
            } else if constexpr (std::is_same_v<T, std::uint64_t>) {
                if (!it->is_number_unsigned())
                    throw Error(Errc::parse, "");
            } else if constexpr (std::is_same_v<T, double>) {
                if (!it->is_number())
                    throw Error(Errc::parse, "");
            }
            out = it->get<T>();
        } catch (const std::exception&) {
            throw Error(Errc::parse, "config key '" + qualified(key) + "' has the wrong type");
        }
    }

    const json* child(const char* key)
    {
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    std::string qualified(const std::string& key) const { return name_.empty() ? key : name_ + "." + key; }

private:
    const json& j_;
    std::string name_;
    std::set<std::string> seen_;
};

template <class Parse>
auto parse_enum(const std::string& text, const std::string& key, Parse parse)
{
    try {
        return parse(text);
    } catch (const Error& e) {
        throw Error(Errc::parse, "config key '" + key + "': " + e.what());
    }
}

}  // namespace

std::string to_string(FrequencyConvention convention)
{
    return convention == FrequencyConvention::as_quoted ? "as_quoted" : "ordinary";
}

FrequencyConvention parse_frequency_convention(const std::string& text)
{
    if (text == "as_quoted")
        return FrequencyConvention::as_quoted;
    if (text == "ordinary")
        return FrequencyConvention::ordinary;
    throw Error(Errc::invalid_input, "unknown frequency convention '" + text + "'");
}

ModelConfig ModelConfig::of(const TransmonModel& model)
{
    return {model.levels_per_mode(), model.quoted_anharmonicity(), model.gate_time(), model.convention()};
}

std::vector<double> RunConfig::default_sweep_sigmas()
{
    std::vector<double> sigmas{0.0};
    for (int n = 0; n <= 20; ++n)
        sigmas.push_back(0.1 * std::pow(10.0, -3.0 * n / 20.0));
    return sigmas;
}

void RunConfig::validate() const
{
    (void)model.build();
    crab.validate();
    optimizer.validate();
    disturbance.validate();
    if (gates.empty())
        throw Error(Errc::invalid_input, "gate list is empty");
    if (campaign_size < 1)
        throw Error(Errc::invalid_input, "campaign_size must be >= 1");
    if (sweep_realizations < 1)
        throw Error(Errc::invalid_input, "sweep realizations must be >= 1");
    for (double s : sweep_sigmas)
        if (!(s >= 0.0) || !std::isfinite(s))
            throw Error(Errc::invalid_input, "sweep sigmas must be finite and non-negative");
    (void)build_gate(GateName::cnot, single_qubit_target, cnot_control);
    if (output_dir.empty())
        throw Error(Errc::invalid_input, "output_dir is empty");
}

OptimizerConfig RunConfig::campaign_optimizer(GateName name) const
{
    OptimizerConfig c = optimizer;
    c.seed = derive_seed(seed, {1, static_cast<std::uint64_t>(name)});
    return c;
}

DisturbanceConfig RunConfig::search_config(DisturbanceKind kind, const CrabSolution& solution) const
{
    DisturbanceConfig c = disturbance;
    c.seed = derive_seed(seed, {2, static_cast<std::uint64_t>(kind), solution.rng_seed});
    c.threshold = optimizer.target_infidelity;
    return c;
}

std::uint64_t RunConfig::sweep_seed(DisturbanceKind kind, const CrabSolution& solution) const
{
    return derive_seed(seed, {3, static_cast<std::uint64_t>(kind), solution.rng_seed});
}

std::string RunConfig::to_json_text() const
{
    json j;
    j["model"] = {{"levels_per_mode", model.levels_per_mode},
                  {"anharmonicity_ghz", model.anharmonicity_ghz},
                  {"gate_time_ns", model.gate_time_ns},
                  {"frequency_convention", to_string(model.convention)}};
    j["crab"] = {{"num_components", crab.num_components},
                 {"randomization", to_string(crab.randomization)},
                 {"num_steps", crab.num_steps},
                 {"fidelity_form", to_string(crab.fidelity_form)},
                 {"amplitude_clamp", crab.amplitude_clamp ? json(*crab.amplitude_clamp) : json(nullptr)}};
    j["optimizer"] = {{"target_infidelity", optimizer.target_infidelity},
                      {"max_cost_evaluations", optimizer.max_cost_evaluations},
                      {"initial_coefficient_scale", optimizer.initial_coefficient_scale},
                      {"initial_simplex_spread", optimizer.initial_simplex_spread},
                      {"spread_tolerance", optimizer.spread_tolerance},
                      {"restart_limit", optimizer.restart_limit},
                      {"polish", optimizer.polish}};
    j["disturbance"] = {{"start_sigma", disturbance.start_sigma},
                        {"step_db", disturbance.step_db},
                        {"realizations_required", disturbance.realizations_required},
                        {"max_steps", disturbance.max_steps}};
    j["sweep"] = {{"sigmas", sweep_sigmas}, {"realizations", sweep_realizations}};
    json gate_names = json::array();
    for (auto g : gates)
        gate_names.push_back(to_string(g));
    j["gates"] = gate_names;
    j["single_qubit_target"] = single_qubit_target;
    j["cnot_control"] = cnot_control;
    j["campaign_size"] = campaign_size;
    j["seed"] = seed;
    j["output_dir"] = output_dir;
    return j.dump(2);
}

RunConfig RunConfig::from_json_text(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::parse, std::string("config is not valid JSON: ") + e.what());
    }

    RunConfig c;
    Section root(j, "");
    if (const json* m = root.child("model")) {
        Section s(*m, "model");
        s.get("levels_per_mode", c.model.levels_per_mode);
        s.get("anharmonicity_ghz", c.model.anharmonicity_ghz);
        s.get("gate_time_ns", c.model.gate_time_ns);
        std::string conv = to_string(c.model.convention);
        s.get("frequency_convention", conv);
        c.model.convention = parse_enum(conv, "model.frequency_convention", parse_frequency_convention);
        s.done();
    }
    if (const json* m = root.child("crab")) {
        Section s(*m, "crab");
        s.get("num_components", c.crab.num_components);
        s.get("num_steps", c.crab.num_steps);
        std::string mode = to_string(c.crab.randomization);
        s.get("randomization", mode);
        c.crab.randomization = parse_enum(mode, "crab.randomization", parse_randomization);
        std::string form = to_string(c.crab.fidelity_form);
        s.get("fidelity_form", form);
        c.crab.fidelity_form = parse_enum(form, "crab.fidelity_form", parse_fidelity_form);
        if (const json* clamp = s.child("amplitude_clamp"); clamp && !clamp->is_null()) {
            if (!clamp->is_number())
                throw Error(Errc::parse, "config key 'crab.amplitude_clamp' must be a number or null");
            c.crab.amplitude_clamp = clamp->get<double>();
        }
        s.done();
    }
    if (const json* m = root.child("optimizer")) {
        Section s(*m, "optimizer");
        s.get("target_infidelity", c.optimizer.target_infidelity);
        s.get("max_cost_evaluations", c.optimizer.max_cost_evaluations);
        s.get("initial_coefficient_scale", c.optimizer.initial_coefficient_scale);
        s.get("initial_simplex_spread", c.optimizer.initial_simplex_spread);
        s.get("spread_tolerance", c.optimizer.spread_tolerance);
        s.get("restart_limit", c.optimizer.restart_limit);
        s.get("polish", c.optimizer.polish);
        s.done();
    }
    if (const json* m = root.child("disturbance")) {
        Section s(*m, "disturbance");
        s.get("start_sigma", c.disturbance.start_sigma);
        s.get("step_db", c.disturbance.step_db);
        s.get("realizations_required", c.disturbance.realizations_required);
        s.get("max_steps", c.disturbance.max_steps);
        s.done();
    }
    if (const json* m = root.child("sweep")) {
        Section s(*m, "sweep");
        s.get("sigmas", c.sweep_sigmas);
        s.get("realizations", c.sweep_realizations);
        s.done();
    }
    if (const json* g = root.child("gates")) {
        if (!g->is_array())
            throw Error(Errc::parse, "config key 'gates' must be an array of gate names");
        c.gates.clear();
        for (const auto& name : *g) {
            if (!name.is_string())
                throw Error(Errc::parse, "config key 'gates' must be an array of gate names");
            c.gates.push_back(parse_enum(name.get<std::string>(), "gates", parse_gate_name));
        }
    }
    root.get("single_qubit_target", c.single_qubit_target);
    root.get("cnot_control", c.cnot_control);
    root.get("campaign_size", c.campaign_size);
    root.get("seed", c.seed);
    root.get("output_dir", c.output_dir);
    root.done();
    return c;
}

}  // namespace crabforge
