// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "aimp/pipeline.hpp"

#include "aimp/error.hpp"

#include <nlohmann/json.hpp>
#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace aimp::pipeline {

namespace fs = std::filesystem;

namespace {

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot open " + path.string());
    }
    std::ostringstream out;
    out << in.rdbuf();
    return std::move(out).str();
}

bool valid_stage_name(const std::string& name) {
    static const std::regex re("^[A-Za-z0-9_-]+$");
    return std::regex_match(name, re);
}

/// Rejects absolute paths, ".." segments, and paths that do not survive
/// lexical normalization unchanged (e.g. "a//b", "./a").
std::string check_path(const std::string& raw, const std::string& stage) {
    fs::path p(raw);
    if (raw.empty() || p.is_absolute()) {
        throw Error(ErrorKind::BadPath, "stage '" + stage + "': path '" + raw +
                                            "' must be workspace-relative",
                    {raw});
    }
    auto normalized = p.lexically_normal();
    for (const auto& part : normalized) {
        if (part == "..") {
            throw Error(ErrorKind::BadPath, "stage '" + stage + "': path '" + raw +
                                                "' escapes the workspace",
                        {raw});
        }
    }
    auto clean = normalized.generic_string();
    if (clean != raw) {
        throw Error(ErrorKind::BadPath, "stage '" + stage + "': path '" + raw +
                                            "' is not normalized (expected '" + clean + "')",
                    {raw});
    }
    return clean;
}

std::vector<std::string> string_list(const YAML::Node& node, const std::string& stage,
                                     const char* field) {
    std::vector<std::string> out;
    if (!node) return out;
    if (!node.IsSequence()) {
        throw Error(ErrorKind::SyntaxError,
                    "stage '" + stage + "': '" + field + "' must be a list");
    }
    for (const auto& item : node) {
        out.push_back(item.as<std::string>());
    }
    return out;
}

std::optional<ToolInfo> parse_tool(const YAML::Node& node, const std::string& stage) {
    if (!node) return std::nullopt;
    if (!node.IsMap() || !node["name"]) {
        throw Error(ErrorKind::SyntaxError,
                    "stage '" + stage + "': 'tool' must be a map with a 'name'");
    }
    ToolInfo tool;
    tool.name = node["name"].as<std::string>();
    if (node["version"]) tool.version = node["version"].as<std::string>();
    return tool;
}

prov::Literal literal_from_scalar(const YAML::Node& node) {
    const auto& lexical = node.Scalar();
    if (node.Tag() == "!") {
        // Explicitly quoted in the document: keep it a string.
        return prov::Literal::str(lexical);
    }
    if (lexical == "true" || lexical == "false") {
        return prov::Literal{lexical, prov::LiteralType::Boolean, {}};
    }
    if (prov::lexical_matches(prov::LiteralType::Integer, lexical)) {
        return prov::Literal{lexical, prov::LiteralType::Integer, {}};
    }
    if (prov::lexical_matches(prov::LiteralType::Decimal, lexical)) {
        return prov::Literal{lexical, prov::LiteralType::Decimal, {}};
    }
    return prov::Literal::str(lexical);
}

void flatten_params(const YAML::Node& node, const std::string& prefix, ParamsMap& out) {
    if (node.IsMap()) {
        for (const auto& entry : node) {
            auto key = entry.first.as<std::string>();
            flatten_params(entry.second, prefix.empty() ? key : prefix + "." + key, out);
        }
    } else if (node.IsScalar()) {
        out[prefix] = literal_from_scalar(node);
    } else if (node.IsSequence()) {
        // Sequences become one string literal in canonical JSON form.
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& item : node) {
            arr.push_back(item.IsScalar() ? item.Scalar() : std::string("?"));
        }
        out[prefix] = prov::Literal::str(arr.dump());
    } else if (node.IsNull()) {
        out[prefix] = prov::Literal::str("");
    }
}

} // namespace

const StageSpec* PipelineSpec::find_stage(std::string_view name) const {
    for (const auto& stage : stages) {
        if (stage.name == name) return &stage;
    }
    return nullptr;
}

PipelineSpec parse_pipeline(std::string_view text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw Error(ErrorKind::SyntaxError,
                    "line " + std::to_string(e.mark.line + 1) + ": " + e.msg,
                    {std::to_string(e.mark.line + 1)});
    }
    if (!root.IsMap() || !root["stages"]) {
        throw Error(ErrorKind::SyntaxError, "pipeline file must contain a 'stages' mapping");
    }

    PipelineSpec spec;
    if (root["name"]) spec.name = root["name"].as<std::string>();
    if (root["params_file"]) spec.params_file = root["params_file"].as<std::string>();

    const auto& stages = root["stages"];
    if (!stages.IsMap()) {
        throw Error(ErrorKind::SyntaxError, "'stages' must map stage names to definitions");
    }

    std::set<std::string> names;
    std::map<std::string, std::string> out_owner; // out path -> stage
    for (const auto& entry : stages) {
        StageSpec stage;
        stage.name = entry.first.as<std::string>();
        if (!valid_stage_name(stage.name)) {
            throw Error(ErrorKind::SyntaxError,
                        "stage name '" + stage.name + "' must match [A-Za-z0-9_-]+");
        }
        if (!names.insert(stage.name).second) {
            throw Error(ErrorKind::DuplicateStage, "stage '" + stage.name + "' is declared twice",
                        {stage.name});
        }
        const auto& body = entry.second;
        if (!body.IsMap() || !body["cmd"]) {
            throw Error(ErrorKind::SyntaxError, "stage '" + stage.name + "' needs a 'cmd'");
        }
        stage.command = body["cmd"].as<std::string>();
        for (auto& dep : string_list(body["deps"], stage.name, "deps")) {
            stage.deps.push_back(check_path(dep, stage.name));
        }
        for (auto& out : string_list(body["outs"], stage.name, "outs")) {
            stage.outs.push_back(check_path(out, stage.name));
        }
        stage.params = string_list(body["params"], stage.name, "params");
        stage.tool = parse_tool(body["tool"], stage.name);

        std::set<std::string> dep_set(stage.deps.begin(), stage.deps.end());
        for (const auto& out : stage.outs) {
            if (dep_set.count(out)) {
                throw Error(ErrorKind::BadPath,
                            "stage '" + stage.name + "': '" + out + "' is both a dep and an out",
                            {out});
            }
            auto [it, inserted] = out_owner.emplace(out, stage.name);
            if (!inserted) {
                throw Error(ErrorKind::DuplicateOut,
                            "out '" + out + "' is produced by both '" + it->second + "' and '" +
                                stage.name + "'",
                            {out, it->second, stage.name});
            }
        }
        std::sort(stage.deps.begin(), stage.deps.end());
        stage.deps.erase(std::unique(stage.deps.begin(), stage.deps.end()), stage.deps.end());
        std::sort(stage.outs.begin(), stage.outs.end());
        std::sort(stage.params.begin(), stage.params.end());
        stage.params.erase(std::unique(stage.params.begin(), stage.params.end()),
                           stage.params.end());
        spec.stages.push_back(std::move(stage));
    }

    if (root["training"]) {
        const auto& t = root["training"];
        TrainingConfig training;
        if (!t.IsMap() || !t["stage"] || !t["model"]) {
            throw Error(ErrorKind::SyntaxError, "'training' needs 'stage' and 'model'");
        }
        training.stage = t["stage"].as<std::string>();
        training.model_path = t["model"].as<std::string>();
        if (t["metrics"]) training.metrics_path = t["metrics"].as<std::string>();
        if (t["environment"]) {
            for (const auto& pkg : t["environment"]) {
                ToolInfo info;
                info.name = pkg["name"].as<std::string>();
                if (pkg["version"]) info.version = pkg["version"].as<std::string>();
                training.environment.push_back(std::move(info));
            }
        }
        if (!spec.find_stage(training.stage)) {
            throw Error(ErrorKind::SyntaxError,
                        "training stage '" + training.stage + "' is not declared");
        }
        spec.training = std::move(training);
    }
    return spec;
}

PipelineSpec load_pipeline(const fs::path& path) {
    return parse_pipeline(read_text_file(path));
}

ParamsMap parse_params(std::string_view text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw Error(ErrorKind::SyntaxError,
                    "line " + std::to_string(e.mark.line + 1) + ": " + e.msg,
                    {std::to_string(e.mark.line + 1)});
    }
    ParamsMap out;
    if (root.IsNull() || !root.IsDefined()) return out;
    if (!root.IsMap()) {
        throw Error(ErrorKind::SyntaxError, "params file must be a key/value mapping");
    }
    flatten_params(root, "", out);
    return out;
}

ParamsMap load_params(const fs::path& path) {
    std::error_code ec;
    if (!fs::exists(path, ec)) return {};
    return parse_params(read_text_file(path));
}

Dag build_dag(const PipelineSpec& spec) {
    Dag dag;
    std::map<std::string, std::string> out_owner;
    for (const auto& stage : spec.stages) {
        dag.edges[stage.name];
        dag.reverse[stage.name];
        for (const auto& out : stage.outs) {
            out_owner[out] = stage.name;
        }
    }
    for (const auto& stage : spec.stages) {
        for (const auto& dep : stage.deps) {
            auto it = out_owner.find(dep);
            if (it != out_owner.end() && it->second != stage.name) {
                auto& downstream = dag.edges[it->second];
                if (std::find(downstream.begin(), downstream.end(), stage.name) ==
                    downstream.end()) {
                    downstream.push_back(stage.name);
                    dag.reverse[stage.name].push_back(it->second);
                }
            }
        }
    }
    for (auto& [_, list] : dag.edges) std::sort(list.begin(), list.end());
    for (auto& [_, list] : dag.reverse) std::sort(list.begin(), list.end());

    // Cycle check: DFS in lexicographic order so the reported path is stable.
    std::map<std::string, int> state; // 0 unvisited, 1 on stack, 2 done
    std::vector<std::string> stack;
    std::vector<std::string> cycle;

    auto dfs = [&](auto&& self, const std::string& node) -> bool {
        state[node] = 1;
        stack.push_back(node);
        for (const auto& next : dag.edges[node]) {
            if (state[next] == 1) {
                auto begin = std::find(stack.begin(), stack.end(), next);
                cycle.assign(begin, stack.end());
                cycle.push_back(next);
                return true;
            }
            if (state[next] == 0 && self(self, next)) return true;
        }
        stack.pop_back();
        state[node] = 2;
        return false;
    };

    std::vector<std::string> all;
    for (const auto& [name, _] : dag.edges) all.push_back(name);
    for (const auto& name : all) {
        if (state[name] == 0 && dfs(dfs, name)) {
            std::string path;
            for (std::size_t i = 0; i < cycle.size(); ++i) {
                if (i) path += " -> ";
                path += cycle[i];
            }
            throw Error(ErrorKind::CycleDetected, "pipeline has a cycle: " + path, cycle);
        }
    }

    // Kahn's algorithm with a sorted ready set: deterministic order with
    // lexicographic tie-break.
    std::map<std::string, int> indegree;
    for (const auto& name : all) indegree[name] = 0;
    for (const auto& [_, downstream] : dag.edges) {
        for (const auto& next : downstream) ++indegree[next];
    }
    std::set<std::string> ready;
    for (const auto& [name, deg] : indegree) {
        if (deg == 0) ready.insert(name);
    }
    while (!ready.empty()) {
        auto name = *ready.begin();
        ready.erase(ready.begin());
        dag.order.push_back(name);
        for (const auto& next : dag.edges[name]) {
            if (--indegree[next] == 0) ready.insert(next);
        }
    }
    return dag;
}

StageInputs fingerprint_stage(const StageSpec& stage, const ParamsMap& params,
                              const fs::path& workspace) {
    StageInputs inputs;

    std::vector<std::string> deps = stage.deps;
    std::sort(deps.begin(), deps.end());
    for (const auto& dep : deps) {
        auto path = workspace / dep;
        std::error_code ec;
        if (!fs::exists(path, ec)) {
            throw Error(ErrorKind::MissingDep,
                        "stage '" + stage.name + "': dep '" + dep + "' does not exist", {dep});
        }
        inputs.dep_refs.emplace_back(dep, cas::hash_path(path));
    }

    for (const auto& key : stage.params) {
        auto it = params.find(key);
        if (it == params.end()) {
            throw Error(ErrorKind::MissingParam,
                        "stage '" + stage.name + "': param '" + key + "' not in params file",
                        {key});
        }
        inputs.param_snapshot[key] = it->second;
    }

    nlohmann::json deps_json = nlohmann::json::array();
    for (const auto& [path, ref] : inputs.dep_refs) {
        deps_json.push_back({path, ref.sha256.digest});
    }
    nlohmann::json params_json = nlohmann::json::object();
    for (const auto& [key, value] : inputs.param_snapshot) {
        params_json[key] = {{"type", to_string(value.type)}, {"value", value.lexical}};
    }
    nlohmann::json body{
        {"command", stage.command},
        {"deps", std::move(deps_json)},
        {"outs", stage.outs},
        {"params", std::move(params_json)},
    };
    if (stage.tool) {
        body["tool"] = {{"name", stage.tool->name}, {"version", stage.tool->version}};
    } else {
        body["tool"] = nullptr;
    }
    inputs.fingerprint = cas::hash_bytes(body.dump()).sha256.digest;
    return inputs;
}

} // namespace aimp::pipeline
