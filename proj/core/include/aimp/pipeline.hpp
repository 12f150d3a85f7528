// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aimp/hash.hpp"
#include "aimp/literal.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aimp::pipeline {

inline constexpr const char* kPipelineFile = "aimp-pipeline.yaml";
inline constexpr const char* kParamsFile = "params.yaml";
inline constexpr const char* kLockFile = "aimp.lock";
inline constexpr const char* kManualFile = "aimp-manual.yaml";
inline constexpr const char* kStoreDir = ".aimp";
inline constexpr const char* kDatasetsFile = "aimp-datasets.ttl";

struct ToolInfo {
    std::string name;
    std::string version;
    auto operator<=>(const ToolInfo&) const = default;
};

struct StageSpec {
    std::string name;                 // [A-Za-z0-9_-]+, unique in the pipeline
    std::string command;              // run through the platform shell
    std::vector<std::string> deps;    // workspace-relative, normalized
    std::vector<std::string> outs;    // produced by exactly one stage
    std::vector<std::string> params;  // dotted keys into the params file
    std::optional<ToolInfo> tool;
};

/// Ties the passport's training record to a pipeline stage and its outputs.
struct TrainingConfig {
    std::string stage;
    std::string model_path;                 // one of the stage's outs
    std::string metrics_path;               // JSON file of metric name -> number
    std::vector<ToolInfo> environment;
};

struct PipelineSpec {
    std::string name = "workspace"; // also scopes minted provenance IRIs
    std::vector<StageSpec> stages;
    std::string params_file = kParamsFile;
    std::optional<TrainingConfig> training;

    const StageSpec* find_stage(std::string_view name) const;
};

/// Parses the pipeline file. Enforces every StageSpec invariant at parse
/// time: stage-name syntax and uniqueness, normalized relative paths without
/// ".." segments, no path in both deps and outs of one stage, and each out
/// produced by exactly one stage.
PipelineSpec parse_pipeline(std::string_view text);
PipelineSpec load_pipeline(const std::filesystem::path& path);

/// Flat dotted-key view of the params file; lexical forms are preserved
/// verbatim so fingerprints are stable.
using ParamsMap = std::map<std::string, prov::Literal>;

ParamsMap parse_params(std::string_view text);
ParamsMap load_params(const std::filesystem::path& path);

struct Dag {
    std::vector<std::string> order; // topological, lexicographic tie-break
    std::map<std::string, std::vector<std::string>> edges;      // stage -> downstream
    std::map<std::string, std::vector<std::string>> reverse;    // stage -> upstream
};

/// Derives edges from out->dep path matching and rejects cycles with the
/// full cycle path (e.g. [A, B, A]).
Dag build_dag(const PipelineSpec& spec);

struct StageInputs {
    std::string fingerprint; // sha256 hex
    std::vector<std::pair<std::string, cas::ObjectRef>> dep_refs; // sorted by path
    std::map<std::string, prov::Literal> param_snapshot;
};

/// Fingerprint over canonical JSON of {command, (dep path, sha256) pairs,
/// referenced (param, value) pairs, sorted out paths, tool}. Any dep byte,
/// referenced param value, command, or tool change flips it; unreferenced
/// params do not. Throws MissingDep / MissingParam.
StageInputs fingerprint_stage(const StageSpec& stage, const ParamsMap& params,
                              const std::filesystem::path& workspace);

} // namespace aimp::pipeline
