// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aimp/error.hpp"
#include "aimp/lockfile.hpp"
#include "aimp/pipeline.hpp"
#include "aimp/provgraph.hpp"
#include "aimp/store.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace aimp::pipeline {

struct RunOptions {
    bool force = false;
    std::string only_stage; // empty means the whole pipeline
    int jobs = 1;           // stages with no DAG path between them may run concurrently
};

enum class StageOutcomeState { Fresh, Cached, Failed, Skipped };

const char* to_string(StageOutcomeState state);

struct StageOutcome {
    std::string name;
    StageOutcomeState state = StageOutcomeState::Skipped;
    double seconds = 0.0;
    int exit_code = 0;
    std::string message;
};

struct RunResult {
    LockFile lock;
    std::vector<StageOutcome> outcomes; // in execution (topological) order
    std::optional<Error> failure;       // ExecutionFailed / MissingOut / MissingDep ...

    bool ok() const { return !failure.has_value(); }
};

/// Executes stale stages in topological order. A stage whose fingerprint
/// matches its lock record and whose outs still hash to the recorded values
/// is skipped as cached. On success, outs and captured stdout/stderr logs
/// are stored in the cas and the record replaced. On failure the record is
/// marked failed and every downstream stage is left unrun. The lock file is
/// written once, atomically, after the run completes.
RunResult run_pipeline(const PipelineSpec& spec, const std::filesystem::path& workspace,
                       cas::Store& store, const RunOptions& options = {});

enum class StaleReason {
    DepChanged,
    ParamChanged,
    CommandChanged,
    OutMissing,
    NeverRun,
    UpToDate,
};

const char* to_string(StaleReason reason);

/// Pure staleness report per stage; agrees with what run_pipeline would do.
std::map<std::string, StaleReason> status(const PipelineSpec& spec, const LockFile& lock,
                                          const std::filesystem::path& workspace);

/// Emits the training-workflow provenance for a completed run into the
/// graph: Study, Experiment and Pipeline container entities, then one Stage
/// entity and StageExecution activity per stage with hasInput/hasOutput
/// edges to checksummed artifact entities. Throws IncompleteLock when a
/// stage has no successful record.
void record_execution(const LockFile& lock, const PipelineSpec& spec, prov::ProvGraph& graph);

} // namespace aimp::pipeline
