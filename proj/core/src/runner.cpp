// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "aimp/runner.hpp"

#include "internal/process.hpp"
#include "internal/time_util.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <mutex>
#include <set>
#include <thread>

namespace aimp::pipeline {

namespace fs = std::filesystem;

const char* to_string(StageOutcomeState state) {
    switch (state) {
    case StageOutcomeState::Fresh: return "fresh";
    case StageOutcomeState::Cached: return "cached";
    case StageOutcomeState::Failed: return "failed";
    case StageOutcomeState::Skipped: return "skipped";
    }
    return "skipped";
}

const char* to_string(StaleReason reason) {
    switch (reason) {
    case StaleReason::DepChanged: return "dep-changed";
    case StaleReason::ParamChanged: return "param-changed";
    case StaleReason::CommandChanged: return "command-changed";
    case StaleReason::OutMissing: return "out-missing";
    case StaleReason::NeverRun: return "never-run";
    case StaleReason::UpToDate: return "up-to-date";
    }
    return "never-run";
}

namespace {

bool outs_match_record(const LockRecord& record, const StageSpec& stage,
                       const fs::path& workspace) {
    std::vector<std::string> recorded;
    recorded.reserve(record.outs.size());
    for (const auto& out : record.outs) recorded.push_back(out.path);
    if (recorded != stage.outs) return false;
    for (const auto& out : record.outs) {
        auto path = workspace / out.path;
        std::error_code ec;
        if (!fs::exists(path, ec)) return false;
        if (cas::hash_path(path) != out.ref) return false;
    }
    return true;
}

struct StageWorkResult {
    StageOutcome outcome;
    std::optional<LockRecord> record;
    std::optional<Error> failure;
};

/// Fingerprints, cache-checks, and (when stale) executes one stage.
StageWorkResult run_stage(const StageSpec& stage, const ParamsMap& params,
                          const fs::path& workspace, cas::Store& store,
                          const LockFile& previous, bool force) {
    StageWorkResult result;
    result.outcome.name = stage.name;

    StageInputs inputs;
    try {
        inputs = fingerprint_stage(stage, params, workspace);
    } catch (const Error& e) {
        result.outcome.state = StageOutcomeState::Failed;
        result.outcome.message = e.what();
        result.failure = e;
        return result;
    }

    const auto* record = previous.find(stage.name);
    if (!force && record && record->succeeded() && record->fingerprint == inputs.fingerprint &&
        outs_match_record(*record, stage, workspace)) {
        result.outcome.state = StageOutcomeState::Cached;
        result.record = *record;
        result.record->status = StageStatus::Cached;
        return result;
    }

    LockRecord fresh;
    fresh.stage = stage.name;
    fresh.fingerprint = inputs.fingerprint;
    fresh.command = stage.command;
    fresh.params = inputs.param_snapshot;
    fresh.tool = stage.tool;
    for (const auto& [path, ref] : inputs.dep_refs) {
        store.put_path(workspace / path);
        fresh.deps.push_back({path, ref});
    }

    auto log_dir = workspace / kStoreDir / "logs";
    std::error_code ec;
    fs::create_directories(log_dir, ec);
    auto stdout_path = log_dir / (stage.name + ".stdout.log");
    auto stderr_path = log_dir / (stage.name + ".stderr.log");

    auto started = std::chrono::steady_clock::now();
    fresh.started_at = internal::iso_utc_now();
    int exit_code = internal::run_command(stage.command, workspace,
                                          {"AIMP_STAGE=" + stage.name}, stdout_path, stderr_path);
    fresh.ended_at = internal::iso_utc_now();
    result.outcome.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    result.outcome.exit_code = exit_code;
    fresh.exit_code = exit_code;
    fresh.stdout_log = store.put_file(stdout_path);
    fresh.stderr_log = store.put_file(stderr_path);

    if (exit_code != 0) {
        fresh.status = StageStatus::Failed;
        result.outcome.state = StageOutcomeState::Failed;
        result.outcome.message = "exit code " + std::to_string(exit_code);
        result.failure = Error(ErrorKind::ExecutionFailed,
                               "stage '" + stage.name + "' exited with code " +
                                   std::to_string(exit_code),
                               {stage.name, std::to_string(exit_code)});
        result.record = std::move(fresh);
        return result;
    }

    for (const auto& out : stage.outs) {
        auto path = workspace / out;
        if (!fs::exists(path, ec)) {
            fresh.status = StageStatus::Failed;
            result.outcome.state = StageOutcomeState::Failed;
            result.outcome.message = "declared out '" + out + "' was not produced";
            result.failure = Error(ErrorKind::MissingOut,
                                   "stage '" + stage.name + "' succeeded but out '" + out +
                                       "' is missing",
                                   {stage.name, out});
            result.record = std::move(fresh);
            return result;
        }
        fresh.outs.push_back({out, store.put_path(path)});
    }

    fresh.status = StageStatus::Fresh;
    result.outcome.state = StageOutcomeState::Fresh;
    result.record = std::move(fresh);
    return result;
}

} // namespace

RunResult run_pipeline(const PipelineSpec& spec, const fs::path& workspace, cas::Store& store,
                       const RunOptions& options) {
    auto params = load_params(workspace / spec.params_file);
    auto dag = build_dag(spec);
    auto lock_path = workspace / kLockFile;
    auto previous = load_lock(lock_path);

    std::vector<std::string> plan = dag.order;
    if (!options.only_stage.empty()) {
        if (!spec.find_stage(options.only_stage)) {
            throw Error(ErrorKind::BadValue, "unknown stage '" + options.only_stage + "'");
        }
        plan = {options.only_stage};
    }
    std::set<std::string> in_plan(plan.begin(), plan.end());

    RunResult result;
    result.lock = previous;

    std::mutex mutex;
    std::condition_variable cv;
    std::map<std::string, int> waiting; // unfinished upstream count, within the plan
    std::set<std::string> ready;
    std::map<std::string, StageOutcome> outcomes;
    std::size_t unfinished = plan.size();

    for (const auto& name : plan) {
        int count = 0;
        for (const auto& up : dag.reverse[name]) {
            if (in_plan.count(up)) ++count;
        }
        waiting[name] = count;
        if (count == 0) ready.insert(name);
    }

    // Marks every planned descendant of `name` as skipped.
    auto skip_downstream = [&](const std::string& name, auto&& self) -> void {
        for (const auto& next : dag.edges[name]) {
            if (!in_plan.count(next) || outcomes.count(next)) continue;
            ready.erase(next);
            outcomes[next] = {next, StageOutcomeState::Skipped, 0.0, 0,
                              "upstream stage '" + name + "' did not succeed"};
            --unfinished;
            self(next, self);
        }
    };

    auto worker = [&] {
        std::unique_lock<std::mutex> guard(mutex);
        while (true) {
            cv.wait(guard, [&] { return unfinished == 0 || !ready.empty(); });
            if (ready.empty()) {
                if (unfinished == 0) return;
                continue;
            }
            auto name = *ready.begin();
            ready.erase(ready.begin());

            guard.unlock();
            const auto* stage = spec.find_stage(name);
            StageWorkResult work;
            try {
                work = run_stage(*stage, params, workspace, store, previous, options.force);
            } catch (const Error& e) {
                work.outcome = {name, StageOutcomeState::Failed, 0.0, 0, e.what()};
                work.failure = e;
            } catch (const std::exception& e) {
                work.outcome = {name, StageOutcomeState::Failed, 0.0, 0, e.what()};
                work.failure = Error(ErrorKind::Internal, e.what());
            }
            guard.lock();

            outcomes[name] = work.outcome;
            if (work.record) {
                result.lock.stages[name] = *work.record;
            }
            --unfinished;
            if (work.failure) {
                if (!result.failure) result.failure = work.failure;
                skip_downstream(name, skip_downstream);
            } else {
                for (const auto& next : dag.edges[name]) {
                    if (in_plan.count(next) && !outcomes.count(next) && --waiting[next] == 0) {
                        ready.insert(next);
                    }
                }
            }
            cv.notify_all();
            if (unfinished == 0) {
                cv.notify_all();
                return;
            }
        }
    };

    int jobs = std::max(1, options.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (const auto& name : plan) {
        auto it = outcomes.find(name);
        if (it != outcomes.end()) result.outcomes.push_back(it->second);
    }
    save_lock(result.lock, lock_path);
    return result;
}

std::map<std::string, StaleReason> status(const PipelineSpec& spec, const LockFile& lock,
                                          const fs::path& workspace) {
    std::map<std::string, StaleReason> report;
    auto params = load_params(workspace / spec.params_file);

    for (const auto& stage : spec.stages) {
        const auto* record = lock.find(stage.name);
        if (!record || !record->succeeded()) {
            report[stage.name] = StaleReason::NeverRun;
            continue;
        }
        if (record->command != stage.command || record->tool != stage.tool) {
            report[stage.name] = StaleReason::CommandChanged;
            continue;
        }

        auto stale = [&](StaleReason reason) { report[stage.name] = reason; };

        std::vector<std::string> recorded_deps;
        for (const auto& dep : record->deps) recorded_deps.push_back(dep.path);
        std::sort(recorded_deps.begin(), recorded_deps.end());
        if (recorded_deps != stage.deps) {
            stale(StaleReason::DepChanged);
            continue;
        }
        bool dep_changed = false;
        for (const auto& dep : record->deps) {
            auto path = workspace / dep.path;
            std::error_code ec;
            if (!fs::exists(path, ec) || cas::hash_path(path) != dep.ref) {
                dep_changed = true;
                break;
            }
        }
        if (dep_changed) {
            stale(StaleReason::DepChanged);
            continue;
        }

        bool param_changed = false;
        if (record->params.size() != stage.params.size()) param_changed = true;
        for (const auto& key : stage.params) {
            auto current = params.find(key);
            auto recorded = record->params.find(key);
            if (current == params.end() || recorded == record->params.end() ||
                current->second != recorded->second) {
                param_changed = true;
                break;
            }
        }
        if (param_changed) {
            stale(StaleReason::ParamChanged);
            continue;
        }

        if (!outs_match_record(*record, stage, workspace)) {
            stale(StaleReason::OutMissing);
            continue;
        }
        report[stage.name] = StaleReason::UpToDate;
    }
    return report;
}

} // namespace aimp::pipeline
