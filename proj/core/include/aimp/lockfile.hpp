// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aimp/hash.hpp"
#include "aimp/literal.hpp"
#include "aimp/pipeline.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace aimp::pipeline {

enum class StageStatus { Fresh, Cached, Failed };

const char* to_string(StageStatus status);
StageStatus stage_status_from_string(std::string_view name);

struct PathRef {
    std::string path;
    cas::ObjectRef ref;
    auto operator<=>(const PathRef&) const = default;
};

/// Snapshot of one accepted stage execution. Only the final selected run is
/// kept, one record per stage.
struct LockRecord {
    std::string stage;
    std::string fingerprint;
    std::string command;
    std::vector<PathRef> deps; // sorted by path
    std::vector<PathRef> outs; // sorted by path
    std::map<std::string, prov::Literal> params;
    std::optional<ToolInfo> tool;
    int exit_code = 0;
    std::string started_at; // UTC ISO-8601
    std::string ended_at;
    std::optional<cas::ObjectRef> stdout_log;
    std::optional<cas::ObjectRef> stderr_log;
    StageStatus status = StageStatus::Fresh;

    bool succeeded() const { return status != StageStatus::Failed; }
};

struct LockFile {
    std::map<std::string, LockRecord> stages;

    const LockRecord* find(const std::string& stage) const;
    /// True when every spec stage has a succeeded record.
    bool complete_for(const PipelineSpec& spec) const;
};

/// Canonical JSON codec for aimp.lock (see docs/format-lock.md).
std::string lock_to_json(const LockFile& lock);
LockFile lock_from_json(std::string_view text);

LockFile load_lock(const std::filesystem::path& path); // empty file -> empty lock
void save_lock(const LockFile& lock, const std::filesystem::path& path); // atomic

} // namespace aimp::pipeline
