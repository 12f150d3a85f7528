// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "aimp/lockfile.hpp"

#include "aimp/error.hpp"
#include "internal/json_codec.hpp"

#include <fstream>
#include <sstream>

namespace aimp::pipeline {

namespace fs = std::filesystem;

const char* to_string(StageStatus status) {
    switch (status) {
    case StageStatus::Fresh: return "fresh";
    case StageStatus::Cached: return "cached";
    case StageStatus::Failed: return "failed";
    }
    return "failed";
}

StageStatus stage_status_from_string(std::string_view name) {
    if (name == "fresh") return StageStatus::Fresh;
    if (name == "cached") return StageStatus::Cached;
    if (name == "failed") return StageStatus::Failed;
    throw Error(ErrorKind::BadValue, "unknown stage status '" + std::string(name) + "'");
}

const LockRecord* LockFile::find(const std::string& stage) const {
    auto it = stages.find(stage);
    return it == stages.end() ? nullptr : &it->second;
}

bool LockFile::complete_for(const PipelineSpec& spec) const {
    for (const auto& stage : spec.stages) {
        const auto* record = find(stage.name);
        if (!record || !record->succeeded()) return false;
    }
    return true;
}

namespace {

nlohmann::json path_refs_to_json(const std::vector<PathRef>& refs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& entry : refs) {
        auto j = internal::to_json(entry.ref);
        j["path"] = entry.path;
        arr.push_back(std::move(j));
    }
    return arr;
}

std::vector<PathRef> path_refs_from_json(const nlohmann::json& arr) {
    std::vector<PathRef> refs;
    for (const auto& j : arr) {
        refs.push_back({j.at("path").get<std::string>(), internal::object_ref_from_json(j)});
    }
    return refs;
}

} // namespace

std::string lock_to_json(const LockFile& lock) {
    nlohmann::json stages = nlohmann::json::object();
    for (const auto& [name, record] : lock.stages) {
        nlohmann::json j{
            {"fingerprint", record.fingerprint},
            {"command", record.command},
            {"deps", path_refs_to_json(record.deps)},
            {"outs", path_refs_to_json(record.outs)},
            {"params", internal::params_to_json(record.params)},
            {"exitCode", record.exit_code},
            {"startedAt", record.started_at},
            {"endedAt", record.ended_at},
            {"status", to_string(record.status)},
        };
        if (record.tool) j["tool"] = internal::to_json(*record.tool);
        if (record.stdout_log) j["stdoutLog"] = internal::to_json(*record.stdout_log);
        if (record.stderr_log) j["stderrLog"] = internal::to_json(*record.stderr_log);
        stages[name] = std::move(j);
    }
    return nlohmann::json{{"formatVersion", "1"}, {"stages", std::move(stages)}}.dump();
}

LockFile lock_from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::LoadError, std::string("lock file does not parse: ") + e.what());
    }
    LockFile lock;
    try {
        for (const auto& [name, j] : doc.at("stages").items()) {
            LockRecord record;
            record.stage = name;
            record.fingerprint = j.at("fingerprint").get<std::string>();
            record.command = j.at("command").get<std::string>();
            record.deps = path_refs_from_json(j.at("deps"));
            record.outs = path_refs_from_json(j.at("outs"));
            record.params = internal::params_from_json(j.at("params"));
            record.exit_code = j.at("exitCode").get<int>();
            record.started_at = j.at("startedAt").get<std::string>();
            record.ended_at = j.at("endedAt").get<std::string>();
            record.status = stage_status_from_string(j.at("status").get<std::string>());
            if (j.contains("tool")) record.tool = internal::tool_from_json(j.at("tool"));
            if (j.contains("stdoutLog")) {
                record.stdout_log = internal::object_ref_from_json(j.at("stdoutLog"));
            }
            if (j.contains("stderrLog")) {
                record.stderr_log = internal::object_ref_from_json(j.at("stderrLog"));
            }
            lock.stages[name] = std::move(record);
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::LoadError, std::string("lock file has wrong shape: ") + e.what());
    }
    return lock;
}

LockFile load_lock(const fs::path& path) {
    std::error_code ec;
    if (!fs::exists(path, ec)) return {};
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return lock_from_json(buf.str());
}

void save_lock(const LockFile& lock, const fs::path& path) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorKind::IoError, "cannot write " + tmp.string());
        }
        out << lock_to_json(lock) << "\n";
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        throw Error(ErrorKind::IoError, "cannot replace " + path.string() + ": " + ec.message());
    }
}

} // namespace aimp::pipeline
