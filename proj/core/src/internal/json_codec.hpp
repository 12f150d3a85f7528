// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aimp/hash.hpp"
#include "aimp/literal.hpp"
#include "aimp/pipeline.hpp"

#include <nlohmann/json.hpp>

namespace aimp::internal {

inline nlohmann::json to_json(const cas::ObjectRef& ref) {
    nlohmann::json j{
        {"md5", ref.md5.digest},
        {"sha256", ref.sha256.digest},
        {"size", ref.size},
    };
    if (ref.media_type) {
        j["mediaType"] = *ref.media_type;
    }
    return j;
}

inline cas::ObjectRef object_ref_from_json(const nlohmann::json& j) {
    cas::ObjectRef ref;
    ref.md5 = cas::Checksum::md5(j.at("md5").get<std::string>());
    ref.sha256 = cas::Checksum::sha256(j.at("sha256").get<std::string>());
    ref.size = j.at("size").get<std::uint64_t>();
    if (j.contains("mediaType")) {
        ref.media_type = j.at("mediaType").get<std::string>();
    }
    return ref;
}

inline nlohmann::json to_json(const prov::Literal& value) {
    nlohmann::json j{{"type", to_string(value.type)}, {"value", value.lexical}};
    if (!value.lang.empty()) {
        j["lang"] = value.lang;
    }
    return j;
}

inline prov::Literal literal_from_json(const nlohmann::json& j) {
    prov::Literal value;
    value.lexical = j.at("value").get<std::string>();
    value.type = prov::literal_type_from_string(j.at("type").get<std::string>());
    if (j.contains("lang")) {
        value.lang = j.at("lang").get<std::string>();
    }
    return value;
}

inline nlohmann::json params_to_json(const std::map<std::string, prov::Literal>& params) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [key, value] : params) {
        j[key] = to_json(value);
    }
    return j;
}

inline std::map<std::string, prov::Literal> params_from_json(const nlohmann::json& j) {
    std::map<std::string, prov::Literal> params;
    for (const auto& [key, value] : j.items()) {
        params[key] = literal_from_json(value);
    }
    return params;
}

inline nlohmann::json to_json(const pipeline::ToolInfo& tool) {
    return {{"name", tool.name}, {"version", tool.version}};
}

inline pipeline::ToolInfo tool_from_json(const nlohmann::json& j) {
    pipeline::ToolInfo tool;
    tool.name = j.at("name").get<std::string>();
    if (j.contains("version")) {
        tool.version = j.at("version").get<std::string>();
    }
    return tool;
}

} // namespace aimp::internal
