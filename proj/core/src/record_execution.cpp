// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "aimp/runner.hpp"

#include <algorithm>
#include <map>

namespace aimp::pipeline {

namespace {

using prov::Iri;
using prov::Literal;
using prov::NodeKind;
using prov::ProvNode;

const std::string kScriptExts[] = {".py", ".sh", ".bash", ".r", ".jl"};

bool looks_like_script(const std::string& path) {
    auto dot = path.rfind('.');
    if (dot == std::string::npos) return false;
    auto ext = path.substr(dot);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return std::find(std::begin(kScriptExts), std::end(kScriptExts), ext) !=
           std::end(kScriptExts);
}

bool safe_param_key(const std::string& key) {
    if (key.empty() || key.front() == '.' || key.back() == '.') return false;
    return std::all_of(key.begin(), key.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_' || c == '-' || c == '.';
    });
}

std::string percent_encode(const std::string& s) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '_' || c == '-' || c == '.') {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += hex[c >> 4];
            out += hex[c & 0x0f];
        }
    }
    return out;
}

/// Builds the provenance graph for one run; all IRIs are minted under
/// aimp:<workspace>/<Kind>/<n> so identical runs in different directories
/// produce identical graphs.
class ExecutionRecorder {
public:
    ExecutionRecorder(const LockFile& lock, const PipelineSpec& spec, prov::ProvGraph& graph)
        : lock_(lock), spec_(spec), graph_(graph), workspace_(spec.name) {}

    void run() {
        for (const auto& stage : spec_.stages) {
            const auto* record = lock_.find(stage.name);
            if (!record || !record->succeeded()) {
                throw Error(ErrorKind::IncompleteLock,
                            "stage '" + stage.name + "' has no successful lock record",
                            {stage.name});
            }
        }
        auto dag = build_dag(spec_);

        auto study = mint("Study");
        graph_.add_node({study, NodeKind::entity(Iri{"mls:Study"}),
                         {{Iri{"dct:title"}, Literal::str(workspace_)}}});
        auto experiment = mint("Experiment");
        graph_.add_node({experiment, NodeKind::entity(Iri{"mls:Experiment"}), {}});
        auto pipeline = mint("Pipeline");
        graph_.add_node({pipeline, NodeKind::entity(Iri{"aimp:Pipeline"}),
                         {{Iri{"aimp:paramsFile"}, Literal::str(spec_.params_file)}}});
        graph_.add_edge({study, Iri{"dct:hasPart"}, experiment});
        graph_.add_edge({experiment, Iri{"dct:hasPart"}, pipeline});

        for (const auto& name : dag.order) {
            add_stage(pipeline, *spec_.find_stage(name), *lock_.find(name));
        }
    }

private:
    const LockFile& lock_;
    const PipelineSpec& spec_;
    prov::ProvGraph& graph_;
    std::string workspace_;
    std::map<std::string, int> counters_;
    std::map<std::string, Iri> artifacts_;          // path -> node id
    std::map<std::string, cas::ObjectRef> art_refs_; // path -> recorded ref
    std::map<std::string, Iri> tools_;              // name\nversion -> node id

    Iri mint(const std::string& kind) {
        int n = ++counters_[kind];
        return Iri{std::string(prov::ns::kAimp) + workspace_ + "/" + kind + "/" +
                   std::to_string(n)};
    }

    Iri param_attr(const std::string& key) const {
        if (safe_param_key(key)) {
            return Iri{"aimp:param." + key};
        }
        return Iri{std::string(prov::ns::kAimp) + "param." + percent_encode(key)};
    }

    Iri artifact_node(const std::string& path, const cas::ObjectRef& ref) {
        auto it = artifacts_.find(path);
        if (it != artifacts_.end()) {
            if (art_refs_.at(path) != ref) {
                throw Error(ErrorKind::IncompleteLock,
                            "artifact '" + path + "' has inconsistent checksums in the lock",
                            {path});
            }
            return it->second;
        }
        const char* class_name = "dcat:Dataset";
        const char* kind_label = "Dataset";
        if (spec_.training && spec_.training->model_path == path) {
            class_name = "aimp:Model";
            kind_label = "Model";
        } else if (looks_like_script(path)) {
            class_name = "aimp:Script";
            kind_label = "Script";
        }
        auto id = mint(kind_label);
        ProvNode node{id, NodeKind::entity(Iri{class_name}), {}};
        node.attributes[Iri{"aimp:path"}] = Literal::str(path);
        node.attributes[Iri{"spdx:checksumValue"}] = Literal::str(ref.md5.digest);
        node.attributes[Iri{"aimp:sha256"}] = Literal::str(ref.sha256.digest);
        node.attributes[Iri{"aimp:byteSize"}] =
            Literal::integer(static_cast<std::int64_t>(ref.size));
        graph_.add_node(std::move(node));
        artifacts_[path] = id;
        art_refs_[path] = ref;
        return id;
    }

    Iri tool_agent(const ToolInfo& tool) {
        auto key = tool.name + "\n" + tool.version;
        auto it = tools_.find(key);
        if (it != tools_.end()) return it->second;
        auto id = mint("SoftwareAgent");
        ProvNode node{id, NodeKind::agent(Iri{"prov:SoftwareAgent"}), {}};
        node.attributes[Iri{"foaf:name"}] = Literal::str(tool.name);
        if (!tool.version.empty()) {
            node.attributes[Iri{"aimp:version"}] = Literal::str(tool.version);
        }
        graph_.add_node(std::move(node));
        tools_[key] = id;
        return id;
    }

    void add_stage(const Iri& pipeline, const StageSpec& stage, const LockRecord& record) {
        auto stage_id = mint("Stage");
        ProvNode stage_node{stage_id, NodeKind::entity(Iri{"aimp:Stage"}), {}};
        stage_node.attributes[Iri{"aimp:name"}] = Literal::str(stage.name);
        stage_node.attributes[Iri{"aimp:command"}] = Literal::str(record.command);
        graph_.add_node(std::move(stage_node));
        graph_.add_edge({pipeline, Iri{"dct:hasPart"}, stage_id});

        auto exec_id = mint("StageExecution");
        ProvNode exec{exec_id, NodeKind::activity(Iri{"aimp:StageExecution"}), {}};
        exec.attributes[Iri{"aimp:fingerprint"}] = Literal::str(record.fingerprint);
        exec.attributes[Iri{"aimp:exitCode"}] = Literal::integer(record.exit_code);
        exec.attributes[Iri{"prov:startedAtTime"}] = Literal::date_time(record.started_at);
        exec.attributes[Iri{"prov:endedAtTime"}] = Literal::date_time(record.ended_at);
        if (record.tool) {
            exec.attributes[Iri{"aimp:toolName"}] = Literal::str(record.tool->name);
            if (!record.tool->version.empty()) {
                exec.attributes[Iri{"aimp:toolVersion"}] = Literal::str(record.tool->version);
            }
        }
        for (const auto& [key, value] : record.params) {
            exec.attributes[param_attr(key)] = value;
        }
        graph_.add_node(std::move(exec));
        graph_.add_edge({exec_id, Iri{"aimp:executionOf"}, stage_id});

        for (const auto& dep : record.deps) {
            auto artifact = artifact_node(dep.path, dep.ref);
            graph_.add_edge({exec_id, Iri{"mls:hasInput"}, artifact});
        }
        for (const auto& out : record.outs) {
            auto artifact = artifact_node(out.path, out.ref);
            graph_.add_edge({exec_id, Iri{"mls:hasOutput"}, artifact});
            graph_.add_edge({artifact, Iri{"prov:wasGeneratedBy"}, exec_id});
        }
        if (record.tool) {
            graph_.add_edge({exec_id, Iri{"prov:wasAssociatedWith"}, tool_agent(*record.tool)});
        }
    }
};

} // namespace

void record_execution(const LockFile& lock, const PipelineSpec& spec, prov::ProvGraph& graph) {
    ExecutionRecorder(lock, spec, graph).run();
}

} // namespace aimp::pipeline
