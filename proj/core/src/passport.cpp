// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "aimp/passport.hpp"

#include "aimp/error.hpp"
#include "aimp/version.hpp"
#include "internal/json_codec.hpp"
#include "internal/time_util.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace aimp::passport {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

const std::vector<std::string> kLearningTasks = {"ImageSegmentation", "Classification",
                                                 "Regression", "Detection"};
const std::vector<std::string> kLearningApproaches = {"supervised", "unsupervised",
                                                      "semi-supervised", "reinforcement"};

void check_vocab(const char* field, const std::string& value,
                 const std::vector<std::string>& vocab) {
    if (value.empty() || value.rfind("other:", 0) == 0) return;
    if (std::find(vocab.begin(), vocab.end(), value) != vocab.end()) return;
    std::string allowed;
    for (const auto& v : vocab) allowed += v + ", ";
    throw Error(ErrorKind::BadValue, std::string(field) + " '" + value + "' not in {" + allowed +
                                         "other:<text>}");
}

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot open " + path.string());
    }
    std::ostringstream out;
    out << in.rdbuf();
    return std::move(out).str();
}

} // namespace

std::vector<std::string> validate_manual(const ManualMetadata& manual) {
    std::vector<std::string> missing;
    if (trim(manual.intended_purpose).empty()) missing.push_back("intendedPurpose");
    if (trim(manual.potential_threats).empty()) missing.push_back("potentialThreats");
    if (trim(manual.license).empty()) missing.push_back("license");
    if (trim(manual.owner).empty()) missing.push_back("owner");
    return missing;
}

std::string scaffold_manual_template() {
    return R"(# Manual metadata for the model passport.
# The first four fields are required; the passport cannot be built while
# any of them is blank.
intendedPurpose: ""
potentialThreats: ""
license: ""
owner: ""

# Optional descriptive fields.
modelName: ""
modelVersion: ""
description: ""
# One of: ImageSegmentation, Classification, Regression, Detection, other:<text>
learningTask: ""
# One of: supervised, unsupervised, semi-supervised, reinforcement, other:<text>
learningApproach: ""
algorithmFamily: ""
softwareFramework: ""
)";
}

ManualMetadata parse_manual(std::string_view yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(yaml_text));
    } catch (const YAML::ParserException& e) {
        throw Error(ErrorKind::SyntaxError,
                    "line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    if (!root.IsMap()) {
        throw Error(ErrorKind::SyntaxError, "manual metadata must be a key/value mapping");
    }
    auto get = [&](const char* key) {
        return root[key] && root[key].IsScalar() ? root[key].as<std::string>() : std::string{};
    };
    ManualMetadata manual;
    manual.intended_purpose = get("intendedPurpose");
    manual.potential_threats = get("potentialThreats");
    manual.license = get("license");
    manual.owner = get("owner");
    manual.model_name = get("modelName");
    manual.model_version = get("modelVersion");
    manual.description = get("description");
    manual.learning_task = get("learningTask");
    manual.learning_approach = get("learningApproach");
    manual.algorithm_family = get("algorithmFamily");
    manual.software_framework = get("softwareFramework");
    check_vocab("learningTask", manual.learning_task, kLearningTasks);
    check_vocab("learningApproach", manual.learning_approach, kLearningApproaches);
    return manual;
}

ManualMetadata load_manual(const fs::path& path) {
    return parse_manual(read_text_file(path));
}

TrainingRecord build_training_record(const pipeline::PipelineSpec& spec,
                                     const pipeline::LockFile& lock, const fs::path& workspace) {
    if (!spec.training) {
        throw Error(ErrorKind::BadValue,
                    "pipeline file has no 'training' section; cannot build a training record");
    }
    const auto& config = *spec.training;
    const auto* record = lock.find(config.stage);
    if (!record || !record->succeeded()) {
        throw Error(ErrorKind::IncompleteLock,
                    "training stage '" + config.stage + "' has no successful lock record",
                    {config.stage});
    }

    TrainingRecord training;
    training.hyperparameters = record->params;
    for (const auto& pkg : config.environment) {
        training.environment.push_back({pkg.name, pkg.version});
    }

    bool model_found = false;
    for (const auto& out : record->outs) {
        if (out.path == config.model_path) {
            training.model_artifact = out.ref;
            model_found = true;
        }
    }
    if (!model_found) {
        throw Error(ErrorKind::BadValue, "model path '" + config.model_path +
                                             "' is not an out of stage '" + config.stage + "'");
    }

    DatasetRef dataset_ref;
    for (const auto& dep : record->deps) {
        auto dot = dep.path.rfind('.');
        bool script = dot != std::string::npos &&
                      (dep.path.substr(dot) == ".py" || dep.path.substr(dot) == ".sh");
        if (script && !training.implementation) {
            training.implementation = dep.ref;
        } else if (!script && std::holds_alternative<std::monostate>(dataset_ref)) {
            dataset_ref = dep.ref;
        }
    }

    if (!config.metrics_path.empty()) {
        auto path = workspace / config.metrics_path;
        json metrics;
        try {
            metrics = json::parse(read_text_file(path));
        } catch (const json::exception& e) {
            throw Error(ErrorKind::BadValue,
                        "metrics file " + path.string() + " does not parse: " + e.what());
        }
        if (!metrics.is_object()) {
            throw Error(ErrorKind::BadValue, "metrics file must be a JSON object of name -> number");
        }
        for (const auto& [name, value] : metrics.items()) {
            if (!value.is_number()) {
                throw Error(ErrorKind::BadValue, "metric '" + name + "' is not a number");
            }
            double v = value.get<double>();
            if (!std::isfinite(v)) {
                throw Error(ErrorKind::BadValue, "metric '" + name + "' is not finite");
            }
            training.evaluations.push_back({name, v, dataset_ref});
        }
        std::sort(training.evaluations.begin(), training.evaluations.end(),
                  [](const Evaluation& a, const Evaluation& b) { return a.metric < b.metric; });
    }
    return training;
}

void save_datasets_file(const fs::path& path, const dcat::HarvestResult& result) {
    auto doc = dcat::descriptors_to_triples(result.descriptors);
    doc.prefixes.emplace("aimp", prov::ns::kAimp);
    const std::string aimp_ns = prov::ns::kAimp;
    const std::string xsd_ns = prov::ns::kXsd;
    for (const auto& d : result.descriptors) {
        turtle::IriTerm subject{d.id};
        doc.triples.push_back(
            {subject, aimp_ns + "harvestedFrom", turtle::IriTerm{result.source_url}});
        doc.triples.push_back({subject, aimp_ns + "retrievedAt",
                               turtle::LiteralTerm{result.retrieved_at, xsd_ns + "dateTime", {}}});
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorKind::IoError, "cannot write " + path.string());
    }
    out << turtle::emit(doc);
}

std::vector<HarvestedDataset> load_datasets_file(const fs::path& path) {
    auto doc = turtle::parse(read_text_file(path));
    auto extracted = dcat::descriptors_from_triples(doc);

    const std::string harvested_from = std::string(prov::ns::kAimp) + "harvestedFrom";
    const std::string retrieved_at = std::string(prov::ns::kAimp) + "retrievedAt";
    std::vector<HarvestedDataset> out;
    for (auto& descriptor : extracted.descriptors) {
        HarvestedDataset d;
        for (const auto& triple : doc.triples) {
            const auto* subject = std::get_if<turtle::IriTerm>(&triple.subject);
            if (!subject || subject->value != descriptor.id) continue;
            if (triple.predicate == harvested_from) {
                if (const auto* iri = std::get_if<turtle::IriTerm>(&triple.object)) {
                    d.source_url = iri->value;
                }
            } else if (triple.predicate == retrieved_at) {
                if (const auto* lit = std::get_if<turtle::LiteralTerm>(&triple.object)) {
                    d.retrieved_at = lit->lexical;
                }
            }
        }
        d.descriptor = std::move(descriptor);
        out.push_back(std::move(d));
    }
    return out;
}

std::vector<LockStageSummary> summarize_lock(const pipeline::LockFile& lock,
                                             const pipeline::PipelineSpec& spec) {
    std::vector<LockStageSummary> out;
    for (const auto& stage : spec.stages) {
        const auto* record = lock.find(stage.name);
        if (!record || !record->succeeded()) {
            throw Error(ErrorKind::IncompleteLock,
                        "stage '" + stage.name + "' has no successful lock record", {stage.name});
        }
        LockStageSummary s;
        s.name = record->stage;
        s.fingerprint = record->fingerprint;
        s.command = record->command;
        s.deps = record->deps;
        s.outs = record->outs;
        s.params = record->params;
        s.tool = record->tool;
        s.exit_code = record->exit_code;
        s.started_at = record->started_at;
        s.ended_at = record->ended_at;
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(),
              [](const LockStageSummary& a, const LockStageSummary& b) { return a.name < b.name; });
    return out;
}

namespace {

json path_refs_to_json(const std::vector<pipeline::PathRef>& refs) {
    json arr = json::array();
    for (const auto& entry : refs) {
        auto j = internal::to_json(entry.ref);
        j["path"] = entry.path;
        arr.push_back(std::move(j));
    }
    return arr;
}

std::vector<pipeline::PathRef> path_refs_from_json(const json& arr) {
    std::vector<pipeline::PathRef> refs;
    for (const auto& j : arr) {
        refs.push_back({j.at("path").get<std::string>(), internal::object_ref_from_json(j)});
    }
    return refs;
}

json dataset_ref_to_json(const DatasetRef& ref) {
    if (const auto* iri = std::get_if<std::string>(&ref)) return *iri;
    if (const auto* obj = std::get_if<cas::ObjectRef>(&ref)) return internal::to_json(*obj);
    return nullptr;
}

DatasetRef dataset_ref_from_json(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_object()) return internal::object_ref_from_json(j);
    return std::monostate{};
}

json descriptor_to_json(const dcat::DatasetDescriptor& d) {
    json dists = json::array();
    for (const auto& dist : d.distributions) {
        json jd{{"accessUrl", dist.access_url}, {"mediaType", dist.media_type}};
        jd["byteSize"] = dist.byte_size ? json(*dist.byte_size) : json(nullptr);
        if (dist.checksum) {
            jd["checksum"] = {{"algorithm", to_string(dist.checksum->algorithm)},
                              {"digest", dist.checksum->digest}};
        } else {
            jd["checksum"] = nullptr;
        }
        dists.push_back(std::move(jd));
    }
    json health = json::object();
    for (const auto& [key, values] : d.health_ext) {
        json arr = json::array();
        for (const auto& lit : values) arr.push_back(internal::to_json(lit));
        health[key] = std::move(arr);
    }
    return json{{"id", d.id},
                {"title", d.title},
                {"description", d.description},
                {"version", d.version},
                {"publisher", {{"name", d.publisher.name}, {"kind", d.publisher.kind}}},
                {"license", d.license},
                {"keywords", d.keywords},
                {"healthExt", std::move(health)},
                {"distributions", std::move(dists)}};
}

dcat::DatasetDescriptor descriptor_from_json(const json& j) {
    dcat::DatasetDescriptor d;
    d.id = j.at("id").get<std::string>();
    d.title = j.at("title").get<std::string>();
    d.description = j.at("description").get<std::string>();
    d.version = j.at("version").get<std::string>();
    d.publisher.name = j.at("publisher").at("name").get<std::string>();
    d.publisher.kind = j.at("publisher").at("kind").get<std::string>();
    d.license = j.at("license").get<std::string>();
    d.keywords = j.at("keywords").get<std::vector<std::string>>();
    for (const auto& [key, values] : j.at("healthExt").items()) {
        for (const auto& v : values) {
            d.health_ext[key].push_back(internal::literal_from_json(v));
        }
    }
    for (const auto& jd : j.at("distributions")) {
        dcat::Distribution dist;
        dist.access_url = jd.at("accessUrl").get<std::string>();
        dist.media_type = jd.at("mediaType").get<std::string>();
        if (!jd.at("byteSize").is_null()) dist.byte_size = jd.at("byteSize").get<std::uint64_t>();
        if (!jd.at("checksum").is_null()) {
            const auto& jc = jd.at("checksum");
            auto algo = jc.at("algorithm").get<std::string>() == "md5" ? cas::Checksum::Algo::Md5
                                                                       : cas::Checksum::Algo::Sha256;
            dist.checksum = cas::Checksum{algo, jc.at("digest").get<std::string>()};
        }
        d.distributions.push_back(std::move(dist));
    }
    return d;
}

json training_to_json(const TrainingRecord& t) {
    json evals = json::array();
    for (const auto& e : t.evaluations) {
        evals.push_back({{"metric", e.metric},
                         {"value", e.value},
                         {"datasetRef", dataset_ref_to_json(e.dataset_ref)}});
    }
    json env = json::array();
    for (const auto& pkg : t.environment) {
        env.push_back({{"name", pkg.name}, {"version", pkg.version}});
    }
    json j{{"hyperparameters", internal::params_to_json(t.hyperparameters)},
           {"evaluations", std::move(evals)},
           {"modelArtifact", internal::to_json(t.model_artifact)},
           {"environment", std::move(env)}};
    j["implementation"] = t.implementation ? internal::to_json(*t.implementation) : json(nullptr);
    return j;
}

TrainingRecord training_from_json(const json& j) {
    TrainingRecord t;
    t.hyperparameters = internal::params_from_json(j.at("hyperparameters"));
    for (const auto& je : j.at("evaluations")) {
        t.evaluations.push_back({je.at("metric").get<std::string>(),
                                 je.at("value").get<double>(),
                                 dataset_ref_from_json(je.at("datasetRef"))});
    }
    t.model_artifact = internal::object_ref_from_json(j.at("modelArtifact"));
    for (const auto& jp : j.at("environment")) {
        t.environment.push_back(
            {jp.at("name").get<std::string>(), jp.at("version").get<std::string>()});
    }
    if (!j.at("implementation").is_null()) {
        t.implementation = internal::object_ref_from_json(j.at("implementation"));
    }
    return t;
}

json manual_to_json(const ManualMetadata& m) {
    return json{{"intendedPurpose", m.intended_purpose},
                {"potentialThreats", m.potential_threats},
                {"license", m.license},
                {"owner", m.owner},
                {"modelName", m.model_name},
                {"modelVersion", m.model_version},
                {"description", m.description},
                {"learningTask", m.learning_task},
                {"learningApproach", m.learning_approach},
                {"algorithmFamily", m.algorithm_family},
                {"softwareFramework", m.software_framework}};
}

ManualMetadata manual_from_json(const json& j) {
    ManualMetadata m;
    m.intended_purpose = j.at("intendedPurpose").get<std::string>();
    m.potential_threats = j.at("potentialThreats").get<std::string>();
    m.license = j.at("license").get<std::string>();
    m.owner = j.at("owner").get<std::string>();
    m.model_name = j.at("modelName").get<std::string>();
    m.model_version = j.at("modelVersion").get<std::string>();
    m.description = j.at("description").get<std::string>();
    m.learning_task = j.at("learningTask").get<std::string>();
    m.learning_approach = j.at("learningApproach").get<std::string>();
    m.algorithm_family = j.at("algorithmFamily").get<std::string>();
    m.software_framework = j.at("softwareFramework").get<std::string>();
    return m;
}

json summary_to_json(const LockStageSummary& s, bool for_identity) {
    json j{{"name", s.name},
           {"fingerprint", s.fingerprint},
           {"command", s.command},
           {"deps", path_refs_to_json(s.deps)},
           {"outs", path_refs_to_json(s.outs)},
           {"params", internal::params_to_json(s.params)},
           {"exitCode", s.exit_code}};
    j["tool"] = s.tool ? internal::to_json(*s.tool) : json(nullptr);
    if (!for_identity) {
        j["startedAt"] = s.started_at;
        j["endedAt"] = s.ended_at;
    }
    return j;
}

LockStageSummary summary_from_json(const json& j) {
    LockStageSummary s;
    s.name = j.at("name").get<std::string>();
    s.fingerprint = j.at("fingerprint").get<std::string>();
    s.command = j.at("command").get<std::string>();
    s.deps = path_refs_from_json(j.at("deps"));
    s.outs = path_refs_from_json(j.at("outs"));
    s.params = internal::params_from_json(j.at("params"));
    s.exit_code = j.at("exitCode").get<int>();
    if (!j.at("tool").is_null()) s.tool = internal::tool_from_json(j.at("tool"));
    if (j.contains("startedAt")) s.started_at = j.at("startedAt").get<std::string>();
    if (j.contains("endedAt")) s.ended_at = j.at("endedAt").get<std::string>();
    return s;
}

/// Provenance graph as a JSON value; for identity the volatile timestamp
/// attributes are stripped.
json graph_to_json(const prov::ProvGraph& graph, bool for_identity) {
    auto j = json::parse(graph.to_canonical_json());
    if (for_identity) {
        const std::string started = std::string(prov::ns::kProv) + "startedAtTime";
        const std::string ended = std::string(prov::ns::kProv) + "endedAtTime";
        for (auto& node : j.at("nodes")) {
            node.at("attributes").erase(started);
            node.at("attributes").erase(ended);
        }
    }
    return j;
}

json body_json(const ModelPassport& p, bool for_identity) {
    json datasets = json::array();
    for (const auto& d : p.datasets) {
        json jd{{"descriptor", descriptor_to_json(d.descriptor)}, {"sourceUrl", d.source_url}};
        if (!for_identity) {
            jd["retrievedAt"] = d.retrieved_at;
        }
        datasets.push_back(std::move(jd));
    }
    json lock = json::array();
    for (const auto& s : p.lock) {
        lock.push_back(summary_to_json(s, for_identity));
    }
    json j{{"formatVersion", p.format_version},
           {"toolVersion", p.tool_version},
           {"datasets", std::move(datasets)},
           {"provenance", graph_to_json(p.provenance, for_identity)},
           {"lock", std::move(lock)},
           {"training", training_to_json(p.training)},
           {"manual", manual_to_json(p.manual)}};
    if (!for_identity) {
        j["identity"] = p.identity;
        j["createdAt"] = p.created_at;
    }
    return j;
}

} // namespace

std::string identity_body(const ModelPassport& passport) {
    return body_json(passport, true).dump();
}

std::string compute_identity(const ModelPassport& passport) {
    return "aimp:sha256:" + cas::hash_bytes(identity_body(passport)).sha256.digest;
}

ModelPassport assemble(std::vector<HarvestedDataset> datasets, prov::ProvGraph graph,
                       std::vector<LockStageSummary> lock, TrainingRecord training,
                       ManualMetadata manual) {
    auto missing = validate_manual(manual);
    if (!missing.empty()) {
        std::string list;
        for (std::size_t i = 0; i < missing.size(); ++i) {
            if (i) list += ", ";
            list += missing[i];
        }
        throw Error(ErrorKind::ManualIncomplete, "manual metadata is missing: " + list, missing);
    }
    auto violations = graph.validate();
    if (!violations.empty()) {
        throw Error(ErrorKind::InvalidGraph, "provenance graph has " +
                                                 std::to_string(violations.size()) +
                                                 " violation(s); refusing to assemble");
    }
    for (const auto& e : training.evaluations) {
        if (!std::isfinite(e.value)) {
            throw Error(ErrorKind::BadValue, "evaluation '" + e.metric + "' is not finite");
        }
    }
    if (training.model_artifact.sha256.digest.empty()) {
        throw Error(ErrorKind::BadValue, "training record has no model artifact");
    }

    ModelPassport p;
    p.datasets = std::move(datasets);
    p.provenance = std::move(graph);
    p.lock = std::move(lock);
    p.training = std::move(training);
    p.manual = std::move(manual);
    p.tool_version = kVersion;
    p.created_at = internal::iso_utc_now();
    p.identity = compute_identity(p);
    return p;
}

namespace {

std::string passport_iri(const ModelPassport& p) {
    auto name = p.manual.model_name.empty() ? "model" : p.manual.model_name;
    std::string safe;
    for (char c : name) {
        safe += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '-';
    }
    return std::string(prov::ns::kAimp) + "passport/" + safe;
}

std::string to_turtle(const ModelPassport& p) {
    auto doc = turtle::parse(p.provenance.to_turtle());

    std::vector<dcat::DatasetDescriptor> descriptors;
    for (const auto& d : p.datasets) descriptors.push_back(d.descriptor);
    auto dataset_doc = dcat::descriptors_to_triples(descriptors);
    for (const auto& [label, iri] : dataset_doc.prefixes) {
        doc.prefixes.emplace(label, iri);
    }
    doc.triples.insert(doc.triples.end(), dataset_doc.triples.begin(), dataset_doc.triples.end());

    const std::string aimp = prov::ns::kAimp;
    const std::string dct = prov::ns::kDct;
    const std::string pmlm = prov::ns::kPmlm;
    const std::string xsd = prov::ns::kXsd;
    turtle::IriTerm self{passport_iri(p)};
    auto add = [&](const std::string& predicate, turtle::Term object) {
        doc.triples.push_back({self, predicate, std::move(object)});
    };
    auto lit = [](std::string s) { return turtle::LiteralTerm{std::move(s), {}, {}}; };

    add(turtle::kRdfType, turtle::IriTerm{aimp + "ModelPassport"});
    add(aimp + "identity", lit(p.identity));
    add(dct + "created", turtle::LiteralTerm{p.created_at, xsd + "dateTime", {}});
    add(aimp + "toolVersion", lit(p.tool_version));
    add(aimp + "intendedPurpose", lit(p.manual.intended_purpose));
    add(aimp + "potentialThreats", lit(p.manual.potential_threats));
    add(dct + "license", lit(p.manual.license));
    add(aimp + "owner", lit(p.manual.owner));
    if (!p.manual.model_name.empty()) add(dct + "title", lit(p.manual.model_name));
    if (!p.manual.model_version.empty()) add(aimp + "modelVersion", lit(p.manual.model_version));
    if (!p.manual.description.empty()) add(dct + "description", lit(p.manual.description));
    if (!p.manual.learning_task.empty()) add(pmlm + "learningTask", lit(p.manual.learning_task));
    if (!p.manual.learning_approach.empty()) {
        add(pmlm + "learningApproach", lit(p.manual.learning_approach));
    }
    if (!p.manual.algorithm_family.empty()) add(pmlm + "algorithm", lit(p.manual.algorithm_family));
    if (!p.manual.software_framework.empty()) {
        add(pmlm + "softwareFramework", lit(p.manual.software_framework));
    }
    for (const auto& d : p.datasets) {
        add(aimp + "usesDataset", turtle::IriTerm{d.descriptor.id});
    }
    add(aimp + "modelSha256", lit(p.training.model_artifact.sha256.digest));
    add(aimp + "modelMd5", lit(p.training.model_artifact.md5.digest));
    int i = 0;
    for (const auto& e : p.training.evaluations) {
        turtle::BlankTerm node{"eval" + std::to_string(++i)};
        add(aimp + "hasEvaluation", node);
        doc.triples.push_back({node, aimp + "metric", lit(e.metric)});
        doc.triples.push_back(
            {node, aimp + "value", turtle::LiteralTerm{json(e.value).dump(), xsd + "decimal", {}}});
    }
    return turtle::emit(doc);
}

} // namespace

std::string serialize(const ModelPassport& passport, Format format) {
    auto recomputed = compute_identity(passport);
    if (recomputed != passport.identity) {
        throw Error(ErrorKind::SelfInconsistent,
                    "embedded identity " + passport.identity + " != recomputed " + recomputed);
    }
    if (format == Format::CanonicalJson) {
        return body_json(passport, false).dump();
    }
    return to_turtle(passport);
}

ModelPassport load(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::LoadError, std::string("passport does not parse: ") + e.what());
    }
    ModelPassport p;
    try {
        p.identity = doc.at("identity").get<std::string>();
        p.format_version = doc.at("formatVersion").get<std::string>();
        p.created_at = doc.at("createdAt").get<std::string>();
        p.tool_version = doc.at("toolVersion").get<std::string>();
        for (const auto& jd : doc.at("datasets")) {
            HarvestedDataset d;
            d.descriptor = descriptor_from_json(jd.at("descriptor"));
            d.source_url = jd.at("sourceUrl").get<std::string>();
            if (jd.contains("retrievedAt")) d.retrieved_at = jd.at("retrievedAt").get<std::string>();
            p.datasets.push_back(std::move(d));
        }
        p.provenance = prov::ProvGraph::from_canonical_json(doc.at("provenance").dump());
        for (const auto& js : doc.at("lock")) {
            p.lock.push_back(summary_from_json(js));
        }
        p.training = training_from_json(doc.at("training"));
        p.manual = manual_from_json(doc.at("manual"));
    } catch (const json::exception& e) {
        throw Error(ErrorKind::LoadError, std::string("passport has wrong shape: ") + e.what());
    }
    return p;
}

ModelPassport load_file(const fs::path& path) {
    return load(read_text_file(path));
}

const char* to_string(CheckStatus status) {
    switch (status) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Skip: return "SKIP";
    }
    return "SKIP";
}

bool VerificationReport::passed() const {
    return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) {
        return c.status == CheckStatus::Fail;
    });
}

VerificationReport verify(const ModelPassport& passport,
                          const std::optional<fs::path>& workspace,
                          const std::optional<fs::path>& model_file) {
    VerificationReport report;

    auto recomputed = compute_identity(passport);
    if (recomputed == passport.identity) {
        report.checks.push_back({"identity", CheckStatus::Pass, passport.identity});
    } else {
        report.checks.push_back({"identity", CheckStatus::Fail,
                                 "expected " + passport.identity + ", got " + recomputed});
    }

    if (model_file) {
        std::error_code ec;
        if (!fs::exists(*model_file, ec)) {
            report.checks.push_back(
                {"model-artifact", CheckStatus::Fail, "file not found: " + model_file->string()});
        } else {
            auto ref = cas::hash_path(*model_file);
            const auto& expected = passport.training.model_artifact;
            if (ref.sha256 == expected.sha256 && ref.md5 == expected.md5 &&
                ref.size == expected.size) {
                report.checks.push_back(
                    {"model-artifact", CheckStatus::Pass, ref.sha256.digest});
            } else {
                report.checks.push_back({"model-artifact", CheckStatus::Fail,
                                         "expected sha256 " + expected.sha256.digest + ", got " +
                                             ref.sha256.digest});
            }
        }
    } else {
        report.checks.push_back({"model-artifact", CheckStatus::Skip, "no model file given"});
    }

    if (workspace) {
        std::map<std::string, cas::ObjectRef> recorded;
        for (const auto& stage : passport.lock) {
            for (const auto& entry : stage.deps) recorded.emplace(entry.path, entry.ref);
            for (const auto& entry : stage.outs) recorded.emplace(entry.path, entry.ref);
        }
        for (const auto& [path, ref] : recorded) {
            auto full = *workspace / path;
            std::error_code ec;
            if (!fs::exists(full, ec)) {
                report.checks.push_back(
                    {"workspace:" + path, CheckStatus::Skip, "not present in workspace"});
                continue;
            }
            auto actual = cas::hash_path(full);
            if (actual.sha256 == ref.sha256 && actual.size == ref.size) {
                report.checks.push_back({"workspace:" + path, CheckStatus::Pass, ""});
            } else {
                report.checks.push_back({"workspace:" + path, CheckStatus::Fail,
                                         "expected sha256 " + ref.sha256.digest + ", got " +
                                             actual.sha256.digest});
            }
        }
    } else {
        report.checks.push_back({"workspace-artifacts", CheckStatus::Skip, "no workspace given"});
    }

    auto violations = passport.provenance.validate();
    if (violations.empty()) {
        report.checks.push_back({"provenance-graph", CheckStatus::Pass, ""});
    } else {
        report.checks.push_back({"provenance-graph", CheckStatus::Fail,
                                 violations.front().code + " " + violations.front().subject});
    }
    return report;
}

} // namespace aimp::passport
