// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aimp/dcat.hpp"
#include "aimp/hash.hpp"
#include "aimp/lockfile.hpp"
#include "aimp/pipeline.hpp"
#include "aimp/provgraph.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace aimp::passport {

/// Metadata the developer must declare by hand before a model can be
/// registered. intendedPurpose, potentialThreats, license and owner are
/// mandatory; the vocabulary fields accept an "other:<text>" escape.
struct ManualMetadata {
    std::string intended_purpose;
    std::string potential_threats;
    std::string license;
    std::string owner;
    std::string model_name;
    std::string model_version;
    std::string description;
    std::string learning_task;     // ImageSegmentation | Classification | Regression | Detection | other:<text>
    std::string learning_approach; // supervised | unsupervised | semi-supervised | reinforcement | other:<text>
    std::string algorithm_family;
    std::string software_framework;

    auto operator<=>(const ManualMetadata&) const = default;
};

/// Names of required fields that are missing or whitespace-only.
std::vector<std::string> validate_manual(const ManualMetadata& manual);

/// Commented key/value template covering every ManualMetadata field;
/// deterministic output that parses back with all values empty.
std::string scaffold_manual_template();

ManualMetadata parse_manual(std::string_view yaml_text);
ManualMetadata load_manual(const std::filesystem::path& path);

using DatasetRef = std::variant<std::monostate, std::string, cas::ObjectRef>;

struct Evaluation {
    std::string metric;
    double value = 0.0;
    DatasetRef dataset_ref;
};

struct PackageInfo {
    std::string name;
    std::string version;
};

struct TrainingRecord {
    std::map<std::string, prov::Literal> hyperparameters;
    std::vector<Evaluation> evaluations; // sorted by metric name
    cas::ObjectRef model_artifact;
    std::vector<PackageInfo> environment;
    std::optional<cas::ObjectRef> implementation; // the training script
};

/// Derives the training record from the lock: hyperparameters from the
/// training stage's param snapshot, the model artifact from its outs, and
/// evaluations from the configured metrics JSON file.
TrainingRecord build_training_record(const pipeline::PipelineSpec& spec,
                                     const pipeline::LockFile& lock,
                                     const std::filesystem::path& workspace);

struct HarvestedDataset {
    dcat::DatasetDescriptor descriptor;
    std::string source_url;
    std::string retrieved_at; // excluded from identity
};

/// Writes harvested descriptors as Turtle, with per-dataset provenance
/// triples (source URL, retrieval time) so they can be embedded later.
void save_datasets_file(const std::filesystem::path& path, const dcat::HarvestResult& result);

/// Reads a datasets file written by save_datasets_file (or any Turtle
/// document with dcat:Dataset descriptions).
std::vector<HarvestedDataset> load_datasets_file(const std::filesystem::path& path);

/// Per-stage execution snapshot embedded in the passport; timestamps are
/// kept for display but excluded from identity.
struct LockStageSummary {
    std::string name;
    std::string fingerprint;
    std::string command;
    std::vector<pipeline::PathRef> deps;
    std::vector<pipeline::PathRef> outs;
    std::map<std::string, prov::Literal> params;
    std::optional<pipeline::ToolInfo> tool;
    int exit_code = 0;
    std::string started_at;
    std::string ended_at;
};

/// Summarizes a complete lock, sorted by stage name. Throws IncompleteLock.
std::vector<LockStageSummary> summarize_lock(const pipeline::LockFile& lock,
                                             const pipeline::PipelineSpec& spec);

struct ModelPassport {
    std::string identity; // "aimp:sha256:<64 hex>"
    std::string format_version = "1";
    std::string created_at;
    std::string tool_version;
    std::vector<HarvestedDataset> datasets;
    prov::ProvGraph provenance;
    std::vector<LockStageSummary> lock;
    TrainingRecord training;
    ManualMetadata manual;
};

/// Builds the passport, validating the manual metadata and provenance graph,
/// and embeds the computed identity. Throws ManualIncomplete (listing the
/// blank fields), InvalidGraph, IncompleteLock.
ModelPassport assemble(std::vector<HarvestedDataset> datasets, prov::ProvGraph graph,
                       std::vector<LockStageSummary> lock, TrainingRecord training,
                       ManualMetadata manual);

/// sha256 over the canonical JSON body with volatile fields excluded: the
/// identity itself, createdAt, dataset retrieval timestamps, stage start/end
/// timestamps, and provenance timestamp attributes. Checksums, params,
/// metrics, descriptors and manual text are all included.
std::string compute_identity(const ModelPassport& passport);

/// The exact bytes hashed by compute_identity (for determinism tests and
/// format documentation).
std::string identity_body(const ModelPassport& passport);

enum class Format { CanonicalJson, Turtle };

/// Canonical JSON is byte-stable; Turtle embeds the provenance graph plus
/// passport-level triples. Throws SelfInconsistent when the embedded
/// identity no longer matches the content.
std::string serialize(const ModelPassport& passport, Format format);

ModelPassport load(std::string_view json_text);
ModelPassport load_file(const std::filesystem::path& path);

enum class CheckStatus { Pass, Fail, Skip };

const char* to_string(CheckStatus status);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Skip;
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool passed() const; // all executed checks pass; skips are not failures
};

/// Re-verifies a passport: (1) identity recomputation, (2) the model file
/// against the recorded artifact when given, (3) every lock-recorded
/// workspace path that is present against its recorded checksum (missing
/// files are skipped), (4) provenance graph validity.
VerificationReport verify(const ModelPassport& passport,
                          const std::optional<std::filesystem::path>& workspace = std::nullopt,
                          const std::optional<std::filesystem::path>& model_file = std::nullopt);

} // namespace aimp::passport
