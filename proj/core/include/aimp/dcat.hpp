// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aimp/hash.hpp"
#include "aimp/literal.hpp"
#include "aimp/turtle.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace aimp::dcat {

/// Namespace for health-extension dataset fields (patient counts, imaging
/// modalities, vendors, ...). Predicates under it are carried into
/// DatasetDescriptor::health_ext keyed by local name.
inline constexpr const char* kHealthNs = "https://w3id.org/aimp/health#";

struct Distribution {
    std::string access_url;
    std::string media_type;
    std::optional<std::uint64_t> byte_size;
    std::optional<cas::Checksum> checksum;

    auto operator<=>(const Distribution&) const = default;
};

struct Publisher {
    std::string name;
    std::string kind; // "Organization", "Person", or empty when untyped

    auto operator<=>(const Publisher&) const = default;
};

struct DatasetDescriptor {
    std::string id; // absolute, resolvable IRI
    std::string title;
    std::string description;
    std::string version;
    Publisher publisher;
    std::string license;
    std::vector<std::string> keywords; // sorted
    std::map<std::string, std::vector<prov::Literal>> health_ext;
    std::vector<Distribution> distributions;

    auto operator<=>(const DatasetDescriptor&) const = default;
};

struct ExtractionResult {
    std::vector<DatasetDescriptor> descriptors; // sorted by id
    std::vector<std::string> warnings;          // ignored predicates etc.
};

/// Builds one descriptor per subject typed dcat:Dataset. Mandatory core
/// fields (id, title, publisher, license) missing raise MissingMandatory;
/// predicates outside the known vocabularies are reported as warnings.
ExtractionResult descriptors_from_triples(const turtle::TurtleDoc& doc);

struct DescriptorViolation {
    std::string dataset_id;
    std::string field;
    std::string message;
};

/// Pure invariant check: mandatory core fields non-empty; patient/study
/// counts, when present, are non-negative integers.
std::vector<DescriptorViolation> validate_descriptor(const DatasetDescriptor& descriptor);

/// Renders descriptors back to the Turtle subset (inverse of extraction for
/// the fields this model carries).
turtle::TurtleDoc descriptors_to_triples(const std::vector<DatasetDescriptor>& descriptors);

struct HarvestOptions {
    int retries = 0;            // additional attempts after a network failure
    int timeout_seconds = 30;   // connect and read
};

struct HarvestResult {
    std::vector<DatasetDescriptor> descriptors;
    std::vector<std::string> warnings;
    std::string source_url;
    std::string retrieved_at; // UTC ISO-8601
};

/// Fetches `Accept: text/turtle` from a FAIR Data Point, following up to 5
/// redirects, and extracts dataset descriptors from the body.
/// Throws NetworkError, HttpStatus(code), SyntaxError, MissingMandatory.
HarvestResult harvest(const std::string& fdp_url, const HarvestOptions& options = {});

} // namespace aimp::dcat
