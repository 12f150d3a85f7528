// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aimp/literal.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aimp::prov {

/// Namespace IRIs seeded into every graph's prefix table.
namespace ns {
inline constexpr const char* kAimp = "https://w3id.org/aimp/";
inline constexpr const char* kProv = "http://www.w3.org/ns/prov#";
inline constexpr const char* kMls = "http://www.w3.org/ns/mls#";
inline constexpr const char* kPmlm = "https://w3id.org/pmlm#";
inline constexpr const char* kDcat = "http://www.w3.org/ns/dcat#";
inline constexpr const char* kDct = "http://purl.org/dc/terms/";
inline constexpr const char* kSpdx = "http://spdx.org/rdf/terms#";
inline constexpr const char* kFoaf = "http://xmlns.com/foaf/0.1/";
inline constexpr const char* kXsd = "http://www.w3.org/2001/XMLSchema#";
} // namespace ns

enum class NodeBase { Entity, Activity, Agent };

const char* to_string(NodeBase base);
NodeBase node_base_from_string(std::string_view name);

struct NodeKind {
    NodeBase base = NodeBase::Entity;
    Iri class_iri;

    static NodeKind entity(Iri class_iri) { return {NodeBase::Entity, std::move(class_iri)}; }
    static NodeKind activity(Iri class_iri) { return {NodeBase::Activity, std::move(class_iri)}; }
    static NodeKind agent(Iri class_iri) { return {NodeBase::Agent, std::move(class_iri)}; }

    auto operator<=>(const NodeKind&) const = default;
};

struct ProvNode {
    Iri id;
    NodeKind kind;
    std::map<Iri, Literal> attributes;
};

struct ProvEdge {
    Iri subject;
    Iri predicate;
    Iri object;
};

struct Violation {
    std::string code;    // error-kind name, e.g. "UnknownNode"
    std::string subject; // offending IRI or edge description
    std::string message;
};

/// The closed class and relation vocabulary. Classes are registered per node
/// base; every relation carries exactly one (domain, range) pair.
class Vocabulary {
public:
    struct Relation {
        std::string iri;
        NodeBase domain;
        NodeBase range;
    };

    static const Vocabulary& instance();

    std::optional<NodeBase> class_base(const std::string& absolute_class_iri) const;
    const Relation* find_relation(const std::string& absolute_predicate_iri) const;

    const std::vector<std::pair<std::string, NodeBase>>& classes() const { return classes_; }
    const std::vector<Relation>& relations() const { return relations_; }

private:
    Vocabulary();
    std::vector<std::pair<std::string, NodeBase>> classes_;
    std::vector<Relation> relations_;
};

/// Typed provenance graph. Construction operations validate eagerly, so a
/// graph built only through them always passes validate(). Values are
/// copyable; share read-only across threads freely.
class ProvGraph {
public:
    ProvGraph();

    void add_prefix(const std::string& label, const std::string& namespace_iri);
    const std::map<std::string, std::string>& prefixes() const { return prefixes_; }

    /// Throws DuplicateId when the id exists, UnknownClass for classes
    /// outside the vocabulary, and BadIri/BadLiteral/UnknownPrefix for
    /// malformed content.
    void add_node(ProvNode node);

    /// Throws UnknownNode for dangling endpoints, UnknownRelation for
    /// unregistered predicates, RelationDomainViolation on a domain/range
    /// mismatch, and DuplicateEdge for repeated triples.
    void add_edge(ProvEdge edge);

    /// Sets or overwrites one attribute on an existing node.
    void set_attribute(const Iri& node_id, Iri key, Literal value);

    bool has_node(const Iri& id) const;
    const ProvNode* find_node(const Iri& id) const;
    const std::vector<ProvNode>& nodes() const { return nodes_; }
    const std::vector<ProvEdge>& edges() const { return edges_; }

    /// Expands to an absolute IRI; throws UnknownPrefix.
    std::string expand(const Iri& iri) const;

    /// Reports every violation without mutating; empty means valid.
    std::vector<Violation> validate() const;

    /// Deterministic Turtle rendering of the whole graph (throws
    /// InvalidGraph when validate() is nonempty).
    std::string to_turtle() const;

    /// Canonical JSON bytes: keys sorted bytewise, compact, UTF-8, IRIs
    /// expanded, nodes sorted by id, edges sorted by (subject, predicate,
    /// object). Insertion order never leaks into the output.
    std::string to_canonical_json() const;

    static ProvGraph from_canonical_json(std::string_view bytes);

private:
    std::map<std::string, std::string> prefixes_;
    std::vector<ProvNode> nodes_;
    std::vector<ProvEdge> edges_;
    std::map<std::string, std::size_t> node_index_; // expanded id -> nodes_ index
    std::vector<std::string> expanded_edges_;       // "s\npred\no" keys, for dup checks

    // Lenient insertion for deserialization; problems surface via validate().
    void insert_node_raw(ProvNode node);
    void insert_edge_raw(ProvEdge edge);

    const ProvNode* node_by_expanded(const std::string& id) const;
};

/// Union of two graphs: prefix tables must agree on shared labels; nodes are
/// merged by id (attribute conflicts are errors); edges are deduplicated.
/// Associative and idempotent on conflict-free inputs.
ProvGraph merge(const ProvGraph& a, const ProvGraph& b);

} // namespace aimp::prov
