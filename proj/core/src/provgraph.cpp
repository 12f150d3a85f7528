// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "aimp/provgraph.hpp"

#include "aimp/error.hpp"
#include "aimp/turtle.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

namespace aimp::prov {

namespace {

std::string cat(std::string_view ns, std::string_view local) {
    return std::string(ns) + std::string(local);
}

std::string edge_key(const std::string& s, const std::string& p, const std::string& o) {
    return s + "\n" + p + "\n" + o;
}

std::string xsd_datatype_iri(LiteralType type) {
    switch (type) {
    case LiteralType::String: return {};
    case LiteralType::Integer: return cat(ns::kXsd, "integer");
    case LiteralType::Decimal: return cat(ns::kXsd, "decimal");
    case LiteralType::Boolean: return cat(ns::kXsd, "boolean");
    case LiteralType::DateTime: return cat(ns::kXsd, "dateTime");
    }
    return {};
}

} // namespace

const char* to_string(NodeBase base) {
    switch (base) {
    case NodeBase::Entity: return "Entity";
    case NodeBase::Activity: return "Activity";
    case NodeBase::Agent: return "Agent";
    }
    return "Entity";
}

NodeBase node_base_from_string(std::string_view name) {
    if (name == "Entity") return NodeBase::Entity;
    if (name == "Activity") return NodeBase::Activity;
    if (name == "Agent") return NodeBase::Agent;
    throw Error(ErrorKind::BadValue, "unknown node base '" + std::string(name) + "'");
}

Vocabulary::Vocabulary() {
    auto entity = [&](std::string iri) { classes_.emplace_back(std::move(iri), NodeBase::Entity); };
    auto activity = [&](std::string iri) { classes_.emplace_back(std::move(iri), NodeBase::Activity); };
    auto agent = [&](std::string iri) { classes_.emplace_back(std::move(iri), NodeBase::Agent); };

    entity(cat(ns::kAimp, "PatientRecord"));
    entity(cat(ns::kAimp, "ClinicalAttributeValue"));
    entity(cat(ns::kAimp, "ImagingAttributeValue"));
    entity(cat(ns::kAimp, "ImageStudy"));
    entity(cat(ns::kAimp, "ImageSeries"));
    entity(cat(ns::kDcat, "Dataset"));
    entity(cat(ns::kDcat, "Distribution"));
    entity(cat(ns::kAimp, "Script"));
    entity(cat(ns::kAimp, "ParameterSet"));
    entity(cat(ns::kAimp, "Model"));
    entity(cat(ns::kAimp, "SegmentationMask"));
    entity(cat(ns::kAimp, "LogFile"));
    // Containers for the training workflow: a Study holds Experiments, an
    // Experiment holds one Pipeline, a Pipeline holds Stages.
    entity(cat(ns::kMls, "Study"));
    entity(cat(ns::kMls, "Experiment"));
    entity(cat(ns::kAimp, "Pipeline"));
    entity(cat(ns::kAimp, "Stage"));

    activity(cat(ns::kAimp, "DataCollection"));
    activity(cat(ns::kAimp, "Anonymization"));
    activity(cat(ns::kAimp, "DataUpload"));
    activity(cat(ns::kAimp, "DataCuration"));
    activity(cat(ns::kAimp, "StageExecution"));
    activity(cat(ns::kMls, "ModelEvaluation"));

    agent(cat(ns::kProv, "Person"));
    agent(cat(ns::kProv, "Organization"));
    agent(cat(ns::kProv, "SoftwareAgent"));

    auto rel = [&](std::string iri, NodeBase domain, NodeBase range) {
        relations_.push_back({std::move(iri), domain, range});
    };
    rel(cat(ns::kProv, "used"), NodeBase::Activity, NodeBase::Entity);
    rel(cat(ns::kProv, "wasGeneratedBy"), NodeBase::Entity, NodeBase::Activity);
    rel(cat(ns::kProv, "wasAssociatedWith"), NodeBase::Activity, NodeBase::Agent);
    rel(cat(ns::kProv, "wasPerformedBy"), NodeBase::Activity, NodeBase::Agent);
    rel(cat(ns::kProv, "wasAttributedTo"), NodeBase::Entity, NodeBase::Agent);
    rel(cat(ns::kProv, "wasDerivedFrom"), NodeBase::Entity, NodeBase::Entity);
    rel(cat(ns::kProv, "wasRevisionOf"), NodeBase::Entity, NodeBase::Entity);
    rel(cat(ns::kProv, "wasInvalidatedBy"), NodeBase::Entity, NodeBase::Activity);
    rel(cat(ns::kMls, "hasInput"), NodeBase::Activity, NodeBase::Entity);
    rel(cat(ns::kMls, "hasOutput"), NodeBase::Activity, NodeBase::Entity);
    rel(cat(ns::kAimp, "hasClinicalAttributeValue"), NodeBase::Entity, NodeBase::Entity);
    rel(cat(ns::kAimp, "hasImageAttributeValue"), NodeBase::Entity, NodeBase::Entity);
    rel(cat(ns::kDct, "hasPart"), NodeBase::Entity, NodeBase::Entity);
    rel(cat(ns::kAimp, "executionOf"), NodeBase::Activity, NodeBase::Entity);
}

const Vocabulary& Vocabulary::instance() {
    static const Vocabulary vocab;
    return vocab;
}

std::optional<NodeBase> Vocabulary::class_base(const std::string& iri) const {
    for (const auto& [class_iri, base] : classes_) {
        if (class_iri == iri) return base;
    }
    return std::nullopt;
}

const Vocabulary::Relation* Vocabulary::find_relation(const std::string& iri) const {
    for (const auto& r : relations_) {
        if (r.iri == iri) return &r;
    }
    return nullptr;
}

ProvGraph::ProvGraph() {
    prefixes_ = {
        {"aimp", ns::kAimp}, {"prov", ns::kProv}, {"mls", ns::kMls},  {"pmlm", ns::kPmlm},
        {"dcat", ns::kDcat}, {"dct", ns::kDct},   {"spdx", ns::kSpdx}, {"foaf", ns::kFoaf},
        {"xsd", ns::kXsd},
    };
}

void ProvGraph::add_prefix(const std::string& label, const std::string& namespace_iri) {
    auto it = prefixes_.find(label);
    if (it != prefixes_.end() && it->second != namespace_iri) {
        throw Error(ErrorKind::PrefixConflict, "prefix '" + label + "' already bound to <" +
                                                   it->second + ">, cannot rebind to <" +
                                                   namespace_iri + ">");
    }
    prefixes_[label] = namespace_iri;
}

std::string ProvGraph::expand(const Iri& iri) const {
    iri.check_well_formed();
    if (iri.is_absolute()) {
        return iri.value;
    }
    auto prefix = iri.prefix();
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) {
        throw Error(ErrorKind::UnknownPrefix, "unknown prefix '" + prefix + "' in '" + iri.value + "'",
                    {prefix});
    }
    return it->second + iri.local();
}

bool ProvGraph::has_node(const Iri& id) const {
    return node_index_.count(expand(id)) > 0;
}

const ProvNode* ProvGraph::find_node(const Iri& id) const {
    return node_by_expanded(expand(id));
}

const ProvNode* ProvGraph::node_by_expanded(const std::string& id) const {
    auto it = node_index_.find(id);
    return it == node_index_.end() ? nullptr : &nodes_[it->second];
}

void ProvGraph::add_node(ProvNode node) {
    auto id = expand(node.id);
    if (node_index_.count(id)) {
        throw Error(ErrorKind::DuplicateId, "node '" + id + "' already exists", {id});
    }
    auto class_iri = expand(node.kind.class_iri);
    auto base = Vocabulary::instance().class_base(class_iri);
    if (!base) {
        throw Error(ErrorKind::UnknownClass, "class <" + class_iri + "> is not registered");
    }
    if (*base != node.kind.base) {
        throw Error(ErrorKind::UnknownClass,
                    "class <" + class_iri + "> is registered for " +
                        std::string(to_string(*base)) + ", not " + to_string(node.kind.base));
    }
    for (const auto& [key, value] : node.attributes) {
        expand(key);
        value.check_well_formed();
    }
    node_index_[id] = nodes_.size();
    nodes_.push_back(std::move(node));
}

void ProvGraph::add_edge(ProvEdge edge) {
    auto subject = expand(edge.subject);
    auto object = expand(edge.object);
    auto predicate = expand(edge.predicate);

    const auto* subject_node = node_by_expanded(subject);
    if (!subject_node) {
        throw Error(ErrorKind::UnknownNode, "edge subject '" + subject + "' is not a node", {subject});
    }
    const auto* object_node = node_by_expanded(object);
    if (!object_node) {
        throw Error(ErrorKind::UnknownNode, "edge object '" + object + "' is not a node", {object});
    }
    const auto* relation = Vocabulary::instance().find_relation(predicate);
    if (!relation) {
        throw Error(ErrorKind::UnknownRelation, "relation <" + predicate + "> is not registered");
    }
    if (subject_node->kind.base != relation->domain) {
        throw Error(ErrorKind::RelationDomainViolation,
                    "<" + predicate + "> expects " + std::string(to_string(relation->domain)) +
                        " subject, got " + to_string(subject_node->kind.base),
                    {predicate, to_string(relation->domain), to_string(subject_node->kind.base)});
    }
    if (object_node->kind.base != relation->range) {
        throw Error(ErrorKind::RelationDomainViolation,
                    "<" + predicate + "> expects " + std::string(to_string(relation->range)) +
                        " object, got " + to_string(object_node->kind.base),
                    {predicate, to_string(relation->range), to_string(object_node->kind.base)});
    }
    auto key = edge_key(subject, predicate, object);
    if (std::find(expanded_edges_.begin(), expanded_edges_.end(), key) != expanded_edges_.end()) {
        throw Error(ErrorKind::DuplicateEdge, "duplicate edge " + subject + " -> " + object);
    }
    expanded_edges_.push_back(std::move(key));
    edges_.push_back(std::move(edge));
}

void ProvGraph::insert_node_raw(ProvNode node) {
    try {
        auto id = expand(node.id);
        node_index_.emplace(id, nodes_.size());
    } catch (const Error&) {
        // unresolvable id: validate() will report it
    }
    nodes_.push_back(std::move(node));
}

void ProvGraph::insert_edge_raw(ProvEdge edge) {
    try {
        expanded_edges_.push_back(
            edge_key(expand(edge.subject), expand(edge.predicate), expand(edge.object)));
    } catch (const Error&) {
    }
    edges_.push_back(std::move(edge));
}

void ProvGraph::set_attribute(const Iri& node_id, Iri key, Literal value) {
    auto id = expand(node_id);
    expand(key);
    value.check_well_formed();
    auto it = node_index_.find(id);
    if (it == node_index_.end()) {
        throw Error(ErrorKind::UnknownNode, "no node '" + id + "'", {id});
    }
    nodes_[it->second].attributes[std::move(key)] = std::move(value);
}

std::vector<Violation> ProvGraph::validate() const {
    std::vector<Violation> out;
    const auto& vocab = Vocabulary::instance();

    auto try_expand = [&](const Iri& iri, const std::string& where) -> std::optional<std::string> {
        try {
            return expand(iri);
        } catch (const Error& e) {
            out.push_back({to_string(e.kind()), iri.value, where + ": " + e.what()});
            return std::nullopt;
        }
    };

    std::map<std::string, const ProvNode*> by_id;
    for (const auto& node : nodes_) {
        auto id = try_expand(node.id, "node id");
        if (!id) continue;
        if (by_id.count(*id)) {
            out.push_back({"DuplicateId", *id, "node id occurs more than once"});
            continue;
        }
        by_id[*id] = &node;

        auto class_iri = try_expand(node.kind.class_iri, "node class");
        if (class_iri) {
            auto base = vocab.class_base(*class_iri);
            if (!base) {
                out.push_back({"UnknownClass", *id, "class <" + *class_iri + "> is not registered"});
            } else if (*base != node.kind.base) {
                out.push_back({"UnknownClass", *id,
                               "class <" + *class_iri + "> is not an " + to_string(node.kind.base)});
            }
        }
        for (const auto& [key, value] : node.attributes) {
            try_expand(key, "attribute key");
            try {
                value.check_well_formed();
            } catch (const Error& e) {
                out.push_back({to_string(e.kind()), *id, e.what()});
            }
        }
    }

    std::set<std::string> seen_edges;
    for (const auto& edge : edges_) {
        auto s = try_expand(edge.subject, "edge subject");
        auto p = try_expand(edge.predicate, "edge predicate");
        auto o = try_expand(edge.object, "edge object");
        if (!s || !p || !o) continue;

        const ProvNode* subject_node = by_id.count(*s) ? by_id[*s] : nullptr;
        const ProvNode* object_node = by_id.count(*o) ? by_id[*o] : nullptr;
        if (!subject_node) {
            out.push_back({"UnknownNode", *s, "edge subject does not refer to a node"});
        }
        if (!object_node) {
            out.push_back({"UnknownNode", *o, "edge object does not refer to a node"});
        }
        const auto* relation = vocab.find_relation(*p);
        if (!relation) {
            out.push_back({"UnknownRelation", *p, "relation is not registered"});
        } else {
            if (subject_node && subject_node->kind.base != relation->domain) {
                out.push_back({"RelationDomainViolation", *p,
                               "expects " + std::string(to_string(relation->domain)) +
                                   " subject, got " + to_string(subject_node->kind.base)});
            }
            if (object_node && object_node->kind.base != relation->range) {
                out.push_back({"RelationDomainViolation", *p,
                               "expects " + std::string(to_string(relation->range)) +
                                   " object, got " + to_string(object_node->kind.base)});
            }
        }
        if (!seen_edges.insert(edge_key(*s, *p, *o)).second) {
            out.push_back({"DuplicateEdge", *s, "duplicate edge on <" + *p + ">"});
        }
    }
    return out;
}

namespace {

void require_valid(const ProvGraph& graph) {
    auto violations = graph.validate();
    if (violations.empty()) return;
    std::ostringstream msg;
    msg << "graph has " << violations.size() << " violation(s): ";
    for (std::size_t i = 0; i < violations.size() && i < 3; ++i) {
        if (i) msg << "; ";
        msg << violations[i].code << " " << violations[i].subject;
    }
    throw Error(ErrorKind::InvalidGraph, msg.str());
}

} // namespace

std::string ProvGraph::to_turtle() const {
    require_valid(*this);

    turtle::TurtleDoc doc;
    doc.prefixes = prefixes_;
    for (const auto& node : nodes_) {
        turtle::IriTerm subject{expand(node.id)};
        doc.triples.push_back({subject, turtle::kRdfType, turtle::IriTerm{expand(node.kind.class_iri)}});
        for (const auto& [key, value] : node.attributes) {
            turtle::LiteralTerm lit{value.lexical, xsd_datatype_iri(value.type), value.lang};
            doc.triples.push_back({subject, expand(key), lit});
        }
    }
    for (const auto& edge : edges_) {
        doc.triples.push_back({turtle::IriTerm{expand(edge.subject)}, expand(edge.predicate),
                               turtle::IriTerm{expand(edge.object)}});
    }
    return turtle::emit(doc);
}

namespace {

nlohmann::json literal_to_json(const Literal& value) {
    nlohmann::json j{{"type", to_string(value.type)}, {"value", value.lexical}};
    if (!value.lang.empty()) {
        j["lang"] = value.lang;
    }
    return j;
}

Literal literal_from_json(const nlohmann::json& j) {
    Literal value;
    value.lexical = j.at("value").get<std::string>();
    value.type = literal_type_from_string(j.at("type").get<std::string>());
    if (j.contains("lang")) {
        value.lang = j.at("lang").get<std::string>();
    }
    return value;
}

} // namespace

std::string ProvGraph::to_canonical_json() const {
    require_valid(*this);

    // nlohmann's default object type keeps keys sorted bytewise, which is
    // exactly the canonical ordering; dump() emits compact UTF-8.
    nlohmann::json nodes = nlohmann::json::array();
    std::vector<const ProvNode*> ordered;
    ordered.reserve(nodes_.size());
    for (const auto& n : nodes_) ordered.push_back(&n);
    std::sort(ordered.begin(), ordered.end(), [&](const ProvNode* a, const ProvNode* b) {
        return expand(a->id) < expand(b->id);
    });
    for (const auto* node : ordered) {
        nlohmann::json attrs = nlohmann::json::object();
        for (const auto& [key, value] : node->attributes) {
            attrs[expand(key)] = literal_to_json(value);
        }
        nodes.push_back({{"id", expand(node->id)},
                         {"kind", to_string(node->kind.base)},
                         {"class", expand(node->kind.class_iri)},
                         {"attributes", std::move(attrs)}});
    }

    std::vector<std::array<std::string, 3>> edge_rows;
    edge_rows.reserve(edges_.size());
    for (const auto& e : edges_) {
        edge_rows.push_back({expand(e.subject), expand(e.predicate), expand(e.object)});
    }
    std::sort(edge_rows.begin(), edge_rows.end());
    nlohmann::json edges = nlohmann::json::array();
    for (auto& row : edge_rows) {
        edges.push_back({{"subject", row[0]}, {"predicate", row[1]}, {"object", row[2]}});
    }

    return nlohmann::json{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}}.dump();
}

ProvGraph ProvGraph::from_canonical_json(std::string_view bytes) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::LoadError, std::string("graph JSON does not parse: ") + e.what());
    }
    // Load leniently: structural problems (dangling edges, unknown classes)
    // are validate()'s to report, not the loader's to reject.
    ProvGraph graph;
    try {
        for (const auto& jn : doc.at("nodes")) {
            ProvNode node;
            node.id = Iri{jn.at("id").get<std::string>()};
            node.kind.base = node_base_from_string(jn.at("kind").get<std::string>());
            node.kind.class_iri = Iri{jn.at("class").get<std::string>()};
            for (const auto& [key, value] : jn.at("attributes").items()) {
                node.attributes[Iri{key}] = literal_from_json(value);
            }
            graph.insert_node_raw(std::move(node));
        }
        for (const auto& je : doc.at("edges")) {
            graph.insert_edge_raw({Iri{je.at("subject").get<std::string>()},
                                   Iri{je.at("predicate").get<std::string>()},
                                   Iri{je.at("object").get<std::string>()}});
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::LoadError, std::string("graph JSON has wrong shape: ") + e.what());
    }
    return graph;
}

ProvGraph merge(const ProvGraph& a, const ProvGraph& b) {
    for (const auto& [label, iri] : b.prefixes()) {
        auto it = a.prefixes().find(label);
        if (it != a.prefixes().end() && it->second != iri) {
            throw Error(ErrorKind::PrefixConflict,
                        "prefix '" + label + "' bound to <" + it->second + "> and <" + iri + ">");
        }
    }

    ProvGraph out = a;
    for (const auto& [label, iri] : b.prefixes()) {
        out.add_prefix(label, iri);
    }

    for (const auto& node : b.nodes()) {
        auto id = b.expand(node.id);
        if (const auto* existing = out.find_node(Iri{id})) {
            if (out.expand(existing->kind.class_iri) != b.expand(node.kind.class_iri) ||
                existing->kind.base != node.kind.base) {
                throw Error(ErrorKind::KindConflict,
                            "node '" + id + "' has conflicting classes in the two graphs", {id});
            }
            for (const auto& [key, value] : node.attributes) {
                auto expanded_key = b.expand(key);
                auto it = existing->attributes.end();
                for (auto ait = existing->attributes.begin(); ait != existing->attributes.end(); ++ait) {
                    if (out.expand(ait->first) == expanded_key) {
                        it = ait;
                        break;
                    }
                }
                if (it != existing->attributes.end()) {
                    if (it->second != value) {
                        throw Error(ErrorKind::AttributeConflict,
                                    "node '" + id + "' attribute <" + expanded_key +
                                        "> has conflicting values",
                                    {id, expanded_key});
                    }
                } else {
                    out.set_attribute(Iri{id}, key, value);
                }
            }
        } else {
            out.add_node(node);
        }
    }

    std::set<std::string> present;
    for (const auto& e : out.edges()) {
        present.insert(edge_key(out.expand(e.subject), out.expand(e.predicate), out.expand(e.object)));
    }
    for (const auto& e : b.edges()) {
        auto key = edge_key(b.expand(e.subject), b.expand(e.predicate), b.expand(e.object));
        if (present.insert(key).second) {
            out.add_edge(e);
        }
    }
    return out;
}

} // namespace aimp::prov
