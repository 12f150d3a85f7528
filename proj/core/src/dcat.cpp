// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "aimp/dcat.hpp"

#include "aimp/error.hpp"
#include "aimp/provgraph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <variant>

namespace aimp::dcat {

namespace {

using turtle::BlankTerm;
using turtle::IriTerm;
using turtle::LiteralTerm;
using turtle::Term;
using turtle::Triple;

const std::string kDcatNs = prov::ns::kDcat;
const std::string kDctNs = prov::ns::kDct;
const std::string kSpdxNs = prov::ns::kSpdx;
const std::string kFoafNs = prov::ns::kFoaf;
const std::string kXsdNs = prov::ns::kXsd;
const std::string kHealth = kHealthNs;

std::string subject_key(const Term& t) {
    if (const auto* iri = std::get_if<IriTerm>(&t)) return "I" + iri->value;
    if (const auto* blank = std::get_if<BlankTerm>(&t)) return "B" + blank->label;
    return "L";
}

/// predicate -> objects, per subject.
using PropertyMap = std::map<std::string, std::vector<Term>>;

std::map<std::string, PropertyMap> index_by_subject(const turtle::TurtleDoc& doc) {
    std::map<std::string, PropertyMap> index;
    for (const auto& triple : doc.triples) {
        index[subject_key(triple.subject)][triple.predicate].push_back(triple.object);
    }
    return index;
}

prov::Literal literal_from_term(const LiteralTerm& term) {
    prov::Literal lit;
    lit.lexical = term.lexical;
    lit.lang = term.lang;
    if (term.datatype == kXsdNs + "integer") {
        lit.type = prov::LiteralType::Integer;
    } else if (term.datatype == kXsdNs + "decimal") {
        lit.type = prov::LiteralType::Decimal;
    } else if (term.datatype == kXsdNs + "boolean") {
        lit.type = prov::LiteralType::Boolean;
    } else if (term.datatype == kXsdNs + "dateTime") {
        lit.type = prov::LiteralType::DateTime;
    } else {
        lit.type = prov::LiteralType::String;
    }
    return lit;
}

LiteralTerm literal_to_term(const prov::Literal& lit) {
    LiteralTerm term;
    term.lexical = lit.lexical;
    term.lang = lit.lang;
    switch (lit.type) {
    case prov::LiteralType::String: break;
    case prov::LiteralType::Integer: term.datatype = kXsdNs + "integer"; break;
    case prov::LiteralType::Decimal: term.datatype = kXsdNs + "decimal"; break;
    case prov::LiteralType::Boolean: term.datatype = kXsdNs + "boolean"; break;
    case prov::LiteralType::DateTime: term.datatype = kXsdNs + "dateTime"; break;
    }
    return term;
}

/// Sorted lexical forms of all literal objects under a predicate.
std::vector<std::string> literal_values(const PropertyMap& props, const std::string& predicate) {
    std::vector<std::string> out;
    auto it = props.find(predicate);
    if (it == props.end()) return out;
    for (const auto& term : it->second) {
        if (const auto* lit = std::get_if<LiteralTerm>(&term)) {
            out.push_back(lit->lexical);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string first_literal(const PropertyMap& props, const std::string& predicate) {
    auto values = literal_values(props, predicate);
    return values.empty() ? std::string{} : values.front();
}

/// License can be an IRI or a literal; either way it becomes a string.
std::string iri_or_literal(const PropertyMap& props, const std::string& predicate) {
    auto it = props.find(predicate);
    if (it == props.end() || it->second.empty()) return {};
    std::vector<std::string> values;
    for (const auto& term : it->second) {
        if (const auto* iri = std::get_if<IriTerm>(&term)) values.push_back(iri->value);
        if (const auto* lit = std::get_if<LiteralTerm>(&term)) values.push_back(lit->lexical);
    }
    std::sort(values.begin(), values.end());
    return values.empty() ? std::string{} : values.front();
}

std::optional<cas::Checksum> extract_checksum(const std::map<std::string, PropertyMap>& index,
                                              const PropertyMap& dist_props) {
    auto it = dist_props.find(kSpdxNs + "checksum");
    if (it == dist_props.end() || it->second.empty()) return std::nullopt;
    auto node_it = index.find(subject_key(it->second.front()));
    if (node_it == index.end()) return std::nullopt;
    const auto& node = node_it->second;
    auto value = first_literal(node, kSpdxNs + "checksumValue");
    if (value.empty()) return std::nullopt;

    auto algorithm = cas::Checksum::Algo::Sha256;
    auto algo_it = node.find(kSpdxNs + "algorithm");
    if (algo_it != node.end() && !algo_it->second.empty()) {
        if (const auto* iri = std::get_if<IriTerm>(&algo_it->second.front())) {
            if (iri->value.find("md5") != std::string::npos) {
                algorithm = cas::Checksum::Algo::Md5;
            }
        }
    } else if (value.size() == 32) {
        algorithm = cas::Checksum::Algo::Md5;
    }
    cas::Checksum checksum{algorithm, value};
    checksum.check_well_formed();
    return checksum;
}

Publisher extract_publisher(const std::map<std::string, PropertyMap>& index,
                            const PropertyMap& props) {
    Publisher publisher;
    auto it = props.find(kDctNs + "publisher");
    if (it == props.end() || it->second.empty()) return publisher;
    const auto& term = it->second.front();
    if (const auto* lit = std::get_if<LiteralTerm>(&term)) {
        publisher.name = lit->lexical;
        return publisher;
    }
    auto node_it = index.find(subject_key(term));
    if (node_it == index.end()) {
        // A bare IRI with no further description still identifies someone.
        if (const auto* iri = std::get_if<IriTerm>(&term)) publisher.name = iri->value;
        return publisher;
    }
    publisher.name = first_literal(node_it->second, kFoafNs + "name");
    auto type_it = node_it->second.find(turtle::kRdfType);
    if (type_it != node_it->second.end()) {
        for (const auto& t : type_it->second) {
            if (const auto* iri = std::get_if<IriTerm>(&t)) {
                if (iri->value == kFoafNs + "Organization") publisher.kind = "Organization";
                if (iri->value == kFoafNs + "Person") publisher.kind = "Person";
            }
        }
    }
    return publisher;
}

Distribution extract_distribution(const std::map<std::string, PropertyMap>& index,
                                  const Term& dist_term) {
    Distribution dist;
    auto node_it = index.find(subject_key(dist_term));
    if (node_it == index.end()) {
        if (const auto* iri = std::get_if<IriTerm>(&dist_term)) dist.access_url = iri->value;
        return dist;
    }
    const auto& props = node_it->second;
    auto url_it = props.find(kDcatNs + "accessURL");
    if (url_it != props.end() && !url_it->second.empty()) {
        if (const auto* iri = std::get_if<IriTerm>(&url_it->second.front())) {
            dist.access_url = iri->value;
        } else if (const auto* lit = std::get_if<LiteralTerm>(&url_it->second.front())) {
            dist.access_url = lit->lexical;
        }
    }
    dist.media_type = first_literal(props, kDcatNs + "mediaType");
    auto size = first_literal(props, kDcatNs + "byteSize");
    if (!size.empty() && prov::lexical_matches(prov::LiteralType::Integer, size) &&
        size.front() != '-') {
        dist.byte_size = std::stoull(size);
    }
    dist.checksum = extract_checksum(index, props);
    return dist;
}

bool in_namespace(const std::string& iri, const std::string& ns) {
    return iri.size() > ns.size() && iri.compare(0, ns.size(), ns) == 0;
}

} // namespace

ExtractionResult descriptors_from_triples(const turtle::TurtleDoc& doc) {
    auto index = index_by_subject(doc);
    ExtractionResult result;

    for (const auto& triple : doc.triples) {
        if (triple.predicate != turtle::kRdfType) continue;
        const auto* type_iri = std::get_if<IriTerm>(&triple.object);
        if (!type_iri || type_iri->value != kDcatNs + "Dataset") continue;

        const auto* id = std::get_if<IriTerm>(&triple.subject);
        if (!id) {
            throw Error(ErrorKind::MissingMandatory,
                        "dataset has a blank-node subject and therefore no resolvable id",
                        {"_:", "id"});
        }

        const auto& props = index.at(subject_key(triple.subject));
        DatasetDescriptor d;
        d.id = id->value;
        d.title = first_literal(props, kDctNs + "title");
        d.description = first_literal(props, kDctNs + "description");
        d.version = first_literal(props, kDcatNs + "version");
        d.license = iri_or_literal(props, kDctNs + "license");
        d.publisher = extract_publisher(index, props);
        d.keywords = literal_values(props, kDcatNs + "keyword");
        d.keywords.erase(std::unique(d.keywords.begin(), d.keywords.end()), d.keywords.end());

        for (const auto& [predicate, objects] : props) {
            if (predicate == turtle::kRdfType) continue;
            if (in_namespace(predicate, kHealth)) {
                auto key = predicate.substr(kHealth.size());
                for (const auto& term : objects) {
                    if (const auto* lit = std::get_if<LiteralTerm>(&term)) {
                        d.health_ext[key].push_back(literal_from_term(*lit));
                    }
                }
                auto& values = d.health_ext[key];
                std::sort(values.begin(), values.end());
            } else if (!in_namespace(predicate, kDcatNs) && !in_namespace(predicate, kDctNs) &&
                       !in_namespace(predicate, kSpdxNs)) {
                result.warnings.push_back("ignored predicate <" + predicate + "> on dataset " + d.id);
            }
        }

        if (const auto it = props.find(kDcatNs + "distribution"); it != props.end()) {
            for (const auto& term : it->second) {
                d.distributions.push_back(extract_distribution(index, term));
            }
            std::sort(d.distributions.begin(), d.distributions.end());
        }

        for (const auto& [field, value] :
             {std::pair{"title", d.title}, {"license", d.license}, {"publisher", d.publisher.name}}) {
            if (value.empty()) {
                throw Error(ErrorKind::MissingMandatory,
                            "dataset " + d.id + " is missing mandatory field '" + field + "'",
                            {d.id, field});
            }
        }
        result.descriptors.push_back(std::move(d));
    }

    std::sort(result.descriptors.begin(), result.descriptors.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    std::sort(result.warnings.begin(), result.warnings.end());
    result.warnings.erase(std::unique(result.warnings.begin(), result.warnings.end()),
                          result.warnings.end());
    return result;
}

std::vector<DescriptorViolation> validate_descriptor(const DatasetDescriptor& d) {
    std::vector<DescriptorViolation> out;
    auto require = [&](const char* field, const std::string& value) {
        if (value.empty()) {
            out.push_back({d.id, field, std::string("mandatory field '") + field + "' is empty"});
        }
    };
    require("id", d.id);
    require("title", d.title);
    require("publisher", d.publisher.name);
    require("license", d.license);

    if (!d.id.empty() && d.id.find("://") == std::string::npos) {
        out.push_back({d.id, "id", "dataset id must be an absolute, resolvable IRI"});
    }

    for (const char* field : {"numberOfPatients", "numberOfStudies"}) {
        auto it = d.health_ext.find(field);
        if (it == d.health_ext.end()) continue;
        for (const auto& lit : it->second) {
            if (!prov::lexical_matches(prov::LiteralType::Integer, lit.lexical) ||
                lit.lexical.front() == '-') {
                out.push_back({d.id, field,
                               std::string(field) + " must be a non-negative integer, got '" +
                                   lit.lexical + "'"});
            }
        }
    }

    for (const auto& dist : d.distributions) {
        if (dist.access_url.empty()) {
            out.push_back({d.id, "distribution", "distribution is missing accessURL"});
        }
    }
    return out;
}

turtle::TurtleDoc descriptors_to_triples(const std::vector<DatasetDescriptor>& descriptors) {
    turtle::TurtleDoc doc;
    doc.prefixes = {
        {"dcat", kDcatNs}, {"dct", kDctNs},   {"spdx", kSpdxNs},
        {"foaf", kFoafNs}, {"xsd", kXsdNs},   {"health", kHealthNs},
    };

    int counter = 0;
    for (const auto& d : descriptors) {
        ++counter;
        IriTerm subject{d.id};
        auto add = [&](const std::string& predicate, Term object) {
            doc.triples.push_back({subject, predicate, std::move(object)});
        };
        add(turtle::kRdfType, IriTerm{kDcatNs + "Dataset"});
        add(kDctNs + "title", LiteralTerm{d.title, {}, {}});
        if (!d.description.empty()) add(kDctNs + "description", LiteralTerm{d.description, {}, {}});
        if (!d.version.empty()) add(kDcatNs + "version", LiteralTerm{d.version, {}, {}});
        if (d.license.find("://") != std::string::npos) {
            add(kDctNs + "license", IriTerm{d.license});
        } else {
            add(kDctNs + "license", LiteralTerm{d.license, {}, {}});
        }
        for (const auto& keyword : d.keywords) {
            add(kDcatNs + "keyword", LiteralTerm{keyword, {}, {}});
        }
        if (!d.publisher.name.empty()) {
            BlankTerm pub{"pub" + std::to_string(counter)};
            add(kDctNs + "publisher", pub);
            if (!d.publisher.kind.empty()) {
                doc.triples.push_back({pub, turtle::kRdfType, IriTerm{kFoafNs + d.publisher.kind}});
            }
            doc.triples.push_back({pub, kFoafNs + "name", LiteralTerm{d.publisher.name, {}, {}}});
        }
        for (const auto& [key, values] : d.health_ext) {
            for (const auto& lit : values) {
                add(kHealth + key, literal_to_term(lit));
            }
        }
        int dist_counter = 0;
        for (const auto& dist : d.distributions) {
            ++dist_counter;
            BlankTerm node{"dist" + std::to_string(counter) + "_" + std::to_string(dist_counter)};
            add(kDcatNs + "distribution", node);
            auto dadd = [&](const std::string& predicate, Term object) {
                doc.triples.push_back({node, predicate, std::move(object)});
            };
            dadd(turtle::kRdfType, IriTerm{kDcatNs + "Distribution"});
            if (!dist.access_url.empty()) dadd(kDcatNs + "accessURL", IriTerm{dist.access_url});
            if (!dist.media_type.empty()) {
                dadd(kDcatNs + "mediaType", LiteralTerm{dist.media_type, {}, {}});
            }
            if (dist.byte_size) {
                dadd(kDcatNs + "byteSize",
                     LiteralTerm{std::to_string(*dist.byte_size), kXsdNs + "integer", {}});
            }
            if (dist.checksum) {
                BlankTerm ck{node.label + "ck"};
                dadd(kSpdxNs + "checksum", ck);
                doc.triples.push_back(
                    {ck, kSpdxNs + "algorithm",
                     IriTerm{kSpdxNs + (dist.checksum->algorithm == cas::Checksum::Algo::Md5
                                            ? "checksumAlgorithm_md5"
                                            : "checksumAlgorithm_sha256")}});
                doc.triples.push_back(
                    {ck, kSpdxNs + "checksumValue", LiteralTerm{dist.checksum->digest, {}, {}}});
            }
        }
    }
    return doc;
}

} // namespace aimp::dcat
