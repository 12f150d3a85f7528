// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace aimp::turtle {

inline constexpr const char* kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr const char* kXsdString = "http://www.w3.org/2001/XMLSchema#string";

struct IriTerm {
    std::string value; // absolute IRI; prefixed names are resolved at parse time
    auto operator<=>(const IriTerm&) const = default;
};

struct BlankTerm {
    std::string label; // without the "_:" sigil
    auto operator<=>(const BlankTerm&) const = default;
};

struct LiteralTerm {
    std::string lexical;
    std::string datatype; // absolute IRI; empty means plain string
    std::string lang;     // only without a datatype
    auto operator<=>(const LiteralTerm&) const = default;
};

using Term = std::variant<IriTerm, BlankTerm, LiteralTerm>;

/// Total order over terms used for deterministic emission: IRIs, then blank
/// nodes, then literals.
bool term_less(const Term& a, const Term& b);

struct Triple {
    Term subject;          // IriTerm or BlankTerm
    std::string predicate; // absolute IRI
    Term object;
    auto operator<=>(const Triple&) const = default;
};

struct TurtleDoc {
    std::map<std::string, std::string> prefixes; // prefix label -> namespace IRI
    std::vector<Triple> triples;
};

/// Parses the Turtle subset used by this project:
///   - `@prefix name: <iri> .` directives
///   - triples with `<absolute-iri>`, `prefix:local`, or `_:label` terms
///   - the `a` keyword for rdf:type
///   - literals `"..."` with optional `@lang` or `^^datatype`
///   - escapes \" \\ \n \r \t inside literals
///   - predicate lists via `;`, object lists via `,`
///   - `#` comments to end of line
/// Nested `[ ... ]` blank nodes, collections, and `"""` long strings are out
/// of scope. Errors carry line/column positions.
TurtleDoc parse(std::string_view text);

/// Deterministic serializer: prefixes sorted by label; subjects sorted by
/// expanded IRI (blank nodes after IRIs); per subject `a` first, then
/// predicates sorted; object lists sorted; exact duplicate triples emitted
/// once. parse(emit(doc)) yields the same triple set.
std::string emit(const TurtleDoc& doc);

/// True when the two triple collections are equal as sets, allowing a
/// consistent renaming of blank-node labels.
bool isomorphic(std::vector<Triple> a, std::vector<Triple> b);

} // namespace aimp::turtle
