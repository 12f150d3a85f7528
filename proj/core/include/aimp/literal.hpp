// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace aimp::prov {

/// An IRI reference: either an absolute IRI (contains "://") or a prefixed
/// name "prefix:local" that resolves through the owning graph's prefix table.
struct Iri {
    std::string value;

    Iri() = default;
    Iri(std::string v) : value(std::move(v)) {}
    Iri(const char* v) : value(v) {}

    bool is_absolute() const { return value.find("://") != std::string::npos; }

    /// "prov" for "prov:used"; empty for absolute IRIs.
    std::string prefix() const;
    /// "used" for "prov:used"; empty for absolute IRIs.
    std::string local() const;

    /// Throws BadIri unless the value is a well-formed absolute IRI
    /// (non-empty, no whitespace) or prefixed name (exactly one ':' with a
    /// non-empty local part). Prefix resolution is the graph's concern.
    void check_well_formed() const;

    auto operator<=>(const Iri&) const = default;
};

enum class LiteralType { String, Integer, Decimal, Boolean, DateTime };

const char* to_string(LiteralType type);
/// Maps "integer" back to LiteralType::Integer etc.; throws BadValue.
LiteralType literal_type_from_string(std::string_view name);

/// A typed literal value. The lexical form is kept verbatim so that values
/// round-trip bit-exactly through serializations and fingerprints.
struct Literal {
    std::string lexical;
    LiteralType type = LiteralType::String;
    std::string lang; // only meaningful when type == String

    static Literal str(std::string lexical, std::string lang = {});
    static Literal integer(std::int64_t value);
    static Literal integer(std::string lexical);
    static Literal decimal(std::string lexical);
    static Literal boolean(bool value);
    static Literal date_time(std::string lexical);

    /// Throws BadLiteral when the lexical form does not parse under the
    /// datatype or when lang is set on a non-string literal.
    void check_well_formed() const;

    auto operator<=>(const Literal&) const = default;
};

bool lexical_matches(LiteralType type, std::string_view lexical);

} // namespace aimp::prov
