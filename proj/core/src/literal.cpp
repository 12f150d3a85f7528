// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "aimp/literal.hpp"

#include "aimp/error.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

namespace aimp::prov {

namespace {

bool contains_whitespace(std::string_view s) {
    return std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

const std::regex& date_time_pattern() {
    static const std::regex re(
        R"(^\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}(\.\d+)?(Z|[+-]\d{2}:\d{2})?$)");
    return re;
}

const std::regex& integer_pattern() {
    static const std::regex re(R"(^[+-]?\d+$)");
    return re;
}

const std::regex& decimal_pattern() {
    static const std::regex re(R"(^[+-]?(\d+(\.\d*)?|\.\d+)$)");
    return re;
}

} // namespace

std::string Iri::prefix() const {
    if (is_absolute()) return {};
    auto pos = value.find(':');
    return pos == std::string::npos ? std::string{} : value.substr(0, pos);
}

std::string Iri::local() const {
    if (is_absolute()) return {};
    auto pos = value.find(':');
    return pos == std::string::npos ? std::string{} : value.substr(pos + 1);
}

void Iri::check_well_formed() const {
    if (value.empty()) {
        throw Error(ErrorKind::BadIri, "empty IRI");
    }
    if (contains_whitespace(value)) {
        throw Error(ErrorKind::BadIri, "IRI contains whitespace: '" + value + "'");
    }
    if (is_absolute()) {
        return;
    }
    auto first = value.find(':');
    if (first == std::string::npos || first + 1 == value.size() ||
        value.find(':', first + 1) != std::string::npos) {
        throw Error(ErrorKind::BadIri,
                    "'" + value + "' is neither an absolute IRI nor a prefixed name");
    }
}

const char* to_string(LiteralType type) {
    switch (type) {
    case LiteralType::String: return "string";
    case LiteralType::Integer: return "integer";
    case LiteralType::Decimal: return "decimal";
    case LiteralType::Boolean: return "boolean";
    case LiteralType::DateTime: return "dateTime";
    }
    return "string";
}

LiteralType literal_type_from_string(std::string_view name) {
    if (name == "string") return LiteralType::String;
    if (name == "integer") return LiteralType::Integer;
    if (name == "decimal") return LiteralType::Decimal;
    if (name == "boolean") return LiteralType::Boolean;
    if (name == "dateTime") return LiteralType::DateTime;
    throw Error(ErrorKind::BadValue, "unknown literal type '" + std::string(name) + "'");
}

bool lexical_matches(LiteralType type, std::string_view lexical) {
    switch (type) {
    case LiteralType::String:
        return true;
    case LiteralType::Integer:
        return std::regex_match(lexical.begin(), lexical.end(), integer_pattern());
    case LiteralType::Decimal:
        return std::regex_match(lexical.begin(), lexical.end(), decimal_pattern());
    case LiteralType::Boolean:
        return lexical == "true" || lexical == "false" || lexical == "1" || lexical == "0";
    case LiteralType::DateTime:
        return std::regex_match(lexical.begin(), lexical.end(), date_time_pattern());
    }
    return false;
}

Literal Literal::str(std::string lexical, std::string lang) {
    return Literal{std::move(lexical), LiteralType::String, std::move(lang)};
}

Literal Literal::integer(std::int64_t value) {
    return Literal{std::to_string(value), LiteralType::Integer, {}};
}

Literal Literal::integer(std::string lexical) {
    Literal l{std::move(lexical), LiteralType::Integer, {}};
    l.check_well_formed();
    return l;
}

Literal Literal::decimal(std::string lexical) {
    Literal l{std::move(lexical), LiteralType::Decimal, {}};
    l.check_well_formed();
    return l;
}

Literal Literal::boolean(bool value) {
    return Literal{value ? "true" : "false", LiteralType::Boolean, {}};
}

Literal Literal::date_time(std::string lexical) {
    Literal l{std::move(lexical), LiteralType::DateTime, {}};
    l.check_well_formed();
    return l;
}

void Literal::check_well_formed() const {
    if (!lang.empty() && type != LiteralType::String) {
        throw Error(ErrorKind::BadLiteral,
                    "language tag on non-string literal '" + lexical + "'");
    }
    if (!lexical_matches(type, lexical)) {
        throw Error(ErrorKind::BadLiteral, "'" + lexical + "' is not a valid " +
                                               std::string(to_string(type)) + " literal");
    }
}

} // namespace aimp::prov
