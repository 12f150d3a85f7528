// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "aimp/turtle.hpp"

#include "aimp/error.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace aimp::turtle {

namespace {

bool is_local_start(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_local_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

bool is_prefix_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c));
}

bool is_prefix_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

/// A local name valid in the emitted subset: starts with [A-Za-z0-9_],
/// continues with [A-Za-z0-9_.-], and does not end with '.'.
bool valid_local(std::string_view s) {
    if (s.empty() || !is_local_start(s.front())) return false;
    if (s.back() == '.') return false;
    return std::all_of(s.begin(), s.end(), is_local_char);
}

bool valid_prefix_label(std::string_view s) {
    if (s.empty() || !is_prefix_start(s.front())) return false;
    return std::all_of(s.begin(), s.end(), is_prefix_char);
}

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return eof() ? '\0' : text_[pos_]; }
    char peek2() const { return pos_ + 1 < text_.size() ? text_[pos_ + 1] : '\0'; }

    char advance() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_ws_and_comments() {
        while (!eof()) {
            char c = peek();
            if (c == '#') {
                while (!eof() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    int line() const { return line_; }
    int col() const { return col_; }

    [[noreturn]] void fail(const std::string& message) const {
        std::ostringstream s;
        s << "line " << line_ << " col " << col_ << ": " << message;
        throw Error(ErrorKind::SyntaxError, s.str(),
                    {std::to_string(line_), std::to_string(col_)});
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view text) : cur_(text) {}

    TurtleDoc run() {
        while (true) {
            cur_.skip_ws_and_comments();
            if (cur_.eof()) break;
            if (cur_.peek() == '@') {
                parse_prefix_directive();
            } else {
                parse_triples();
            }
        }
        return std::move(doc_);
    }

private:
    Cursor cur_;
    TurtleDoc doc_;

    void expect(char c, const char* what) {
        if (cur_.peek() != c) {
            cur_.fail(std::string("expected ") + what);
        }
        cur_.advance();
    }

    void parse_prefix_directive() {
        cur_.advance(); // '@'
        std::string keyword;
        while (std::isalpha(static_cast<unsigned char>(cur_.peek()))) {
            keyword += cur_.advance();
        }
        if (keyword != "prefix") {
            cur_.fail("unsupported directive '@" + keyword + "'");
        }
        cur_.skip_ws_and_comments();
        std::string label;
        while (is_prefix_char(cur_.peek())) {
            label += cur_.advance();
        }
        if (!valid_prefix_label(label)) {
            cur_.fail("invalid prefix label '" + label + "'");
        }
        expect(':', "':' after prefix label");
        cur_.skip_ws_and_comments();
        auto iri = parse_iriref();
        cur_.skip_ws_and_comments();
        expect('.', "'.' after @prefix directive");
        doc_.prefixes[label] = iri;
    }

    std::string parse_iriref() {
        expect('<', "'<'");
        std::string iri;
        while (true) {
            if (cur_.eof()) cur_.fail("unterminated IRI");
            char c = cur_.peek();
            if (c == '>') {
                cur_.advance();
                break;
            }
            if (std::isspace(static_cast<unsigned char>(c)) || c == '<' || c == '"') {
                cur_.fail("illegal character in IRI");
            }
            iri += cur_.advance();
        }
        if (iri.find("://") == std::string::npos) {
            cur_.fail("IRI '" + iri + "' is not absolute");
        }
        return iri;
    }

    /// Parses prefix:local and resolves it against the accumulated prefixes.
    std::string parse_prefixed_name() {
        int line = cur_.line();
        std::string prefix;
        while (is_prefix_char(cur_.peek())) {
            prefix += cur_.advance();
        }
        if (cur_.peek() != ':') {
            cur_.fail("expected ':' in prefixed name");
        }
        cur_.advance();
        std::string local;
        while (is_local_char(cur_.peek())) {
            local += cur_.advance();
        }
        // A trailing '.' belongs to the statement terminator, not the name.
        while (!local.empty() && local.back() == '.') {
            local.pop_back();
            rewind_dot();
        }
        if (!valid_local(local)) {
            cur_.fail("invalid local name '" + local + "'");
        }
        auto it = doc_.prefixes.find(prefix);
        if (it == doc_.prefixes.end()) {
            throw Error(ErrorKind::UnknownPrefix,
                        "line " + std::to_string(line) + ": unknown prefix '" + prefix + "'",
                        {prefix, std::to_string(line)});
        }
        return it->second + local;
    }

    // Cursor cannot step back, so track dots we over-consumed.
    int pending_dots_ = 0;
    void rewind_dot() { ++pending_dots_; }
    bool take_pending_dot() {
        if (pending_dots_ > 0) {
            --pending_dots_;
            return true;
        }
        return false;
    }

    std::string parse_blank_label() {
        cur_.advance(); // '_'
        expect(':', "':' after '_'");
        std::string label;
        while (is_local_char(cur_.peek())) {
            label += cur_.advance();
        }
        while (!label.empty() && label.back() == '.') {
            label.pop_back();
            rewind_dot();
        }
        if (!valid_local(label)) {
            cur_.fail("invalid blank node label");
        }
        return label;
    }

    LiteralTerm parse_literal() {
        expect('"', "'\"'");
        std::string lexical;
        while (true) {
            if (cur_.eof()) cur_.fail("unterminated string literal");
            char c = cur_.advance();
            if (c == '"') break;
            if (c == '\n' || c == '\r') {
                cur_.fail("raw line break in string literal");
            }
            if (c == '\\') {
                if (cur_.eof()) cur_.fail("dangling escape");
                char e = cur_.advance();
                switch (e) {
                case '"': lexical += '"'; break;
                case '\\': lexical += '\\'; break;
                case 'n': lexical += '\n'; break;
                case 'r': lexical += '\r'; break;
                case 't': lexical += '\t'; break;
                default: cur_.fail(std::string("unsupported escape '\\") + e + "'");
                }
            } else {
                lexical += c;
            }
        }
        LiteralTerm lit{std::move(lexical), {}, {}};
        if (cur_.peek() == '@') {
            cur_.advance();
            std::string lang;
            while (std::isalnum(static_cast<unsigned char>(cur_.peek())) || cur_.peek() == '-') {
                lang += cur_.advance();
            }
            if (lang.empty()) cur_.fail("empty language tag");
            lit.lang = lang;
        } else if (cur_.peek() == '^') {
            cur_.advance();
            expect('^', "'^^' before datatype");
            lit.datatype = parse_iri_term();
            if (lit.datatype == kXsdString) {
                lit.datatype.clear();
            }
        }
        return lit;
    }

    std::string parse_iri_term() {
        if (cur_.peek() == '<') return parse_iriref();
        return parse_prefixed_name();
    }

    Term parse_subject() {
        char c = cur_.peek();
        if (c == '<') return IriTerm{parse_iriref()};
        if (c == '_') return BlankTerm{parse_blank_label()};
        if (c == '"') cur_.fail("literal cannot be a subject");
        return IriTerm{parse_prefixed_name()};
    }

    std::string parse_predicate() {
        char c = cur_.peek();
        if (c == 'a' && !is_local_char(cur_.peek2()) && cur_.peek2() != ':') {
            cur_.advance();
            return kRdfType;
        }
        if (c == '_') cur_.fail("blank node cannot be a predicate");
        if (c == '"') cur_.fail("literal cannot be a predicate");
        return parse_iri_term();
    }

    Term parse_object() {
        char c = cur_.peek();
        if (c == '<') return IriTerm{parse_iriref()};
        if (c == '_') return BlankTerm{parse_blank_label()};
        if (c == '"') return parse_literal();
        return IriTerm{parse_prefixed_name()};
    }

    void parse_triples() {
        Term subject = parse_subject();
        while (true) {
            cur_.skip_ws_and_comments();
            std::string predicate = parse_predicate();
            // objectList
            while (true) {
                cur_.skip_ws_and_comments();
                Term object = parse_object();
                doc_.triples.push_back({subject, predicate, std::move(object)});
                cur_.skip_ws_and_comments();
                if (cur_.peek() == ',') {
                    cur_.advance();
                    continue;
                }
                break;
            }
            if (take_pending_dot()) return;
            cur_.skip_ws_and_comments();
            if (cur_.peek() == ';') {
                cur_.advance();
                cur_.skip_ws_and_comments();
                if (take_pending_dot()) return;
                if (cur_.peek() == '.') {
                    cur_.advance();
                    return;
                }
                continue;
            }
            if (cur_.peek() == '.') {
                cur_.advance();
                return;
            }
            cur_.fail("expected '.', ';' or ',' after object");
        }
    }
};

std::string escape_literal(std::string_view lexical) {
    std::string out;
    out.reserve(lexical.size() + 2);
    for (char c : lexical) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    return out;
}

int term_rank(const Term& t) {
    if (std::holds_alternative<IriTerm>(t)) return 0;
    if (std::holds_alternative<BlankTerm>(t)) return 1;
    return 2;
}

} // namespace

bool term_less(const Term& a, const Term& b) {
    int ra = term_rank(a);
    int rb = term_rank(b);
    if (ra != rb) return ra < rb;
    if (ra == 0) return std::get<IriTerm>(a).value < std::get<IriTerm>(b).value;
    if (ra == 1) return std::get<BlankTerm>(a).label < std::get<BlankTerm>(b).label;
    const auto& la = std::get<LiteralTerm>(a);
    const auto& lb = std::get<LiteralTerm>(b);
    return std::tie(la.lexical, la.datatype, la.lang) < std::tie(lb.lexical, lb.datatype, lb.lang);
}

TurtleDoc parse(std::string_view text) {
    return Parser(text).run();
}

namespace {

class Emitter {
public:
    explicit Emitter(const TurtleDoc& doc) : doc_(doc) {}

    std::string run() {
        std::ostringstream out;
        for (const auto& [label, iri] : doc_.prefixes) {
            out << "@prefix " << label << ": <" << iri << "> .\n";
        }

        auto triples = doc_.triples;
        std::sort(triples.begin(), triples.end(), [](const Triple& a, const Triple& b) {
            if (term_less(a.subject, b.subject)) return true;
            if (term_less(b.subject, a.subject)) return false;
            auto pa = predicate_key(a.predicate);
            auto pb = predicate_key(b.predicate);
            if (pa != pb) return pa < pb;
            return term_less(a.object, b.object);
        });
        triples.erase(std::unique(triples.begin(), triples.end()), triples.end());

        if (!triples.empty() && !doc_.prefixes.empty()) {
            out << "\n";
        }

        std::size_t i = 0;
        while (i < triples.size()) {
            std::size_t subject_end = i;
            while (subject_end < triples.size() &&
                   triples[subject_end].subject == triples[i].subject) {
                ++subject_end;
            }
            emit_subject_group(out, triples, i, subject_end);
            i = subject_end;
        }
        return std::move(out).str();
    }

private:
    const TurtleDoc& doc_;

    // rdf:type sorts before every other predicate.
    static std::pair<int, std::string> predicate_key(const std::string& p) {
        if (p == kRdfType) return {0, {}};
        return {1, p};
    }

    void emit_subject_group(std::ostringstream& out, const std::vector<Triple>& triples,
                            std::size_t begin, std::size_t end) {
        out << render_subject(triples[begin].subject);
        std::size_t i = begin;
        bool first_predicate = true;
        while (i < end) {
            std::size_t pred_end = i;
            while (pred_end < end && triples[pred_end].predicate == triples[i].predicate) {
                ++pred_end;
            }
            out << (first_predicate ? " " : " ;\n    ");
            first_predicate = false;
            out << render_predicate(triples[i].predicate) << " ";
            for (std::size_t j = i; j < pred_end; ++j) {
                if (j != i) out << ", ";
                out << render_object(triples[j].object);
            }
            i = pred_end;
        }
        out << " .\n";
    }

    std::string compact(const std::string& iri) const {
        // Longest-namespace match whose remainder is a valid local name.
        const std::pair<const std::string, std::string>* best = nullptr;
        for (const auto& entry : doc_.prefixes) {
            const auto& ns = entry.second;
            if (iri.size() > ns.size() && iri.compare(0, ns.size(), ns) == 0 &&
                valid_local(std::string_view(iri).substr(ns.size()))) {
                if (!best || ns.size() > best->second.size()) {
                    best = &entry;
                }
            }
        }
        if (best) {
            return best->first + ":" + iri.substr(best->second.size());
        }
        return "<" + iri + ">";
    }

    std::string render_subject(const Term& t) const {
        if (const auto* b = std::get_if<BlankTerm>(&t)) {
            return "_:" + b->label;
        }
        return compact(std::get<IriTerm>(t).value);
    }

    std::string render_predicate(const std::string& p) const {
        if (p == kRdfType) return "a";
        return compact(p);
    }

    std::string render_object(const Term& t) const {
        if (const auto* b = std::get_if<BlankTerm>(&t)) {
            return "_:" + b->label;
        }
        if (const auto* iri = std::get_if<IriTerm>(&t)) {
            return compact(iri->value);
        }
        const auto& lit = std::get<LiteralTerm>(t);
        std::string out = "\"" + escape_literal(lit.lexical) + "\"";
        if (!lit.lang.empty()) {
            out += "@" + lit.lang;
        } else if (!lit.datatype.empty()) {
            out += "^^" + compact(lit.datatype);
        }
        return out;
    }
};

std::vector<Triple> sorted_unique(std::vector<Triple> triples) {
    std::sort(triples.begin(), triples.end());
    triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
    return triples;
}

/// Collects blank labels in order of first appearance over sorted triples.
std::vector<std::string> blank_labels(const std::vector<Triple>& triples) {
    std::vector<std::string> labels;
    std::set<std::string> seen;
    auto visit = [&](const Term& t) {
        if (const auto* b = std::get_if<BlankTerm>(&t)) {
            if (seen.insert(b->label).second) labels.push_back(b->label);
        }
    };
    for (const auto& t : triples) {
        visit(t.subject);
        visit(t.object);
    }
    return labels;
}

std::vector<Triple> rename_blanks(const std::vector<Triple>& triples,
                                  const std::map<std::string, std::string>& mapping) {
    std::vector<Triple> out = triples;
    auto rewrite = [&](Term& t) {
        if (auto* b = std::get_if<BlankTerm>(&t)) {
            b->label = mapping.at(b->label);
        }
    };
    for (auto& t : out) {
        rewrite(t.subject);
        rewrite(t.object);
    }
    return sorted_unique(std::move(out));
}

} // namespace

std::string emit(const TurtleDoc& doc) {
    return Emitter(doc).run();
}

bool isomorphic(std::vector<Triple> a, std::vector<Triple> b) {
    a = sorted_unique(std::move(a));
    b = sorted_unique(std::move(b));
    if (a == b) return true;
    if (a.size() != b.size()) return false;

    auto la = blank_labels(a);
    auto lb = blank_labels(b);
    if (la.size() != lb.size()) return false;
    if (la.size() > 8) {
        // Backtracking over all bijections is factorial; beyond this size
        // callers should compare with stable labels instead.
        return false;
    }

    std::sort(lb.begin(), lb.end());
    do {
        std::map<std::string, std::string> mapping;
        for (std::size_t i = 0; i < la.size(); ++i) {
            mapping[la[i]] = lb[i];
        }
        if (rename_blanks(a, mapping) == b) return true;
    } while (std::next_permutation(lb.begin(), lb.end()));
    return false;
}

} // namespace aimp::turtle
