// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aimp/turtle.hpp"

#include <random>
#include <string>
#include <vector>

namespace aimp::test {

/// Random TurtleDoc generator covering the grammar subset: prefixed and
/// absolute IRIs, blank nodes, plain/lang/typed literals with every escape,
/// and multi-valued predicates that exercise ';' and ',' emission.
class TurtleGen {
public:
    explicit TurtleGen(std::uint64_t seed) : rng_(seed) {}

    turtle::TurtleDoc doc() {
        turtle::TurtleDoc d;
        d.prefixes["ex"] = "http://example.org/";
        d.prefixes["dcat"] = "http://www.w3.org/ns/dcat#";
        d.prefixes["xsd"] = "http://www.w3.org/2001/XMLSchema#";
        if (flip()) d.prefixes["a-b"] = "http://a.example/b#";

        int n = pick(0, 24);
        for (int i = 0; i < n; ++i) {
            turtle::Triple t;
            t.subject = subject();
            t.predicate = predicate();
            t.object = object();
            d.triples.push_back(t);
            // Sometimes reuse the subject/predicate to force grouped output.
            while (flip() && static_cast<int>(d.triples.size()) < n + 8) {
                turtle::Triple more;
                more.subject = t.subject;
                more.predicate = flip() ? t.predicate : predicate();
                more.object = object();
                d.triples.push_back(more);
            }
        }
        return d;
    }

private:
    std::mt19937_64 rng_;

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool flip() { return pick(0, 1) == 1; }

    std::string local_name() {
        static const char* pool[] = {"p1",      "Dataset",  "x",     "a.b.c", "name-2",
                                     "T2w",     "series_9", "Study", "v1.0",  "n"};
        return pool[pick(0, 9)];
    }

    std::string absolute_iri() {
        return "http://host" + std::to_string(pick(1, 5)) + ".example/path/" + local_name();
    }

    turtle::Term subject() {
        int c = pick(0, 2);
        if (c == 0) return turtle::BlankTerm{"b" + std::to_string(pick(0, 6))};
        if (c == 1) return turtle::IriTerm{absolute_iri()};
        return turtle::IriTerm{"http://example.org/" + local_name()};
    }

    std::string predicate() {
        int c = pick(0, 3);
        if (c == 0) return turtle::kRdfType;
        if (c == 1) return absolute_iri();
        return "http://www.w3.org/ns/dcat#" + local_name();
    }

    std::string lexical() {
        static const std::string alphabet =
            "ab :#<>.,;ατΩ€"
            "\"\\\n\r\t"
            "0123456789";
        std::string out;
        int len = pick(0, 14);
        for (int i = 0; i < len; ++i) {
            // Pick whole UTF-8 code points, not raw bytes.
            int at = pick(0, 17);
            static const std::vector<std::string> units = {
                "a", "b", " ", ":", "#", "<", ">", ".", ",", ";",
                "α", "τ", "Ω", "€", "\"", "\\", "\n", "\t"};
            out += units[at];
        }
        return out;
    }

    turtle::Term object() {
        int c = pick(0, 5);
        if (c == 0) return turtle::BlankTerm{"b" + std::to_string(pick(0, 6))};
        if (c == 1) return turtle::IriTerm{absolute_iri()};
        if (c == 2) return turtle::IriTerm{"http://example.org/" + local_name()};
        turtle::LiteralTerm lit;
        lit.lexical = lexical();
        if (c == 4) {
            lit.lang = pick(0, 1) ? "en" : "en-US";
        } else if (c == 5) {
            lit.datatype = "http://www.w3.org/2001/XMLSchema#" +
                           std::string(pick(0, 1) ? "integer" : "dateTime");
        }
        return lit;
    }
};

} // namespace aimp::test
