// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aimp/error.hpp"
#include "aimp/turtle.hpp"
#include "support/turtle_gen.hpp"

using namespace aimp;
using turtle::BlankTerm;
using turtle::IriTerm;
using turtle::LiteralTerm;

TEST_CASE("a minimal document parses with resolved prefixes") {
    auto doc = turtle::parse(
        "@prefix dcat: <http://www.w3.org/ns/dcat#> .\n"
        "<http://ex/d1> a dcat:Dataset .\n");
    REQUIRE(doc.triples.size() == 1);
    CHECK(std::get<IriTerm>(doc.triples[0].subject).value == "http://ex/d1");
    CHECK(doc.triples[0].predicate == turtle::kRdfType);
    CHECK(std::get<IriTerm>(doc.triples[0].object).value == "http://www.w3.org/ns/dcat#Dataset");
}

TEST_CASE("an unknown prefix is reported with its line") {
    try {
        turtle::parse("ex:x ex:y ex:z .");
        FAIL("expected UnknownPrefix");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnknownPrefix);
        REQUIRE(e.details().size() == 2);
        CHECK(e.details()[0] == "ex");
        CHECK(e.details()[1] == "1");
    }
}

TEST_CASE("syntax errors carry line and column") {
    try {
        turtle::parse("@prefix ex: <http://e/> .\nex:a ex:b\n");
        FAIL("expected SyntaxError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SyntaxError);
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
}

TEST_CASE("HTML bodies are rejected with a position") {
    try {
        turtle::parse("<!DOCTYPE html><html><body>nope</body></html>");
        FAIL("expected SyntaxError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SyntaxError);
        CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }
}

TEST_CASE("literals support escapes, language tags and datatypes") {
    auto doc = turtle::parse(
        "@prefix ex: <http://e/> .\n"
        "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n"
        "ex:s ex:p \"line\\nbreak \\\"quoted\\\" tab\\t\\\\end\" .\n"
        "ex:s ex:q \"bonjour\"@fr .\n"
        "ex:s ex:r \"42\"^^xsd:integer .\n");
    REQUIRE(doc.triples.size() == 3);
    CHECK(std::get<LiteralTerm>(doc.triples[0].object).lexical == "line\nbreak \"quoted\" tab\t\\end");
    CHECK(std::get<LiteralTerm>(doc.triples[1].object).lang == "fr");
    CHECK(std::get<LiteralTerm>(doc.triples[2].object).datatype ==
          "http://www.w3.org/2001/XMLSchema#integer");
}

TEST_CASE("predicate and object lists expand to triples") {
    auto doc = turtle::parse(
        "@prefix ex: <http://e/> .\n"
        "ex:s a ex:T ;\n"
        "     ex:p ex:a, ex:b ;\n"
        "     ex:q \"v\" .\n");
    CHECK(doc.triples.size() == 4);
}

TEST_CASE("comments and blank nodes parse") {
    auto doc = turtle::parse(
        "# a leading comment\n"
        "@prefix ex: <http://e/> . # trailing comment\n"
        "_:b1 ex:p ex:o . # another\n"
        "ex:s ex:q _:b1 .\n");
    REQUIRE(doc.triples.size() == 2);
    CHECK(std::get<BlankTerm>(doc.triples[0].subject).label == "b1");
    CHECK(std::get<BlankTerm>(doc.triples[1].object).label == "b1");
}

TEST_CASE("statement-final dots attach to the statement, not the name") {
    auto doc = turtle::parse("@prefix ex: <http://e/> .\nex:s ex:p ex:o.\n");
    REQUIRE(doc.triples.size() == 1);
    CHECK(std::get<IriTerm>(doc.triples[0].object).value == "http://e/o");
}

TEST_CASE("relative IRIs are outside the subset") {
    CHECK_THROWS_AS(turtle::parse("<relative> <http://e/p> <http://e/o> ."), Error);
}

TEST_CASE("literals cannot be subjects or predicates") {
    CHECK_THROWS_AS(turtle::parse("\"s\" <http://e/p> <http://e/o> ."), Error);
    CHECK_THROWS_AS(turtle::parse("<http://e/s> \"p\" <http://e/o> ."), Error);
    CHECK_THROWS_AS(turtle::parse("<http://e/s> _:b <http://e/o> ."), Error);
}

TEST_CASE("empty documents emit a prefix block only") {
    turtle::TurtleDoc doc;
    doc.prefixes["ex"] = "http://e/";
    auto text = turtle::emit(doc);
    CHECK(text == "@prefix ex: <http://e/> .\n");
    CHECK(turtle::parse(text).triples.empty());
}

TEST_CASE("a one-triple document round-trips") {
    turtle::TurtleDoc doc;
    doc.prefixes["ex"] = "http://e/";
    doc.triples.push_back({IriTerm{"http://e/s"}, "http://e/p", LiteralTerm{"v", {}, {}}});
    auto parsed = turtle::parse(turtle::emit(doc));
    CHECK(turtle::isomorphic(parsed.triples, doc.triples));
}

TEST_CASE("emission is deterministic and sorted") {
    turtle::TurtleDoc doc;
    doc.prefixes["ex"] = "http://e/";
    doc.triples.push_back({IriTerm{"http://e/z"}, "http://e/p", IriTerm{"http://e/o"}});
    doc.triples.push_back({IriTerm{"http://e/a"}, turtle::kRdfType, IriTerm{"http://e/T"}});
    doc.triples.push_back({IriTerm{"http://e/a"}, "http://e/p", LiteralTerm{"v", {}, {}}});
    auto text = turtle::emit(doc);
    CHECK(text == turtle::emit(doc));
    // subject ex:a before ex:z, and `a` before other predicates
    CHECK(text.find("ex:a a ex:T") != std::string::npos);
    CHECK(text.find("ex:a") < text.find("ex:z"));

    // insertion order does not matter
    std::reverse(doc.triples.begin(), doc.triples.end());
    CHECK(text == turtle::emit(doc));
}

TEST_CASE("exact duplicate triples collapse to a set") {
    turtle::TurtleDoc doc;
    doc.triples.push_back({IriTerm{"http://e/s"}, "http://e/p", IriTerm{"http://e/o"}});
    doc.triples.push_back({IriTerm{"http://e/s"}, "http://e/p", IriTerm{"http://e/o"}});
    auto parsed = turtle::parse(turtle::emit(doc));
    CHECK(parsed.triples.size() == 1);
    CHECK(turtle::isomorphic(parsed.triples, doc.triples));
}

TEST_CASE("isomorphic allows consistent blank renaming only") {
    std::vector<turtle::Triple> a = {
        {BlankTerm{"x"}, "http://e/p", BlankTerm{"y"}},
        {BlankTerm{"y"}, "http://e/p", IriTerm{"http://e/o"}},
    };
    std::vector<turtle::Triple> renamed = {
        {BlankTerm{"n1"}, "http://e/p", BlankTerm{"n2"}},
        {BlankTerm{"n2"}, "http://e/p", IriTerm{"http://e/o"}},
    };
    std::vector<turtle::Triple> different = {
        {BlankTerm{"n1"}, "http://e/p", BlankTerm{"n2"}},
        {BlankTerm{"n1"}, "http://e/p", IriTerm{"http://e/o"}},
    };
    CHECK(turtle::isomorphic(a, renamed));
    CHECK_FALSE(turtle::isomorphic(a, different));
}

TEST_CASE("garbage input raises parse errors, never crashes") {
    std::mt19937_64 rng(99);
    const std::string pool = "@<>\"\\.;,:#ax_-\n\t 0\x01\xff{}[]^";
    for (int round = 0; round < 500; ++round) {
        std::string text;
        int len = static_cast<int>(rng() % 64);
        for (int i = 0; i < len; ++i) {
            text += pool[rng() % pool.size()];
        }
        try {
            auto doc = turtle::parse(text);
            CHECK(doc.triples.size() < 1000); // parsed, fine
        } catch (const Error& e) {
            CHECK((e.kind() == ErrorKind::SyntaxError || e.kind() == ErrorKind::UnknownPrefix));
        }
    }
}

TEST_CASE("generated documents round-trip (parse after emit)") {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 250; ++seed) {
        test::TurtleGen gen(seed);
        auto doc = gen.doc();
        auto text = turtle::emit(doc);
        turtle::TurtleDoc parsed;
        try {
            parsed = turtle::parse(text);
        } catch (const Error& e) {
            MESSAGE("seed ", seed, ": ", e.what(), "\n", text);
            FAIL("emitted document failed to parse");
        }
        if (!turtle::isomorphic(parsed.triples, doc.triples)) {
            MESSAGE("seed ", seed, "\n", text);
            FAIL("round-trip not isomorphic");
        }
        ++checked;
    }
    CHECK(checked == 250);
}
