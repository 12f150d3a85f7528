// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aimp/dcat.hpp"
#include "aimp/error.hpp"
#include "support/http_fixtures.hpp"

using namespace aimp;

namespace {

// A HealthDCAT-AP-style descriptor matching the project's cohort shape.
const char* kDatasetTurtle = R"(@prefix dcat: <http://www.w3.org/ns/dcat#> .
@prefix dct: <http://purl.org/dc/terms/> .
@prefix foaf: <http://xmlns.com/foaf/0.1/> .
@prefix spdx: <http://spdx.org/rdf/terms#> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
@prefix health: <https://w3id.org/aimp/health#> .

<https://catalog.example/dataset/prostate-mpmri> a dcat:Dataset ;
    dct:title "Prostate mpMRI lesion dataset" ;
    dct:description "Multiparametric MR series with lesion annotations" ;
    dcat:version "1.2.0" ;
    dct:license <https://creativecommons.org/licenses/by-nc/4.0/> ;
    dct:publisher _:pub ;
    dcat:keyword "prostate", "mpMRI", "segmentation" ;
    health:numberOfPatients "14300"^^xsd:integer ;
    health:numberOfStudies "23000"^^xsd:integer ;
    health:imagingModalities "MR" ;
    health:sequenceTypes "T2w", "ADC", "DWI" ;
    health:vendors "VendorA", "VendorB" ;
    dcat:distribution _:dist1 .

_:pub a foaf:Organization ;
    foaf:name "Cancer Imaging Archive" .

_:dist1 a dcat:Distribution ;
    dcat:accessURL <https://catalog.example/dist/prostate-mpmri.zip> ;
    dcat:mediaType "application/zip" ;
    dcat:byteSize "123456789"^^xsd:integer ;
    spdx:checksum _:ck1 .

_:ck1 spdx:algorithm spdx:checksumAlgorithm_sha256 ;
    spdx:checksumValue "7f83b1657ff1fc53b92dc18148a1d65dfc2d4b1fa3d677284addd200126d9069" .
)";

} // namespace

TEST_CASE("a complete dataset extracts one descriptor with one distribution") {
    auto doc = turtle::parse(kDatasetTurtle);
    auto result = dcat::descriptors_from_triples(doc);
    REQUIRE(result.descriptors.size() == 1);

    const auto& d = result.descriptors[0];
    CHECK(d.id == "https://catalog.example/dataset/prostate-mpmri");
    CHECK(d.title == "Prostate mpMRI lesion dataset");
    CHECK(d.version == "1.2.0");
    CHECK(d.license == "https://creativecommons.org/licenses/by-nc/4.0/");
    CHECK(d.publisher.name == "Cancer Imaging Archive");
    CHECK(d.publisher.kind == "Organization");
    CHECK(d.keywords == std::vector<std::string>{"mpMRI", "prostate", "segmentation"});

    REQUIRE(d.health_ext.count("numberOfPatients"));
    CHECK(d.health_ext.at("numberOfPatients")[0].lexical == "14300");
    CHECK(d.health_ext.at("numberOfPatients")[0].type == prov::LiteralType::Integer);
    CHECK(d.health_ext.at("sequenceTypes").size() == 3);

    REQUIRE(d.distributions.size() == 1);
    const auto& dist = d.distributions[0];
    CHECK(dist.access_url == "https://catalog.example/dist/prostate-mpmri.zip");
    CHECK(dist.media_type == "application/zip");
    CHECK(dist.byte_size == 123456789);
    REQUIRE(dist.checksum.has_value());
    CHECK(dist.checksum->algorithm == cas::Checksum::Algo::Sha256);

    CHECK(dcat::validate_descriptor(d).empty());
}

TEST_CASE("missing mandatory fields are fatal during extraction") {
    auto doc = turtle::parse(
        "@prefix dcat: <http://www.w3.org/ns/dcat#> .\n"
        "@prefix dct: <http://purl.org/dc/terms/> .\n"
        "<http://ex/d> a dcat:Dataset ;\n"
        "  dct:title \"untitled data\" ;\n"
        "  dct:publisher \"someone\" .\n");
    try {
        dcat::descriptors_from_triples(doc);
        FAIL("expected MissingMandatory");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MissingMandatory);
        CHECK(e.details().at(0) == "http://ex/d");
        CHECK(e.details().at(1) == "license");
    }
}

TEST_CASE("unknown predicates are warnings, not errors") {
    auto doc = turtle::parse(
        "@prefix dcat: <http://www.w3.org/ns/dcat#> .\n"
        "@prefix dct: <http://purl.org/dc/terms/> .\n"
        "@prefix ex: <http://other.example/ns#> .\n"
        "<http://ex/d> a dcat:Dataset ;\n"
        "  dct:title \"t\" ; dct:publisher \"p\" ; dct:license \"CC-BY\" ;\n"
        "  ex:surprise \"value\" .\n");
    auto result = dcat::descriptors_from_triples(doc);
    CHECK(result.descriptors.size() == 1);
    REQUIRE(result.warnings.size() == 1);
    CHECK(result.warnings[0].find("surprise") != std::string::npos);
}

TEST_CASE("validate_descriptor flags bad counts and empty cores") {
    dcat::DatasetDescriptor d;
    d.id = "https://ex/d";
    d.title = "t";
    d.publisher.name = "p";
    d.license = "CC-BY";
    CHECK(dcat::validate_descriptor(d).empty());

    d.health_ext["numberOfPatients"].push_back(prov::Literal::str("-5"));
    auto violations = dcat::validate_descriptor(d);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].field == "numberOfPatients");

    dcat::DatasetDescriptor empty;
    CHECK(dcat::validate_descriptor(empty).size() == 4);

    dcat::DatasetDescriptor relative = d;
    relative.health_ext.clear();
    relative.id = "urn:not-resolvable";
    REQUIRE(dcat::validate_descriptor(relative).size() == 1);
    CHECK(dcat::validate_descriptor(relative)[0].field == "id");
}

TEST_CASE("descriptors round-trip through emission and extraction") {
    auto original = dcat::descriptors_from_triples(turtle::parse(kDatasetTurtle)).descriptors;
    auto emitted = turtle::emit(dcat::descriptors_to_triples(original));
    auto back = dcat::descriptors_from_triples(turtle::parse(emitted)).descriptors;
    CHECK(back == original);
}

TEST_CASE("harvest against a mock FDP") {
    test::MockFdp fdp;
    fdp.serve("/catalog", kDatasetTurtle);

    auto result = dcat::harvest(fdp.url("/catalog"));
    REQUIRE(result.descriptors.size() == 1);
    CHECK(result.descriptors[0].health_ext.at("numberOfPatients")[0].lexical == "14300");
    CHECK(result.source_url == fdp.url("/catalog"));
    CHECK(!result.retrieved_at.empty());
    CHECK(fdp.last_accept() == "text/turtle");

    SUBCASE("harvest is idempotent modulo the retrieval timestamp") {
        auto again = dcat::harvest(fdp.url("/catalog"));
        CHECK(again.descriptors == result.descriptors);
        CHECK(again.warnings == result.warnings);
    }
}

TEST_CASE("two datasets yield two descriptors sorted by id") {
    test::MockFdp fdp;
    fdp.serve("/two",
              "@prefix dcat: <http://www.w3.org/ns/dcat#> .\n"
              "@prefix dct: <http://purl.org/dc/terms/> .\n"
              "<http://ex/b> a dcat:Dataset ; dct:title \"B\" ; dct:publisher \"p\" ; "
              "dct:license \"L\" .\n"
              "<http://ex/a> a dcat:Dataset ; dct:title \"A\" ; dct:publisher \"p\" ; "
              "dct:license \"L\" .\n");
    auto result = dcat::harvest(fdp.url("/two"));
    REQUIRE(result.descriptors.size() == 2);
    CHECK(result.descriptors[0].id == "http://ex/a");
    CHECK(result.descriptors[1].id == "http://ex/b");
}

TEST_CASE("harvest surfaces HTTP status codes") {
    test::MockFdp fdp;
    try {
        dcat::harvest(fdp.url("/missing"));
        FAIL("expected HttpStatus");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::HttpStatus);
        CHECK(e.details().at(0) == "404");
    }
}

TEST_CASE("harvest rejects non-turtle bodies with a parse position") {
    test::MockFdp fdp;
    fdp.serve("/html", "<!DOCTYPE html><html><body>catalog</body></html>", "text/html");
    try {
        dcat::harvest(fdp.url("/html"));
        FAIL("expected SyntaxError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SyntaxError);
        CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }
}

TEST_CASE("harvest follows redirects, but only five of them") {
    test::MockFdp fdp;
    fdp.redirect("/r1", fdp.url("/r2"));
    fdp.redirect("/r2", "/r3"); // relative Location
    fdp.redirect("/r3", fdp.url("/final"));
    fdp.serve("/final",
              "@prefix dcat: <http://www.w3.org/ns/dcat#> .\n"
              "@prefix dct: <http://purl.org/dc/terms/> .\n"
              "<http://ex/a> a dcat:Dataset ; dct:title \"A\" ; dct:publisher \"p\" ; "
              "dct:license \"L\" .\n");
    CHECK(dcat::harvest(fdp.url("/r1")).descriptors.size() == 1);

    for (int i = 1; i <= 7; ++i) {
        fdp.redirect("/loop" + std::to_string(i), "/loop" + std::to_string(i + 1));
    }
    try {
        dcat::harvest(fdp.url("/loop1"));
        FAIL("expected HttpStatus for redirect overflow");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::HttpStatus);
    }
}

TEST_CASE("harvest reaches nothing on a closed port") {
    try {
        dcat::harvest("http://127.0.0.1:9/x");
        FAIL("expected NetworkError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NetworkError);
    }
}

TEST_CASE("retries only re-attempt network failures") {
    dcat::HarvestOptions options;
    options.retries = 2;
    // still NetworkError after the retries are exhausted
    CHECK_THROWS_AS(dcat::harvest("http://127.0.0.1:9/x", options), Error);

    // HTTP errors are not retried: the mock sees exactly one request
    test::MockFdp fdp;
    int before = fdp.request_count();
    CHECK_THROWS_AS(dcat::harvest(fdp.url("/gone"), options), Error);
    CHECK(fdp.request_count() == before + 1);
}
