// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aimp/dcat.hpp"
#include "aimp/error.hpp"
#include "aimp/passport.hpp"
#include "support/mini_demo.hpp"

using namespace aimp;
using passport::CheckStatus;

namespace {

/// One demo run + passport, shared across the read-only test cases.
struct BuiltDemo {
    test::MiniDemo demo;
    passport::ModelPassport p;

    BuiltDemo() {
        REQUIRE(demo.run().ok());
        p = demo.build_passport();
    }
};

} // namespace

TEST_CASE("validate_manual reports blank required fields") {
    passport::ManualMetadata manual;
    CHECK(passport::validate_manual(manual) ==
          std::vector<std::string>{"intendedPurpose", "potentialThreats", "license", "owner"});

    manual.intended_purpose = "clinical support";
    manual.potential_threats = "bias";
    manual.license = "Apache-2.0";
    manual.owner = "   "; // whitespace-only counts as missing
    CHECK(passport::validate_manual(manual) == std::vector<std::string>{"owner"});

    manual.owner = "Lab";
    CHECK(passport::validate_manual(manual).empty());
}

TEST_CASE("validate_manual is monotone: filling fields never adds violations") {
    passport::ManualMetadata manual;
    auto before = passport::validate_manual(manual).size();
    manual.license = "MIT";
    auto after = passport::validate_manual(manual).size();
    CHECK(after == before - 1);
    manual.description = "extra optional text";
    CHECK(passport::validate_manual(manual).size() == after);
}

TEST_CASE("the scaffold template parses back with all values empty") {
    auto text = passport::scaffold_manual_template();
    CHECK(text == passport::scaffold_manual_template());

    auto manual = passport::parse_manual(text);
    CHECK(manual == passport::ManualMetadata{});
    CHECK(passport::validate_manual(manual).size() == 4);

    // every documented field is present
    for (const char* field :
         {"intendedPurpose", "potentialThreats", "license", "owner", "modelName", "modelVersion",
          "description", "learningTask", "learningApproach", "algorithmFamily",
          "softwareFramework"}) {
        CHECK(text.find(field) != std::string::npos);
    }
}

TEST_CASE("a filled template round-trips to struct equality") {
    auto manual = passport::parse_manual(test::MiniDemo::manual_yaml());
    CHECK(manual.intended_purpose == "Support lesion segmentation in prostate MRI reading");
    CHECK(manual.learning_task == "ImageSegmentation");
    CHECK(passport::validate_manual(manual).empty());
}

TEST_CASE("vocabulary fields accept the other:<text> escape and reject junk") {
    CHECK_NOTHROW(passport::parse_manual("learningTask: \"other:anomaly-scoring\"\n"));
    CHECK_THROWS_AS(passport::parse_manual("learningTask: \"Sorting\"\n"), Error);
    CHECK_THROWS_AS(passport::parse_manual("learningApproach: \"psychic\"\n"), Error);
}

TEST_CASE_FIXTURE(BuiltDemo, "assemble embeds a self-consistent identity") {
    CHECK(p.identity.rfind("aimp:sha256:", 0) == 0);
    CHECK(p.identity.size() == 12 + 64);
    CHECK(passport::compute_identity(p) == p.identity);
    CHECK(p.lock.size() == 4);
    CHECK(p.datasets.size() == 1);
    CHECK(p.datasets[0].descriptor.health_ext.at("numberOfPatients")[0].lexical == "14300");
    CHECK(p.datasets[0].source_url == "https://fdp.example/catalog");
    CHECK(p.training.evaluations.size() == 2);
    CHECK(p.training.evaluations[0].metric == "Dice");
    CHECK(p.training.evaluations[0].value == doctest::Approx(0.8643));
    REQUIRE(p.training.implementation.has_value());
    CHECK(p.training.hyperparameters.count("train.epochs") == 1);
}

TEST_CASE_FIXTURE(BuiltDemo, "identity excludes volatile fields and covers content") {
    auto base = passport::compute_identity(p);

    SUBCASE("createdAt is excluded") {
        auto copy = p;
        copy.created_at = "1999-01-01T00:00:00Z";
        CHECK(passport::compute_identity(copy) == base);
    }
    SUBCASE("dataset retrieval timestamps are excluded") {
        auto copy = p;
        copy.datasets[0].retrieved_at = "1999-01-01T00:00:00Z";
        CHECK(passport::compute_identity(copy) == base);
    }
    SUBCASE("stage timestamps are excluded") {
        auto copy = p;
        copy.lock[0].started_at = "1999-01-01T00:00:00Z";
        copy.lock[0].ended_at = "1999-01-01T00:00:01Z";
        CHECK(passport::compute_identity(copy) == base);
    }
    SUBCASE("provenance timestamp attributes are excluded") {
        auto copy = p;
        prov::ProvGraph graph = copy.provenance;
        for (const auto& node : graph.nodes()) {
            if (graph.expand(node.kind.class_iri) == "https://w3id.org/aimp/StageExecution") {
                graph.set_attribute(node.id, prov::Iri{"prov:startedAtTime"},
                                    prov::Literal::date_time("1999-01-01T00:00:00Z"));
            }
        }
        copy.provenance = graph;
        CHECK(passport::compute_identity(copy) == base);
    }
    SUBCASE("a metric value change flips the identity") {
        auto copy = p;
        copy.training.evaluations[0].value += 0.0001;
        CHECK(passport::compute_identity(copy) != base);
    }
    SUBCASE("a model checksum change flips the identity") {
        auto copy = p;
        auto digest = copy.training.model_artifact.sha256.digest;
        digest[0] = digest[0] == 'a' ? 'b' : 'a';
        copy.training.model_artifact.sha256.digest = digest;
        CHECK(passport::compute_identity(copy) != base);
    }
    SUBCASE("manual text changes flip the identity") {
        auto copy = p;
        copy.manual.intended_purpose += " (edited)";
        CHECK(passport::compute_identity(copy) != base);
    }
    SUBCASE("a descriptor change flips the identity") {
        auto copy = p;
        copy.datasets[0].descriptor.title += "!";
        CHECK(passport::compute_identity(copy) != base);
    }
    SUBCASE("a recorded param change flips the identity") {
        auto copy = p;
        copy.lock[3].params["train.epochs"] = prov::Literal::integer(99);
        CHECK(passport::compute_identity(copy) != base);
    }
    SUBCASE("a command change flips the identity") {
        auto copy = p;
        copy.lock[0].command += " --verbose";
        CHECK(passport::compute_identity(copy) != base);
    }
}

TEST_CASE_FIXTURE(BuiltDemo, "two assemblies from identical inputs share the identity") {
    auto again = demo.build_passport();
    CHECK(again.identity == p.identity);
    CHECK(passport::identity_body(again) == passport::identity_body(p));
}

TEST_CASE("assemble rejects blank manual fields, listing exactly them") {
    test::MiniDemo demo;
    REQUIRE(demo.run().ok());
    test::write_file(demo.dir / "aimp-manual.yaml",
                     "intendedPurpose: \"x\"\npotentialThreats: \"\"\nlicense: \"MIT\"\n"
                     "owner: \"  \"\n");
    try {
        demo.build_passport();
        FAIL("expected ManualIncomplete");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ManualIncomplete);
        CHECK(e.details() == std::vector<std::string>{"potentialThreats", "owner"});
    }
}

TEST_CASE("assemble requires a complete lock") {
    test::MiniDemo demo;
    auto lock = pipeline::load_lock(demo.dir / "aimp.lock"); // never ran: empty
    CHECK_THROWS_AS(passport::summarize_lock(lock, demo.spec), Error);
}

TEST_CASE_FIXTURE(BuiltDemo, "canonical JSON serialization round-trips byte-identically") {
    auto json_text = passport::serialize(p, passport::Format::CanonicalJson);
    auto loaded = passport::load(json_text);
    CHECK(passport::serialize(loaded, passport::Format::CanonicalJson) == json_text);
    CHECK(loaded.identity == p.identity);
    CHECK(passport::compute_identity(loaded) == p.identity);
}

TEST_CASE_FIXTURE(BuiltDemo, "turtle serialization parses and carries the identity") {
    auto ttl = passport::serialize(p, passport::Format::Turtle);
    auto doc = turtle::parse(ttl);
    CHECK(!doc.triples.empty());
    CHECK(ttl.find(p.identity) != std::string::npos);
    CHECK(ttl.find("lesion-seg-mini") != std::string::npos);
    // dataset link triple present
    CHECK(ttl.find("usesDataset") != std::string::npos);
}

TEST_CASE_FIXTURE(BuiltDemo, "serialization refuses a tampered identity field") {
    auto copy = p;
    copy.identity = "aimp:sha256:" + std::string(64, '0');
    try {
        passport::serialize(copy, passport::Format::CanonicalJson);
        FAIL("expected SelfInconsistent");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SelfInconsistent);
    }
}

TEST_CASE("load rejects malformed passports") {
    CHECK_THROWS_AS(passport::load("not json at all"), Error);
    try {
        passport::load("{\"identity\": \"x\"}");
        FAIL("expected LoadError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::LoadError);
    }
}

TEST_CASE_FIXTURE(BuiltDemo, "verify passes on the untouched workspace and model") {
    auto report = passport::verify(p, demo.dir.path(), demo.dir / "models/model.bin");
    CHECK(report.passed());
    for (const auto& check : report.checks) {
        CAPTURE(check.name);
        CHECK(check.status != CheckStatus::Fail);
    }
    // identity + model + per-file workspace checks + graph
    CHECK(report.checks.size() >= 4);
}

TEST_CASE_FIXTURE(BuiltDemo, "verify without inputs skips the artifact checks") {
    auto report = passport::verify(p);
    REQUIRE(report.checks.size() == 4);
    CHECK(report.checks[0].name == "identity");
    CHECK(report.checks[0].status == CheckStatus::Pass);
    CHECK(report.checks[1].name == "model-artifact");
    CHECK(report.checks[1].status == CheckStatus::Skip);
    CHECK(report.checks[2].name == "workspace-artifacts");
    CHECK(report.checks[2].status == CheckStatus::Skip);
    CHECK(report.checks[3].name == "provenance-graph");
    CHECK(report.checks[3].status == CheckStatus::Pass);
    CHECK(report.passed());
}

TEST_CASE_FIXTURE(BuiltDemo, "a flipped model byte fails the model-artifact check") {
    test::flip_byte(demo.dir / "models/model.bin");
    auto report = passport::verify(p, std::nullopt, demo.dir / "models/model.bin");
    CHECK_FALSE(report.passed());
    bool found = false;
    for (const auto& check : report.checks) {
        if (check.name == "model-artifact") {
            found = true;
            CHECK(check.status == CheckStatus::Fail);
            CHECK(check.detail.find("expected sha256") != std::string::npos);
            CHECK(check.detail.find(p.training.model_artifact.sha256.digest) != std::string::npos);
        }
    }
    CHECK(found);
}

TEST_CASE_FIXTURE(BuiltDemo, "a flipped workspace dep fails its workspace check") {
    test::flip_byte(demo.dir / "data/raw.txt");
    auto report = passport::verify(p, demo.dir.path(), std::nullopt);
    CHECK_FALSE(report.passed());
    bool found = false;
    for (const auto& check : report.checks) {
        if (check.name == "workspace:data/raw.txt") {
            found = true;
            CHECK(check.status == CheckStatus::Fail);
        }
    }
    CHECK(found);
}

TEST_CASE_FIXTURE(BuiltDemo, "missing workspace files are skipped, not failed") {
    std::filesystem::remove(demo.dir / "models/model.bin");
    auto report = passport::verify(p, demo.dir.path(), std::nullopt);
    CHECK(report.passed());
    bool skipped = false;
    for (const auto& check : report.checks) {
        if (check.name == "workspace:models/model.bin") {
            skipped = check.status == CheckStatus::Skip;
        }
    }
    CHECK(skipped);
}

TEST_CASE_FIXTURE(BuiltDemo, "an edited metric in the serialized passport flips identity on load") {
    auto json_text = passport::serialize(p, passport::Format::CanonicalJson);
    auto at = json_text.find("0.8643");
    REQUIRE(at != std::string::npos);
    json_text.replace(at, 6, "0.9643");
    auto tampered = passport::load(json_text);
    auto report = passport::verify(tampered);
    CHECK_FALSE(report.passed());
    CHECK(report.checks[0].name == "identity");
    CHECK(report.checks[0].status == CheckStatus::Fail);
}

TEST_CASE("datasets files round-trip through save and load") {
    test::TempDir dir;
    dcat::HarvestResult result;
    result.source_url = "https://fdp.example/catalog";
    result.retrieved_at = "2026-03-02T09:30:00Z";
    dcat::DatasetDescriptor d;
    d.id = "https://catalog.example/dataset/x";
    d.title = "X";
    d.publisher = {"Org", "Organization"};
    d.license = "CC-BY-4.0";
    d.health_ext["numberOfPatients"].push_back(prov::Literal::integer(14300));
    result.descriptors.push_back(d);

    passport::save_datasets_file(dir / "datasets.ttl", result);
    auto loaded = passport::load_datasets_file(dir / "datasets.ttl");
    REQUIRE(loaded.size() == 1);
    CHECK(loaded[0].descriptor == d);
    CHECK(loaded[0].source_url == result.source_url);
    CHECK(loaded[0].retrieved_at == result.retrieved_at);
}
