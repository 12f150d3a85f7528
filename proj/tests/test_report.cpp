// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aimp/report.hpp"
#include "support/html_check.hpp"
#include "support/mini_demo.hpp"

using namespace aimp;

namespace {

struct BuiltDemo {
    test::MiniDemo demo;
    passport::ModelPassport p;

    BuiltDemo() {
        REQUIRE(demo.run().ok());
        p = demo.build_passport();
    }
};

pipeline::Dag dag_of(const std::string& yaml) {
    return pipeline::build_dag(pipeline::parse_pipeline(yaml));
}

} // namespace

TEST_CASE("a single stage renders one node and no edges") {
    auto svg = report::render_dag_svg(dag_of("stages:\n  Solo: {cmd: x}\n"));
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find(">Solo<") != std::string::npos);
    CHECK(svg.find("<line") == std::string::npos);
}

TEST_CASE("a chain of three spans three ranks with two edges") {
    auto svg = report::render_dag_svg(dag_of(
        "stages:\n"
        "  A: {cmd: x, outs: [d/a]}\n"
        "  B: {cmd: x, deps: [d/a], outs: [d/b]}\n"
        "  C: {cmd: x, deps: [d/b]}\n"));
    CHECK(std::count(svg.begin(), svg.end(), '\n') > 3);
    // two edges
    std::size_t lines = 0;
    for (std::size_t at = svg.find("<line"); at != std::string::npos; at = svg.find("<line", at + 1)) {
        ++lines;
    }
    CHECK(lines == 2);
    // three distinct x coordinates for the three ranks
    CHECK(svg.find("x=\"20\"") != std::string::npos);
    CHECK(svg.find("x=\"240\"") != std::string::npos);
    CHECK(svg.find("x=\"460\"") != std::string::npos);
}

TEST_CASE("a diamond places B and C on the same rank") {
    auto svg = report::render_dag_svg(dag_of(
        "stages:\n"
        "  A: {cmd: x, outs: [d/a]}\n"
        "  B: {cmd: x, deps: [d/a], outs: [d/b]}\n"
        "  C: {cmd: x, deps: [d/a], outs: [d/c]}\n"
        "  D: {cmd: x, deps: [d/b, d/c]}\n"));
    auto rect_x = [&](const std::string& name) {
        auto text_at = svg.find(">" + name + "<");
        REQUIRE(text_at != std::string::npos);
        auto g_at = svg.rfind("<g><rect x=\"", text_at);
        REQUIRE(g_at != std::string::npos);
        auto start = g_at + 12;
        return svg.substr(start, svg.find('"', start) - start);
    };
    CHECK(rect_x("B") == rect_x("C"));
    CHECK(rect_x("A") != rect_x("B"));
    CHECK(rect_x("D") != rect_x("B"));
}

TEST_CASE_FIXTURE(BuiltDemo, "html rendering is deterministic, well-formed and complete") {
    auto html = report::render(p, {});
    CHECK(html == report::render(p, {}));

    auto problems = test::check_html5(html);
    for (const auto& problem : problems) {
        MESSAGE(problem);
    }
    CHECK(problems.empty());

    for (const char* stage : {"DICOM2NIFTI", "Preprocess", "Prepare", "Train"}) {
        CHECK(html.find(stage) != std::string::npos);
    }
    for (const char* metric : {"Dice", "IoU"}) {
        CHECK(html.find(metric) != std::string::npos);
    }
    CHECK(html.find(p.identity) != std::string::npos);
    CHECK(html.find("<svg") != std::string::npos);
    CHECK(html.find("14300") != std::string::npos);
    // fully self-contained: no external references
    CHECK(html.find("http-equiv") == std::string::npos);
    CHECK(html.find("src=\"http") == std::string::npos);
    CHECK(html.find("href=") == std::string::npos);
}

TEST_CASE_FIXTURE(BuiltDemo, "every checksum appears verbatim (title attribute carries it)") {
    auto html = report::render(p, {});
    CHECK(html.find(p.training.model_artifact.sha256.digest) != std::string::npos);
    CHECK(html.find(p.training.model_artifact.md5.digest) != std::string::npos);
    for (const auto& stage : p.lock) {
        for (const auto& dep : stage.deps) {
            CAPTURE(dep.path);
            CHECK(html.find(dep.ref.sha256.digest) != std::string::npos);
        }
        for (const auto& out : stage.outs) {
            CHECK(html.find(out.ref.sha256.digest) != std::string::npos);
        }
    }
}

TEST_CASE_FIXTURE(BuiltDemo, "markdown rendering carries the same content") {
    report::RenderOptions options;
    options.format = report::RenderOptions::Format::Markdown;
    auto md = report::render(p, options);
    CHECK(md.rfind("# AI Model Passport", 0) == 0);
    CHECK(md == report::render(p, options));
    for (const char* stage : {"DICOM2NIFTI", "Preprocess", "Prepare", "Train"}) {
        CHECK(md.find(stage) != std::string::npos);
    }
    CHECK(md.find("Dice") != std::string::npos);
    CHECK(md.find(p.identity) != std::string::npos);
    CHECK(md.find("<svg") == std::string::npos);
}

TEST_CASE_FIXTURE(BuiltDemo, "a dataset-free passport renders 'none recorded'") {
    auto stripped = p;
    stripped.datasets.clear();
    stripped.identity = passport::compute_identity(stripped);

    report::RenderOptions options;
    options.format = report::RenderOptions::Format::Markdown;
    auto md = report::render(stripped, options);
    CHECK(md.find("none recorded") != std::string::npos);

    auto html = report::render(stripped, {});
    CHECK(html.find("none recorded") != std::string::npos);
    CHECK(test::check_html5(html).empty());
}

TEST_CASE_FIXTURE(BuiltDemo, "rendering refuses self-inconsistent passports") {
    auto tampered = p;
    tampered.manual.owner = "Someone Else";
    CHECK_THROWS_AS(report::render(tampered, {}), Error);
}

TEST_CASE_FIXTURE(BuiltDemo, "html escapes hostile text") {
    auto hostile = p;
    hostile.manual.description = "<script>alert('x')</script> & more";
    hostile.identity = passport::compute_identity(hostile);
    auto html = report::render(hostile, {});
    CHECK(html.find("<script>alert") == std::string::npos);
    CHECK(html.find("&lt;script&gt;") != std::string::npos);
    CHECK(test::check_html5(html).empty());
}
