// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "aimp/turtle.hpp"

#include <benchmark/benchmark.h>

#include <string>

namespace {

/// A medium catalog document: n datasets with a handful of properties each.
std::string catalog_text(int datasets) {
    std::string text =
        "@prefix dcat: <http://www.w3.org/ns/dcat#> .\n"
        "@prefix dct: <http://purl.org/dc/terms/> .\n"
        "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n";
    for (int i = 0; i < datasets; ++i) {
        auto id = "<https://catalog.example/dataset/d" + std::to_string(i) + ">";
        text += id +
                " a dcat:Dataset ;\n"
                "    dct:title \"Dataset " +
                std::to_string(i) +
                "\" ;\n"
                "    dct:license \"CC-BY-4.0\" ;\n"
                "    dct:publisher \"Example Org\" ;\n"
                "    dcat:keyword \"imaging\", \"demo\" ;\n"
                "    dcat:version \"1.0." +
                std::to_string(i) + "\" .\n";
    }
    return text;
}

void BM_TurtleParse(benchmark::State& state) {
    auto text = catalog_text(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto doc = aimp::turtle::parse(text);
        benchmark::DoNotOptimize(doc);
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) * text.size());
}

void BM_TurtleEmit(benchmark::State& state) {
    auto doc = aimp::turtle::parse(catalog_text(static_cast<int>(state.range(0))));
    for (auto _ : state) {
        auto text = aimp::turtle::emit(doc);
        benchmark::DoNotOptimize(text);
    }
}

BENCHMARK(BM_TurtleParse)->Arg(10)->Arg(100)->Arg(500);
BENCHMARK(BM_TurtleEmit)->Arg(10)->Arg(100)->Arg(500);

} // namespace
