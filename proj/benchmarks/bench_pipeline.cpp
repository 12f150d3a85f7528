// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "aimp/pipeline.hpp"
#include "aimp/provgraph.hpp"
#include "support/fixture_graphs.hpp"

#include <benchmark/benchmark.h>

namespace {

/// A wide layered pipeline: `width` parallel chains of three stages.
aimp::pipeline::PipelineSpec layered_spec(int width) {
    std::string text = "stages:\n";
    for (int i = 0; i < width; ++i) {
        auto n = std::to_string(i);
        text += "  extract" + n + ": {cmd: x, outs: [data/raw" + n + "]}\n";
        text += "  clean" + n + ": {cmd: x, deps: [data/raw" + n + "], outs: [data/clean" + n +
                "]}\n";
        text += "  merge" + n + ": {cmd: x, deps: [data/clean" + n + "], outs: [data/final" + n +
                "]}\n";
    }
    return aimp::pipeline::parse_pipeline(text);
}

void BM_BuildDag(benchmark::State& state) {
    auto spec = layered_spec(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto dag = aimp::pipeline::build_dag(spec);
        benchmark::DoNotOptimize(dag);
    }
}

void BM_GraphCanonicalJson(benchmark::State& state) {
    auto graph = merge(aimp::test::collection_graph(), aimp::test::curation_graph());
    for (auto _ : state) {
        auto bytes = graph.to_canonical_json();
        benchmark::DoNotOptimize(bytes);
    }
}

void BM_GraphTurtle(benchmark::State& state) {
    auto graph = merge(aimp::test::collection_graph(), aimp::test::curation_graph());
    for (auto _ : state) {
        auto text = graph.to_turtle();
        benchmark::DoNotOptimize(text);
    }
}

BENCHMARK(BM_BuildDag)->Arg(4)->Arg(32)->Arg(128);
BENCHMARK(BM_GraphCanonicalJson);
BENCHMARK(BM_GraphTurtle);

} // namespace
