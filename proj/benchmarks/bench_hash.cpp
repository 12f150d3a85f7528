// Copyright 2026 The aimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "aimp/hash.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <string>

namespace {

std::string random_bytes(std::size_t n) {
    std::mt19937_64 rng(1234);
    std::string data(n, '\0');
    for (auto& c : data) c = static_cast<char>(rng());
    return data;
}

void BM_HashBytes(benchmark::State& state) {
    auto data = random_bytes(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto ref = aimp::cas::hash_bytes(data);
        benchmark::DoNotOptimize(ref);
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) * state.range(0));
}

BENCHMARK(BM_HashBytes)->Arg(1 << 10)->Arg(1 << 16)->Arg(1 << 20);

} // namespace
