// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <random>

#include "osintgraph/analytics.hpp"
#include "osintgraph/config.hpp"
#include "osintgraph/extract.hpp"

using namespace osintgraph;

namespace {

CsrGraph random_bipartite(std::size_t docs, std::size_t inds, std::size_t links_per_doc) {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(inds - 1));
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t d = 0; d < docs; ++d)
        for (std::size_t k = 0; k < links_per_doc; ++k)
            edges.emplace_back(d, static_cast<std::uint32_t>(docs) + pick(rng));
    return CsrGraph::from_edges(docs + inds, edges);
}

const CsrGraph& bench_graph() {
    static const CsrGraph g = random_bipartite(200000, 100000, 6);
    return g;
}

void BM_PageRankParallel(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(pagerank(bench_graph()));
}

void BM_PageRankSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(pagerank_serial(bench_graph()));
}

const std::vector<std::string>& bench_texts() {
    static const std::vector<std::string> texts = [] {
        std::vector<std::string> out;
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<int> octet(1, 254);
        for (int i = 0; i < 2000; ++i) {
            std::string t = "Report " + std::to_string(i) + ": the loader beacons to ";
            for (int k = 0; k < 5; ++k)
                t += std::to_string(octet(rng)) + "." + std::to_string(octet(rng)) + "." + std::to_string(octet(rng)) +
                     "." + std::to_string(octet(rng)) + ", ";
            t += "drops invoice_" + std::to_string(i) + ".exe, exploits CVE-2021-" + std::to_string(40000 + i) +
                 " and resolves cdn" + std::to_string(i) + ".badhost.net. Emotet and APT28 were mentioned. ";
            for (int k = 0; k < 20; ++k) t += "filler words describing the observed campaign in some detail ";
            out.push_back(std::move(t));
        }
        return out;
    }();
    return texts;
}

const ExtractionConfig& bench_config() {
    static const auto cfg = AppConfig{}.pipeline_config();
    return cfg->extraction;
}

void BM_ExtractBatchParallel(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(extract_batch(bench_texts(), bench_config()));
}

void BM_ExtractBatchSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(extract_batch_serial(bench_texts(), bench_config()));
}

}  // namespace

BENCHMARK(BM_PageRankParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PageRankSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExtractBatchParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExtractBatchSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
