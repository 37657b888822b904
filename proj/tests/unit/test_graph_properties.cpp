// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "osintgraph/checksum.hpp"
#include "osintgraph/export.hpp"
#include "osintgraph/graph_store.hpp"

using namespace osintgraph;
using namespace osintgraph::testkit;

namespace {

std::vector<RawInput> random_inputs(std::uint64_t seed, int n) {
    std::mt19937_64 rng(seed);
    std::vector<RawInput> out;
    for (int i = 0; i < n; ++i) out.push_back({SourceKind::RawText, random_document(rng).text, "doc" + std::to_string(i)});
    return out;
}

/// Bipartite, unique-node and edge/summary consistency checks.
void check_invariants(const Graph& g) {
    std::set<std::string> checksums;
    std::set<IndicatorKey> keys;
    for (std::uint32_t i = 0; i < g.indicator_count(); ++i) {
        const auto& n = g.indicator(i);
        ASSERT_TRUE(keys.emplace(n.type, n.value).second) << "duplicate indicator " << n.value;
        ASSERT_GE(g.degree(NodeRef::indicator(i)), 1u);
    }
    std::size_t degree_sum = 0;
    for (std::uint32_t d = 0; d < g.document_count(); ++d) {
        const auto& doc = g.document(d);
        ASSERT_TRUE(checksums.insert(doc.checksum).second);
        ASSERT_GE(g.degree(NodeRef::document(d)), 1u);
        degree_sum += g.degree(NodeRef::document(d));
        std::set<IndicatorKey> linked;
        for (auto e : g.incident(NodeRef::document(d))) {
            const auto& edge = g.edges()[e];
            ASSERT_EQ(edge.document, d);
            ASSERT_LT(edge.indicator, g.indicator_count());
            const auto& ind = g.indicator(edge.indicator);
            ASSERT_EQ(edge.label, ind.type);
            ASSERT_TRUE(linked.emplace(ind.type, ind.value).second) << "parallel edge";
        }
        ASSERT_EQ(linked, keys_of(doc.match_summary));
    }
    ASSERT_EQ(degree_sum, g.edge_count());
    std::size_t ind_degree_sum = 0;
    for (std::uint32_t i = 0; i < g.indicator_count(); ++i) ind_degree_sum += g.degree(NodeRef::indicator(i));
    ASSERT_EQ(ind_degree_sum, g.edge_count());
}

std::string jsonl(const Graph& g) {
    std::ostringstream out;
    write_jsonl(g, out);
    return out.str();
}

}  // namespace

TEST(GraphProperty, BipartiteAndUniqueOverRandomDocuments) {
    GraphStore store;
    Pipeline p(pipeline_config(), store);
    const auto inputs = random_inputs(11, 1200);
    const auto summary = p.ingest_batch(inputs);
    EXPECT_EQ(summary.errors, 0u);
    EXPECT_EQ(summary.committed + summary.duplicates + summary.zero_degree, inputs.size());
    EXPECT_GT(summary.zero_degree, 0u);
    EXPECT_GT(summary.committed, 1000u);
    check_invariants(store.view().graph());

    // each committed document links to exactly what was planted in it
    std::mt19937_64 rng(11);
    auto view = store.view();
    for (int i = 0; i < 1200; ++i) {
        const auto doc = random_document(rng);
        const auto id = view->find_document(sha256_hex(doc.text));
        if (doc.planted.empty()) {
            ASSERT_FALSE(id);
            continue;
        }
        if (!id) continue;  // duplicate text
        ASSERT_EQ(keys_of(view->document(*id).match_summary), doc.planted);
    }
}

TEST(GraphProperty, DedupIsIdempotent) {
    GraphStore store;
    Pipeline p(pipeline_config(), store);
    const auto inputs = random_inputs(12, 400);
    p.ingest_batch(inputs);
    const auto before = store.stats();
    const auto dump = jsonl(store.view().graph());
    const auto again = p.ingest_batch(inputs);
    EXPECT_EQ(again.committed, 0u);
    EXPECT_EQ(store.stats(), before);
    EXPECT_EQ(jsonl(store.view().graph()), dump);
}

TEST(GraphProperty, IngestOrderDoesNotChangeStats) {
    auto inputs = random_inputs(13, 300);
    GraphStore a, b;
    Pipeline pa(pipeline_config(), a), pb(pipeline_config(), b);
    pa.ingest_batch(inputs);
    std::mt19937_64 rng(1);
    std::shuffle(inputs.begin(), inputs.end(), rng);
    pb.ingest_batch_serial(inputs);
    EXPECT_EQ(a.stats(), b.stats());
}

TEST(GraphProperty, NeighborhoodMatchesReferenceBfs) {
    std::mt19937_64 rng(2024);
    int graphs = 0;
    for (; graphs < 150; ++graphs) {
        const std::size_t docs = std::uniform_int_distribution<std::size_t>(1, 30)(rng);
        const std::size_t pool = std::uniform_int_distribution<std::size_t>(1, 30)(rng);
        const Graph g = random_graph(rng, docs, pool, 4);
        ASSERT_LE(g.document_count() + g.indicator_count(), 60u);
        check_invariants(g);
        for (std::uint32_t depth = 1; depth <= 3; ++depth) {
            for (int trial = 0; trial < 4; ++trial) {
                QueryFilter f;
                const int mode = std::uniform_int_distribution<int>(0, 5)(rng);
                if (mode == 1) f.language = "en";
                if (mode == 2) f.topic = TopicLabel::Cybersecurity;
                if (mode == 3) f.source_tags = std::set<std::string>{"github", "news"};
                if (mode == 4) f.edge_types = std::set<IndicatorType>{IndicatorType::Md5, IndicatorType::Sha256};
                if (mode == 5)
                    f.time_window = std::pair(*parse_rfc3339("2020-06-01T00:00:00Z"), *parse_rfc3339("2021-06-01T00:00:00Z"));
                const bool from_doc = std::uniform_int_distribution<int>(0, 3)(rng) == 0;
                const NodeRef seed =
                    from_doc ? NodeRef::document(std::uniform_int_distribution<std::uint32_t>(
                                   0, static_cast<std::uint32_t>(g.document_count() - 1))(rng))
                             : NodeRef::indicator(std::uniform_int_distribution<std::uint32_t>(
                                   0, static_cast<std::uint32_t>(g.indicator_count() - 1))(rng));

                const auto got = g.neighborhood(seed, depth, f);
                const auto want = neighborhood_oracle(g, seed, depth, f);
                std::map<NodeRef, std::uint32_t> have;
                for (std::size_t i = 0; i < got.nodes.size(); ++i) have[got.nodes[i]] = got.depths[i];
                ASSERT_EQ(have.size(), got.nodes.size()) << "node listed twice";
                ASSERT_EQ(have, want) << "graph " << graphs << " depth " << depth << " mode " << mode;
                ASSERT_FALSE(got.truncated);

                // edges: exactly the admitted edges inside the node set
                std::set<std::pair<std::uint32_t, std::uint32_t>> edges, expect_edges;
                for (const auto& e : got.edges) edges.emplace(e.document, e.indicator);
                for (const auto& e : g.edges())
                    if (f.admits(e.label) && want.contains(NodeRef::document(e.document)) &&
                        want.contains(NodeRef::indicator(e.indicator)))
                        expect_edges.emplace(e.document, e.indicator);
                ASSERT_EQ(edges, expect_edges);

                std::set<NodeRef> frontier(got.frontier.begin(), got.frontier.end());
                for (const auto& [n, d] : want) ASSERT_EQ(frontier.contains(n), d == depth);
            }
        }
    }
    EXPECT_GE(graphs, 100);
}

TEST(GraphProperty, BudgetNeverExceeded) {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 100; ++i) {
        const Graph g = random_graph(rng, 25, 20, 5);
        QueryFilter f;
        f.node_budget = std::uniform_int_distribution<std::size_t>(1, 20)(rng);
        const auto v = g.neighborhood(NodeRef::indicator(0), 3, f);
        ASSERT_LE(v.nodes.size(), f.node_budget);
        const auto full = neighborhood_oracle(g, NodeRef::indicator(0), 3, {});
        ASSERT_EQ(v.truncated, full.size() > f.node_budget);
    }
}
