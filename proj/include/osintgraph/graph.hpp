// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "osintgraph/enrich.hpp"
#include "osintgraph/ingest.hpp"
#include "osintgraph/types.hpp"

namespace osintgraph {

enum class NodeKind : std::uint8_t { Document, Indicator };

/// Opaque handle to a node. Indices are internal and never written to exports.
struct NodeRef {
    NodeKind kind = NodeKind::Document;
    std::uint32_t index = 0;

    static NodeRef document(std::uint32_t i) { return {NodeKind::Document, i}; }
    static NodeRef indicator(std::uint32_t i) { return {NodeKind::Indicator, i}; }
    friend auto operator<=>(const NodeRef&, const NodeRef&) = default;
};

struct NodeRefHash {
    std::size_t operator()(const NodeRef& r) const noexcept {
        return (static_cast<std::size_t>(r.index) << 1) | static_cast<std::size_t>(r.kind);
    }
};

struct MatchSummaryEntry {
    IndicatorType type;
    std::string value;
    std::uint32_t occurrences = 1;

    friend bool operator==(const MatchSummaryEntry&, const MatchSummaryEntry&) = default;
};

struct DocumentNode {
    std::string checksum;
    std::string raw_text;
    SourceKind source_kind = SourceKind::RawText;
    std::optional<CrawlerMeta> crawler_meta;
    std::optional<AvScanMeta> avscan_meta;
    std::optional<EnrichmentResult> enrichment;
    std::vector<MatchSummaryEntry> match_summary;  // sorted by (type, value)
    Timestamp ingested_at{};

    /// fetched_at for crawler records, scan_time for AV scans, else ingestion time.
    Timestamp event_time() const;
    std::string_view source_tag() const;

    friend bool operator==(const DocumentNode&, const DocumentNode&) = default;
};

struct IndicatorNode {
    IndicatorType type;
    std::string value;
};

/// A document-indicator link. The endpoint types make the graph bipartite by construction.
struct GraphEdge {
    std::uint32_t document = 0;
    std::uint32_t indicator = 0;
    IndicatorType label;
    std::uint32_t occurrences = 1;
};

/// Traversal restrictions for neighborhood queries. Documents rejected by the
/// filter are neither returned nor traversed through.
struct QueryFilter {
    std::optional<std::set<IndicatorType>> edge_types;
    std::optional<std::string> language;
    std::optional<TopicLabel> topic;
    std::optional<std::set<std::string>> source_tags;
    std::optional<std::pair<Timestamp, Timestamp>> time_window;  // inclusive
    std::size_t node_budget = 100000;

    /// Throws ArgumentError for an empty edge-type set or a zero budget.
    void validate() const;
    bool admits(IndicatorType label) const;
    bool admits(const DocumentNode& doc) const;
};

struct SubgraphView {
    std::vector<NodeRef> nodes;             // BFS discovery order, seed first
    std::vector<std::uint32_t> depths;      // parallel to nodes
    std::vector<GraphEdge> edges;           // sorted by (document, indicator)
    std::vector<NodeRef> frontier;          // nodes at the requested depth
    bool truncated = false;
};

struct TypeStats {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    friend bool operator==(const TypeStats&, const TypeStats&) = default;
};

struct GraphStats {
    std::size_t documents = 0;
    std::array<TypeStats, kIndicatorTypeCount> by_type{};

    const TypeStats& operator[](IndicatorType t) const { return by_type[static_cast<std::size_t>(t)]; }
    std::size_t indicator_nodes() const;
    std::size_t edges() const;
    friend bool operator==(const GraphStats&, const GraphStats&) = default;
};

/// One document commit as it is applied and logged.
struct CommitRecord {
    DocumentNode document;  // match_summary doubles as the edge list
};

/// In-memory bipartite document/indicator graph. Not synchronised; GraphStore
/// adds locking and persistence.
class Graph {
public:
    std::size_t document_count() const noexcept { return documents_.size(); }
    std::size_t indicator_count() const noexcept { return indicators_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    const DocumentNode& document(std::uint32_t i) const { return documents_.at(i); }
    const IndicatorNode& indicator(std::uint32_t i) const { return indicators_.at(i); }
    const std::vector<GraphEdge>& edges() const noexcept { return edges_; }

    /// Edge indices incident to a node, in insertion order.
    const std::vector<std::uint32_t>& incident(NodeRef n) const;
    std::size_t degree(NodeRef n) const { return incident(n).size(); }

    std::optional<std::uint32_t> find_document(std::string_view checksum) const;
    std::optional<std::uint32_t> find_indicator_exact(IndicatorType type, std::string_view canonical) const;
    /// Canonicalises `value` first; throws ArgumentError if that fails.
    std::optional<std::uint32_t> find_indicator(IndicatorType type, std::string_view value) const;

    /// Adds the document, missing indicators and one edge per summary entry.
    /// Caller guarantees a fresh checksum and a non-empty summary.
    std::uint32_t apply(const CommitRecord& rec);

    SubgraphView neighborhood(NodeRef seed, std::uint32_t depth, const QueryFilter& filter) const;
    GraphStats stats() const;

private:
    struct KeyHash {
        std::size_t operator()(const std::pair<IndicatorType, std::string>& k) const noexcept {
            return std::hash<std::string>{}(k.second) * 31 + static_cast<std::size_t>(k.first);
        }
    };

    std::vector<DocumentNode> documents_;
    std::vector<IndicatorNode> indicators_;
    std::vector<GraphEdge> edges_;
    std::vector<std::vector<std::uint32_t>> doc_edges_;
    std::vector<std::vector<std::uint32_t>> ind_edges_;
    std::unordered_map<std::string, std::uint32_t> by_checksum_;
    std::unordered_map<std::pair<IndicatorType, std::string>, std::uint32_t, KeyHash> by_key_;
};

}  // namespace osintgraph
