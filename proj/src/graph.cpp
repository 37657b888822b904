// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#include "osintgraph/graph.hpp"

#include <algorithm>
#include <deque>

#include "osintgraph/errors.hpp"
#include "osintgraph/extract.hpp"

namespace osintgraph {

Timestamp DocumentNode::event_time() const {
    if (crawler_meta && crawler_meta->fetched_at) return *crawler_meta->fetched_at;
    if (avscan_meta && avscan_meta->scan_time) return *avscan_meta->scan_time;
    return ingested_at;
}

std::string_view DocumentNode::source_tag() const {
    return crawler_meta ? std::string_view(crawler_meta->source_tag) : std::string_view();
}

void QueryFilter::validate() const {
    if (edge_types && edge_types->empty()) throw ArgumentError("edge_types must not be empty (omit it for all types)");
    if (node_budget == 0) throw ArgumentError("node_budget must be positive");
    if (time_window && time_window->first > time_window->second) throw ArgumentError("time window is reversed");
}

bool QueryFilter::admits(IndicatorType label) const { return !edge_types || edge_types->contains(label); }

bool QueryFilter::admits(const DocumentNode& doc) const {
    if (language) {
        if (!doc.enrichment || !doc.enrichment->language.sufficient || doc.enrichment->language.language != *language)
            return false;
    }
    if (topic) {
        if (!doc.enrichment || doc.enrichment->topic != *topic) return false;
    }
    if (source_tags && !source_tags->contains(std::string(doc.source_tag()))) return false;
    if (time_window) {
        const auto t = doc.event_time();
        if (t < time_window->first || t > time_window->second) return false;
    }
    return true;
}

std::size_t GraphStats::indicator_nodes() const {
    std::size_t n = 0;
    for (const auto& s : by_type) n += s.nodes;
    return n;
}

std::size_t GraphStats::edges() const {
    std::size_t n = 0;
    for (const auto& s : by_type) n += s.edges;
    return n;
}

const std::vector<std::uint32_t>& Graph::incident(NodeRef n) const {
    return n.kind == NodeKind::Document ? doc_edges_.at(n.index) : ind_edges_.at(n.index);
}

std::optional<std::uint32_t> Graph::find_document(std::string_view checksum) const {
    auto it = by_checksum_.find(std::string(checksum));
    if (it == by_checksum_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::uint32_t> Graph::find_indicator_exact(IndicatorType type, std::string_view canonical) const {
    auto it = by_key_.find({type, std::string(canonical)});
    if (it == by_key_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::uint32_t> Graph::find_indicator(IndicatorType type, std::string_view value) const {
    return find_indicator_exact(type, canonicalize(type, value));
}

std::uint32_t Graph::apply(const CommitRecord& rec) {
    const auto doc_id = static_cast<std::uint32_t>(documents_.size());
    documents_.push_back(rec.document);
    doc_edges_.emplace_back();
    by_checksum_.emplace(rec.document.checksum, doc_id);

    for (const auto& m : rec.document.match_summary) {
        std::uint32_t ind_id;
        auto key = std::make_pair(m.type, m.value);
        if (auto it = by_key_.find(key); it != by_key_.end()) {
            ind_id = it->second;
        } else {
            ind_id = static_cast<std::uint32_t>(indicators_.size());
            indicators_.push_back({m.type, m.value});
            ind_edges_.emplace_back();
            by_key_.emplace(std::move(key), ind_id);
        }
        const auto edge_id = static_cast<std::uint32_t>(edges_.size());
        edges_.push_back({doc_id, ind_id, m.type, m.occurrences});
        doc_edges_[doc_id].push_back(edge_id);
        ind_edges_[ind_id].push_back(edge_id);
    }
    return doc_id;
}

SubgraphView Graph::neighborhood(NodeRef seed, std::uint32_t depth, const QueryFilter& filter) const {
    filter.validate();
    if (depth < 1) throw ArgumentError("depth must be at least 1");
    const bool exists = seed.kind == NodeKind::Document ? seed.index < documents_.size()
                                                        : seed.index < indicators_.size();
    if (!exists) throw NotFound("seed node does not exist");

    SubgraphView view;
    std::unordered_map<NodeRef, std::uint32_t, NodeRefHash> seen;
    std::deque<std::size_t> queue;  // positions in view.nodes
    auto visit = [&](NodeRef n, std::uint32_t d) {
        seen.emplace(n, d);
        view.nodes.push_back(n);
        view.depths.push_back(d);
        queue.push_back(view.nodes.size() - 1);
    };
    visit(seed, 0);

    while (!queue.empty()) {
        const std::size_t pos = queue.front();
        queue.pop_front();
        const NodeRef u = view.nodes[pos];
        const std::uint32_t du = view.depths[pos];
        if (du >= depth) continue;
        for (std::uint32_t e : incident(u)) {
            const GraphEdge& edge = edges_[e];
            if (!filter.admits(edge.label)) continue;
            const NodeRef v = u.kind == NodeKind::Document ? NodeRef::indicator(edge.indicator)
                                                           : NodeRef::document(edge.document);
            if (seen.contains(v)) continue;
            if (v.kind == NodeKind::Document && !filter.admits(documents_[v.index])) continue;
            if (view.nodes.size() >= filter.node_budget) {
                view.truncated = true;
                continue;
            }
            visit(v, du + 1);
        }
    }

    for (std::size_t i = 0; i < view.nodes.size(); ++i) {
        const NodeRef n = view.nodes[i];
        if (view.depths[i] == depth) view.frontier.push_back(n);
        if (n.kind != NodeKind::Document) continue;
        for (std::uint32_t e : doc_edges_[n.index]) {
            const GraphEdge& edge = edges_[e];
            if (filter.admits(edge.label) && seen.contains(NodeRef::indicator(edge.indicator)))
                view.edges.push_back(edge);
        }
    }
    std::sort(view.edges.begin(), view.edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
        return std::pair(a.document, a.indicator) < std::pair(b.document, b.indicator);
    });
    return view;
}

GraphStats Graph::stats() const {
    GraphStats s;
    s.documents = documents_.size();
    for (const auto& ind : indicators_) ++s.by_type[static_cast<std::size_t>(ind.type)].nodes;
    for (const auto& e : edges_) ++s.by_type[static_cast<std::size_t>(e.label)].edges;
    return s;
}

}  // namespace osintgraph
