// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#pragma once

#include <nlohmann/json.hpp>

#include "osintgraph/enrich.hpp"
#include "osintgraph/graph.hpp"
#include "osintgraph/ingest.hpp"

// JSON mapping shared by the transaction log, the jsonl export and the HTTP API.
// Parsing functions throw nlohmann::json exceptions or ArgumentError on bad input.

namespace osintgraph {

nlohmann::json to_json(const CrawlerMeta& m);
nlohmann::json to_json(const AvScanMeta& m);
nlohmann::json to_json(const LanguageResult& l);
nlohmann::json to_json(const EnrichmentResult& e);

CrawlerMeta crawler_meta_from_json(const nlohmann::json& j);
AvScanMeta avscan_meta_from_json(const nlohmann::json& j);
EnrichmentResult enrichment_from_json(const nlohmann::json& j);

/// Full document payload. `raw_text_limit` truncates raw_text to that many
/// UTF-8 code points and adds "raw_text_truncated": true when it bites.
nlohmann::json document_to_json(const DocumentNode& d, std::size_t raw_text_limit = SIZE_MAX);
DocumentNode document_from_json(const nlohmann::json& j);

nlohmann::json indicator_to_json(const IndicatorNode& n);

/// Stable node key used by the API, GraphML ids and dot output:
/// "doc:<checksum>" or "ind:<type>:<value>".
std::string node_key(const Graph& g, NodeRef n);

/// Per-type node/edge counts for all 14 types plus totals.
nlohmann::json stats_to_json(const GraphStats& s);

/// Serialized neighborhood. Document raw_text is cut to `preview_chars`.
nlohmann::json subgraph_to_json(const Graph& g, const SubgraphView& v, std::size_t preview_chars);

}  // namespace osintgraph
