// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "osintgraph/graph.hpp"

namespace osintgraph {

enum class ExportFormat { CypherScript, GraphML, EdgeListJsonl };

/// "cypher", "graphml" or "jsonl".
std::optional<ExportFormat> parse_export_format(std::string_view s);

/// Cypher node label of an indicator type, e.g. "node_md5".
std::string node_label(IndicatorType t);

// Writers emit documents in insertion order, indicators sorted by (type, value)
// and each document's edges sorted by (type, value).
void write_cypher(const Graph& g, std::ostream& out);
void write_graphml(const Graph& g, std::ostream& out);
void write_jsonl(const Graph& g, std::ostream& out);

/// Writes to a sibling temp file and renames it over `dest`, so a failed
/// export never leaves a partial file behind. Throws IoError.
void export_graph(const Graph& g, ExportFormat fmt, const std::filesystem::path& dest);

/// Rebuilds a graph from EdgeListJsonl. Throws SchemaError (with the 1-based
/// line number) on malformed lines, unknown references, duplicates, or edges
/// that do not join a document to an indicator.
Graph load_jsonl(std::istream& in);
Graph load_jsonl_file(const std::filesystem::path& path);

}  // namespace osintgraph
