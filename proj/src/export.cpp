// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#include "osintgraph/export.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "osintgraph/errors.hpp"
#include "osintgraph/serialization.hpp"

namespace osintgraph {

using nlohmann::json;

std::optional<ExportFormat> parse_export_format(std::string_view s) {
    if (s == "cypher") return ExportFormat::CypherScript;
    if (s == "graphml") return ExportFormat::GraphML;
    if (s == "jsonl") return ExportFormat::EdgeListJsonl;
    return std::nullopt;
}

std::string node_label(IndicatorType t) { return "node_" + std::string(type_name(t)); }

namespace {

std::vector<std::uint32_t> sorted_indicators(const Graph& g) {
    std::vector<std::uint32_t> ids(g.indicator_count());
    std::iota(ids.begin(), ids.end(), 0u);
    std::sort(ids.begin(), ids.end(), [&](std::uint32_t a, std::uint32_t b) {
        const auto& x = g.indicator(a);
        const auto& y = g.indicator(b);
        return std::tie(x.type, x.value) < std::tie(y.type, y.value);
    });
    return ids;
}

std::vector<std::uint32_t> sorted_doc_edges(const Graph& g, std::uint32_t doc) {
    auto edges = g.incident(NodeRef::document(doc));
    std::sort(edges.begin(), edges.end(), [&](std::uint32_t a, std::uint32_t b) {
        const auto& x = g.indicator(g.edges()[a].indicator);
        const auto& y = g.indicator(g.edges()[b].indicator);
        return std::tie(x.type, x.value) < std::tie(y.type, y.value);
    });
    return edges;
}

std::string cypher_string(std::string_view s) {
    std::string out = "'";
    for (char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '\'': out += "\\'"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: out.push_back(c);
        }
    }
    out.push_back('\'');
    return out;
}

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        const auto u = static_cast<unsigned char>(c);
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default:
                // XML 1.0 forbids most C0 controls even as references
                if (u < 0x20 && c != '\n' && c != '\r' && c != '\t') out += "\xEF\xBF\xBD";
                else out.push_back(c);
        }
    }
    return out;
}

std::string doc_id(const DocumentNode& d) { return "doc:" + d.checksum; }
std::string ind_id(const IndicatorNode& n) { return "ind:" + std::string(type_name(n.type)) + ":" + n.value; }

}  // namespace

void write_cypher(const Graph& g, std::ostream& out) {
    out << "// osintgraph export: " << g.document_count() << " documents, " << g.indicator_count()
        << " indicators, " << g.edge_count() << " edges\n";
    for (std::uint32_t i = 0; i < g.document_count(); ++i) {
        const auto& d = g.document(i);
        out << "CREATE (:node_document {checksum: " << cypher_string(d.checksum)
            << ", source_kind: " << cypher_string(source_kind_name(d.source_kind))
            << ", ingested_at: " << cypher_string(format_rfc3339(d.ingested_at));
        if (d.crawler_meta) {
            out << ", url: " << cypher_string(d.crawler_meta->url)
                << ", source_tag: " << cypher_string(d.crawler_meta->source_tag);
        }
        if (d.enrichment) {
            if (d.enrichment->language.language) out << ", language: " << cypher_string(*d.enrichment->language.language);
            out << ", topic: " << cypher_string(topic_name(d.enrichment->topic));
        }
        out << ", raw_text: " << cypher_string(d.raw_text) << "});\n";
    }
    for (auto id : sorted_indicators(g)) {
        const auto& n = g.indicator(id);
        out << "CREATE (:" << node_label(n.type) << " {name: " << cypher_string(n.value) << "});\n";
    }
    for (std::uint32_t i = 0; i < g.document_count(); ++i) {
        const auto& d = g.document(i);
        for (auto e : sorted_doc_edges(g, i)) {
            const auto& edge = g.edges()[e];
            const auto& n = g.indicator(edge.indicator);
            out << "MATCH (d:node_document {checksum: " << cypher_string(d.checksum) << "}), (i:" << node_label(n.type)
                << " {name: " << cypher_string(n.value) << "}) CREATE (d)-[:" << edge_label(edge.label)
                << " {occurrences: " << edge.occurrences << "}]->(i);\n";
        }
    }
}

void write_graphml(const Graph& g, std::ostream& out) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
           "  <key id=\"kind\" for=\"node\" attr.name=\"kind\" attr.type=\"string\"/>\n"
           "  <key id=\"checksum\" for=\"node\" attr.name=\"checksum\" attr.type=\"string\"/>\n"
           "  <key id=\"source_kind\" for=\"node\" attr.name=\"source_kind\" attr.type=\"string\"/>\n"
           "  <key id=\"source_tag\" for=\"node\" attr.name=\"source_tag\" attr.type=\"string\"/>\n"
           "  <key id=\"language\" for=\"node\" attr.name=\"language\" attr.type=\"string\"/>\n"
           "  <key id=\"topic\" for=\"node\" attr.name=\"topic\" attr.type=\"string\"/>\n"
           "  <key id=\"raw_text\" for=\"node\" attr.name=\"raw_text\" attr.type=\"string\"/>\n"
           "  <key id=\"type\" for=\"node\" attr.name=\"type\" attr.type=\"string\"/>\n"
           "  <key id=\"name\" for=\"node\" attr.name=\"name\" attr.type=\"string\"/>\n"
           "  <key id=\"label\" for=\"edge\" attr.name=\"label\" attr.type=\"string\"/>\n"
           "  <key id=\"occurrences\" for=\"edge\" attr.name=\"occurrences\" attr.type=\"int\"/>\n"
           "  <graph id=\"osintgraph\" edgedefault=\"undirected\">\n";
    auto data = [&](const char* key, std::string_view v) {
        out << "      <data key=\"" << key << "\">" << xml_escape(v) << "</data>\n";
    };
    for (std::uint32_t i = 0; i < g.document_count(); ++i) {
        const auto& d = g.document(i);
        out << "    <node id=\"" << xml_escape(doc_id(d)) << "\">\n";
        data("kind", "document");
        data("checksum", d.checksum);
        data("source_kind", source_kind_name(d.source_kind));
        if (d.crawler_meta) data("source_tag", d.crawler_meta->source_tag);
        if (d.enrichment) {
            if (d.enrichment->language.language) data("language", *d.enrichment->language.language);
            data("topic", topic_name(d.enrichment->topic));
        }
        data("raw_text", d.raw_text);
        out << "    </node>\n";
    }
    for (auto id : sorted_indicators(g)) {
        const auto& n = g.indicator(id);
        out << "    <node id=\"" << xml_escape(ind_id(n)) << "\">\n";
        data("kind", "indicator");
        data("type", type_name(n.type));
        data("name", n.value);
        out << "    </node>\n";
    }
    std::size_t k = 0;
    for (std::uint32_t i = 0; i < g.document_count(); ++i) {
        for (auto e : sorted_doc_edges(g, i)) {
            const auto& edge = g.edges()[e];
            out << "    <edge id=\"e" << k++ << "\" source=\"" << xml_escape(doc_id(g.document(i))) << "\" target=\""
                << xml_escape(ind_id(g.indicator(edge.indicator))) << "\">\n";
            data("label", edge_label(edge.label));
            data("occurrences", std::to_string(edge.occurrences));
            out << "    </edge>\n";
        }
    }
    out << "  </graph>\n</graphml>\n";
}

void write_jsonl(const Graph& g, std::ostream& out) {
    for (std::uint32_t i = 0; i < g.document_count(); ++i) {
        json j = document_to_json(g.document(i));
        j.erase("matches");  // carried by the edge records
        j["kind"] = "doc";
        out << j.dump() << '\n';
    }
    for (auto id : sorted_indicators(g)) {
        const auto& n = g.indicator(id);
        out << json{{"kind", "ind"}, {"type", type_name(n.type)}, {"value", n.value}}.dump() << '\n';
    }
    for (std::uint32_t i = 0; i < g.document_count(); ++i) {
        for (auto e : sorted_doc_edges(g, i)) {
            const auto& edge = g.edges()[e];
            const auto& n = g.indicator(edge.indicator);
            out << json{{"kind", "edge"},
                        {"doc", g.document(i).checksum},
                        {"type", type_name(n.type)},
                        {"value", n.value},
                        {"occ", edge.occurrences}}
                       .dump()
                << '\n';
        }
    }
}

void export_graph(const Graph& g, ExportFormat fmt, const std::filesystem::path& dest) {
    auto tmp = dest;
    tmp += ".partial";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        switch (fmt) {
            case ExportFormat::CypherScript: write_cypher(g, out); break;
            case ExportFormat::GraphML: write_graphml(g, out); break;
            case ExportFormat::EdgeListJsonl: write_jsonl(g, out); break;
        }
        out.flush();
        if (!out) {
            out.close();
            std::filesystem::remove(tmp);
            throw IoError("write failed for " + dest.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, dest, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw IoError("cannot move export into place at " + dest.string() + ": " + ec.message());
    }
}

Graph load_jsonl(std::istream& in) {
    struct PendingDoc {
        std::size_t line;
        DocumentNode node;
    };
    std::vector<PendingDoc> docs;
    std::map<std::string, std::size_t> doc_index;
    std::map<std::pair<IndicatorType, std::string>, std::size_t> ind_lines;
    std::set<std::pair<IndicatorType, std::string>> used;

    struct PendingEdge {
        std::size_t line;
        std::string doc;
        MatchSummaryEntry entry;
    };
    std::vector<PendingEdge> edges;

    auto indicator_type = [](const json& j, std::size_t line) {
        const auto name = j.at("type").get<std::string>();
        if (name == "document" || name == "doc")
            throw SchemaError(line, "bipartite violation: edge or indicator of kind document");
        auto t = parse_type_name(name);
        if (!t) throw SchemaError(line, "unknown indicator type '" + name + "'");
        return *t;
    };

    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (text.empty() || text.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw SchemaError(line, std::string("invalid JSON: ") + e.what());
        }
        if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
            throw SchemaError(line, "record needs a string \"kind\"");
        const auto kind = j["kind"].get<std::string>();
        try {
            if (kind == "doc") {
                DocumentNode d = document_from_json(j);
                if (d.checksum.empty()) throw SchemaError(line, "empty checksum");
                if (!doc_index.emplace(d.checksum, docs.size()).second)
                    throw SchemaError(line, "duplicate document " + d.checksum);
                d.match_summary.clear();
                docs.push_back({line, std::move(d)});
            } else if (kind == "ind") {
                const auto t = indicator_type(j, line);
                auto v = j.at("value").get<std::string>();
                if (v.empty()) throw SchemaError(line, "empty indicator value");
                if (!ind_lines.emplace(std::pair(t, std::move(v)), line).second)
                    throw SchemaError(line, "duplicate indicator");
            } else if (kind == "edge") {
                if (j.contains("src") || j.contains("dst"))
                    throw SchemaError(line, "bipartite violation: edges are written as doc + (type, value)");
                const auto t = indicator_type(j, line);
                const auto occ = j.value("occ", 1);
                if (occ < 1) throw SchemaError(line, "occ must be positive");
                edges.push_back({line, j.at("doc").get<std::string>(),
                                 {t, j.at("value").get<std::string>(), static_cast<std::uint32_t>(occ)}});
            } else {
                throw SchemaError(line, "unknown kind '" + kind + "'");
            }
        } catch (const SchemaError&) {
            throw;
        } catch (const std::exception& e) {
            throw SchemaError(line, e.what());
        }
    }

    std::set<std::tuple<std::string, IndicatorType, std::string>> seen_edges;
    for (const auto& e : edges) {
        if (doc_index.contains(e.entry.value) && !ind_lines.contains({e.entry.type, e.entry.value}))
            throw SchemaError(e.line, "bipartite violation: edge points at a document");
        auto d = doc_index.find(e.doc);
        if (d == doc_index.end()) {
            const bool is_indicator = std::any_of(ind_lines.begin(), ind_lines.end(),
                                                  [&](const auto& kv) { return kv.first.second == e.doc; });
            throw SchemaError(e.line, is_indicator ? "bipartite violation: edge starts at an indicator"
                                                   : "edge references unknown document " + e.doc);
        }
        if (!ind_lines.contains({e.entry.type, e.entry.value}))
            throw SchemaError(e.line, "edge references unknown indicator " + e.entry.value);
        if (!seen_edges.emplace(e.doc, e.entry.type, e.entry.value).second)
            throw SchemaError(e.line, "duplicate edge");
        used.emplace(e.entry.type, e.entry.value);
        docs[d->second].node.match_summary.push_back(e.entry);
    }
    for (const auto& [key, l] : ind_lines)
        if (!used.contains(key)) throw SchemaError(l, "indicator without edges");

    Graph g;
    for (auto& d : docs) {
        if (d.node.match_summary.empty()) throw SchemaError(d.line, "document without edges");
        std::sort(d.node.match_summary.begin(), d.node.match_summary.end(),
                  [](const auto& a, const auto& b) { return std::tie(a.type, a.value) < std::tie(b.type, b.value); });
        g.apply(CommitRecord{std::move(d.node)});
    }
    return g;
}

Graph load_jsonl_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    return load_jsonl(in);
}

}  // namespace osintgraph
