// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#include "osintgraph/serialization.hpp"

#include "osintgraph/errors.hpp"

namespace osintgraph {

using nlohmann::json;

namespace {

Timestamp time_from(const json& j) {
    auto t = parse_rfc3339(j.get<std::string>());
    if (!t) throw ArgumentError("bad timestamp '" + j.get<std::string>() + "'");
    return *t;
}

std::optional<Timestamp> optional_time(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return time_from(*it);
}

std::optional<std::string> optional_string(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return it->get<std::string>();
}

IndicatorType type_from(const json& j) {
    auto t = parse_type_name(j.get<std::string>());
    if (!t) throw ArgumentError("unknown indicator type '" + j.get<std::string>() + "'");
    return *t;
}

}  // namespace

json to_json(const CrawlerMeta& m) {
    json j = {{"url", m.url}, {"keywords", m.keywords}, {"source_tag", m.source_tag}};
    if (m.parent_url) j["parent_url"] = *m.parent_url;
    if (m.fetched_at) j["fetched_at"] = format_rfc3339(*m.fetched_at);
    return j;
}

json to_json(const AvScanMeta& m) {
    json resources = json::array();
    for (const auto& [kind, hex] : m.contained_resource_hashes) resources.push_back({{"kind", kind}, {"hex", hex}});
    json j = {{"hashes", m.file_hashes}, {"resources", resources}, {"verdicts", m.engine_verdicts}};
    if (m.scanned_file_name) j["file_name"] = *m.scanned_file_name;
    if (m.scan_time) j["scan_time"] = format_rfc3339(*m.scan_time);
    return j;
}

json to_json(const LanguageResult& l) {
    json j = {{"confidence", l.confidence}, {"sufficient", l.sufficient}};
    j["language"] = l.language ? json(*l.language) : json(nullptr);
    return j;
}

json to_json(const EnrichmentResult& e) {
    json techniques = json::array();
    for (const auto& t : e.techniques)
        techniques.push_back({{"id", t.technique_id}, {"confidence", t.confidence}, {"mapper", mapper_name(t.mapper)}});
    return {{"language", to_json(e.language)}, {"topic", topic_name(e.topic)}, {"techniques", techniques}};
}

CrawlerMeta crawler_meta_from_json(const json& j) {
    CrawlerMeta m;
    m.url = j.at("url").get<std::string>();
    m.parent_url = optional_string(j, "parent_url");
    m.fetched_at = optional_time(j, "fetched_at");
    if (j.contains("keywords")) m.keywords = j.at("keywords").get<std::vector<std::string>>();
    m.source_tag = optional_string(j, "source_tag").value_or("");
    return m;
}

AvScanMeta avscan_meta_from_json(const json& j) {
    AvScanMeta m;
    m.scanned_file_name = optional_string(j, "file_name");
    m.scan_time = optional_time(j, "scan_time");
    if (j.contains("hashes")) m.file_hashes = j.at("hashes").get<std::map<std::string, std::string>>();
    if (j.contains("verdicts")) m.engine_verdicts = j.at("verdicts").get<std::map<std::string, std::string>>();
    if (j.contains("resources"))
        for (const auto& r : j.at("resources"))
            m.contained_resource_hashes.emplace_back(r.at("kind").get<std::string>(), r.at("hex").get<std::string>());
    return m;
}

EnrichmentResult enrichment_from_json(const json& j) {
    EnrichmentResult e;
    const auto& l = j.at("language");
    e.language.language = optional_string(l, "language");
    e.language.confidence = l.at("confidence").get<double>();
    e.language.sufficient = l.at("sufficient").get<bool>();
    auto topic = parse_topic(j.at("topic").get<std::string>());
    if (!topic) throw ArgumentError("unknown topic label");
    e.topic = *topic;
    for (const auto& t : j.at("techniques")) {
        const auto mapper = t.at("mapper").get<std::string>();
        e.techniques.push_back({t.at("id").get<std::string>(), t.at("confidence").get<double>(),
                                mapper == "report_mapper" ? MapperSlot::ReportMapper : MapperSlot::ReportTactics});
    }
    return e;
}

json document_to_json(const DocumentNode& d, std::size_t raw_text_limit) {
    json matches = json::array();
    for (const auto& m : d.match_summary)
        matches.push_back({{"type", type_name(m.type)}, {"value", m.value}, {"occ", m.occurrences}});
    json j = {{"checksum", d.checksum},
              {"source_kind", source_kind_name(d.source_kind)},
              {"ingested_at", format_rfc3339(d.ingested_at)},
              {"matches", matches}};
    // cut after `raw_text_limit` code points
    std::size_t cut = d.raw_text.size(), chars = 0;
    for (std::size_t i = 0; i < d.raw_text.size(); ++i) {
        if ((static_cast<unsigned char>(d.raw_text[i]) & 0xC0) == 0x80) continue;
        if (chars++ == raw_text_limit) {
            cut = i;
            break;
        }
    }
    j["raw_text"] = d.raw_text.substr(0, cut);
    if (cut < d.raw_text.size()) j["raw_text_truncated"] = true;
    if (d.crawler_meta) j["crawler_meta"] = to_json(*d.crawler_meta);
    if (d.avscan_meta) j["avscan_meta"] = to_json(*d.avscan_meta);
    if (d.enrichment) j["enrichment"] = to_json(*d.enrichment);
    return j;
}

DocumentNode document_from_json(const json& j) {
    DocumentNode d;
    d.checksum = j.at("checksum").get<std::string>();
    auto kind = parse_source_kind(j.at("source_kind").get<std::string>());
    if (!kind) throw ArgumentError("unknown source_kind");
    d.source_kind = *kind;
    d.raw_text = j.at("raw_text").get<std::string>();
    d.ingested_at = time_from(j.at("ingested_at"));
    if (j.contains("crawler_meta")) d.crawler_meta = crawler_meta_from_json(j.at("crawler_meta"));
    if (j.contains("avscan_meta")) d.avscan_meta = avscan_meta_from_json(j.at("avscan_meta"));
    if (j.contains("enrichment")) d.enrichment = enrichment_from_json(j.at("enrichment"));
    if (j.contains("matches"))
        for (const auto& m : j.at("matches"))
            d.match_summary.push_back({type_from(m.at("type")), m.at("value").get<std::string>(),
                                       m.at("occ").get<std::uint32_t>()});
    return d;
}

json indicator_to_json(const IndicatorNode& n) { return {{"type", type_name(n.type)}, {"value", n.value}}; }

std::string node_key(const Graph& g, NodeRef n) {
    if (n.kind == NodeKind::Document) return "doc:" + g.document(n.index).checksum;
    const auto& ind = g.indicator(n.index);
    return "ind:" + std::string(type_name(ind.type)) + ":" + ind.value;
}

json stats_to_json(const GraphStats& s) {
    json types = json::object();
    for (auto t : kAllIndicatorTypes) {
        types[std::string(type_name(t))] = {{"display", display_name(t)}, {"nodes", s[t].nodes}, {"edges", s[t].edges}};
    }
    return {{"documents", s.documents}, {"indicator_nodes", s.indicator_nodes()}, {"edges", s.edges()}, {"types", types}};
}

json subgraph_to_json(const Graph& g, const SubgraphView& v, std::size_t preview_chars) {
    json nodes = json::array();
    for (std::size_t i = 0; i < v.nodes.size(); ++i) {
        const NodeRef n = v.nodes[i];
        json j;
        if (n.kind == NodeKind::Document) {
            j = document_to_json(g.document(n.index), preview_chars);
            j.erase("matches");
            j["kind"] = "document";
        } else {
            j = indicator_to_json(g.indicator(n.index));
            j["kind"] = "indicator";
        }
        j["id"] = node_key(g, n);
        j["depth"] = v.depths[i];
        j["degree"] = g.degree(n);
        nodes.push_back(std::move(j));
    }
    json edges = json::array();
    for (const auto& e : v.edges) {
        const auto& ind = g.indicator(e.indicator);
        edges.push_back({{"source", node_key(g, NodeRef::document(e.document))},
                         {"target", node_key(g, NodeRef::indicator(e.indicator))},
                         {"label", edge_label(e.label)},
                         {"type", type_name(ind.type)},
                         {"value", ind.value},
                         {"occ", e.occurrences}});
    }
    json frontier = json::array();
    for (const auto& n : v.frontier) frontier.push_back(node_key(g, n));
    return {{"nodes", nodes}, {"edges", edges}, {"frontier", frontier}, {"truncated", v.truncated}};
}

}  // namespace osintgraph
