// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#include "osintgraph/ingest.hpp"

#include <nlohmann/json.hpp>

#include "osintgraph/checksum.hpp"
#include "osintgraph/errors.hpp"
#include "osintgraph/graph_store.hpp"

namespace osintgraph {

using nlohmann::json;

namespace {

json parse_object(std::string_view line) {
    json j;
    try {
        j = json::parse(sanitize_utf8(line));
    } catch (const json::parse_error& e) {
        throw MalformedRecord("<record>", e.what());
    }
    if (!j.is_object()) throw MalformedRecord("<record>", "expected a JSON object");
    return j;
}

std::optional<std::string> optional_string(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw MalformedRecord(key, "expected a string");
    return it->get<std::string>();
}

std::optional<Timestamp> optional_time(const json& j, const char* key) {
    auto s = optional_string(j, key);
    if (!s) return std::nullopt;
    auto t = parse_rfc3339(*s);
    if (!t) throw MalformedRecord(key, "not an RFC 3339 timestamp: " + *s);
    return t;
}

std::optional<IndicatorType> hash_type(std::string_view kind) {
    if (kind == "md5") return IndicatorType::Md5;
    if (kind == "sha1") return IndicatorType::Sha1;
    if (kind == "sha256") return IndicatorType::Sha256;
    if (kind == "sha512") return IndicatorType::Sha512;
    return std::nullopt;
}

std::string checked_hash(const std::string& field, std::string_view kind, const json& value) {
    if (!value.is_string()) throw MalformedRecord(field, "expected a hex string");
    std::string hex = value.get<std::string>();
    const std::size_t want = hash_hex_length(kind);
    if (want == 0) throw MalformedRecord(field, "unknown hash kind '" + std::string(kind) + "'");
    if (hex.size() != want)
        throw MalformedRecord(field, std::string(kind) + " must be " + std::to_string(want) +
                                         " hex chars, got " + std::to_string(hex.size()));
    for (char& c : hex) {
        if (c >= 'A' && c <= 'F') c = static_cast<char>(c - 'A' + 'a');
        if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f')))
            throw MalformedRecord(field, "non-hex character");
    }
    return hex;
}

}  // namespace

std::size_t hash_hex_length(std::string_view kind) {
    if (kind == "md5") return 32;
    if (kind == "sha1") return 40;
    if (kind == "sha256") return 64;
    if (kind == "sha512") return 128;
    return 0;
}

std::string sanitize_utf8(std::string_view in) {
    static constexpr std::string_view kReplacement = "\xEF\xBF\xBD";
    std::string out;
    out.reserve(in.size());
    const auto* s = reinterpret_cast<const unsigned char*>(in.data());
    const std::size_t n = in.size();
    std::size_t i = 0;
    while (i < n) {
        const unsigned char c = s[i];
        if (c < 0x80) {
            out.push_back(static_cast<char>(c));
            ++i;
            continue;
        }
        std::size_t len = 0;
        unsigned char lo = 0x80, hi = 0xBF;
        if (c >= 0xC2 && c <= 0xDF) {
            len = 2;
        } else if (c >= 0xE0 && c <= 0xEF) {
            len = 3;
            if (c == 0xE0) lo = 0xA0;
            if (c == 0xED) hi = 0x9F;
        } else if (c >= 0xF0 && c <= 0xF4) {
            len = 4;
            if (c == 0xF0) lo = 0x90;
            if (c == 0xF4) hi = 0x8F;
        }
        std::size_t ok = 0;
        if (len != 0) {
            ok = 1;
            while (ok < len && i + ok < n) {
                const unsigned char cc = s[i + ok];
                const unsigned char l = ok == 1 ? lo : 0x80;
                const unsigned char h = ok == 1 ? hi : 0xBF;
                if (cc < l || cc > h) break;
                ++ok;
            }
        }
        if (len != 0 && ok == len) {
            out.append(in.substr(i, len));
            i += len;
        } else {
            out.append(kReplacement);
            i += ok == 0 ? 1 : ok;
        }
    }
    return out;
}

DocumentDraft parse_raw_text(std::string_view bytes, Timestamp ingested_at) {
    if (bytes.empty()) throw EmptyDocument();
    DocumentDraft d;
    d.raw_text = sanitize_utf8(bytes);
    d.source_kind = SourceKind::RawText;
    d.checksum = sha256_hex(bytes);
    d.ingested_at = ingested_at;
    return d;
}

DocumentDraft parse_crawler_record(std::string_view line, const IngestConfig& cfg,
                                   Timestamp ingested_at) {
    if (line.empty()) throw EmptyDocument();
    const json j = parse_object(line);

    auto body = optional_string(j, "body");
    if (!body) throw MalformedRecord("body", "missing");
    auto url = optional_string(j, "url");
    if (!url || url->empty()) throw MalformedRecord("url", "missing or empty");

    CrawlerMeta meta;
    meta.url = std::move(*url);
    meta.parent_url = optional_string(j, "parent_url");
    meta.fetched_at = optional_time(j, "fetched_at");
    if (auto it = j.find("keywords"); it != j.end() && !it->is_null()) {
        if (!it->is_array()) throw MalformedRecord("keywords", "expected an array of strings");
        for (const auto& k : *it) {
            if (!k.is_string()) throw MalformedRecord("keywords", "expected an array of strings");
            meta.keywords.push_back(k.get<std::string>());
        }
    }
    meta.source_tag = optional_string(j, "source_tag").value_or("");
    if (!meta.source_tag.empty() && !cfg.source_tags.empty() &&
        !cfg.source_tags.contains(meta.source_tag))
        throw MalformedRecord("source_tag", "'" + meta.source_tag + "' is not a configured tag");

    DocumentDraft d;
    d.raw_text = std::move(*body);
    d.source_kind = SourceKind::CrawlerRecord;
    d.crawler_meta = std::move(meta);
    d.checksum = sha256_hex(line);
    d.ingested_at = ingested_at;
    return d;
}

DocumentDraft parse_av_scan(std::string_view line, Timestamp ingested_at) {
    if (line.empty()) throw EmptyDocument();
    const json j = parse_object(line);

    AvScanMeta meta;
    meta.scanned_file_name = optional_string(j, "file_name");
    if (meta.scanned_file_name && meta.scanned_file_name->empty()) meta.scanned_file_name.reset();
    meta.scan_time = optional_time(j, "scan_time");

    if (auto it = j.find("hashes"); it != j.end() && !it->is_null()) {
        if (!it->is_object()) throw MalformedRecord("hashes", "expected an object");
        for (const auto& [kind, value] : it->items())
            meta.file_hashes[kind] = checked_hash("hashes." + kind, kind, value);
    }
    if (auto it = j.find("resources"); it != j.end() && !it->is_null()) {
        if (!it->is_array()) throw MalformedRecord("resources", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const auto& r = (*it)[i];
            const std::string field = "resources[" + std::to_string(i) + "]";
            if (!r.is_object() || !r.contains("kind") || !r.contains("hex") || !r["kind"].is_string())
                throw MalformedRecord(field, "expected {kind, hex}");
            const auto kind = r["kind"].get<std::string>();
            meta.contained_resource_hashes.emplace_back(kind, checked_hash(field + ".hex", kind, r["hex"]));
        }
    }
    if (auto it = j.find("verdicts"); it != j.end() && !it->is_null()) {
        if (!it->is_object()) throw MalformedRecord("verdicts", "expected an object");
        for (const auto& [engine, verdict] : it->items()) {
            if (!verdict.is_string()) throw MalformedRecord("verdicts." + engine, "expected a string");
            meta.engine_verdicts[engine] = verdict.get<std::string>();
        }
    }

    DocumentDraft d;
    for (const char* kind : {"md5", "sha1", "sha256", "sha512"})
        if (auto h = meta.file_hashes.find(kind); h != meta.file_hashes.end())
            d.structured_indicators.push_back({*hash_type(kind), h->second});
    for (const auto& [kind, hex] : meta.contained_resource_hashes)
        d.structured_indicators.push_back({*hash_type(kind), hex});
    if (meta.scanned_file_name)
        d.structured_indicators.push_back({IndicatorType::FileName, *meta.scanned_file_name});

    d.raw_text = sanitize_utf8(line);
    d.source_kind = SourceKind::AvScan;
    d.avscan_meta = std::move(meta);
    d.checksum = sha256_hex(line);
    d.ingested_at = ingested_at;
    return d;
}

bool is_duplicate(std::string_view checksum, const GraphStore& store) {
    if (!is_checksum(checksum))
        throw ArgumentError("checksum must be 64 lowercase hex characters");
    return store.has_document(checksum);
}

}  // namespace osintgraph
