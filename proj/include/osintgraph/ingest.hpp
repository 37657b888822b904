// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "osintgraph/types.hpp"

namespace osintgraph {

class GraphStore;

struct CrawlerMeta {
    std::string url;
    std::optional<std::string> parent_url;
    std::optional<Timestamp> fetched_at;
    std::vector<std::string> keywords;
    std::string source_tag;

    friend bool operator==(const CrawlerMeta&, const CrawlerMeta&) = default;
};

struct AvScanMeta {
    std::optional<std::string> scanned_file_name;
    std::optional<Timestamp> scan_time;
    std::map<std::string, std::string> engine_verdicts;
    std::map<std::string, std::string> file_hashes;                           // kind -> hex
    std::vector<std::pair<std::string, std::string>> contained_resource_hashes;  // (kind, hex)

    friend bool operator==(const AvScanMeta&, const AvScanMeta&) = default;
};

struct StructuredIndicator {
    IndicatorType type;
    std::string value;

    friend bool operator==(const StructuredIndicator&, const StructuredIndicator&) = default;
};

/// One parsed input, ready for dedup, extraction and enrichment.
struct DocumentDraft {
    std::string raw_text;
    SourceKind source_kind = SourceKind::RawText;
    std::optional<CrawlerMeta> crawler_meta;
    std::optional<AvScanMeta> avscan_meta;
    std::vector<StructuredIndicator> structured_indicators;  // AvScan only
    std::string checksum;
    Timestamp ingested_at{};

    /// AV scans are machine data: no free-text extraction and no enrichment.
    bool is_structured() const noexcept { return source_kind == SourceKind::AvScan; }
};

struct IngestConfig {
    /// Closed vocabulary for CrawlerMeta::source_tag; empty accepts any tag.
    std::set<std::string> source_tags;
};

DocumentDraft parse_raw_text(std::string_view bytes, Timestamp ingested_at = now_utc());

/// `line` is one JSON object; the checksum covers these exact bytes.
DocumentDraft parse_crawler_record(std::string_view line, const IngestConfig& cfg = {},
                                   Timestamp ingested_at = now_utc());

DocumentDraft parse_av_scan(std::string_view line, Timestamp ingested_at = now_utc());

/// Throws ArgumentError unless `checksum` is 64 lowercase hex characters.
bool is_duplicate(std::string_view checksum, const GraphStore& store);

/// Required hex length for a hash kind ("md5", "sha1", "sha256", "sha512"); 0 if unknown.
std::size_t hash_hex_length(std::string_view kind);

/// Copy of `bytes` with every invalid UTF-8 sequence replaced by U+FFFD.
std::string sanitize_utf8(std::string_view bytes);

}  // namespace osintgraph
