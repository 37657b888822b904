// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#pragma once

#include <filesystem>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "osintgraph/analytics.hpp"
#include "osintgraph/graph.hpp"
#include "osintgraph/pipeline.hpp"

namespace osintgraph::testkit {

std::filesystem::path data_dir();
std::filesystem::path corpus_dir();
std::filesystem::path cli_path();

/// Loaded once from the bundled data directory.
std::shared_ptr<const PipelineConfig> pipeline_config();
const ExtractionConfig& extraction_config();

std::string read_file(const std::filesystem::path& p);
std::vector<std::string> read_lines(const std::filesystem::path& p);  // non-blank lines

Timestamp fixed_time();

/// Unique scratch directory, removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

using IndicatorKey = std::pair<IndicatorType, std::string>;

/// One corpus document with the indicators planted in it (corpus/manifest.json).
struct PlantedDoc {
    std::string file;
    int line = 0;  // 0: whole file
    SourceKind kind = SourceKind::RawText;
    std::string payload;
    std::set<IndicatorKey> expected;
};

std::vector<PlantedDoc> planted_corpus();

/// What the pipeline would link a draft to, as a key set.
std::set<IndicatorKey> keys_of(const std::vector<MatchSummaryEntry>& summary);

/// Random English-ish document with a known set of planted indicators.
struct RandomDoc {
    std::string text;
    std::set<IndicatorKey> planted;
};

RandomDoc random_document(std::mt19937_64& rng, std::size_t max_indicators = 8);

/// Random canonical indicator value of the given type.
std::string random_value(std::mt19937_64& rng, IndicatorType t);

/// Random bipartite graph: `docs` documents each linked to 1..max_links of a
/// pool of `pool` indicators. Documents get random languages, topics, tags
/// and fetch times so that filters have something to bite on.
Graph random_graph(std::mt19937_64& rng, std::size_t docs, std::size_t pool, std::size_t max_links);

/// Source tags treated as curated reporting in the correlation fixture.
const std::set<std::string>& curated_tags();

/// Six CVEs whose curated-source degree is 1..6 and whose CVSS v3 score is
/// 4.0..9.0 (an exact linear relation), plus forum documents that add
/// unrelated degree. One extra CVE is missing from the feed, one has no v3.
Graph cvss_fixture_graph();
CvssFeed cvss_fixture_feed();

/// Ingests a corpus file or directory (relative to corpus_dir()).
IngestSummary ingest_corpus(Pipeline& p, const std::string& rel, SourceKind kind);

/// Minimal crawler JSON line.
std::string crawler_line(const std::string& url, const std::string& body, const std::string& tag = "news",
                         const std::string& fetched_at = "2022-01-01T00:00:00Z");

}  // namespace osintgraph::testkit
