// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "osintgraph/enrich.hpp"
#include "osintgraph/extract.hpp"
#include "osintgraph/ingest.hpp"

namespace osintgraph {

/// Locations of the dictionary and profile files. `from_dir` assumes the
/// layout of the bundled data/ directory.
struct DataPaths {
    std::filesystem::path malware_names;
    std::filesystem::path apt_names;
    std::filesystem::path file_extensions;
    std::filesystem::path tlds;
    std::filesystem::path domain_suppression;  // "rank,domain" CSV
    std::filesystem::path stopwords_dir;       // <iso code>.txt per language
    std::filesystem::path cyber_lexicon;
    std::filesystem::path technique_keywords;  // phrase TAB technique id
    std::filesystem::path source_tags;

    static DataPaths from_dir(const std::filesystem::path& dir);

    /// Throws IoError naming every path that does not exist.
    void require_exist() const;
};

/// $OSINTGRAPH_DATA_DIR if set, else the data/ directory of the source tree.
std::filesystem::path default_data_dir();

/// One entry per line; blank lines and "#" comments are skipped, whitespace trimmed.
std::vector<std::string> read_list_file(const std::filesystem::path& p);

/// Domains from a top-1M style CSV ("rank,domain"); bare domain lines are accepted too.
std::vector<std::string> read_suppression_csv(const std::filesystem::path& p);

/// (phrase, technique id) rows. Throws SchemaError on a malformed row or id.
std::vector<std::pair<std::string, std::string>> read_technique_table(const std::filesystem::path& p);

LanguageProfiles load_language_profiles(const std::filesystem::path& dir);
ExtractionConfig load_extraction_config(const DataPaths& paths);
/// Baseline enricher: stopword profiles, lexicon topic model, and the keyword
/// table registered in both mapper slots.
Enricher load_enricher(const DataPaths& paths);
IngestConfig load_ingest_config(const DataPaths& paths);

}  // namespace osintgraph
