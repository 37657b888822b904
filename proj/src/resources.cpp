// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#include "osintgraph/resources.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <memory>

#include "osintgraph/errors.hpp"

#ifndef OSINTGRAPH_DEFAULT_DATA_DIR
#define OSINTGRAPH_DEFAULT_DATA_DIR "data"
#endif

namespace osintgraph {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::ifstream open_or_throw(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw IoError("cannot read " + p.string());
    return in;
}

}  // namespace

DataPaths DataPaths::from_dir(const fs::path& dir) {
    return {dir / "malware_names.txt", dir / "apt_names.txt", dir / "file_extensions.txt",
            dir / "tlds.txt",          dir / "top1m.csv",     dir / "stopwords",
            dir / "cyber_lexicon.txt", dir / "technique_keywords.tsv", dir / "source_tags.txt"};
}

void DataPaths::require_exist() const {
    std::string missing;
    for (const fs::path* p : {&malware_names, &apt_names, &file_extensions, &tlds, &domain_suppression,
                              &stopwords_dir, &cyber_lexicon, &technique_keywords, &source_tags}) {
        if (!fs::exists(*p)) missing += (missing.empty() ? "" : ", ") + p->string();
    }
    if (!missing.empty()) throw IoError("missing data files: " + missing);
}

fs::path default_data_dir() {
    if (const char* env = std::getenv("OSINTGRAPH_DATA_DIR"); env && *env) return env;
    return OSINTGRAPH_DEFAULT_DATA_DIR;
}

std::vector<std::string> read_list_file(const fs::path& p) {
    auto in = open_or_throw(p);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        auto s = trim(line);
        if (s.empty() || s.front() == '#') continue;
        out.emplace_back(s);
    }
    return out;
}

std::vector<std::string> read_suppression_csv(const fs::path& p) {
    std::vector<std::string> out;
    for (const auto& row : read_list_file(p)) {
        const auto comma = row.find(',');
        auto domain = comma == std::string::npos ? std::string_view(row) : trim(std::string_view(row).substr(comma + 1));
        if (!domain.empty()) out.emplace_back(domain);
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> read_technique_table(const fs::path& p) {
    auto in = open_or_throw(p);
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        auto s = trim(line);
        if (s.empty() || s.front() == '#') continue;
        const auto tab = s.find('\t');
        if (tab == std::string_view::npos) throw SchemaError(n, "expected phrase<TAB>technique id");
        auto phrase = trim(s.substr(0, tab));
        auto id = trim(s.substr(tab + 1));
        std::string canonical;
        try {
            canonical = canonicalize(IndicatorType::AttackTechniqueId, id);
        } catch (const ArgumentError& e) {
            throw SchemaError(n, e.what());
        }
        if (phrase.empty()) throw SchemaError(n, "empty phrase");
        out.emplace_back(std::string(phrase), canonical);
    }
    return out;
}

LanguageProfiles load_language_profiles(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
    LanguageProfiles profiles;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
        profiles.add(entry.path().stem().string(), read_list_file(entry.path()));
    }
    if (profiles.empty()) throw IoError("no stopword profiles in " + dir.string());
    return profiles;
}

ExtractionConfig load_extraction_config(const DataPaths& paths) {
    ExtractionConfig cfg;
    for (const auto& s : read_list_file(paths.malware_names)) cfg.malware_names.add(s);
    for (const auto& s : read_list_file(paths.apt_names)) cfg.apt_names.add(s);
    for (const auto& s : read_list_file(paths.file_extensions)) cfg.file_extensions.add(s.front() == '.' ? s.substr(1) : s);
    for (const auto& s : read_list_file(paths.tlds)) cfg.tlds.add(s.front() == '.' ? s.substr(1) : s);
    for (const auto& s : read_suppression_csv(paths.domain_suppression)) cfg.domain_suppression.add(s);
    return cfg;
}

Enricher load_enricher(const DataPaths& paths) {
    Enricher e;
    e.languages = load_language_profiles(paths.stopwords_dir);
    for (const auto& w : read_list_file(paths.cyber_lexicon)) {
        std::string lower(w);
        for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        e.topic.lexicon.insert(std::move(lower));
    }
    auto mapper = std::make_shared<const KeywordTechniqueMapper>(read_technique_table(paths.technique_keywords));
    e.mappers.register_mapper(MapperSlot::ReportTactics, mapper);
    e.mappers.register_mapper(MapperSlot::ReportMapper, mapper);
    return e;
}

IngestConfig load_ingest_config(const DataPaths& paths) {
    IngestConfig cfg;
    for (const auto& s : read_list_file(paths.source_tags)) cfg.source_tags.insert(s);
    return cfg;
}

}  // namespace osintgraph
