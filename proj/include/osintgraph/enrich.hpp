// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace osintgraph {

struct LanguageResult {
    std::optional<std::string> language;  // ISO 639-1
    double confidence = 0.0;
    bool sufficient = false;

    bool is_english() const { return sufficient && language == "en"; }
    friend bool operator==(const LanguageResult&, const LanguageResult&) = default;
};

enum class TopicLabel { Cybersecurity, NotCybersecurity, InsufficientData };

std::string_view topic_name(TopicLabel t);
std::optional<TopicLabel> parse_topic(std::string_view s);

/// The two technique-mapper slots a document is run through.
enum class MapperSlot { ReportTactics, ReportMapper };

std::string_view mapper_name(MapperSlot s);

struct TechniqueSuggestion {
    std::string technique_id;
    double confidence = 0.0;
    MapperSlot mapper = MapperSlot::ReportTactics;

    friend bool operator==(const TechniqueSuggestion&, const TechniqueSuggestion&) = default;
};

struct EnrichmentResult {
    LanguageResult language;
    TopicLabel topic = TopicLabel::InsufficientData;
    std::vector<TechniqueSuggestion> techniques;

    friend bool operator==(const EnrichmentResult&, const EnrichmentResult&) = default;
};

/// Minimum number of alphabetic tokens before any language decision is made.
inline constexpr std::size_t kMinLanguageTokens = 20;

/// Lowercased alphabetic tokens (letters, including non-ASCII UTF-8 letters, and apostrophes).
std::vector<std::string> alphabetic_tokens(std::string_view text);

/// Stopword profiles keyed by ISO 639-1 code.
class LanguageProfiles {
public:
    void add(std::string code, std::vector<std::string> stopwords);
    const std::map<std::string, std::unordered_set<std::string>>& profiles() const { return profiles_; }
    bool empty() const { return profiles_.empty(); }

private:
    std::map<std::string, std::unordered_set<std::string>> profiles_;
};

/// Stopword-overlap language guess. Insufficient below kMinLanguageTokens
/// tokens or when no profile word occurs at all.
LanguageResult detect_language(std::string_view text, const LanguageProfiles& profiles);

struct TopicConfig {
    std::unordered_set<std::string> lexicon;  // lowercase single words
    double density_threshold = 0.03;
};

TopicLabel classify_cyber_topic(std::string_view text, const LanguageResult& lang, const TopicConfig& cfg);

/// Pluggable ATT&CK technique mapper.
class TechniqueMapper {
public:
    virtual ~TechniqueMapper() = default;
    virtual std::vector<TechniqueSuggestion> map(std::string_view text, MapperSlot slot) const = 0;
    /// Non-reentrant mappers are serialised by the registry.
    virtual bool reentrant() const { return true; }
};

/// Phrase table lookup: each phrase (case-insensitive, whole words) votes for
/// one technique; confidence is the technique's share of all phrase hits.
class KeywordTechniqueMapper final : public TechniqueMapper {
public:
    explicit KeywordTechniqueMapper(std::vector<std::pair<std::string, std::string>> phrase_to_technique);

    std::vector<TechniqueSuggestion> map(std::string_view text, MapperSlot slot) const override;
    const std::vector<std::pair<std::string, std::string>>& table() const { return table_; }

private:
    std::vector<std::pair<std::string, std::string>> table_;  // normalized phrase -> technique id
};

class MapperRegistry {
public:
    void register_mapper(MapperSlot slot, std::shared_ptr<const TechniqueMapper> mapper);
    bool has(MapperSlot slot) const { return slots_.contains(slot); }

    /// Throws UnknownMapper when nothing is registered for `slot`.
    std::vector<TechniqueSuggestion> run(MapperSlot slot, std::string_view text) const;

private:
    struct Entry {
        std::shared_ptr<const TechniqueMapper> mapper;
        std::shared_ptr<std::mutex> serial;  // set for non-reentrant mappers
    };
    std::map<MapperSlot, Entry> slots_;
};

/// Empty unless `lang` is sufficient English; results sorted by confidence
/// (descending) then id.
std::vector<TechniqueSuggestion> map_attack_techniques(std::string_view text, const LanguageResult& lang,
                                                       MapperSlot slot, const MapperRegistry& registry);

/// Everything needed to enrich a natural-language document.
struct Enricher {
    LanguageProfiles languages;
    TopicConfig topic;
    MapperRegistry mappers;

    EnrichmentResult enrich(std::string_view text) const;
};

}  // namespace osintgraph
