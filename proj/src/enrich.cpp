// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#include "osintgraph/enrich.hpp"

#include <algorithm>

#include "osintgraph/errors.hpp"
#include "osintgraph/extract.hpp"

namespace osintgraph {

namespace {

bool letter_byte(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

/// Lowercase ASCII-alphanumeric words, for phrase matching.
std::vector<std::string> plain_words(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        const bool w = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
        if (w) {
            cur.push_back(lower(c));
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

std::string join(const std::vector<std::string>& words) {
    std::string s;
    for (const auto& w : words) {
        if (!s.empty()) s.push_back(' ');
        s += w;
    }
    return s;
}

}  // namespace

std::string_view topic_name(TopicLabel t) {
    switch (t) {
        case TopicLabel::Cybersecurity: return "cyber";
        case TopicLabel::NotCybersecurity: return "not_cyber";
        case TopicLabel::InsufficientData: return "insufficient";
    }
    return "insufficient";
}

std::optional<TopicLabel> parse_topic(std::string_view s) {
    if (s == "cyber" || s == "cybersecurity") return TopicLabel::Cybersecurity;
    if (s == "not_cyber") return TopicLabel::NotCybersecurity;
    if (s == "insufficient") return TopicLabel::InsufficientData;
    return std::nullopt;
}

std::string_view mapper_name(MapperSlot s) {
    return s == MapperSlot::ReportTactics ? "report_tactics" : "report_mapper";
}

std::vector<std::string> alphabetic_tokens(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const auto c = static_cast<unsigned char>(text[i]);
        if (letter_byte(c) || (c == '\'' && !cur.empty() && i + 1 < text.size() &&
                               letter_byte(static_cast<unsigned char>(text[i + 1])))) {
            cur.push_back(lower(static_cast<char>(c)));
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

void LanguageProfiles::add(std::string code, std::vector<std::string> stopwords) {
    auto& set = profiles_[std::move(code)];
    for (auto& w : stopwords) {
        std::transform(w.begin(), w.end(), w.begin(), lower);
        set.insert(std::move(w));
    }
}

LanguageResult detect_language(std::string_view text, const LanguageProfiles& profiles) {
    const auto tokens = alphabetic_tokens(text);
    LanguageResult r;
    if (tokens.size() < kMinLanguageTokens) return r;

    std::size_t best = 0, total = 0;
    const std::string* best_code = nullptr;
    for (const auto& [code, words] : profiles.profiles()) {
        std::size_t hits = 0;
        for (const auto& t : tokens) hits += words.contains(t) ? 1 : 0;
        total += hits;
        if (hits > best) {
            best = hits;
            best_code = &code;
        }
    }
    if (best_code == nullptr) return r;
    r.language = *best_code;
    r.confidence = static_cast<double>(best) / static_cast<double>(total);
    r.sufficient = true;
    return r;
}

TopicLabel classify_cyber_topic(std::string_view text, const LanguageResult& lang, const TopicConfig& cfg) {
    if (!lang.is_english()) return TopicLabel::InsufficientData;
    const auto tokens = alphabetic_tokens(text);
    if (tokens.empty()) return TopicLabel::InsufficientData;
    std::size_t hits = 0;
    for (const auto& t : tokens) hits += cfg.lexicon.contains(t) ? 1 : 0;
    const double density = static_cast<double>(hits) / static_cast<double>(tokens.size());
    return density >= cfg.density_threshold ? TopicLabel::Cybersecurity : TopicLabel::NotCybersecurity;
}

KeywordTechniqueMapper::KeywordTechniqueMapper(std::vector<std::pair<std::string, std::string>> table) {
    for (auto& [phrase, id] : table) {
        auto norm = join(plain_words(phrase));
        if (norm.empty()) continue;
        table_.emplace_back(std::move(norm), canonicalize(IndicatorType::AttackTechniqueId, id));
    }
}

std::vector<TechniqueSuggestion> KeywordTechniqueMapper::map(std::string_view text, MapperSlot slot) const {
    const auto words = plain_words(text);
    std::map<std::string, std::size_t> votes;
    std::size_t total = 0;
    for (const auto& [phrase, id] : table_) {
        const auto pw = plain_words(phrase);
        if (pw.empty() || pw.size() > words.size()) continue;
        std::size_t count = 0;
        for (std::size_t i = 0; i + pw.size() <= words.size(); ++i)
            if (std::equal(pw.begin(), pw.end(), words.begin() + static_cast<std::ptrdiff_t>(i))) ++count;
        if (count > 0) {
            votes[id] += count;
            total += count;
        }
    }
    std::vector<TechniqueSuggestion> out;
    for (const auto& [id, n] : votes)
        out.push_back({id, static_cast<double>(n) / static_cast<double>(total), slot});
    return out;
}

void MapperRegistry::register_mapper(MapperSlot slot, std::shared_ptr<const TechniqueMapper> mapper) {
    Entry e{std::move(mapper), nullptr};
    if (!e.mapper->reentrant()) e.serial = std::make_shared<std::mutex>();
    slots_[slot] = std::move(e);
}

std::vector<TechniqueSuggestion> MapperRegistry::run(MapperSlot slot, std::string_view text) const {
    auto it = slots_.find(slot);
    if (it == slots_.end()) throw UnknownMapper("no mapper registered for slot " + std::string(mapper_name(slot)));
    if (it->second.serial) {
        std::lock_guard lock(*it->second.serial);
        return it->second.mapper->map(text, slot);
    }
    return it->second.mapper->map(text, slot);
}

std::vector<TechniqueSuggestion> map_attack_techniques(std::string_view text, const LanguageResult& lang,
                                                       MapperSlot slot, const MapperRegistry& registry) {
    if (!registry.has(slot)) throw UnknownMapper("no mapper registered for slot " + std::string(mapper_name(slot)));
    if (!lang.is_english()) return {};
    auto out = registry.run(slot, text);
    std::sort(out.begin(), out.end(), [](const TechniqueSuggestion& a, const TechniqueSuggestion& b) {
        if (a.confidence != b.confidence) return a.confidence > b.confidence;
        return a.technique_id < b.technique_id;
    });
    return out;
}

EnrichmentResult Enricher::enrich(std::string_view text) const {
    EnrichmentResult r;
    r.language = detect_language(text, languages);
    r.topic = classify_cyber_topic(text, r.language, topic);
    for (MapperSlot slot : {MapperSlot::ReportTactics, MapperSlot::ReportMapper}) {
        if (!mappers.has(slot)) continue;
        auto s = map_attack_techniques(text, r.language, slot, mappers);
        r.techniques.insert(r.techniques.end(), s.begin(), s.end());
    }
    return r;
}

}  // namespace osintgraph
