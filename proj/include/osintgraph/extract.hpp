// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "osintgraph/types.hpp"

namespace osintgraph {

/// Half-open byte range [begin, end) into a UTF-8 text.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const noexcept { return end - begin; }
    bool overlaps(const Span& o) const noexcept { return begin < o.end && o.begin < end; }
    friend bool operator==(const Span&, const Span&) = default;
};

/// One (type, value) found in a document. After aggregation `span` is the
/// first occurrence and `occurrences` counts all of them.
struct IndicatorMatch {
    IndicatorType type;
    std::string value;
    Span span;
    std::uint32_t occurrences = 1;

    friend bool operator==(const IndicatorMatch&, const IndicatorMatch&) = default;
};

/// Case-insensitive set of single- or multi-word names ("qakbot", "fancy bear").
class NameDictionary {
public:
    NameDictionary() = default;
    NameDictionary(std::initializer_list<std::string_view> names);

    void add(std::string_view phrase);
    bool contains_phrase(std::string_view normalized) const { return phrases_.contains(std::string(normalized)); }
    std::size_t size() const noexcept { return phrases_.size(); }
    std::size_t max_words() const noexcept { return max_words_; }

private:
    std::unordered_set<std::string> phrases_;
    std::size_t max_words_ = 0;
};

/// Lowercased string set; lookups lowercase their argument.
class CaseInsensitiveSet {
public:
    CaseInsensitiveSet() = default;
    CaseInsensitiveSet(std::initializer_list<std::string_view> items);

    void add(std::string_view s);
    bool contains(std::string_view s) const;
    std::size_t size() const noexcept { return items_.size(); }
    bool empty() const noexcept { return items_.empty(); }

private:
    std::unordered_set<std::string> items_;
};

struct ExtractionConfig {
    NameDictionary malware_names;
    NameDictionary apt_names;
    CaseInsensitiveSet domain_suppression;
    CaseInsensitiveSet file_extensions;  // without the leading dot
    CaseInsensitiveSet tlds;
    double entropy_threshold = 3.0;      // bits per character, in (0, 4]
    bool refang = true;
    std::size_t min_phone_digits = 10;
    bool suppress_private_ips = false;   // RFC 1918 ranges

    /// Throws ArgumentError on out-of-range settings.
    void validate() const;
};

/// Refanged text plus, for every output byte, the original byte range it came from.
struct RefangResult {
    std::string text;
    std::vector<std::size_t> origin_begin;
    std::vector<std::size_t> origin_end;

    Span to_original(Span s) const;
};

RefangResult refang(std::string_view text);

/// Shannon entropy in bits per character. Throws ArgumentError on an empty token.
double shannon_entropy(std::string_view token);

std::vector<IndicatorMatch> extract_hashes(std::string_view text, const ExtractionConfig& cfg);
std::vector<IndicatorMatch> extract_network(std::string_view text, const ExtractionConfig& cfg);
std::vector<IndicatorMatch> extract_ids(std::string_view text);
std::vector<IndicatorMatch> extract_names(std::string_view text, const ExtractionConfig& cfg);

/// Refang (when enabled), run every extractor, resolve overlapping spans, and
/// aggregate to one match per (type, value) sorted by (type, value). Spans
/// refer to the original `text`.
std::vector<IndicatorMatch> extract_all(std::string_view text, const ExtractionConfig& cfg);

/// extract_all over many documents, parallelised across documents with OpenMP.
std::vector<std::vector<IndicatorMatch>> extract_batch(std::span<const std::string> texts,
                                                       const ExtractionConfig& cfg);

/// Single-threaded reference for extract_batch.
std::vector<std::vector<IndicatorMatch>> extract_batch_serial(std::span<const std::string> texts,
                                                              const ExtractionConfig& cfg);

/// Canonical form of a user-supplied value for lookups; throws ArgumentError if
/// the value cannot be an indicator of that type.
std::string canonicalize(IndicatorType type, std::string_view value);

/// How a canonical value is written in free text so that extraction finds it
/// again (adds "@" to Twitter handles, groups bare phone digits).
std::string render_in_text(IndicatorType type, std::string_view canonical_value);

}  // namespace osintgraph
