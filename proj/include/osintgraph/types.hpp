// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace osintgraph {

using Timestamp = std::chrono::sys_seconds;

/// The fourteen kinds of potential indicator a document can be linked to.
/// Declaration order is the canonical sort order for extraction output.
enum class IndicatorType : std::uint8_t {
    Md5,
    Sha1,
    Sha256,
    Sha512,
    FileName,
    MalwareName,
    AptName,
    Email,
    CveId,
    TwitterUsername,
    PhoneNumber,
    IpAddress,
    Domain,
    AttackTechniqueId,
};

inline constexpr std::size_t kIndicatorTypeCount = 14;

inline constexpr std::array<IndicatorType, kIndicatorTypeCount> kAllIndicatorTypes = {
    IndicatorType::Md5,         IndicatorType::Sha1,
    IndicatorType::Sha256,      IndicatorType::Sha512,
    IndicatorType::FileName,    IndicatorType::MalwareName,
    IndicatorType::AptName,     IndicatorType::Email,
    IndicatorType::CveId,       IndicatorType::TwitterUsername,
    IndicatorType::PhoneNumber, IndicatorType::IpAddress,
    IndicatorType::Domain,      IndicatorType::AttackTechniqueId,
};

/// Short lowercase name used in URLs, CLI arguments and export labels
/// ("md5", "ip", "cve", ...). Export node labels are "node_" + this.
std::string_view type_name(IndicatorType t);

/// Upper-case relationship label used for edges in graph exports ("CVE").
std::string_view edge_label(IndicatorType t);

/// Human-readable name as used in statistics tables ("CVE ID").
std::string_view display_name(IndicatorType t);

std::optional<IndicatorType> parse_type_name(std::string_view name);

enum class SourceKind : std::uint8_t { RawText, CrawlerRecord, AvScan };

std::string_view source_kind_name(SourceKind k);
std::optional<SourceKind> parse_source_kind(std::string_view name);

/// RFC 3339 / ISO-8601 UTC timestamp, e.g. "2021-12-10T08:00:00Z".
/// Offsets ("+02:00") are normalised to UTC; fractional seconds dropped.
std::optional<Timestamp> parse_rfc3339(std::string_view text);
std::string format_rfc3339(Timestamp t);

Timestamp now_utc();

}  // namespace osintgraph
