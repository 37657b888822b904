// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#include "osintgraph/types.hpp"

#include <charconv>
#include <cstdio>

namespace osintgraph {

namespace {

struct TypeNames {
    IndicatorType type;
    std::string_view short_name;
    std::string_view edge;
    std::string_view display;
};

constexpr std::array<TypeNames, kIndicatorTypeCount> kNames = {{
    {IndicatorType::Md5, "md5", "MD5", "MD5 Hash"},
    {IndicatorType::Sha1, "sha1", "SHA1", "SHA1 Hash"},
    {IndicatorType::Sha256, "sha256", "SHA256", "SHA256 Hash"},
    {IndicatorType::Sha512, "sha512", "SHA512", "SHA512 Hash"},
    {IndicatorType::FileName, "filename", "FILENAME", "File name"},
    {IndicatorType::MalwareName, "malware", "MALWARE", "Malware name"},
    {IndicatorType::AptName, "apt", "APT", "APT name"},
    {IndicatorType::Email, "email", "EMAIL", "Email"},
    {IndicatorType::CveId, "cve", "CVE", "CVE ID"},
    {IndicatorType::TwitterUsername, "twitter", "TWITTER", "Twitter username"},
    {IndicatorType::PhoneNumber, "phone", "PHONE", "Phone number"},
    {IndicatorType::IpAddress, "ip", "IP", "IP address"},
    {IndicatorType::Domain, "domain", "DOMAIN", "Domain"},
    {IndicatorType::AttackTechniqueId, "technique", "TECHNIQUE", "MITRE ATT&CK Technique ID"},
}};

const TypeNames& names_of(IndicatorType t) { return kNames[static_cast<std::size_t>(t)]; }

bool parse_fixed(std::string_view s, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > s.size()) return false;
    const char* b = s.data() + pos;
    for (std::size_t i = 0; i < len; ++i)
        if (b[i] < '0' || b[i] > '9') return false;
    auto [p, ec] = std::from_chars(b, b + len, out);
    return ec == std::errc{} && p == b + len;
}

}  // namespace

std::string_view type_name(IndicatorType t) { return names_of(t).short_name; }
std::string_view edge_label(IndicatorType t) { return names_of(t).edge; }
std::string_view display_name(IndicatorType t) { return names_of(t).display; }

std::optional<IndicatorType> parse_type_name(std::string_view name) {
    for (const auto& n : kNames)
        if (n.short_name == name) return n.type;
    return std::nullopt;
}

std::string_view source_kind_name(SourceKind k) {
    switch (k) {
        case SourceKind::RawText: return "text";
        case SourceKind::CrawlerRecord: return "crawler";
        case SourceKind::AvScan: return "avscan";
    }
    return "text";
}

std::optional<SourceKind> parse_source_kind(std::string_view name) {
    if (name == "text") return SourceKind::RawText;
    if (name == "crawler") return SourceKind::CrawlerRecord;
    if (name == "avscan") return SourceKind::AvScan;
    return std::nullopt;
}

std::optional<Timestamp> parse_rfc3339(std::string_view s) {
    using namespace std::chrono;
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
    if (!parse_fixed(s, 0, 4, y) || s.size() < 10 || s[4] != '-' || !parse_fixed(s, 5, 2, mo) ||
        s[7] != '-' || !parse_fixed(s, 8, 2, d))
        return std::nullopt;
    std::size_t pos = 10;
    if (pos < s.size() && (s[pos] == 'T' || s[pos] == 't' || s[pos] == ' ')) {
        if (!parse_fixed(s, pos + 1, 2, h) || s.size() < pos + 9 || s[pos + 3] != ':' ||
            !parse_fixed(s, pos + 4, 2, mi) || s[pos + 6] != ':' || !parse_fixed(s, pos + 7, 2, sec))
            return std::nullopt;
        pos += 9;
        if (pos < s.size() && s[pos] == '.') {
            ++pos;
            while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
        }
    }
    int offset_minutes = 0;
    if (pos < s.size()) {
        if (s[pos] == 'Z' || s[pos] == 'z') {
            ++pos;
        } else if (s[pos] == '+' || s[pos] == '-') {
            int oh = 0, om = 0;
            if (!parse_fixed(s, pos + 1, 2, oh) || s.size() < pos + 6 || s[pos + 3] != ':' ||
                !parse_fixed(s, pos + 4, 2, om))
                return std::nullopt;
            offset_minutes = (s[pos] == '+' ? 1 : -1) * (oh * 60 + om);
            pos += 6;
        } else {
            return std::nullopt;
        }
    }
    if (pos != s.size()) return std::nullopt;
    if (h > 23 || mi > 59 || sec > 60) return std::nullopt;

    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    return time_point_cast<seconds>(sys_days{ymd}) + hours{h} + minutes{mi} + seconds{sec} -
           minutes{offset_minutes};
}

std::string format_rfc3339(Timestamp t) {
    using namespace std::chrono;
    const auto day_point = floor<days>(t);
    const year_month_day ymd{day_point};
    const hh_mm_ss tod{t - day_point};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(tod.hours().count()), static_cast<int>(tod.minutes().count()),
                  static_cast<int>(tod.seconds().count()));
    return buf;
}

Timestamp now_utc() {
    return std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now());
}

}  // namespace osintgraph
