// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#include "osintgraph/extract.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <tuple>

#include "osintgraph/errors.hpp"

namespace osintgraph {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_alnum(char c) { return is_digit(c) || is_alpha(c); }
bool is_word(char c) { return is_alnum(c) || c == '_'; }
bool is_hex(char c) { return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F'); }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_label_char(char c) { return is_alnum(c) || c == '-'; }
bool is_local_char(char c) {
    return is_alnum(c) || c == '.' || c == '_' || c == '%' || c == '+' || c == '-';
}

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }
char upper(char c) { return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c; }

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), lower);
    return out;
}

std::string to_upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), upper);
    return out;
}

bool word_before(std::string_view t, std::size_t pos) { return pos > 0 && is_word(t[pos - 1]); }
bool word_at(std::string_view t, std::size_t pos) { return pos < t.size() && is_word(t[pos]); }

// Lower number wins when two candidate spans overlap.
int priority(IndicatorType t) {
    switch (t) {
        case IndicatorType::Sha512: return 0;
        case IndicatorType::Sha256: return 1;
        case IndicatorType::Sha1: return 2;
        case IndicatorType::Md5: return 3;
        case IndicatorType::CveId: return 4;
        case IndicatorType::AttackTechniqueId: return 5;
        case IndicatorType::Email: return 6;
        case IndicatorType::IpAddress: return 7;
        case IndicatorType::FileName: return 8;
        case IndicatorType::Domain: return 9;
        case IndicatorType::PhoneNumber: return 10;
        case IndicatorType::TwitterUsername: return 11;
        case IndicatorType::AptName: return 12;
        case IndicatorType::MalwareName: return 13;
    }
    return 14;
}

/// A scanner hit before overlap resolution. Suppressed candidates still claim
/// their span (so e.g. 127.0.0.1 cannot resurface as a phone number) but are
/// never emitted.
struct Candidate {
    IndicatorMatch match;
    bool suppressed = false;
};

using Candidates = std::vector<Candidate>;

void push(Candidates& out, IndicatorType type, std::string value, std::size_t b, std::size_t e,
          bool suppressed = false) {
    out.push_back({IndicatorMatch{type, std::move(value), Span{b, e}, 1}, suppressed});
}

// ---------------------------------------------------------------------------
// hashes

void scan_hashes(std::string_view t, const ExtractionConfig& cfg, Candidates& out) {
    std::size_t i = 0;
    while (i < t.size()) {
        if (!is_word(t[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        bool all_hex = true;
        while (j < t.size() && is_word(t[j])) {
            all_hex = all_hex && is_hex(t[j]);
            ++j;
        }
        const std::size_t len = j - i;
        if (all_hex) {
            std::optional<IndicatorType> type;
            if (len == 32) type = IndicatorType::Md5;
            else if (len == 40) type = IndicatorType::Sha1;
            else if (len == 64) type = IndicatorType::Sha256;
            else if (len == 128) type = IndicatorType::Sha512;
            if (type) {
                std::string value = to_lower(t.substr(i, len));
                if (shannon_entropy(value) >= cfg.entropy_threshold) push(out, *type, std::move(value), i, j);
            }
        }
        i = j;
    }
}

// ---------------------------------------------------------------------------
// ids

void scan_cves(std::string_view t, Candidates& out) {
    for (std::size_t i = 0; i + 13 <= t.size(); ++i) {
        if (lower(t[i]) != 'c' || lower(t[i + 1]) != 'v' || lower(t[i + 2]) != 'e' || t[i + 3] != '-') continue;
        if (word_before(t, i)) continue;
        std::size_t p = i + 4;
        std::size_t y = p;
        while (y < t.size() && is_digit(t[y])) ++y;
        if (y - p != 4 || y >= t.size() || t[y] != '-') continue;
        std::size_t n = y + 1;
        std::size_t e = n;
        while (e < t.size() && is_digit(t[e])) ++e;
        if (e - n < 4 || word_at(t, e)) continue;
        push(out, IndicatorType::CveId, to_upper(t.substr(i, e - i)), i, e);
        i = e - 1;
    }
}

void scan_techniques(std::string_view t, Candidates& out) {
    for (std::size_t i = 0; i + 5 <= t.size(); ++i) {
        if (t[i] != 'T' && t[i] != 't') continue;
        if (word_before(t, i)) continue;
        std::size_t e = i + 1;
        while (e < t.size() && is_digit(t[e])) ++e;
        if (e - i - 1 != 4) continue;
        if (e < t.size() && t[e] == '.' && e + 1 < t.size() && is_digit(t[e + 1])) {
            std::size_t s = e + 1;
            while (s < t.size() && is_digit(t[s])) ++s;
            if (s - e - 1 != 3 || word_at(t, s)) continue;
            e = s;
        } else if (word_at(t, e)) {
            continue;
        }
        push(out, IndicatorType::AttackTechniqueId, to_upper(t.substr(i, e - i)), i, e);
        i = e - 1;
    }
}

// ---------------------------------------------------------------------------
// network

bool is_loopback_or_unspecified(const std::array<int, 4>& o) {
    return o[0] == 127 || (o[0] == 0 && o[1] == 0 && o[2] == 0 && o[3] == 0);
}

bool is_private(const std::array<int, 4>& o) {
    return o[0] == 10 || (o[0] == 172 && o[1] >= 16 && o[1] <= 31) || (o[0] == 192 && o[1] == 168);
}

std::optional<std::array<int, 4>> parse_octets(std::string_view s) {
    std::array<int, 4> o{};
    std::size_t k = 0, i = 0;
    while (true) {
        std::size_t j = i;
        while (j < s.size() && is_digit(s[j])) ++j;
        if (j == i || j - i > 3 || k == 4) return std::nullopt;
        int v = 0;
        for (std::size_t q = i; q < j; ++q) v = v * 10 + (s[q] - '0');
        if (v > 255) return std::nullopt;
        o[k++] = v;
        if (j == s.size()) break;
        if (s[j] != '.') return std::nullopt;
        i = j + 1;
    }
    if (k != 4) return std::nullopt;
    return o;
}

std::string format_ip(const std::array<int, 4>& o) {
    return std::to_string(o[0]) + "." + std::to_string(o[1]) + "." + std::to_string(o[2]) + "." +
           std::to_string(o[3]);
}

void scan_ips(std::string_view t, const ExtractionConfig& cfg, Candidates& out) {
    std::size_t i = 0;
    while (i < t.size()) {
        if (!is_digit(t[i]) || word_before(t, i)) {
            ++i;
            continue;
        }
        // maximal dotted-numeric run
        std::size_t e = i;
        while (true) {
            while (e < t.size() && is_digit(t[e])) ++e;
            if (e + 1 < t.size() && t[e] == '.' && is_digit(t[e + 1])) {
                ++e;
                continue;
            }
            break;
        }
        if (!word_at(t, e)) {
            if (auto o = parse_octets(t.substr(i, e - i))) {
                const bool suppressed = is_loopback_or_unspecified(*o) || (cfg.suppress_private_ips && is_private(*o));
                push(out, IndicatorType::IpAddress, format_ip(*o), i, e, suppressed);
            }
        }
        i = e;
    }
}

bool valid_label(std::string_view l) {
    if (l.empty() || l.size() > 63 || l.front() == '-' || l.back() == '-') return false;
    return std::all_of(l.begin(), l.end(), is_label_char);
}

std::vector<std::string_view> split_labels(std::string_view host) {
    std::vector<std::string_view> labels;
    std::size_t start = 0;
    while (true) {
        auto dot = host.find('.', start);
        labels.push_back(host.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start));
        if (dot == std::string_view::npos) break;
        start = dot + 1;
    }
    return labels;
}

/// Syntactic host check: >= 2 valid labels, alphabetic final label of length >= 2.
bool valid_hostname(std::string_view host) {
    if (host.empty() || host.size() > 253) return false;
    auto labels = split_labels(host);
    if (labels.size() < 2) return false;
    for (auto l : labels)
        if (!valid_label(l)) return false;
    auto tld = labels.back();
    return tld.size() >= 2 && std::all_of(tld.begin(), tld.end(), is_alpha);
}

bool suppressed_domain(std::string_view host, const ExtractionConfig& cfg) {
    // the domain itself or any registered parent (at least two labels) on the list
    std::size_t pos = 0;
    while (true) {
        std::string_view rest = host.substr(pos);
        if (rest.find('.') == std::string_view::npos) return false;
        if (cfg.domain_suppression.contains(rest)) return true;
        pos = host.find('.', pos) + 1;
    }
}

void scan_emails(std::string_view t, Candidates& out) {
    for (std::size_t at = 0; at < t.size(); ++at) {
        if (t[at] != '@') continue;
        std::size_t b = at;
        while (b > 0 && is_local_char(t[b - 1])) --b;
        while (b < at && (t[b] == '.' || t[b] == '-')) ++b;
        if (b == at || at - b > 64) continue;
        std::size_t e = at + 1;
        while (e < t.size() && (is_label_char(t[e]) || t[e] == '.')) ++e;
        while (e > at + 1 && (t[e - 1] == '.' || t[e - 1] == '-')) --e;
        const std::string_view local = t.substr(b, at - b);
        const std::string_view host = t.substr(at + 1, e - at - 1);
        if (local.back() == '.' || local.find("..") != std::string_view::npos) continue;
        if (!valid_hostname(host)) continue;
        push(out, IndicatorType::Email, to_lower(t.substr(b, e - b)), b, e);
        at = e - 1;
    }
}

void scan_domains(std::string_view t, const ExtractionConfig& cfg, Candidates& out) {
    std::size_t i = 0;
    while (i < t.size()) {
        if (!(is_label_char(t[i]) || t[i] == '.')) {
            ++i;
            continue;
        }
        std::size_t e = i;
        while (e < t.size() && (is_label_char(t[e]) || t[e] == '.')) ++e;
        const std::size_t run_end = e;
        std::size_t b = i;
        const bool after_at = b > 0 && t[b - 1] == '@';
        const bool after_word = b > 0 && t[b - 1] == '_';
        while (b < e && (t[b] == '.' || t[b] == '-')) ++b;
        while (e > b && (t[e - 1] == '.' || t[e - 1] == '-')) --e;
        i = run_end;
        if (after_at || after_word || b == e || word_at(t, run_end)) continue;
        const std::string_view host = t.substr(b, e - b);
        if (!valid_hostname(host)) continue;
        auto labels = split_labels(host);
        if (!cfg.tlds.contains(labels.back())) continue;
        std::string value = to_lower(host);
        push(out, IndicatorType::Domain, value, b, e, suppressed_domain(value, cfg));
    }
}

void scan_handles(std::string_view t, Candidates& out) {
    for (std::size_t at = 0; at < t.size(); ++at) {
        if (t[at] != '@' || (at > 0 && (is_local_char(t[at - 1]) || t[at - 1] == '@'))) continue;
        std::size_t e = at + 1;
        while (e < t.size() && is_word(t[e])) ++e;
        const std::size_t len = e - at - 1;
        if (len < 1 || len > 15) continue;
        if (e < t.size() && t[e] == '@') continue;
        push(out, IndicatorType::TwitterUsername, std::string(t.substr(at + 1, len)), at, e);
        at = e - 1;
    }
}

void scan_phones(std::string_view t, const ExtractionConfig& cfg, Candidates& out) {
    std::size_t i = 0;
    while (i < t.size()) {
        const char c = t[i];
        const bool plus = c == '+' && i + 1 < t.size() && is_digit(t[i + 1]);
        const bool paren = c == '(' && i + 1 < t.size() && is_digit(t[i + 1]);
        if (!(plus || paren || is_digit(c))) {
            ++i;
            continue;
        }
        if (i > 0) {
            const char p = t[i - 1];
            if (is_word(p) || p == '.' || p == '-' || p == '+' || p == '/' || (is_digit(c) && p == '(')) {
                ++i;
                continue;
            }
        }

        std::size_t p = plus ? i + 1 : i;
        std::vector<std::size_t> group_sizes;
        std::vector<std::size_t> group_ends;
        std::string digits;
        bool hard_sep = false;
        while (p < t.size()) {
            bool in_paren = false;
            std::size_t g = p;
            if (t[g] == '(') {
                in_paren = true;
                ++g;
            }
            std::size_t d = g;
            while (d < t.size() && is_digit(t[d])) ++d;
            if (d == g) break;
            if (in_paren) {
                if (d >= t.size() || t[d] != ')') break;
            }
            group_sizes.push_back(d - g);
            digits.append(t.substr(g, d - g));
            group_ends.push_back(in_paren ? d + 1 : d);
            p = group_ends.back();
            // one separator, or ") " style combination; a space after a
            // hyphen or dot group ends the number ("415-555-0100 415-...")
            if (p < t.size() && (t[p] == ' ' || t[p] == '-' || t[p] == '.')) {
                if (t[p] == ' ' && hard_sep) break;
                if (t[p] != ' ') hard_sep = true;
                if (p + 1 < t.size() && (is_digit(t[p + 1]) || t[p + 1] == '(')) {
                    ++p;
                    continue;
                }
                break;
            }
            if (p < t.size() && t[p] == '(') continue;
            break;
        }
        const std::size_t end = group_ends.empty() ? i : group_ends.back();
        const std::size_t next = std::max(end, i + 1);
        if (group_sizes.empty() || word_at(t, end)) {
            i = next;
            continue;
        }
        // Longest group prefix that forms a number, so that two numbers
        // separated by a single space are not fused into one.
        std::size_t taken = 0;
        std::size_t prefix_digits = digits.size();
        for (std::size_t k = group_sizes.size(); k > 0; --k) {
            bool ok = prefix_digits >= cfg.min_phone_digits && prefix_digits <= 15;
            ok = ok && (plus || k >= 2);
            for (std::size_t q = 0; ok && q < k; ++q)
                if (group_sizes[q] < 2 && !(plus && q == 0)) ok = false;
            // ISO dates with a time ("2021-12-10 08 ...") are not phone numbers
            if (ok && !plus && group_sizes[0] == 4 && group_sizes[1] <= 2) ok = false;
            if (ok) {
                taken = k;
                break;
            }
            prefix_digits -= group_sizes[k - 1];
        }
        if (taken == 0) {
            i = next;
            continue;
        }
        std::size_t n_digits = 0;
        for (std::size_t q = 0; q < taken; ++q) n_digits += group_sizes[q];
        push(out, IndicatorType::PhoneNumber, (plus ? "+" : "") + digits.substr(0, n_digits), i, group_ends[taken - 1]);
        i = group_ends[taken - 1];
    }
}

// ---------------------------------------------------------------------------
// names

struct Word {
    std::size_t begin;
    std::size_t end;
};

std::vector<Word> words_of(std::string_view t) {
    std::vector<Word> words;
    std::size_t i = 0;
    while (i < t.size()) {
        if (!(is_word(t[i]) || t[i] == '-')) {
            ++i;
            continue;
        }
        std::size_t e = i;
        while (e < t.size() && (is_word(t[e]) || t[e] == '-')) ++e;
        std::size_t b = i, f = e;
        while (b < f && t[b] == '-') ++b;
        while (f > b && t[f - 1] == '-') --f;
        if (b < f) words.push_back({b, f});
        i = e;
    }
    return words;
}

std::string normalize_phrase(std::string_view phrase) {
    std::string out;
    for (const auto& w : words_of(phrase)) {
        if (!out.empty()) out.push_back(' ');
        out += to_lower(phrase.substr(w.begin, w.end - w.begin));
    }
    return out;
}

void scan_dictionary(std::string_view t, const std::vector<Word>& words, const NameDictionary& dict,
                     IndicatorType type, Candidates& out) {
    if (dict.size() == 0) return;
    std::size_t i = 0;
    while (i < words.size()) {
        std::size_t matched = 0;
        std::string best;
        std::string phrase;
        for (std::size_t n = 1; n <= dict.max_words() && i + n <= words.size(); ++n) {
            const auto& w = words[i + n - 1];
            if (n > 1) {
                const auto gap = t.substr(words[i + n - 2].end, w.begin - words[i + n - 2].end);
                if (gap.empty() || !std::all_of(gap.begin(), gap.end(), is_space)) break;
                phrase.push_back(' ');
            }
            phrase += to_lower(t.substr(w.begin, w.end - w.begin));
            if (dict.contains_phrase(phrase)) {
                matched = n;
                best = phrase;
            }
        }
        if (matched > 0) {
            push(out, type, best, words[i].begin, words[i + matched - 1].end);
            i += matched;
        } else {
            ++i;
        }
    }
}

void scan_filenames(std::string_view t, const ExtractionConfig& cfg, Candidates& out) {
    static constexpr std::string_view kLeading = "\"'([{<`";
    static constexpr std::string_view kTrailing = "\"')]}>`,;:!?.";
    std::size_t i = 0;
    while (i < t.size()) {
        if (is_space(t[i])) {
            ++i;
            continue;
        }
        std::size_t e = i;
        while (e < t.size() && !is_space(t[e])) ++e;
        std::size_t b = i, f = e;
        i = e;
        while (b < f && kLeading.find(t[b]) != std::string_view::npos) ++b;
        while (f > b && kTrailing.find(t[f - 1]) != std::string_view::npos) --f;
        auto token = t.substr(b, f - b);
        if (token.empty() || token.find('@') != std::string_view::npos) continue;
        const auto slash = token.find_last_of("/\\");
        if (slash != std::string_view::npos) {
            b += slash + 1;
            token = token.substr(slash + 1);
        }
        const auto dot = token.rfind('.');
        if (dot == std::string_view::npos || dot == 0 || dot + 1 == token.size()) continue;
        const auto ext = token.substr(dot + 1);
        if (!std::all_of(ext.begin(), ext.end(), is_alnum) || !cfg.file_extensions.contains(ext)) continue;
        const bool stem_ok = std::all_of(token.begin(), token.begin() + static_cast<std::ptrdiff_t>(dot), [](char c) {
            return is_word(c) || c == '-' || c == '.' || c == '~' || c == '$' || c == '+' ||
                   static_cast<unsigned char>(c) >= 0x80;
        });
        if (!stem_ok) continue;
        push(out, IndicatorType::FileName, std::string(token), b, b + token.size());
    }
}

// ---------------------------------------------------------------------------
// resolution and aggregation

/// Keep the highest-priority candidates whose spans do not overlap anything
/// already kept; drop suppressed ones afterwards.
std::vector<IndicatorMatch> resolve(Candidates cands) {
    std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        return std::tuple(priority(a.match.type), a.match.span.begin) <
               std::tuple(priority(b.match.type), b.match.span.begin);
    });
    std::map<std::size_t, std::size_t> taken;  // begin -> end
    std::vector<IndicatorMatch> kept;
    for (auto& c : cands) {
        const Span s = c.match.span;
        auto it = taken.lower_bound(s.begin);
        if (it != taken.end() && it->first < s.end) continue;
        if (it != taken.begin() && std::prev(it)->second > s.begin) continue;
        taken.emplace(s.begin, s.end);
        if (!c.suppressed) kept.push_back(std::move(c.match));
    }
    return kept;
}

std::vector<IndicatorMatch> aggregate(std::vector<IndicatorMatch> matches) {
    std::sort(matches.begin(), matches.end(), [](const IndicatorMatch& a, const IndicatorMatch& b) {
        return std::tie(a.type, a.value, a.span.begin) < std::tie(b.type, b.value, b.span.begin);
    });
    std::vector<IndicatorMatch> out;
    for (auto& m : matches) {
        if (!out.empty() && out.back().type == m.type && out.back().value == m.value) {
            out.back().occurrences += m.occurrences;
        } else {
            out.push_back(std::move(m));
        }
    }
    return out;
}

void scan_network(std::string_view t, const ExtractionConfig& cfg, Candidates& out) {
    scan_emails(t, out);
    scan_ips(t, cfg, out);
    scan_domains(t, cfg, out);
    scan_phones(t, cfg, out);
    scan_handles(t, out);
}

void scan_names(std::string_view t, const ExtractionConfig& cfg, Candidates& out) {
    scan_filenames(t, cfg, out);
    const auto words = words_of(t);
    scan_dictionary(t, words, cfg.apt_names, IndicatorType::AptName, out);
    scan_dictionary(t, words, cfg.malware_names, IndicatorType::MalwareName, out);
}

bool all_digits(std::string_view s) { return !s.empty() && std::all_of(s.begin(), s.end(), is_digit); }

}  // namespace

// ---------------------------------------------------------------------------

NameDictionary::NameDictionary(std::initializer_list<std::string_view> names) {
    for (auto n : names) add(n);
}

void NameDictionary::add(std::string_view phrase) {
    std::string norm = normalize_phrase(phrase);
    if (norm.empty()) return;
    max_words_ = std::max<std::size_t>(max_words_, std::count(norm.begin(), norm.end(), ' ') + 1);
    phrases_.insert(std::move(norm));
}

CaseInsensitiveSet::CaseInsensitiveSet(std::initializer_list<std::string_view> items) {
    for (auto s : items) add(s);
}

void CaseInsensitiveSet::add(std::string_view s) { items_.insert(to_lower(s)); }

bool CaseInsensitiveSet::contains(std::string_view s) const { return items_.contains(to_lower(s)); }

void ExtractionConfig::validate() const {
    if (!(entropy_threshold > 0.0 && entropy_threshold <= 4.0))
        throw ArgumentError("entropy_threshold must lie in (0, 4]");
    if (min_phone_digits < 1 || min_phone_digits > 15)
        throw ArgumentError("min_phone_digits must lie in [1, 15]");
}

Span RefangResult::to_original(Span s) const {
    if (s.begin >= s.end) return {origin_begin[s.begin], origin_begin[s.begin]};
    return {origin_begin[s.begin], origin_end[s.end - 1]};
}

RefangResult refang(std::string_view in) {
    RefangResult r;
    r.text.reserve(in.size());
    r.origin_begin.reserve(in.size() + 1);
    r.origin_end.reserve(in.size());
    auto emit = [&r](char c, std::size_t b, std::size_t e) {
        r.text.push_back(c);
        r.origin_begin.push_back(b);
        r.origin_end.push_back(e);
    };
    std::size_t i = 0;
    while (i < in.size()) {
        if (i + 3 <= in.size() && in[i + 1] == '.' &&
            ((in[i] == '[' && in[i + 2] == ']') || (in[i] == '(' && in[i + 2] == ')'))) {
            emit('.', i, i + 3);
            i += 3;
            continue;
        }
        if (i + 4 <= in.size() && lower(in[i]) == 'h' && lower(in[i + 1]) == 'x' && lower(in[i + 2]) == 'x' &&
            lower(in[i + 3]) == 'p') {
            emit(in[i], i, i + 1);
            emit(in[i + 1] == 'X' ? 'T' : 't', i + 1, i + 2);
            emit(in[i + 2] == 'X' ? 'T' : 't', i + 2, i + 3);
            emit(in[i + 3], i + 3, i + 4);
            i += 4;
            continue;
        }
        emit(in[i], i, i + 1);
        ++i;
    }
    r.origin_begin.push_back(in.size());
    return r;
}

double shannon_entropy(std::string_view token) {
    if (token.empty()) throw ArgumentError("entropy of an empty token is undefined");
    std::array<std::size_t, 256> counts{};
    for (unsigned char c : token) ++counts[c];
    const double n = static_cast<double>(token.size());
    double h = 0.0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / n;
        h -= p * std::log2(p);
    }
    return h;
}

std::vector<IndicatorMatch> extract_hashes(std::string_view text, const ExtractionConfig& cfg) {
    Candidates c;
    scan_hashes(text, cfg, c);
    return aggregate(resolve(std::move(c)));
}

std::vector<IndicatorMatch> extract_network(std::string_view text, const ExtractionConfig& cfg) {
    Candidates c;
    scan_network(text, cfg, c);
    return aggregate(resolve(std::move(c)));
}

std::vector<IndicatorMatch> extract_ids(std::string_view text) {
    Candidates c;
    scan_cves(text, c);
    scan_techniques(text, c);
    return aggregate(resolve(std::move(c)));
}

std::vector<IndicatorMatch> extract_names(std::string_view text, const ExtractionConfig& cfg) {
    Candidates c;
    scan_names(text, cfg, c);
    return aggregate(resolve(std::move(c)));
}

std::vector<IndicatorMatch> extract_all(std::string_view text, const ExtractionConfig& cfg) {
    if (text.empty()) return {};
    std::optional<RefangResult> rf;
    std::string_view t = text;
    if (cfg.refang) {
        rf = refang(text);
        t = rf->text;
    }
    Candidates c;
    scan_hashes(t, cfg, c);
    scan_cves(t, c);
    scan_techniques(t, c);
    scan_network(t, cfg, c);
    scan_names(t, cfg, c);
    auto kept = resolve(std::move(c));
    if (rf)
        for (auto& m : kept) m.span = rf->to_original(m.span);
    return aggregate(std::move(kept));
}

std::vector<std::vector<IndicatorMatch>> extract_batch(std::span<const std::string> texts,
                                                       const ExtractionConfig& cfg) {
    std::vector<std::vector<IndicatorMatch>> out(texts.size());
    const auto n = static_cast<std::ptrdiff_t>(texts.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = extract_all(texts[static_cast<std::size_t>(i)], cfg);
    return out;
}

std::vector<std::vector<IndicatorMatch>> extract_batch_serial(std::span<const std::string> texts,
                                                              const ExtractionConfig& cfg) {
    std::vector<std::vector<IndicatorMatch>> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(extract_all(t, cfg));
    return out;
}

std::string canonicalize(IndicatorType type, std::string_view v) {
    auto bad = [&](const char* why) {
        return ArgumentError(std::string(type_name(type)) + " value '" + std::string(v) + "': " + why);
    };
    switch (type) {
        case IndicatorType::Md5:
        case IndicatorType::Sha1:
        case IndicatorType::Sha256:
        case IndicatorType::Sha512: {
            const std::size_t want = type == IndicatorType::Md5 ? 32 : type == IndicatorType::Sha1 ? 40
                                     : type == IndicatorType::Sha256 ? 64 : 128;
            if (v.size() != want || !std::all_of(v.begin(), v.end(), is_hex)) throw bad("wrong length or non-hex");
            return to_lower(v);
        }
        case IndicatorType::Email: {
            auto at = v.find('@');
            if (at == std::string_view::npos || at == 0 || !valid_hostname(v.substr(at + 1)))
                throw bad("not an email address");
            return to_lower(v);
        }
        case IndicatorType::Domain:
            if (!valid_hostname(v)) throw bad("not a hostname");
            return to_lower(v);
        case IndicatorType::CveId: {
            auto u = to_upper(v);
            if (u.size() < 13 || u.compare(0, 4, "CVE-") != 0 || !all_digits(std::string_view(u).substr(4, 4)) ||
                u[8] != '-' || !all_digits(std::string_view(u).substr(9)))
                throw bad("expected CVE-YYYY-NNNN");
            return u;
        }
        case IndicatorType::AttackTechniqueId: {
            auto u = to_upper(v);
            const std::string_view s = u;
            const bool base = s.size() == 5 && s[0] == 'T' && all_digits(s.substr(1));
            const bool sub = s.size() == 9 && s[0] == 'T' && all_digits(s.substr(1, 4)) && s[5] == '.' &&
                             all_digits(s.substr(6));
            if (!base && !sub) throw bad("expected T#### or T####.###");
            return u;
        }
        case IndicatorType::TwitterUsername: {
            auto s = v;
            if (!s.empty() && s.front() == '@') s.remove_prefix(1);
            if (s.empty() || s.size() > 15 || !std::all_of(s.begin(), s.end(), is_word))
                throw bad("expected 1-15 characters of [A-Za-z0-9_]");
            return std::string(s);
        }
        case IndicatorType::IpAddress: {
            auto o = parse_octets(v);
            if (!o) throw bad("expected a dotted IPv4 address");
            return format_ip(*o);
        }
        case IndicatorType::PhoneNumber: {
            std::string out;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (is_digit(v[i])) out.push_back(v[i]);
                else if (v[i] == '+' && out.empty()) out.push_back('+');
                else if (!(v[i] == ' ' || v[i] == '-' || v[i] == '.' || v[i] == '(' || v[i] == ')'))
                    throw bad("unexpected character");
            }
            if (out.empty() || out == "+") throw bad("no digits");
            return out;
        }
        case IndicatorType::FileName:
            if (v.empty()) throw bad("empty");
            return std::string(v);
        case IndicatorType::MalwareName:
        case IndicatorType::AptName: {
            auto n = normalize_phrase(v);
            if (n.empty()) throw bad("empty");
            return n;
        }
    }
    throw bad("unknown type");
}

std::string render_in_text(IndicatorType type, std::string_view v) {
    if (type == IndicatorType::TwitterUsername) return "@" + std::string(v);
    if (type == IndicatorType::PhoneNumber && !v.empty() && v.front() != '+' && v.size() > 3)
        return std::string(v.substr(0, 3)) + "-" + std::string(v.substr(3));
    return std::string(v);
}

}  // namespace osintgraph
