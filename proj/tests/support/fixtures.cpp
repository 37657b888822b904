// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#include "fixtures.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>
#include <unistd.h>

#include "osintgraph/checksum.hpp"
#include "osintgraph/config.hpp"

namespace osintgraph::testkit {

namespace fs = std::filesystem;

fs::path data_dir() { return OSINTGRAPH_TEST_DATA_DIR; }
fs::path corpus_dir() { return OSINTGRAPH_TEST_CORPUS_DIR; }
fs::path cli_path() { return OSINTGRAPH_TEST_CLI; }

std::shared_ptr<const PipelineConfig> pipeline_config() {
    static const auto cfg = [] {
        AppConfig app;
        app.data_dir = data_dir();
        return app.pipeline_config();
    }();
    return cfg;
}

const ExtractionConfig& extraction_config() { return pipeline_config()->extraction; }

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> read_lines(const fs::path& p) {
    std::istringstream in(read_file(p));
    std::vector<std::string> out;
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) out.push_back(line);
    return out;
}

Timestamp fixed_time() { return *parse_rfc3339("2023-01-01T00:00:00Z"); }

TempDir::TempDir() {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("osintgraph-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

std::vector<PlantedDoc> planted_corpus() {
    const auto manifest = nlohmann::json::parse(read_file(corpus_dir() / "manifest.json"));
    std::vector<PlantedDoc> out;
    for (const auto& d : manifest.at("documents")) {
        PlantedDoc doc;
        doc.file = d.at("file").get<std::string>();
        doc.kind = *parse_source_kind(d.at("source").get<std::string>());
        if (d.contains("line")) {
            doc.line = d.at("line").get<int>();
            std::istringstream in(read_file(corpus_dir() / doc.file));
            std::string line;
            for (int i = 0; i < doc.line; ++i) std::getline(in, line);
            doc.payload = line;
        } else {
            doc.payload = read_file(corpus_dir() / doc.file);
        }
        for (const auto& e : d.at("expect"))
            doc.expected.emplace(*parse_type_name(e.at(0).get<std::string>()), e.at(1).get<std::string>());
        out.push_back(std::move(doc));
    }
    return out;
}

std::set<IndicatorKey> keys_of(const std::vector<MatchSummaryEntry>& summary) {
    std::set<IndicatorKey> out;
    for (const auto& e : summary) out.emplace(e.type, e.value);
    return out;
}

namespace {

// Plain words that are not in any dictionary, lexicon-neutral, and contain no
// dots or digits.
const std::vector<std::string> kFiller = {
    "the",    "analysts", "observed", "a",       "new",      "sample",   "linked",  "to",     "infrastructure",
    "and",    "noted",    "that",     "it",      "was",      "seen",     "in",      "several", "reports",
    "during", "the",      "week",     "while",   "teams",    "compared", "notes",   "from",   "partners",
    "about",  "recent",   "activity", "with",    "careful",  "review",   "of",      "logs",   "before",
    "closing", "tickets", "overall",  "picture", "remains",  "unclear",  "for",     "now",
};

const std::vector<std::string> kMalware = {"emotet", "trickbot", "ryuk", "wannacry", "qakbot", "cobalt strike"};
const std::vector<std::string> kApt = {"apt28", "apt29", "lazarus group", "sandworm", "fancy bear"};
const std::vector<std::string> kTlds = {"com", "net", "org", "info", "io", "ru"};
const std::vector<std::string> kExts = {"exe", "dll", "pdf", "docx", "ps1", "bat"};

double entropy(const std::string& s) {
    std::map<char, int> counts;
    for (char c : s) ++counts[c];
    double h = 0;
    for (const auto& [c, n] : counts) {
        const double p = static_cast<double>(n) / s.size();
        h -= p * std::log2(p);
    }
    return h;
}

template <typename T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::string random_string(std::mt19937_64& rng, const std::string& alphabet, int len) {
    std::string s;
    for (int i = 0; i < len; ++i) s.push_back(alphabet[uniform(rng, 0, static_cast<int>(alphabet.size()) - 1)]);
    return s;
}

std::string random_hex(std::mt19937_64& rng, int len) {
    for (;;) {
        auto s = random_string(rng, "0123456789abcdef", len);
        if (entropy(s) >= 3.3) return s;
    }
}

std::string random_label(std::mt19937_64& rng) { return random_string(rng, "abcdefghijklmnopqrstuvwxyz", uniform(rng, 5, 10)); }

}  // namespace

std::string random_value(std::mt19937_64& rng, IndicatorType t) {
    switch (t) {
        case IndicatorType::Md5: return random_hex(rng, 32);
        case IndicatorType::Sha1: return random_hex(rng, 40);
        case IndicatorType::Sha256: return random_hex(rng, 64);
        case IndicatorType::Sha512: return random_hex(rng, 128);
        case IndicatorType::FileName: return random_label(rng) + "_" + std::to_string(uniform(rng, 1, 99)) + "." + pick(rng, kExts);
        case IndicatorType::MalwareName: return pick(rng, kMalware);
        case IndicatorType::AptName: return pick(rng, kApt);
        case IndicatorType::Email: return random_label(rng) + "@" + random_label(rng) + "." + pick(rng, kTlds);
        case IndicatorType::CveId:
            return "CVE-" + std::to_string(uniform(rng, 1999, 2023)) + "-" + std::to_string(uniform(rng, 1000, 99999));
        case IndicatorType::TwitterUsername: {
            auto h = random_string(rng, "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_", uniform(rng, 4, 12));
            return h;
        }
        case IndicatorType::PhoneNumber: return std::to_string(uniform(rng, 2, 9)) + random_string(rng, "0123456789", 9);
        case IndicatorType::IpAddress:
            return std::to_string(uniform(rng, 11, 99)) + "." + std::to_string(uniform(rng, 0, 255)) + "." +
                   std::to_string(uniform(rng, 0, 255)) + "." + std::to_string(uniform(rng, 1, 254));
        case IndicatorType::Domain: return random_label(rng) + "." + random_label(rng) + "." + pick(rng, kTlds);
        case IndicatorType::AttackTechniqueId: {
            auto id = "T" + std::to_string(uniform(rng, 1001, 1599));
            if (uniform(rng, 0, 1)) id += "." + random_string(rng, "0123456789", 3);
            return id;
        }
    }
    return {};
}

RandomDoc random_document(std::mt19937_64& rng, std::size_t max_indicators) {
    RandomDoc doc;
    const int n = uniform(rng, 0, static_cast<int>(max_indicators));
    std::vector<std::string> pieces;
    for (int i = 0; i < n; ++i) {
        const auto t = kAllIndicatorTypes[static_cast<std::size_t>(uniform(rng, 0, kIndicatorTypeCount - 1))];
        auto v = random_value(rng, t);
        doc.planted.emplace(t, v);
        auto rendered = render_in_text(t, v);
        // Exercise case-insensitive names and CVE ids.
        if ((t == IndicatorType::MalwareName || t == IndicatorType::CveId) && uniform(rng, 0, 1)) {
            if (t == IndicatorType::MalwareName) rendered[0] = static_cast<char>(std::toupper(rendered[0]));
            else for (auto& c : rendered) c = static_cast<char>(std::tolower(c));
        }
        pieces.push_back(rendered);
        // Repeat some indicators to exercise occurrence counting.
        if (uniform(rng, 0, 4) == 0) pieces.push_back(rendered);
    }
    const int words = uniform(rng, 5, 40);
    for (int i = 0; i < words; ++i) pieces.push_back(pick(rng, kFiller));
    std::shuffle(pieces.begin(), pieces.end(), rng);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (i) doc.text += uniform(rng, 0, 6) == 0 ? ", " : " ";
        doc.text += pieces[i];
    }
    doc.text += ".";
    return doc;
}

Graph random_graph(std::mt19937_64& rng, std::size_t docs, std::size_t pool, std::size_t max_links) {
    std::vector<IndicatorKey> indicators;
    std::set<IndicatorKey> seen;
    while (indicators.size() < pool) {
        const auto t = kAllIndicatorTypes[static_cast<std::size_t>(uniform(rng, 0, 4))];
        IndicatorKey k{t, random_value(rng, t)};
        if (seen.insert(k).second) indicators.push_back(k);
    }
    static const std::vector<std::string> langs = {"en", "es", "fr"};
    static const std::vector<std::string> tags = {"news", "github", "pastebin", "reddit"};
    Graph g;
    for (std::size_t d = 0; d < docs; ++d) {
        CommitRecord rec;
        auto& doc = rec.document;
        doc.raw_text = "random document " + std::to_string(d);
        doc.checksum = sha256_hex(doc.raw_text + std::to_string(rng()));
        doc.source_kind = SourceKind::CrawlerRecord;
        CrawlerMeta meta;
        meta.url = "https://example.org/" + std::to_string(d);
        meta.source_tag = pick(rng, tags);
        meta.fetched_at = *parse_rfc3339("2020-01-01T00:00:00Z") + std::chrono::days(uniform(rng, 0, 1000));
        doc.crawler_meta = meta;
        EnrichmentResult enr;
        enr.language = {pick(rng, langs), 0.9, true};
        enr.topic = uniform(rng, 0, 1) ? TopicLabel::Cybersecurity : TopicLabel::NotCybersecurity;
        doc.enrichment = enr;
        doc.ingested_at = fixed_time();
        std::set<IndicatorKey> links;
        const int k = uniform(rng, 1, static_cast<int>(max_links));
        for (int i = 0; i < k; ++i) links.insert(pick(rng, indicators));
        for (const auto& [t, v] : links)
            doc.match_summary.push_back({t, v, static_cast<std::uint32_t>(uniform(rng, 1, 3))});
        g.apply(rec);
    }
    return g;
}

const std::set<std::string>& curated_tags() {
    static const std::set<std::string> tags = {"threat_report", "fireeye", "proofpoint", "exploitdb", "thehackernews"};
    return tags;
}

namespace {

void add_doc(Graph& g, const std::string& tag, int serial, const std::vector<std::string>& cves) {
    CommitRecord rec;
    auto& doc = rec.document;
    doc.raw_text = tag + " report " + std::to_string(serial);
    doc.checksum = sha256_hex(doc.raw_text);
    doc.source_kind = SourceKind::CrawlerRecord;
    doc.crawler_meta = CrawlerMeta{"https://example.org/" + tag + "/" + std::to_string(serial), std::nullopt,
                                   fixed_time(), {}, tag};
    doc.ingested_at = fixed_time();
    std::set<std::string> sorted(cves.begin(), cves.end());
    for (const auto& c : sorted) doc.match_summary.push_back({IndicatorType::CveId, c, 1});
    g.apply(rec);
}

std::string fixture_cve(int i) { return "CVE-2020-" + std::to_string(10000 + i); }

}  // namespace

Graph cvss_fixture_graph() {
    static const std::vector<std::string> curated = {"threat_report", "fireeye", "proofpoint", "exploitdb",
                                                     "thehackernews"};
    static const int noise[] = {4, 0, 3, 0, 2, 0};
    Graph g;
    int serial = 0;
    for (int i = 0; i < 6; ++i) {
        for (int k = 0; k <= i; ++k) add_doc(g, curated[static_cast<std::size_t>(k % 5)], serial++, {fixture_cve(i)});
        for (int k = 0; k < noise[i]; ++k) add_doc(g, "reddit", serial++, {fixture_cve(i)});
    }
    add_doc(g, "fireeye", serial++, {fixture_cve(6), fixture_cve(7)});  // 6: not in feed, 7: v2 only
    add_doc(g, "fireeye", serial++, {fixture_cve(7)});
    return g;
}

CvssFeed cvss_fixture_feed() {
    std::ostringstream csv;
    csv << "cve_id,cvss_v2,cvss_v3,published_year\n";
    for (int i = 0; i < 6; ++i) csv << fixture_cve(i) << "," << (9.0 - i) << "," << (4.0 + i) << ",2020\n";
    csv << fixture_cve(7) << ",7.5,,2020\n";
    std::istringstream in(csv.str());
    return parse_cvss_feed(in);
}

IngestSummary ingest_corpus(Pipeline& p, const std::string& rel, SourceKind kind) {
    return p.ingest_batch(collect_inputs(kind, {corpus_dir() / rel}, true));
}

std::string crawler_line(const std::string& url, const std::string& body, const std::string& tag,
                         const std::string& fetched_at) {
    return nlohmann::json{{"url", url}, {"body", body}, {"source_tag", tag}, {"fetched_at", fetched_at}}.dump();
}

}  // namespace osintgraph::testkit
