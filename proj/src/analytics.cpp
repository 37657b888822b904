// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#include "osintgraph/analytics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "osintgraph/errors.hpp"
#include "osintgraph/extract.hpp"

namespace osintgraph {

using nlohmann::json;

void PageRankParams::validate() const {
    if (!(damping > 0.0 && damping < 1.0)) throw ArgumentError("damping must be in (0, 1)");
    if (max_iterations <= 0) throw ArgumentError("max_iterations must be positive");
    if (!(tolerance >= 0.0)) throw ArgumentError("tolerance must be non-negative");
}

CsrGraph CsrGraph::from_edges(std::size_t n, std::span<const std::pair<std::uint32_t, std::uint32_t>> edges) {
    CsrGraph g;
    g.offsets.assign(n + 1, 0);
    for (const auto& [a, b] : edges) {
        if (a >= n || b >= n) throw ArgumentError("edge endpoint out of range");
        ++g.offsets[a + 1];
        ++g.offsets[b + 1];
    }
    for (std::size_t i = 0; i < n; ++i) g.offsets[i + 1] += g.offsets[i];
    g.targets.resize(g.offsets[n]);
    std::vector<std::uint32_t> fill(g.offsets.begin(), g.offsets.end() - 1);
    for (const auto& [a, b] : edges) {
        g.targets[fill[a]++] = b;
        g.targets[fill[b]++] = a;
    }
    return g;
}

CsrGraph CsrGraph::from_graph(const Graph& g) {
    const auto docs = static_cast<std::uint32_t>(g.document_count());
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    edges.reserve(g.edge_count());
    for (const auto& e : g.edges()) edges.emplace_back(e.document, docs + e.indicator);
    return from_edges(g.document_count() + g.indicator_count(), edges);
}

namespace {

template <bool Parallel>
PageRankScores run_pagerank(const CsrGraph& g, const PageRankParams& p) {
    p.validate();
    const std::size_t n = g.size();
    if (n == 0) throw ArgumentError("pagerank on an empty graph");
    const auto sn = static_cast<std::ptrdiff_t>(n);
    const double base = p.normalized ? (1.0 - p.damping) / static_cast<double>(n) : 1.0 - p.damping;

    PageRankScores out;
    std::vector<double> score(n, p.normalized ? 1.0 / static_cast<double>(n) : 1.0);
    std::vector<double> next(n), share(n);

    for (int it = 1; it <= p.max_iterations; ++it) {
#pragma omp parallel for schedule(static) if (Parallel)
        for (std::ptrdiff_t v = 0; v < sn; ++v) {
            const auto d = g.degree(static_cast<std::uint32_t>(v));
            share[v] = d ? score[v] / d : 0.0;
        }
        double delta = 0.0;
#pragma omp parallel for schedule(static) reduction(max : delta) if (Parallel)
        for (std::ptrdiff_t v = 0; v < sn; ++v) {
            double sum = 0.0;
            for (auto k = g.offsets[v]; k < g.offsets[v + 1]; ++k) sum += share[g.targets[k]];
            next[v] = base + p.damping * sum;
            delta = std::max(delta, std::abs(next[v] - score[v]));
        }
        score.swap(next);
        out.iterations = it;
        if (delta < p.tolerance) {
            out.converged = true;
            break;
        }
    }
    out.scores = std::move(score);
    return out;
}

}  // namespace

PageRankScores pagerank(const CsrGraph& g, const PageRankParams& params) { return run_pagerank<true>(g, params); }

PageRankScores pagerank_serial(const CsrGraph& g, const PageRankParams& params) {
    return run_pagerank<false>(g, params);
}

GraphPageRank pagerank(const Graph& g, const PageRankParams& params) {
    auto r = pagerank(CsrGraph::from_graph(g), params);
    GraphPageRank out;
    const auto docs = static_cast<std::ptrdiff_t>(g.document_count());
    out.documents.assign(r.scores.begin(), r.scores.begin() + docs);
    out.indicators.assign(r.scores.begin() + docs, r.scores.end());
    out.iterations = r.iterations;
    out.converged = r.converged;
    return out;
}

std::vector<RankedIndicator> top_indicators_by_pagerank(const Graph& g, const GraphPageRank& pr, IndicatorType type,
                                                        int k) {
    if (k <= 0) throw ArgumentError("k must be positive");
    if (pr.indicators.size() != g.indicator_count()) throw ArgumentError("scores were computed on another graph");
    std::vector<std::uint32_t> ids;
    for (std::uint32_t i = 0; i < g.indicator_count(); ++i)
        if (g.indicator(i).type == type) ids.push_back(i);
    auto before = [&](std::uint32_t a, std::uint32_t b) {
        if (pr.indicators[a] != pr.indicators[b]) return pr.indicators[a] > pr.indicators[b];
        return g.indicator(a).value < g.indicator(b).value;
    };
    const auto keep = std::min(ids.size(), static_cast<std::size_t>(k));
    std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(keep), ids.end(), before);
    std::vector<RankedIndicator> out;
    for (std::size_t i = 0; i < keep; ++i) out.push_back({i + 1, g.indicator(ids[i]).value, pr.indicators[ids[i]]});
    return out;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
    const std::size_t n = xs.size();
    if (ys.size() != n) throw DegenerateInput(n, "series lengths differ");
    if (n < 2) throw DegenerateInput(n, "need at least two points");
    auto constant = [](std::span<const double> v) {
        return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
    };
    if (constant(xs) || constant(ys)) throw DegenerateInput(n, "zero variance");

    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0 || syy == 0) throw DegenerateInput(n, "zero variance");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

int CvssRecord::year() const {
    if (published_year) return *published_year;
    return std::stoi(cve_id.substr(4, 4));
}

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace

CvssFeed parse_cvss_feed(std::istream& in) {
    CvssFeed feed;
    std::string line;
    std::size_t n = 0;
    auto reject = [&](const std::string& why) {
        ++feed.rejected;
        feed.warnings.push_back("line " + std::to_string(n) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++n;
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto f = split_csv(t);
        if (n == 1 && f[0] == "cve_id") continue;
        if (f.size() != 4) {
            reject("expected 4 fields");
            continue;
        }
        CvssRecord rec;
        try {
            rec.cve_id = canonicalize(IndicatorType::CveId, f[0]);
        } catch (const ArgumentError&) {
            reject("bad CVE id '" + std::string(f[0]) + "'");
            continue;
        }
        bool ok = true;
        for (int k : {1, 2}) {
            if (f[k].empty()) continue;
            auto v = parse_number<double>(f[k]);
            if (!v || !(*v >= 0.0 && *v <= 10.0)) {
                reject("score '" + std::string(f[k]) + "' outside [0, 10]");
                ok = false;
                break;
            }
            (k == 1 ? rec.v2 : rec.v3) = *v;
        }
        if (!ok) continue;
        if (!rec.v2 && !rec.v3) {
            reject("neither v2 nor v3 score present");
            continue;
        }
        if (!f[3].empty()) {
            auto y = parse_number<int>(f[3]);
            if (!y) {
                reject("bad year '" + std::string(f[3]) + "'");
                continue;
            }
            rec.published_year = *y;
        }
        if (feed.records.contains(rec.cve_id)) {
            reject("duplicate " + rec.cve_id);
            continue;
        }
        feed.records.emplace(rec.cve_id, std::move(rec));
    }
    return feed;
}

CvssFeed load_cvss_feed(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw IoError("cannot read CVSS feed " + p.string());
    return parse_cvss_feed(in);
}

void DegreeRestriction::validate() const {
    if (min_degree < 0) throw ArgumentError("min_degree must be >= 0");
    if (year_window && year_window->first > year_window->second) throw ArgumentError("year window is reversed");
    if (source_tags && source_tags->empty()) throw ArgumentError("source_tags must not be empty (omit it for all)");
}

json DegreeRestriction::to_json() const {
    json j = {{"min_degree", min_degree},
              {"metric", metric == CorrelationMetric::Degree ? "degree" : "pagerank"},
              {"cvss_version", cvss_version == CvssVersion::V2 ? "v2" : "v3"}};
    j["source_tags"] = source_tags ? json(*source_tags) : json(nullptr);
    j["year_window"] = year_window ? json::array({year_window->first, year_window->second}) : json(nullptr);
    j["min_pagerank"] = min_pagerank ? json(*min_pagerank) : json(nullptr);
    return j;
}

DegreeRestriction DegreeRestriction::from_json(const json& j) {
    if (!j.is_object()) throw ArgumentError("restriction must be a JSON object");
    DegreeRestriction r;
    try {
        for (const auto& [key, v] : j.items()) {
            if (v.is_null()) continue;
            if (key == "source_tags") {
                r.source_tags = v.get<std::set<std::string>>();
            } else if (key == "min_degree") {
                r.min_degree = v.get<int>();
            } else if (key == "year_window") {
                if (!v.is_array() || v.size() != 2) throw ArgumentError("year_window must be [start, end]");
                r.year_window = std::pair(v[0].get<int>(), v[1].get<int>());
            } else if (key == "metric") {
                const auto s = v.get<std::string>();
                if (s == "degree") r.metric = CorrelationMetric::Degree;
                else if (s == "pagerank") r.metric = CorrelationMetric::PageRank;
                else throw ArgumentError("metric must be degree or pagerank");
            } else if (key == "cvss_version") {
                const auto s = v.is_string() ? v.get<std::string>() : std::to_string(v.get<int>());
                if (s == "v2" || s == "2") r.cvss_version = CvssVersion::V2;
                else if (s == "v3" || s == "3") r.cvss_version = CvssVersion::V3;
                else throw ArgumentError("cvss_version must be v2 or v3");
            } else if (key == "min_pagerank") {
                r.min_pagerank = v.get<double>();
            } else {
                throw ArgumentError("unknown restriction key '" + key + "'");
            }
        }
    } catch (const json::exception& e) {
        throw ArgumentError(std::string("bad restriction: ") + e.what());
    }
    r.validate();
    return r;
}

json CorrelationReport::to_json() const {
    json pts = json::array();
    for (const auto& p : points) pts.push_back({{"cve", p.cve_id}, {"cvss", p.cvss}, {"metric", p.metric}});
    return {{"config", config.to_json()}, {"r", r}, {"n", n}, {"points", pts}};
}

std::size_t restricted_degree(const Graph& g, std::uint32_t indicator, const std::optional<std::set<std::string>>& allow) {
    const auto& inc = g.incident(NodeRef::indicator(indicator));
    if (!allow) return inc.size();
    std::size_t d = 0;
    for (auto e : inc)
        if (allow->contains(std::string(g.document(g.edges()[e].document).source_tag()))) ++d;
    return d;
}

CorrelationReport cvss_correlation(const Graph& g, const CvssFeed& feed, const DegreeRestriction& restriction,
                                   const PageRankParams& params) {
    restriction.validate();
    std::optional<GraphPageRank> pr;
    if (restriction.metric == CorrelationMetric::PageRank && g.document_count() > 0) pr = pagerank(g, params);

    CorrelationReport report;
    report.config = restriction;
    for (std::uint32_t i = 0; i < g.indicator_count(); ++i) {
        const auto& ind = g.indicator(i);
        if (ind.type != IndicatorType::CveId) continue;
        const auto deg = restricted_degree(g, i, restriction.source_tags);
        if (deg == 0) continue;

        double metric;
        if (restriction.metric == CorrelationMetric::Degree) {
            if (deg < static_cast<std::size_t>(restriction.min_degree)) continue;
            metric = static_cast<double>(deg);
        } else {
            metric = pr->indicators[i];
            if (restriction.min_pagerank && metric < *restriction.min_pagerank) continue;
        }

        auto it = feed.records.find(ind.value);
        if (it == feed.records.end()) continue;
        const auto& rec = it->second;
        const auto& score = restriction.cvss_version == CvssVersion::V2 ? rec.v2 : rec.v3;
        if (!score) continue;
        if (restriction.year_window) {
            const int y = rec.year();
            if (y < restriction.year_window->first || y > restriction.year_window->second) continue;
        }
        report.points.push_back({ind.value, *score, metric});
    }
    std::sort(report.points.begin(), report.points.end(),
              [](const auto& a, const auto& b) { return a.cve_id < b.cve_id; });
    report.n = report.points.size();

    std::vector<double> xs, ys;
    for (const auto& p : report.points) {
        xs.push_back(p.cvss);
        ys.push_back(p.metric);
    }
    report.r = pearson(xs, ys);
    return report;
}

}  // namespace osintgraph
