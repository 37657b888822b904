// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "osintgraph/graph.hpp"

namespace osintgraph {

// ---- PageRank -------------------------------------------------------------

struct PageRankParams {
    double damping = 0.75;
    int max_iterations = 300;
    double tolerance = 1e-7;
    /// false: score = (1-d) + d*sum(...), scores average 1.
    /// true:  score = (1-d)/N + d*sum(...), scores sum to 1.
    bool normalized = false;

    void validate() const;
};

/// Undirected adjacency in compressed sparse row form.
struct CsrGraph {
    std::vector<std::uint32_t> offsets;  // size n + 1
    std::vector<std::uint32_t> targets;

    std::size_t size() const noexcept { return offsets.empty() ? 0 : offsets.size() - 1; }
    std::uint32_t degree(std::uint32_t v) const noexcept { return offsets[v + 1] - offsets[v]; }

    /// Builds from an undirected edge list over nodes [0, n). Each pair is
    /// stored in both directions.
    static CsrGraph from_edges(std::size_t n, std::span<const std::pair<std::uint32_t, std::uint32_t>> edges);
    /// Documents are nodes [0, D), indicators [D, D + I).
    static CsrGraph from_graph(const Graph& g);
};

struct PageRankScores {
    std::vector<double> scores;
    int iterations = 0;
    bool converged = false;
};

/// Jacobi power iteration from all-ones (or 1/N when normalized) until the
/// max-abs change drops below tolerance. OpenMP across nodes; results are
/// bitwise identical to pagerank_serial. Throws ArgumentError on an empty graph.
PageRankScores pagerank(const CsrGraph& g, const PageRankParams& params = {});
PageRankScores pagerank_serial(const CsrGraph& g, const PageRankParams& params = {});

struct GraphPageRank {
    std::vector<double> documents;
    std::vector<double> indicators;
    int iterations = 0;
    bool converged = false;

    double score(NodeRef n) const {
        return n.kind == NodeKind::Document ? documents.at(n.index) : indicators.at(n.index);
    }
};

GraphPageRank pagerank(const Graph& g, const PageRankParams& params = {});

struct RankedIndicator {
    std::size_t rank;  // 1-based
    std::string value;
    double score;
};

/// Highest-scoring indicators of `type`, score descending then value
/// ascending. Throws ArgumentError when k <= 0.
std::vector<RankedIndicator> top_indicators_by_pagerank(const Graph& g, const GraphPageRank& pr, IndicatorType type,
                                                        int k);

// ---- Correlation ----------------------------------------------------------

/// Sample Pearson correlation. Throws DegenerateInput on length mismatch,
/// fewer than two points, or a constant series.
double pearson(std::span<const double> xs, std::span<const double> ys);

struct CvssRecord {
    std::string cve_id;
    std::optional<double> v2;
    std::optional<double> v3;
    std::optional<int> published_year;

    /// published_year, else the year field of the id.
    int year() const;
};

struct CvssFeed {
    std::map<std::string, CvssRecord> records;  // keyed by uppercase id
    std::size_t rejected = 0;
    std::vector<std::string> warnings;
};

/// CSV "cve_id,cvss_v2,cvss_v3,published_year" (header optional, empty
/// fields allowed). Invalid rows are counted in `rejected`.
CvssFeed parse_cvss_feed(std::istream& in);
/// Throws IoError when the file cannot be read.
CvssFeed load_cvss_feed(const std::filesystem::path& p);

enum class CorrelationMetric { Degree, PageRank };
enum class CvssVersion { V2, V3 };

struct DegreeRestriction {
    std::optional<std::set<std::string>> source_tags;  // document allowlist
    int min_degree = 0;                                // ignored for PageRank
    std::optional<std::pair<int, int>> year_window;    // inclusive
    CorrelationMetric metric = CorrelationMetric::Degree;
    CvssVersion cvss_version = CvssVersion::V3;
    std::optional<double> min_pagerank;

    void validate() const;
    nlohmann::json to_json() const;
    /// Throws ArgumentError on unknown keys or values.
    static DegreeRestriction from_json(const nlohmann::json& j);
};

struct CorrelationPoint {
    std::string cve_id;
    double cvss;
    double metric;
};

struct CorrelationReport {
    double r = 0;
    std::size_t n = 0;
    std::vector<CorrelationPoint> points;  // sorted by cve_id
    DegreeRestriction config;

    nlohmann::json to_json() const;
};

/// Restricted degree of an indicator: edges to documents whose source_tag is
/// in `allow` (all edges when absent).
std::size_t restricted_degree(const Graph& g, std::uint32_t indicator, const std::optional<std::set<std::string>>& allow);

/// Correlates CVSS score with CVE degree or PageRank. CVEs without a
/// restricted edge, without the requested score version, outside the year
/// window or below the metric floor are dropped. Throws DegenerateInput
/// (carrying n) when the surviving points cannot be correlated.
CorrelationReport cvss_correlation(const Graph& g, const CvssFeed& feed, const DegreeRestriction& restriction,
                                   const PageRankParams& params = {});

}  // namespace osintgraph
