// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace osintgraph::testkit {

std::vector<double> pagerank_linear_solve(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                                          double damping) {
    std::vector<std::vector<double>> adj(n, std::vector<double>(n, 0.0));
    for (auto [a, b] : edges) {
        adj[a][b] += 1;
        adj[b][a] += 1;
    }
    std::vector<double> deg(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) deg[j] += adj[i][j];

    // Augmented system [I - d*M | (1-d)].
    std::vector<std::vector<long double>> m(n, std::vector<long double>(n + 1, 0.0L));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            long double v = i == j ? 1.0L : 0.0L;
            if (deg[j] > 0) v -= static_cast<long double>(damping) * adj[i][j] / deg[j];
            m[i][j] = v;
        }
        m[i][n] = 1.0L - damping;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
        std::swap(m[col], m[pivot]);
        if (std::fabs(m[col][col]) < 1e-18L) throw std::runtime_error("singular system");
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const long double f = m[r][col] / m[col][col];
            if (f == 0) continue;
            for (std::size_t c = col; c <= n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(m[i][n] / m[i][i]);
    return x;
}

std::vector<double> pagerank_dense_power(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                                         double damping) {
    std::vector<std::vector<long double>> adj(n, std::vector<long double>(n, 0.0L));
    for (auto [a, b] : edges) {
        adj[a][b] += 1;
        adj[b][a] += 1;
    }
    std::vector<long double> deg(n, 0.0L);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) deg[i] += adj[i][j];
    const long double d = damping;
    std::vector<long double> x(n, 1.0L), next(n);
    for (int it = 0; it < 100000; ++it) {
        long double delta = 0;
        for (std::size_t i = 0; i < n; ++i) {
            long double s = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (adj[i][j] != 0) s += adj[i][j] * x[j] / deg[j];
            next[i] = (1.0L - d) + d * s;
            delta = std::max(delta, std::fabs(next[i] - x[i]));
        }
        x.swap(next);
        if (delta < 1e-15L) break;
    }
    return {x.begin(), x.end()};
}

double pearson_oracle(const std::vector<double>& xs, const std::vector<double>& ys) {
    const long double n = static_cast<long double>(xs.size());
    long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const long double x = xs[i], y = ys[i];
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    const long double num = n * sxy - sx * sy;
    const long double den = std::sqrt(n * sxx - sx * sx) * std::sqrt(n * syy - sy * sy);
    return static_cast<double>(num / den);
}

double entropy_oracle(const std::string& s) {
    std::map<unsigned char, std::size_t> counts;
    for (unsigned char c : s) ++counts[c];
    double h = 0;
    for (const auto& [c, k] : counts) {
        const double p = static_cast<double>(k) / static_cast<double>(s.size());
        h += p * std::log2(1.0 / p);
    }
    return h;
}

std::map<NodeRef, std::uint32_t> neighborhood_oracle(const Graph& g, NodeRef seed, std::uint32_t depth,
                                                     const QueryFilter& filter) {
    const std::size_t d = g.document_count();
    const std::size_t n = d + g.indicator_count();
    auto id = [&](NodeRef r) { return r.kind == NodeKind::Document ? r.index : d + r.index; };
    auto ref = [&](std::size_t i) {
        return i < d ? NodeRef::document(static_cast<std::uint32_t>(i)) : NodeRef::indicator(static_cast<std::uint32_t>(i - d));
    };

    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (const auto& e : g.edges()) {
        if (filter.edge_types && !filter.edge_types->contains(e.label)) continue;
        adj[e.document][d + e.indicator] = adj[d + e.indicator][e.document] = 1;
    }
    std::vector<char> allowed(n, 1);
    for (std::size_t i = 0; i < d; ++i) {
        const auto& doc = g.document(static_cast<std::uint32_t>(i));
        bool ok = true;
        if (filter.language)
            ok = ok && doc.enrichment && doc.enrichment->language.sufficient &&
                 doc.enrichment->language.language == *filter.language;
        if (filter.topic) ok = ok && doc.enrichment && doc.enrichment->topic == *filter.topic;
        if (filter.source_tags) ok = ok && filter.source_tags->contains(std::string(doc.source_tag()));
        if (filter.time_window)
            ok = ok && doc.event_time() >= filter.time_window->first && doc.event_time() <= filter.time_window->second;
        allowed[i] = ok;
    }
    allowed[id(seed)] = 1;

    std::vector<std::uint32_t> dist(n, UINT32_MAX);
    dist[id(seed)] = 0;
    for (std::uint32_t step = 1; step <= depth; ++step) {
        std::vector<std::size_t> reached;
        for (std::size_t u = 0; u < n; ++u) {
            if (dist[u] != step - 1) continue;
            for (std::size_t v = 0; v < n; ++v)
                if (adj[u][v] && allowed[v] && dist[v] == UINT32_MAX) reached.push_back(v);
        }
        for (auto v : reached) dist[v] = std::min(dist[v], step);
    }
    std::map<NodeRef, std::uint32_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if (dist[i] != UINT32_MAX) out[ref(i)] = dist[i];
    return out;
}

const std::vector<DigestVector>& sha256_vectors() {
    static const std::vector<DigestVector> v = {
        {"", "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"},
        {"abc", "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"},
        {"hello world\n", "a948904f2f0f479b8f8197694b30184b0d2ed1c1cd2a1ec0fb85d299a192a447"},
        {"The quick brown fox jumps over the lazy dog", "d7a8fbb307d7809469ca9abcb0082e4f8d5651e46d3cdb762d02d0bf37c9e592"},
        {"84c82835a5d21bbcf75a61706d8ab549", "b496cae933921954e8a338ee4a20ce7bc613130f22929ac26a575d2c9104aae9"},
        {"caf\xc3\xa9 \xe2\x98\x83", "ce335642bab85530c756f72c1afb3bfc2067dd39b92e2368e4475c8dbeacc48e"},
    };
    return v;
}

}  // namespace osintgraph::testkit
