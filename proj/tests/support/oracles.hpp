// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#pragma once

// Reference implementations used to cross-check the library. Each one takes a
// different route from the production code on purpose.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "osintgraph/graph.hpp"

namespace osintgraph::testkit {

/// Solves (I - d*M) x = (1 - d) * 1 directly with Gaussian elimination, where
/// M[i][j] = A[i][j] / deg(j). Isolated nodes score 1 - d.
std::vector<double> pagerank_linear_solve(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                                          double damping);

/// Textbook one-pass Pearson over long double sums.
/// Dense power iteration in long double, run until the update is below 1e-15.
std::vector<double> pagerank_dense_power(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                                         double damping);

double pearson_oracle(const std::vector<double>& xs, const std::vector<double>& ys);

double entropy_oracle(const std::string& s);

/// Neighborhood by repeated frontier expansion over an adjacency matrix.
/// Returns node -> depth for every node within `depth` hops, honouring the
/// filter's edge types and document predicate but ignoring the budget.
std::map<NodeRef, std::uint32_t> neighborhood_oracle(const Graph& g, NodeRef seed, std::uint32_t depth,
                                                     const QueryFilter& filter);

/// Known SHA-256 digests of short inputs (computed with Python hashlib).
struct DigestVector {
    std::string input;
    std::string sha256;
};
const std::vector<DigestVector>& sha256_vectors();

}  // namespace osintgraph::testkit
