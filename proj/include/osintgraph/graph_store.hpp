// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "osintgraph/extract.hpp"
#include "osintgraph/graph.hpp"
#include "osintgraph/txlog.hpp"

namespace osintgraph {

enum class CommitStatus { Committed, SkippedDuplicate, SkippedZeroDegree };

std::string_view commit_status_name(CommitStatus s);

struct CommitOutcome {
    CommitStatus status;
    std::string checksum;
    std::optional<std::uint32_t> doc_id;
};

/// Shared-lock guard over a consistent state of the graph. Commits wait until
/// every view is released, so a view never observes a partial commit.
class ReadView {
public:
    ReadView(std::shared_lock<std::shared_mutex> lock, const Graph& g) : lock_(std::move(lock)), graph_(&g) {}

    const Graph& graph() const noexcept { return *graph_; }
    const Graph* operator->() const noexcept { return graph_; }

private:
    std::shared_lock<std::shared_mutex> lock_;
    const Graph* graph_;
};

/// Folds extraction matches and structured AV-scan indicators into one sorted
/// summary, one entry per (type, value).
std::vector<MatchSummaryEntry> merge_matches(const DocumentDraft& draft, const std::vector<IndicatorMatch>& matches);

/// Single-writer, multi-reader bipartite store, optionally backed by a
/// TransactionLog directory.
class GraphStore {
public:
    struct Options {
        bool fsync = true;
        /// Compact into a snapshot after this many logged commits (0 = never).
        std::size_t compact_every = 0;
    };

    /// Purely in-memory store.
    GraphStore();
    /// Persistent store in `dir` (created if missing); replays snapshot + log.
    explicit GraphStore(const std::filesystem::path& dir);
    GraphStore(const std::filesystem::path& dir, Options opts);
    /// In-memory store populated from an already-built graph.
    explicit GraphStore(Graph g);

    GraphStore(const GraphStore&) = delete;
    GraphStore& operator=(const GraphStore&) = delete;

    /// Atomic check-and-insert. AV-scan drafts must come without free-text
    /// matches or enrichment (ArgumentError otherwise). Throws IoError when
    /// the log write fails, leaving the store unchanged.
    CommitOutcome commit_document(const DocumentDraft& draft, const std::vector<IndicatorMatch>& matches,
                                  const std::optional<EnrichmentResult>& enrichment);

    /// Commits an already-assembled record (log replay, imports).
    CommitOutcome commit_record(const CommitRecord& rec);

    bool has_document(std::string_view checksum) const;
    ReadView view() const;
    GraphStats stats() const;

    /// Rewrites the snapshot and empties the log. No-op for in-memory stores.
    void compact();

    bool persistent() const noexcept { return log_ != nullptr; }
    TransactionLog* log() noexcept { return log_.get(); }

private:
    CommitOutcome commit_locked(const CommitRecord& rec);

    mutable std::shared_mutex mutex_;
    Graph graph_;
    std::unique_ptr<TransactionLog> log_;
    Options opts_;
};

}  // namespace osintgraph
