// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#include "osintgraph/graph_store.hpp"

#include <algorithm>
#include <map>

#include "osintgraph/errors.hpp"

namespace osintgraph {

std::string_view commit_status_name(CommitStatus s) {
    switch (s) {
        case CommitStatus::Committed: return "committed";
        case CommitStatus::SkippedDuplicate: return "skipped_duplicate";
        case CommitStatus::SkippedZeroDegree: return "skipped_zero_degree";
    }
    return "unknown";
}

std::vector<MatchSummaryEntry> merge_matches(const DocumentDraft& draft, const std::vector<IndicatorMatch>& matches) {
    std::map<std::pair<IndicatorType, std::string>, std::uint32_t> acc;
    for (const auto& m : matches) acc[{m.type, m.value}] += std::max<std::uint32_t>(m.occurrences, 1);
    for (const auto& s : draft.structured_indicators) acc[{s.type, s.value}] += 1;

    std::vector<MatchSummaryEntry> out;
    out.reserve(acc.size());
    for (auto& [key, occ] : acc) out.push_back({key.first, key.second, occ});
    return out;
}

GraphStore::GraphStore() = default;

GraphStore::GraphStore(Graph g) : graph_(std::move(g)) {}

GraphStore::GraphStore(const std::filesystem::path& dir) : GraphStore(dir, Options{}) {}

GraphStore::GraphStore(const std::filesystem::path& dir, Options opts)
    : log_(std::make_unique<TransactionLog>(dir, TransactionLog::Options{opts.fsync, std::nullopt})), opts_(opts) {
    // A crash between snapshot rename and log reset leaves records in both
    // files; replay skips the repeats.
    for (const auto& rec : log_->recover())
        if (!graph_.find_document(rec.document.checksum)) graph_.apply(rec);
}

CommitOutcome GraphStore::commit_document(const DocumentDraft& draft, const std::vector<IndicatorMatch>& matches,
                                          const std::optional<EnrichmentResult>& enrichment) {
    if (draft.is_structured() && (!matches.empty() || enrichment))
        throw ArgumentError("AV scan documents take structured indicators only");

    CommitRecord rec;
    DocumentNode& d = rec.document;
    d.checksum = draft.checksum;
    d.raw_text = draft.raw_text;
    d.source_kind = draft.source_kind;
    d.crawler_meta = draft.crawler_meta;
    d.avscan_meta = draft.avscan_meta;
    d.enrichment = enrichment;
    d.match_summary = merge_matches(draft, matches);
    d.ingested_at = draft.ingested_at;
    return commit_record(rec);
}

CommitOutcome GraphStore::commit_record(const CommitRecord& rec) {
    std::unique_lock lock(mutex_);
    return commit_locked(rec);
}

CommitOutcome GraphStore::commit_locked(const CommitRecord& rec) {
    const auto& checksum = rec.document.checksum;
    if (graph_.find_document(checksum)) return {CommitStatus::SkippedDuplicate, checksum, std::nullopt};
    if (rec.document.match_summary.empty()) return {CommitStatus::SkippedZeroDegree, checksum, std::nullopt};

    if (log_) log_->append(rec);  // throws before the graph is touched
    const auto id = graph_.apply(rec);

    if (log_ && opts_.compact_every > 0 && log_->log_records() >= opts_.compact_every) {
        try {
            log_->write_snapshot(graph_);
        } catch (const IoError&) {
            // the commit is already durable in the log; compaction retries next time
        }
    }
    return {CommitStatus::Committed, checksum, id};
}

bool GraphStore::has_document(std::string_view checksum) const {
    std::shared_lock lock(mutex_);
    return graph_.find_document(checksum).has_value();
}

ReadView GraphStore::view() const { return ReadView(std::shared_lock(mutex_), graph_); }

GraphStats GraphStore::stats() const {
    std::shared_lock lock(mutex_);
    return graph_.stats();
}

void GraphStore::compact() {
    if (!log_) return;
    std::unique_lock lock(mutex_);
    log_->write_snapshot(graph_);
}

}  // namespace osintgraph
