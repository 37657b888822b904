// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#pragma once

#include <atomic>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "osintgraph/enrich.hpp"
#include "osintgraph/extract.hpp"
#include "osintgraph/graph_store.hpp"
#include "osintgraph/ingest.hpp"

namespace osintgraph {

struct PipelineConfig {
    ExtractionConfig extraction;
    Enricher enricher;
    IngestConfig ingest;
};

struct PreparedDocument {
    DocumentDraft draft;
    std::vector<IndicatorMatch> matches;
    std::optional<EnrichmentResult> enrichment;
};

struct IngestSummary {
    std::size_t committed = 0;
    std::size_t duplicates = 0;
    std::size_t zero_degree = 0;
    std::size_t errors = 0;
    std::vector<std::string> error_messages;

    void count(CommitStatus s);
    void fail(std::string message);
    IngestSummary& operator+=(const IngestSummary& o);
};

/// One unit of input for a batch: a whole raw-text file or one line of a
/// crawler/AV-scan file. `origin` is used in error messages.
struct RawInput {
    SourceKind kind;
    std::string payload;
    std::string origin;
};

/// parse -> duplicate pre-check -> extract -> enrich -> commit. AV scans skip
/// extraction and enrichment.
class Pipeline {
public:
    Pipeline(std::shared_ptr<const PipelineConfig> cfg, GraphStore& store);

    DocumentDraft parse(SourceKind kind, std::string_view payload) const;
    PreparedDocument prepare(DocumentDraft draft) const;
    CommitOutcome ingest(DocumentDraft draft);
    CommitOutcome ingest(SourceKind kind, std::string_view payload) { return ingest(parse(kind, payload)); }

    /// Parses and prepares in parallel, then commits in input order.
    IngestSummary ingest_batch(const std::vector<RawInput>& inputs);
    IngestSummary ingest_batch_serial(const std::vector<RawInput>& inputs);

    const PipelineConfig& config() const noexcept { return *cfg_; }
    GraphStore& store() noexcept { return store_; }

    /// Routing counters, for tests and diagnostics.
    std::size_t extraction_runs() const noexcept { return extraction_runs_.load(); }
    std::size_t enrichment_runs() const noexcept { return enrichment_runs_.load(); }

private:
    IngestSummary run_batch(const std::vector<RawInput>& inputs, bool parallel);

    std::shared_ptr<const PipelineConfig> cfg_;
    GraphStore& store_;
    mutable std::atomic<std::size_t> extraction_runs_{0};
    mutable std::atomic<std::size_t> enrichment_runs_{0};
};

/// Expands files and (optionally recursive) directories into batch inputs.
/// Crawler and AV-scan files yield one input per non-blank line. Throws
/// IoError for a missing or unreadable path before anything is read.
std::vector<RawInput> collect_inputs(SourceKind kind, const std::vector<std::filesystem::path>& paths, bool recursive);

}  // namespace osintgraph
