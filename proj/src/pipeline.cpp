// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#include "osintgraph/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "osintgraph/errors.hpp"

namespace osintgraph {

namespace fs = std::filesystem;

void IngestSummary::count(CommitStatus s) {
    switch (s) {
        case CommitStatus::Committed: ++committed; break;
        case CommitStatus::SkippedDuplicate: ++duplicates; break;
        case CommitStatus::SkippedZeroDegree: ++zero_degree; break;
    }
}

void IngestSummary::fail(std::string message) {
    ++errors;
    error_messages.push_back(std::move(message));
}

IngestSummary& IngestSummary::operator+=(const IngestSummary& o) {
    committed += o.committed;
    duplicates += o.duplicates;
    zero_degree += o.zero_degree;
    errors += o.errors;
    error_messages.insert(error_messages.end(), o.error_messages.begin(), o.error_messages.end());
    return *this;
}

Pipeline::Pipeline(std::shared_ptr<const PipelineConfig> cfg, GraphStore& store) : cfg_(std::move(cfg)), store_(store) {
    cfg_->extraction.validate();
}

DocumentDraft Pipeline::parse(SourceKind kind, std::string_view payload) const {
    switch (kind) {
        case SourceKind::RawText: return parse_raw_text(payload);
        case SourceKind::CrawlerRecord: return parse_crawler_record(payload, cfg_->ingest);
        case SourceKind::AvScan: return parse_av_scan(payload);
    }
    throw ArgumentError("unknown source kind");
}

PreparedDocument Pipeline::prepare(DocumentDraft draft) const {
    PreparedDocument p{std::move(draft), {}, std::nullopt};
    if (p.draft.is_structured()) return p;
    ++extraction_runs_;
    p.matches = extract_all(p.draft.raw_text, cfg_->extraction);
    ++enrichment_runs_;
    p.enrichment = cfg_->enricher.enrich(p.draft.raw_text);
    return p;
}

CommitOutcome Pipeline::ingest(DocumentDraft draft) {
    if (is_duplicate(draft.checksum, store_)) return {CommitStatus::SkippedDuplicate, draft.checksum, std::nullopt};
    auto p = prepare(std::move(draft));
    return store_.commit_document(p.draft, p.matches, p.enrichment);
}

IngestSummary Pipeline::ingest_batch(const std::vector<RawInput>& inputs) { return run_batch(inputs, true); }

IngestSummary Pipeline::ingest_batch_serial(const std::vector<RawInput>& inputs) { return run_batch(inputs, false); }

IngestSummary Pipeline::run_batch(const std::vector<RawInput>& inputs, bool parallel) {
    const auto n = static_cast<std::ptrdiff_t>(inputs.size());
    std::vector<std::optional<PreparedDocument>> prepared(inputs.size());
    std::vector<std::optional<std::string>> failures(inputs.size());
    std::vector<char> duplicate(inputs.size(), 0);

    auto work = [&](std::ptrdiff_t i) {
        const auto& in = inputs[static_cast<std::size_t>(i)];
        try {
            auto draft = parse(in.kind, in.payload);
            if (is_duplicate(draft.checksum, store_)) {
                duplicate[static_cast<std::size_t>(i)] = 1;
                return;
            }
            prepared[static_cast<std::size_t>(i)] = prepare(std::move(draft));
        } catch (const std::exception& e) {
            failures[static_cast<std::size_t>(i)] = in.origin + ": " + e.what();
        }
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 4)
        for (std::ptrdiff_t i = 0; i < n; ++i) work(i);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) work(i);
    }

    IngestSummary summary;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (failures[i]) {
            summary.fail(*failures[i]);
        } else if (duplicate[i]) {
            summary.count(CommitStatus::SkippedDuplicate);
        } else {
            const auto& p = *prepared[i];
            try {
                summary.count(store_.commit_document(p.draft, p.matches, p.enrichment).status);
            } catch (const IoError&) {
                throw;  // storage failure stops the batch; earlier commits stay
            } catch (const std::exception& e) {
                summary.fail(inputs[i].origin + ": " + e.what());
            }
        }
    }
    return summary;
}

namespace {

std::string read_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("read failed for " + p.string());
    return ss.str();
}

void add_file(SourceKind kind, const fs::path& p, std::vector<RawInput>& out) {
    auto bytes = read_bytes(p);
    if (kind == SourceKind::RawText) {
        out.push_back({kind, std::move(bytes), p.string()});
        return;
    }
    std::istringstream lines(bytes);
    std::string line;
    std::size_t n = 0;
    while (std::getline(lines, line)) {
        ++n;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        out.push_back({kind, std::move(line), p.string() + ":" + std::to_string(n)});
    }
}

}  // namespace

std::vector<RawInput> collect_inputs(SourceKind kind, const std::vector<fs::path>& paths, bool recursive) {
    for (const auto& p : paths)
        if (!fs::exists(p)) throw IoError("no such file or directory: " + p.string());

    std::vector<RawInput> out;
    for (const auto& p : paths) {
        if (!fs::is_directory(p)) {
            add_file(kind, p, out);
            continue;
        }
        std::vector<fs::path> files;
        if (recursive) {
            for (const auto& e : fs::recursive_directory_iterator(p))
                if (e.is_regular_file()) files.push_back(e.path());
        } else {
            for (const auto& e : fs::directory_iterator(p))
                if (e.is_regular_file()) files.push_back(e.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) add_file(kind, f, out);
    }
    return out;
}

}  // namespace osintgraph
