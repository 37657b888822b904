// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <vector>

#include "osintgraph/graph.hpp"

namespace osintgraph {

/// Append-only commit log plus a compacted snapshot, both in one directory:
///
///   graph.snapshot   header line, then one record line per document
///   graph.log        header line, then one record line per commit
///
/// A record line is `<json>\t<sha256 of json>\n`. A record counts only once
/// its full line, digest and newline are on disk; a torn final line is cut off
/// during recovery.
class TransactionLog {
public:
    static constexpr int kVersion = 1;

    struct Options {
        bool fsync = true;
        /// Test hook: fail (after writing this many bytes) on the next append.
        std::optional<std::size_t> fail_after_bytes;
    };

    TransactionLog(std::filesystem::path dir, Options opts);
    ~TransactionLog();
    TransactionLog(const TransactionLog&) = delete;
    TransactionLog& operator=(const TransactionLog&) = delete;

    /// Snapshot records followed by log records, in commit order. Cuts a torn
    /// tail off the log; throws IoError on corruption anywhere else.
    std::vector<CommitRecord> recover();

    /// Durably appends one record or throws IoError leaving the log unchanged.
    void append(const CommitRecord& rec);

    /// Writes all documents of `g` as the new snapshot (atomic rename) and
    /// empties the log.
    void write_snapshot(const Graph& g);

    std::size_t log_records() const noexcept { return log_records_; }
    const std::filesystem::path& log_path() const noexcept { return log_path_; }
    const std::filesystem::path& snapshot_path() const noexcept { return snapshot_path_; }
    Options& options() noexcept { return opts_; }

private:
    void open_log();
    void reset_log();

    std::filesystem::path dir_;
    std::filesystem::path log_path_;
    std::filesystem::path snapshot_path_;
    Options opts_;
    int fd_ = -1;
    std::size_t log_records_ = 0;
};

}  // namespace osintgraph
