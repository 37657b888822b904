// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#include "osintgraph/txlog.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "osintgraph/checksum.hpp"
#include "osintgraph/errors.hpp"
#include "osintgraph/serialization.hpp"

namespace osintgraph {

using nlohmann::json;

namespace {

constexpr const char* kLogFormat = "osintgraph-log";
constexpr const char* kSnapshotFormat = "osintgraph-snapshot";

IoError sys_error(const std::string& what, const std::filesystem::path& p) {
    return IoError(what + " " + p.string() + ": " + std::strerror(errno));
}

std::string record_line(const CommitRecord& rec) {
    const std::string body = document_to_json(rec.document).dump();
    return body + '\t' + sha256_hex(body) + '\n';
}

/// Parses `<json>\t<digest>` (without the newline); nullopt when damaged.
std::optional<CommitRecord> parse_record(std::string_view line) {
    const auto tab = line.rfind('\t');
    if (tab == std::string_view::npos) return std::nullopt;
    const auto body = line.substr(0, tab);
    if (sha256_hex(body) != line.substr(tab + 1)) return std::nullopt;
    try {
        return CommitRecord{document_from_json(json::parse(body))};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::string header_line(const char* format, std::optional<std::size_t> records = std::nullopt) {
    json h = {{"format", format}, {"version", TransactionLog::kVersion}};
    if (records) h["records"] = *records;
    return h.dump() + '\n';
}

void check_header(std::string_view line, const char* format, const std::filesystem::path& p) {
    json h;
    try {
        h = json::parse(line);
    } catch (const std::exception&) {
        throw IoError("unreadable header in " + p.string());
    }
    if (h.value("format", "") != format) throw IoError(p.string() + " is not an " + format + " file");
    if (h.value("version", 0) != TransactionLog::kVersion)
        throw IoError(p.string() + ": unsupported version " + std::to_string(h.value("version", 0)));
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_all(int fd, std::string_view data, const std::filesystem::path& p) {
    while (!data.empty()) {
        const ssize_t n = ::write(fd, data.data(), data.size());
        if (n < 0) {
            if (errno == EINTR) continue;
            throw sys_error("write", p);
        }
        data.remove_prefix(static_cast<std::size_t>(n));
    }
}

void sync_dir(const std::filesystem::path& dir) {
    const int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY);
    if (fd >= 0) {
        ::fsync(fd);
        ::close(fd);
    }
}

/// Writes `content` to `target` via a temporary file and rename.
void replace_file(const std::filesystem::path& target, std::string_view content, bool fsync) {
    auto tmp = target;
    tmp += ".tmp";
    const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (fd < 0) throw sys_error("open", tmp);
    try {
        write_all(fd, content, tmp);
        if (fsync && ::fsync(fd) != 0) throw sys_error("fsync", tmp);
    } catch (...) {
        ::close(fd);
        std::filesystem::remove(tmp);
        throw;
    }
    ::close(fd);
    if (::rename(tmp.c_str(), target.c_str()) != 0) throw sys_error("rename", tmp);
    if (fsync) sync_dir(target.parent_path());
}

}  // namespace

TransactionLog::TransactionLog(std::filesystem::path dir, Options opts)
    : dir_(std::move(dir)), log_path_(dir_ / "graph.log"), snapshot_path_(dir_ / "graph.snapshot"), opts_(opts) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create store directory " + dir_.string() + ": " + ec.message());
    if (!std::filesystem::exists(log_path_)) replace_file(log_path_, header_line(kLogFormat), opts_.fsync);
}

TransactionLog::~TransactionLog() {
    if (fd_ >= 0) ::close(fd_);
}

std::vector<CommitRecord> TransactionLog::recover() {
    std::vector<CommitRecord> out;

    if (std::filesystem::exists(snapshot_path_)) {
        const std::string data = read_file(snapshot_path_);
        std::size_t pos = data.find('\n');
        if (pos == std::string::npos) throw IoError("truncated snapshot " + snapshot_path_.string());
        check_header(std::string_view(data).substr(0, pos), kSnapshotFormat, snapshot_path_);
        const auto expected = json::parse(data.substr(0, pos)).value("records", std::size_t{0});
        ++pos;
        while (pos < data.size()) {
            const auto nl = data.find('\n', pos);
            if (nl == std::string::npos) throw IoError("truncated snapshot " + snapshot_path_.string());
            auto rec = parse_record(std::string_view(data).substr(pos, nl - pos));
            if (!rec) throw IoError("corrupt snapshot record in " + snapshot_path_.string());
            out.push_back(std::move(*rec));
            pos = nl + 1;
        }
        if (out.size() != expected) throw IoError("snapshot record count mismatch in " + snapshot_path_.string());
    }

    const std::string data = read_file(log_path_);
    std::size_t pos = data.find('\n');
    if (pos == std::string::npos) {
        // torn header: nothing was ever committed after it
        replace_file(log_path_, header_line(kLogFormat), opts_.fsync);
        open_log();
        return out;
    }
    check_header(std::string_view(data).substr(0, pos), kLogFormat, log_path_);
    ++pos;
    log_records_ = 0;
    std::size_t good_end = pos;
    while (pos < data.size()) {
        const auto nl = data.find('\n', pos);
        const bool last = nl == std::string::npos || nl + 1 == data.size();
        std::optional<CommitRecord> rec;
        if (nl != std::string::npos) rec = parse_record(std::string_view(data).substr(pos, nl - pos));
        if (!rec) {
            if (!last) throw IoError("corrupt record in the middle of " + log_path_.string());
            break;  // torn tail
        }
        out.push_back(std::move(*rec));
        ++log_records_;
        pos = nl + 1;
        good_end = pos;
    }
    if (good_end != data.size()) {
        std::filesystem::resize_file(log_path_, good_end);
    }
    open_log();
    return out;
}

void TransactionLog::open_log() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = ::open(log_path_.c_str(), O_WRONLY);
    if (fd_ < 0) throw sys_error("open", log_path_);
    if (::lseek(fd_, 0, SEEK_END) < 0) throw sys_error("seek", log_path_);
}

void TransactionLog::append(const CommitRecord& rec) {
    if (fd_ < 0) open_log();
    const std::string line = record_line(rec);
    const off_t before = ::lseek(fd_, 0, SEEK_END);
    if (before < 0) throw sys_error("seek", log_path_);
    auto roll_back = [&] {
        if (::ftruncate(fd_, before) == 0) ::lseek(fd_, before, SEEK_SET);
    };
    try {
        if (opts_.fail_after_bytes) {
            const auto n = std::min(*opts_.fail_after_bytes, line.size());
            opts_.fail_after_bytes.reset();
            write_all(fd_, std::string_view(line).substr(0, n), log_path_);
            throw IoError("injected write failure on " + log_path_.string());
        }
        write_all(fd_, line, log_path_);
        if (opts_.fsync && ::fdatasync(fd_) != 0) throw sys_error("fdatasync", log_path_);
    } catch (...) {
        roll_back();
        throw;
    }
    ++log_records_;
}

void TransactionLog::write_snapshot(const Graph& g) {
    std::string content = header_line(kSnapshotFormat, g.document_count());
    for (std::uint32_t i = 0; i < g.document_count(); ++i) content += record_line(CommitRecord{g.document(i)});
    replace_file(snapshot_path_, content, opts_.fsync);
    reset_log();
}

void TransactionLog::reset_log() {
    replace_file(log_path_, header_line(kLogFormat), opts_.fsync);
    log_records_ = 0;
    open_log();
}

}  // namespace osintgraph
