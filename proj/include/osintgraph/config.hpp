// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "osintgraph/pipeline.hpp"

namespace osintgraph {

/// Operator configuration shared by the CLI and the HTTP service. Sources, in
/// increasing precedence: defaults, JSON config file, OSINTGRAPH_* environment
/// variables, command-line flags.
struct AppConfig {
    std::filesystem::path store_path = "osintgraph-store";
    std::filesystem::path data_dir;  // empty: default_data_dir()
    std::optional<std::filesystem::path> cvss_feed;

    double entropy_threshold = 3.0;
    bool refang = true;
    std::size_t min_phone_digits = 10;
    bool suppress_private_ips = false;

    std::string host = "127.0.0.1";
    int port = 8080;
    std::uint32_t max_depth = 4;
    std::size_t node_budget = 100000;
    std::size_t preview_chars = 2048;
    std::size_t max_body_bytes = 8u << 20;
    int timeout_seconds = 10;

    bool fsync = true;
    std::size_t compact_every = 1000;

    /// Throws ArgumentError on unknown keys or mistyped values.
    static AppConfig from_json(const nlohmann::json& j);
    /// Throws IoError / ArgumentError.
    static AppConfig load_file(const std::filesystem::path& p);
    void apply_env();
    nlohmann::json to_json() const;
    void validate() const;

    std::filesystem::path resolved_data_dir() const;
    /// Loads dictionaries and profiles from the data directory.
    std::shared_ptr<const PipelineConfig> pipeline_config() const;
};

}  // namespace osintgraph
