// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#include "osintgraph/config.hpp"

#include <cstdlib>
#include <fstream>

#include "osintgraph/errors.hpp"
#include "osintgraph/resources.hpp"

namespace osintgraph {

using nlohmann::json;

AppConfig AppConfig::from_json(const json& j) {
    if (!j.is_object()) throw ArgumentError("config must be a JSON object");
    AppConfig c;
    try {
        for (const auto& [k, v] : j.items()) {
            if (k == "store_path") c.store_path = v.get<std::string>();
            else if (k == "data_dir") c.data_dir = v.get<std::string>();
            else if (k == "cvss_feed") c.cvss_feed = v.is_null() ? std::nullopt : std::optional<std::filesystem::path>(v.get<std::string>());
            else if (k == "entropy_threshold") c.entropy_threshold = v.get<double>();
            else if (k == "refang") c.refang = v.get<bool>();
            else if (k == "min_phone_digits") c.min_phone_digits = v.get<std::size_t>();
            else if (k == "suppress_private_ips") c.suppress_private_ips = v.get<bool>();
            else if (k == "host") c.host = v.get<std::string>();
            else if (k == "port") c.port = v.get<int>();
            else if (k == "max_depth") c.max_depth = v.get<std::uint32_t>();
            else if (k == "node_budget") c.node_budget = v.get<std::size_t>();
            else if (k == "preview_chars") c.preview_chars = v.get<std::size_t>();
            else if (k == "max_body_bytes") c.max_body_bytes = v.get<std::size_t>();
            else if (k == "timeout_seconds") c.timeout_seconds = v.get<int>();
            else if (k == "fsync") c.fsync = v.get<bool>();
            else if (k == "compact_every") c.compact_every = v.get<std::size_t>();
            else throw ArgumentError("unknown config key '" + k + "'");
        }
    } catch (const json::exception& e) {
        throw ArgumentError(std::string("bad config value: ") + e.what());
    }
    c.validate();
    return c;
}

AppConfig AppConfig::load_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw IoError("cannot read config " + p.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ArgumentError("config " + p.string() + ": " + e.what());
    }
    return from_json(j);
}

void AppConfig::apply_env() {
    auto env = [](const char* name) -> std::optional<std::string> {
        const char* v = std::getenv(name);
        if (!v || !*v) return std::nullopt;
        return std::string(v);
    };
    auto number = [](const std::string& name, const std::string& s) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(s, &used);
            if (used != s.size() || v < 0) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw ArgumentError(name + " must be a non-negative integer");
        }
    };
    if (auto v = env("OSINTGRAPH_STORE")) store_path = *v;
    if (auto v = env("OSINTGRAPH_DATA_DIR")) data_dir = *v;
    if (auto v = env("OSINTGRAPH_CVSS_FEED")) cvss_feed = *v;
    if (auto v = env("OSINTGRAPH_HOST")) host = *v;
    if (auto v = env("OSINTGRAPH_PORT")) port = static_cast<int>(number("OSINTGRAPH_PORT", *v));
    if (auto v = env("OSINTGRAPH_MAX_DEPTH")) max_depth = static_cast<std::uint32_t>(number("OSINTGRAPH_MAX_DEPTH", *v));
    if (auto v = env("OSINTGRAPH_NODE_BUDGET")) node_budget = static_cast<std::size_t>(number("OSINTGRAPH_NODE_BUDGET", *v));
    if (auto v = env("OSINTGRAPH_PREVIEW_CHARS"))
        preview_chars = static_cast<std::size_t>(number("OSINTGRAPH_PREVIEW_CHARS", *v));
    validate();
}

json AppConfig::to_json() const {
    return {{"store_path", store_path.string()},
            {"data_dir", resolved_data_dir().string()},
            {"cvss_feed", cvss_feed ? json(cvss_feed->string()) : json(nullptr)},
            {"entropy_threshold", entropy_threshold},
            {"refang", refang},
            {"min_phone_digits", min_phone_digits},
            {"suppress_private_ips", suppress_private_ips},
            {"host", host},
            {"port", port},
            {"max_depth", max_depth},
            {"node_budget", node_budget},
            {"preview_chars", preview_chars},
            {"max_body_bytes", max_body_bytes},
            {"timeout_seconds", timeout_seconds},
            {"fsync", fsync},
            {"compact_every", compact_every}};
}

void AppConfig::validate() const {
    if (!(entropy_threshold > 0.0 && entropy_threshold <= 4.0)) throw ArgumentError("entropy_threshold must be in (0, 4]");
    if (port < 0 || port > 65535) throw ArgumentError("port must be in [0, 65535]");
    if (max_depth < 1) throw ArgumentError("max_depth must be at least 1");
    if (node_budget == 0) throw ArgumentError("node_budget must be positive");
    if (timeout_seconds <= 0) throw ArgumentError("timeout_seconds must be positive");
}

std::filesystem::path AppConfig::resolved_data_dir() const { return data_dir.empty() ? default_data_dir() : data_dir; }

std::shared_ptr<const PipelineConfig> AppConfig::pipeline_config() const {
    const auto paths = DataPaths::from_dir(resolved_data_dir());
    paths.require_exist();
    auto cfg = std::make_shared<PipelineConfig>();
    cfg->extraction = load_extraction_config(paths);
    cfg->extraction.entropy_threshold = entropy_threshold;
    cfg->extraction.refang = refang;
    cfg->extraction.min_phone_digits = min_phone_digits;
    cfg->extraction.suppress_private_ips = suppress_private_ips;
    cfg->extraction.validate();
    cfg->enricher = load_enricher(paths);
    cfg->ingest = load_ingest_config(paths);
    return cfg;
}

}  // namespace osintgraph
