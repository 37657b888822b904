// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#pragma once

#include <memory>
#include <optional>

#include "osintgraph/analytics.hpp"
#include "osintgraph/config.hpp"
#include "osintgraph/graph_store.hpp"
#include "osintgraph/pipeline.hpp"

namespace osintgraph {

/// HTTP+JSON front end over one GraphStore (see README for the endpoints).
///
/// Errors are returned as {"error": {"code": ..., "message": ...}} with
/// NotFound 404, BadRequest 400, Conflict 409, TooLarge 413, Internal 500.
class Service {
public:
    Service(const AppConfig& cfg, GraphStore& store, std::shared_ptr<const PipelineConfig> pipeline);
    ~Service();
    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    void set_cvss_feed(CvssFeed feed);

    /// Binds cfg.host:cfg.port (port 0 picks a free port). Returns the port.
    /// Throws IoError when the address is unavailable.
    int bind();
    /// Serves until stop(). Must follow bind().
    void run();
    void stop();
    /// Blocks until run() is accepting connections.
    void wait_until_ready() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace osintgraph
