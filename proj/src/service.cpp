// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#include "osintgraph/service.hpp"

#include <httplib.h>

#include <charconv>
#include <sstream>

#include "osintgraph/errors.hpp"
#include "osintgraph/serialization.hpp"

namespace osintgraph {

using nlohmann::json;

namespace {

/// Carries an HTTP status out of a handler.
struct HttpError {
    int status;
    std::string code;
    std::string message;
    std::optional<std::size_t> n;
};

HttpError bad_request(std::string msg) { return {400, "BadRequest", std::move(msg), std::nullopt}; }

void send_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, const HttpError& e) {
    json err = {{"code", e.code}, {"message", e.message}};
    if (e.n) err["n"] = *e.n;
    send_json(res, e.status, {{"error", err}});
}

HttpError classify(std::exception_ptr ep) {
    try {
        std::rethrow_exception(ep);
    } catch (const HttpError& e) {
        return e;
    } catch (const NotFound& e) {
        return {404, "NotFound", e.what(), std::nullopt};
    } catch (const DegenerateInput& e) {
        return {400, "BadRequest", e.what(), e.n()};
    } catch (const ArgumentError& e) {
        return bad_request(e.what());
    } catch (const EmptyDocument& e) {
        return bad_request(e.what());
    } catch (const MalformedRecord& e) {
        return bad_request(e.what());
    } catch (const SchemaError& e) {
        return bad_request(e.what());
    } catch (const json::exception& e) {
        return bad_request(std::string("invalid JSON: ") + e.what());
    } catch (const std::exception& e) {
        return {500, "Internal", e.what(), std::nullopt};
    } catch (...) {
        return {500, "Internal", "unknown error", std::nullopt};
    }
}

std::optional<std::string> param(const httplib::Request& req, const char* name) {
    if (!req.has_param(name)) return std::nullopt;
    return req.get_param_value(name);
}

long long int_param(const httplib::Request& req, const char* name, long long fallback) {
    auto v = param(req, name);
    if (!v) return fallback;
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    if (ec != std::errc() || ptr != v->data() + v->size()) throw bad_request(std::string(name) + " must be an integer");
    return out;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

IndicatorType type_param(const std::string& s) {
    auto t = parse_type_name(s);
    if (!t) throw bad_request("unknown indicator type '" + s + "'");
    return *t;
}

Timestamp time_param(const std::string& name, const std::string& s) {
    auto t = parse_rfc3339(s);
    if (!t) throw bad_request(name + " must be an RFC 3339 timestamp");
    return *t;
}

}  // namespace

struct Service::Impl {
    AppConfig cfg;
    GraphStore& store;
    std::shared_ptr<const PipelineConfig> pipeline_cfg;
    Pipeline pipeline;
    std::mutex feed_mutex;
    std::shared_ptr<const CvssFeed> feed;
    httplib::Server server;

    Impl(const AppConfig& c, GraphStore& s, std::shared_ptr<const PipelineConfig> p)
        : cfg(c), store(s), pipeline_cfg(p), pipeline(p, s) {
        routes();
    }

    template <typename F>
    httplib::Server::Handler wrap(F f) {
        return [f](const httplib::Request& req, httplib::Response& res) {
            try {
                f(req, res);
            } catch (...) {
                send_error(res, classify(std::current_exception()));
            }
        };
    }

    QueryFilter filter_from(const httplib::Request& req) const {
        QueryFilter f;
        if (auto v = param(req, "edges")) {
            std::set<IndicatorType> types;
            for (const auto& name : split_list(*v)) types.insert(type_param(name));
            f.edge_types = std::move(types);
        }
        if (auto v = param(req, "lang")) f.language = *v;
        if (auto v = param(req, "topic")) {
            auto t = parse_topic(*v);
            if (!t) throw bad_request("unknown topic '" + *v + "'");
            f.topic = *t;
        }
        if (auto v = param(req, "source_tags")) {
            auto tags = split_list(*v);
            f.source_tags = std::set<std::string>(tags.begin(), tags.end());
        }
        auto from = param(req, "from");
        auto to = param(req, "to");
        if (from || to) {
            f.time_window = std::pair(from ? time_param("from", *from) : Timestamp::min(),
                                      to ? time_param("to", *to) : Timestamp::max());
        }
        const auto budget = int_param(req, "budget", static_cast<long long>(cfg.node_budget));
        if (budget <= 0) throw bad_request("budget must be positive");
        f.node_budget = std::min(static_cast<std::size_t>(budget), cfg.node_budget);
        f.validate();
        return f;
    }

    void routes() {
        server.Post("/v1/documents", wrap([this](const httplib::Request& req, httplib::Response& res) {
            const json body = json::parse(req.body);
            if (!body.is_object()) throw bad_request("body must be a JSON object");
            const auto kind_name = body.at("source_kind").get<std::string>();
            auto kind = parse_source_kind(kind_name);
            if (!kind) throw bad_request("source_kind must be text, crawler or avscan");
            const auto& payload = body.at("payload");
            std::string bytes;
            if (payload.is_string()) bytes = payload.get<std::string>();
            else if (payload.is_object() && *kind != SourceKind::RawText) bytes = payload.dump();
            else throw bad_request("payload must be a string (or an object for crawler/avscan)");

            const auto outcome = pipeline.ingest(*kind, bytes);
            json out = {{"status", commit_status_name(outcome.status)}, {"checksum", outcome.checksum}};
            if (outcome.doc_id) out["doc_id"] = *outcome.doc_id;
            send_json(res, 200, out);
        }));

        server.Get("/v1/indicators/:type/:value", wrap([this](const httplib::Request& req, httplib::Response& res) {
            const auto type = type_param(req.path_params.at("type"));
            const auto& value = req.path_params.at("value");
            json out;
            {
                auto view = store.view();
                auto id = view->find_indicator(type, value);
                if (!id) throw NotFound("no " + std::string(type_name(type)) + " indicator '" + value + "'");
                const auto& n = view->indicator(*id);
                out = {{"type", type_name(n.type)}, {"value", n.value},
                       {"degree", view->degree(NodeRef::indicator(*id))}};
            }
            send_json(res, 200, out);
        }));

        server.Get("/v1/indicators/:type/:value/neighborhood",
                   wrap([this](const httplib::Request& req, httplib::Response& res) {
                       const auto type = type_param(req.path_params.at("type"));
                       const auto& value = req.path_params.at("value");
                       const auto depth = int_param(req, "depth", 1);
                       if (depth < 1 || depth > static_cast<long long>(cfg.max_depth))
                           throw bad_request("depth must be in [1, " + std::to_string(cfg.max_depth) + "]");
                       const auto filter = filter_from(req);
                       json out;
                       {
                           auto view = store.view();
                           auto id = view->find_indicator(type, value);
                           if (!id) throw NotFound("no " + std::string(type_name(type)) + " indicator '" + value + "'");
                           const auto sub =
                               view->neighborhood(NodeRef::indicator(*id), static_cast<std::uint32_t>(depth), filter);
                           out = subgraph_to_json(view.graph(), sub, cfg.preview_chars);
                           out["seed"] = node_key(view.graph(), NodeRef::indicator(*id));
                           out["depth"] = depth;
                       }
                       send_json(res, 200, out);
                   }));

        server.Get("/v1/documents/:checksum", wrap([this](const httplib::Request& req, httplib::Response& res) {
            const auto& checksum = req.path_params.at("checksum");
            json out;
            {
                auto view = store.view();
                auto id = view->find_document(checksum);
                if (!id) throw NotFound("no document " + checksum);
                out = document_to_json(view->document(*id));
                out["degree"] = view->degree(NodeRef::document(*id));
            }
            send_json(res, 200, out);
        }));

        server.Get("/v1/stats", wrap([this](const httplib::Request&, httplib::Response& res) {
            send_json(res, 200, stats_to_json(store.stats()));
        }));

        server.Get("/v1/analytics/pagerank", wrap([this](const httplib::Request& req, httplib::Response& res) {
            const auto type = type_param(param(req, "type").value_or("cve"));
            const auto k = int_param(req, "k", 11);
            if (k <= 0) throw bad_request("k must be positive");
            PageRankParams params;
            json results = json::array();
            int iterations = 0;
            bool converged = true;
            {
                auto view = store.view();
                if (view->document_count() > 0) {
                    const auto pr = pagerank(view.graph(), params);
                    iterations = pr.iterations;
                    converged = pr.converged;
                    for (const auto& r : top_indicators_by_pagerank(view.graph(), pr, type, static_cast<int>(k)))
                        results.push_back({{"rank", r.rank}, {"value", r.value}, {"score", r.score}});
                }
            }
            send_json(res, 200,
                      {{"type", type_name(type)},
                       {"k", k},
                       {"params", {{"damping", params.damping}, {"max_iterations", params.max_iterations},
                                   {"tolerance", params.tolerance}}},
                       {"iterations", iterations},
                       {"converged", converged},
                       {"results", results}});
        }));

        server.Post("/v1/analytics/cvss-correlation", wrap([this](const httplib::Request& req, httplib::Response& res) {
            std::shared_ptr<const CvssFeed> f;
            {
                std::lock_guard lock(feed_mutex);
                f = feed;
            }
            if (!f) throw HttpError{409, "Conflict", "no CVSS feed loaded", std::nullopt};
            const auto restriction = DegreeRestriction::from_json(req.body.empty() ? json::object() : json::parse(req.body));
            json out;
            {
                auto view = store.view();
                out = cvss_correlation(view.graph(), *f, restriction).to_json();
            }
            send_json(res, 200, out);
        }));

        server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
            if (!res.body.empty()) return;
            const int s = res.status;
            const char* code = s == 404 ? "NotFound" : s == 413 ? "TooLarge" : s >= 500 ? "Internal" : "BadRequest";
            send_error(res, {s, code, httplib::status_message(s), std::nullopt});
        });
        server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
            send_error(res, classify(ep));
        });
        server.set_payload_max_length(cfg.max_body_bytes);
        server.set_read_timeout(cfg.timeout_seconds, 0);
        server.set_write_timeout(cfg.timeout_seconds, 0);
    }
};

Service::Service(const AppConfig& cfg, GraphStore& store, std::shared_ptr<const PipelineConfig> pipeline)
    : impl_(std::make_unique<Impl>(cfg, store, std::move(pipeline))) {
    if (cfg.cvss_feed) set_cvss_feed(load_cvss_feed(*cfg.cvss_feed));
}

Service::~Service() { stop(); }

void Service::set_cvss_feed(CvssFeed feed) {
    std::lock_guard lock(impl_->feed_mutex);
    impl_->feed = std::make_shared<const CvssFeed>(std::move(feed));
}

int Service::bind() {
    const auto& cfg = impl_->cfg;
    if (cfg.port == 0) {
        const int port = impl_->server.bind_to_any_port(cfg.host);
        if (port < 0) throw IoError("cannot bind " + cfg.host);
        return port;
    }
    if (!impl_->server.bind_to_port(cfg.host, cfg.port))
        throw IoError("cannot bind " + cfg.host + ":" + std::to_string(cfg.port));
    return cfg.port;
}

void Service::run() { impl_->server.listen_after_bind(); }

void Service::stop() {
    if (impl_) impl_->server.stop();
}

void Service::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace osintgraph
