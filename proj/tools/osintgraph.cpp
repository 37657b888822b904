// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors
//
// osintgraph: operator CLI for ingestion, queries, analytics, export and serving.
//
// Exit codes: 0 success, 1 user error, 2 data error, 3 internal error.

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "osintgraph/analytics.hpp"
#include "osintgraph/config.hpp"
#include "osintgraph/errors.hpp"
#include "osintgraph/export.hpp"
#include "osintgraph/graph_store.hpp"
#include "osintgraph/pipeline.hpp"
#include "osintgraph/serialization.hpp"
#include "osintgraph/service.hpp"

namespace og = osintgraph;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUser = 1, kData = 2, kInternal = 3 };

struct UserError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string config_path;
    std::string store;
    std::string data_dir;

    // ingest
    std::string source = "text";
    std::vector<std::string> paths;
    bool recursive = false;
    bool serial = false;

    // query
    std::string type, value;
    int depth = 1;
    std::string edges, lang, topic, source_tags, from, to;
    std::size_t budget = 0;
    std::string format = "table";

    // analyze
    std::string pr_type = "cve";
    int top = 11;
    std::string feed, restrict_path, out;
    std::string cvss_version, metric, sources, years;
    int min_degree = -1;
    double min_pagerank = -1;

    // export / load / serve
    std::string export_format;
    std::string load_path;
    std::string host;
    int port = -1;
};

og::AppConfig resolve_config(const Options& o) {
    og::AppConfig cfg;
    if (!o.config_path.empty()) {
        if (!fs::exists(o.config_path)) throw UserError("config not found: " + o.config_path);
        cfg = og::AppConfig::load_file(o.config_path);
    }
    cfg.apply_env();
    if (!o.store.empty()) cfg.store_path = o.store;
    if (!o.data_dir.empty()) cfg.data_dir = o.data_dir;
    if (!o.feed.empty()) cfg.cvss_feed = fs::path(o.feed);
    if (!o.host.empty()) cfg.host = o.host;
    if (o.port >= 0) cfg.port = o.port;
    cfg.validate();
    return cfg;
}

/// Missing dictionaries are an operator mistake, not an internal failure.
std::shared_ptr<const og::PipelineConfig> load_pipeline(const og::AppConfig& cfg) {
    try {
        return cfg.pipeline_config();
    } catch (const og::IoError& e) {
        throw UserError(e.what());
    }
}

og::GraphStore::Options store_options(const og::AppConfig& cfg) { return {cfg.fsync, cfg.compact_every}; }

/// Read-only commands never create a store.
std::unique_ptr<og::GraphStore> open_existing_store(const og::AppConfig& cfg) {
    if (!fs::is_directory(cfg.store_path)) throw UserError("store not found: " + cfg.store_path.string());
    return std::make_unique<og::GraphStore>(cfg.store_path, store_options(cfg));
}

std::set<std::string> split_set(const std::string& s) {
    std::set<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.insert(item);
    return out;
}

// ---- ingest ---------------------------------------------------------------

int cmd_ingest(const Options& o) {
    const auto cfg = resolve_config(o);
    auto kind = og::parse_source_kind(o.source);
    if (!kind) throw UserError("--source must be text, crawler or avscan");
    for (const auto& p : o.paths)
        if (!fs::exists(p)) throw UserError("no such file or directory: " + p);
    auto pipeline_cfg = load_pipeline(cfg);  // validates data files before the store is touched

    std::vector<fs::path> paths(o.paths.begin(), o.paths.end());
    const auto inputs = og::collect_inputs(*kind, paths, o.recursive);

    og::GraphStore store(cfg.store_path, store_options(cfg));
    og::Pipeline pipeline(pipeline_cfg, store);
    const auto summary = o.serial ? pipeline.ingest_batch_serial(inputs) : pipeline.ingest_batch(inputs);
    for (const auto& m : summary.error_messages) std::cerr << "error: " << m << '\n';
    std::cout << json{{"committed", summary.committed},
                      {"duplicates", summary.duplicates},
                      {"zero_degree", summary.zero_degree},
                      {"errors", summary.errors}}
                     .dump()
              << '\n';
    return summary.errors == 0 ? kOk : kData;
}

// ---- query ----------------------------------------------------------------

std::string dot_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out.push_back(c);
    }
    return out;
}

void print_dot(const og::Graph& g, const og::SubgraphView& v) {
    std::cout << "graph neighborhood {\n  node [fontsize=10];\n";
    for (std::size_t i = 0; i < v.nodes.size(); ++i) {
        const auto n = v.nodes[i];
        const auto key = og::node_key(g, n);
        if (n.kind == og::NodeKind::Document) {
            std::cout << "  \"" << dot_escape(key) << "\" [shape=box, label=\"document\\n"
                      << g.document(n.index).checksum.substr(0, 12) << "\"];\n";
        } else {
            const auto& ind = g.indicator(n.index);
            std::cout << "  \"" << dot_escape(key) << "\" [shape=ellipse, label=\"" << og::type_name(ind.type) << "\\n"
                      << dot_escape(ind.value) << "\"];\n";
        }
    }
    for (const auto& e : v.edges) {
        std::cout << "  \"" << dot_escape(og::node_key(g, og::NodeRef::document(e.document))) << "\" -- \""
                  << dot_escape(og::node_key(g, og::NodeRef::indicator(e.indicator))) << "\" [label=\""
                  << og::edge_label(e.label) << "\"];\n";
    }
    std::cout << "}\n";
}

void print_table(const og::Graph& g, const og::SubgraphView& v) {
    std::cout << std::left << std::setw(6) << "depth" << std::setw(10) << "kind" << std::setw(8) << "degree"
              << "node\n";
    for (std::size_t i = 0; i < v.nodes.size(); ++i) {
        const auto n = v.nodes[i];
        std::string label;
        if (n.kind == og::NodeKind::Document) {
            const auto& d = g.document(n.index);
            label = d.checksum;
            if (!d.source_tag().empty()) label += "  [" + std::string(d.source_tag()) + "]";
        } else {
            const auto& ind = g.indicator(n.index);
            label = std::string(og::type_name(ind.type)) + " " + ind.value;
        }
        std::cout << std::setw(6) << v.depths[i] << std::setw(10)
                  << (n.kind == og::NodeKind::Document ? "document" : "indicator") << std::setw(8) << g.degree(n)
                  << label << '\n';
    }
    std::cout << v.nodes.size() << " nodes, " << v.edges.size() << " edges" << (v.truncated ? " (truncated)" : "")
              << '\n';
}

int cmd_query(const Options& o) {
    const auto cfg = resolve_config(o);
    auto type = og::parse_type_name(o.type);
    if (!type) throw UserError("unknown indicator type '" + o.type + "'");
    if (o.depth < 1 || o.depth > static_cast<int>(cfg.max_depth))
        throw UserError("--depth must be in [1, " + std::to_string(cfg.max_depth) + "]");
    if (o.format != "table" && o.format != "jsonl" && o.format != "dot")
        throw UserError("--format must be table, jsonl or dot");

    og::QueryFilter f;
    if (!o.edges.empty()) {
        std::set<og::IndicatorType> types;
        for (const auto& name : split_set(o.edges)) {
            auto t = og::parse_type_name(name);
            if (!t) throw UserError("unknown edge type '" + name + "'");
            types.insert(*t);
        }
        f.edge_types = types;
    }
    if (!o.lang.empty()) f.language = o.lang;
    if (!o.topic.empty()) {
        auto t = og::parse_topic(o.topic);
        if (!t) throw UserError("unknown topic '" + o.topic + "'");
        f.topic = *t;
    }
    if (!o.source_tags.empty()) f.source_tags = split_set(o.source_tags);
    if (!o.from.empty() || !o.to.empty()) {
        auto parse = [](const std::string& s, og::Timestamp fallback) {
            if (s.empty()) return fallback;
            auto t = og::parse_rfc3339(s);
            if (!t) throw UserError("bad timestamp '" + s + "'");
            return *t;
        };
        f.time_window = std::pair(parse(o.from, og::Timestamp::min()), parse(o.to, og::Timestamp::max()));
    }
    f.node_budget = o.budget ? o.budget : cfg.node_budget;

    auto store = open_existing_store(cfg);
    auto view = store->view();
    auto id = view->find_indicator(*type, o.value);
    if (!id) throw og::NotFound("no " + std::string(og::type_name(*type)) + " indicator '" + o.value + "'");
    const auto sub = view->neighborhood(og::NodeRef::indicator(*id), static_cast<std::uint32_t>(o.depth), f);

    if (o.format == "dot") {
        print_dot(view.graph(), sub);
    } else if (o.format == "jsonl") {
        const auto j = og::subgraph_to_json(view.graph(), sub, cfg.preview_chars);
        for (const auto& n : j["nodes"]) {
            json rec = n;
            rec["record"] = "node";
            std::cout << rec.dump() << '\n';
        }
        for (const auto& e : j["edges"]) {
            json rec = e;
            rec["record"] = "edge";
            std::cout << rec.dump() << '\n';
        }
        std::cout << json{{"record", "summary"}, {"frontier", j["frontier"]}, {"truncated", sub.truncated}}.dump()
                  << '\n';
    } else {
        print_table(view.graph(), sub);
    }
    return kOk;
}

// ---- analyze --------------------------------------------------------------

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw UserError("cannot write " + o.out);
    f << text;
}

int cmd_stats(const Options& o) {
    const auto cfg = resolve_config(o);
    auto store = open_existing_store(cfg);
    const auto s = store->stats();
    if (o.format == "json" || o.format == "jsonl") {
        emit(o, og::stats_to_json(s).dump() + "\n");
        return kOk;
    }
    std::ostringstream t;
    t << std::left << std::setw(16) << "Node type" << std::right << std::setw(14) << "Count of nodes" << std::setw(16)
      << "Count of edges" << '\n';
    t << std::left << std::setw(16) << "Document" << std::right << std::setw(14) << s.documents << std::setw(16) << "-"
      << '\n';
    for (auto type : og::kAllIndicatorTypes) {
        t << std::left << std::setw(16) << og::display_name(type) << std::right << std::setw(14) << s[type].nodes
          << std::setw(16) << s[type].edges << '\n';
    }
    emit(o, t.str());
    return kOk;
}

int cmd_pagerank(const Options& o) {
    const auto cfg = resolve_config(o);
    auto type = og::parse_type_name(o.pr_type);
    if (!type) throw UserError("unknown indicator type '" + o.pr_type + "'");
    if (o.top <= 0) throw UserError("--top must be positive");
    auto store = open_existing_store(cfg);
    auto view = store->view();
    std::vector<og::RankedIndicator> ranked;
    og::GraphPageRank pr;
    if (view->document_count() > 0) {
        pr = og::pagerank(view.graph());
        ranked = og::top_indicators_by_pagerank(view.graph(), pr, *type, o.top);
    }
    std::ostringstream t;
    if (o.format == "json" || o.format == "jsonl") {
        for (const auto& r : ranked) t << json{{"rank", r.rank}, {"value", r.value}, {"score", r.score}}.dump() << '\n';
    } else {
        t << std::left << std::setw(6) << "Rank" << std::setw(40) << og::display_name(*type) << "PageRank score\n";
        for (const auto& r : ranked)
            t << std::left << std::setw(6) << r.rank << std::setw(40) << r.value << std::fixed << std::setprecision(4)
              << r.score << '\n';
        if (!ranked.empty())
            t << "# " << pr.iterations << " iterations, " << (pr.converged ? "converged" : "not converged") << '\n';
    }
    emit(o, t.str());
    return kOk;
}

int cmd_cvss(const Options& o) {
    const auto cfg = resolve_config(o);
    if (!cfg.cvss_feed) throw UserError("analyze cvss needs --feed (or cvss_feed in the config)");
    if (!fs::exists(*cfg.cvss_feed)) throw UserError("feed not found: " + cfg.cvss_feed->string());

    json rj = json::object();
    if (!o.restrict_path.empty()) {
        std::ifstream in(o.restrict_path);
        if (!in) throw UserError("cannot read " + o.restrict_path);
        rj = json::parse(in);
    }
    if (!o.sources.empty()) rj["source_tags"] = split_set(o.sources);
    if (o.min_degree >= 0) rj["min_degree"] = o.min_degree;
    if (o.min_pagerank >= 0) rj["min_pagerank"] = o.min_pagerank;
    if (!o.metric.empty()) rj["metric"] = o.metric;
    if (!o.cvss_version.empty()) rj["cvss_version"] = o.cvss_version;
    if (!o.years.empty()) {
        const auto colon = o.years.find(':');
        if (colon == std::string::npos) throw UserError("--years expects START:END");
        rj["year_window"] = {std::stoi(o.years.substr(0, colon)), std::stoi(o.years.substr(colon + 1))};
    }
    const auto restriction = og::DegreeRestriction::from_json(rj);
    const auto feed = og::load_cvss_feed(*cfg.cvss_feed);
    if (feed.rejected) std::cerr << "warning: " << feed.rejected << " feed rows rejected\n";

    auto store = open_existing_store(cfg);
    auto view = store->view();
    const auto report = og::cvss_correlation(view.graph(), feed, restriction);
    emit(o, report.to_json().dump(2) + "\n");
    return kOk;
}

// ---- export / load / compact / serve --------------------------------------

int cmd_export(const Options& o) {
    const auto cfg = resolve_config(o);
    auto fmt = og::parse_export_format(o.export_format);
    if (!fmt) throw UserError("--format must be cypher, graphml or jsonl");
    auto store = open_existing_store(cfg);
    auto view = store->view();
    og::export_graph(view.graph(), *fmt, o.out);
    return kOk;
}

int cmd_load(const Options& o) {
    const auto cfg = resolve_config(o);
    if (!fs::exists(o.load_path)) throw UserError("no such file: " + o.load_path);
    const auto loaded = og::load_jsonl_file(o.load_path);  // validate fully before touching the store
    og::GraphStore store(cfg.store_path, store_options(cfg));
    og::IngestSummary summary;
    for (std::uint32_t i = 0; i < loaded.document_count(); ++i)
        summary.count(store.commit_record(og::CommitRecord{loaded.document(i)}).status);
    std::cout << json{{"committed", summary.committed}, {"duplicates", summary.duplicates}}.dump() << '\n';
    return kOk;
}

int cmd_compact(const Options& o) {
    const auto cfg = resolve_config(o);
    auto store = open_existing_store(cfg);
    store->compact();
    return kOk;
}

og::Service* g_service = nullptr;

extern "C" void on_signal(int) {
    if (g_service) g_service->stop();
}

int cmd_serve(const Options& o) {
    const auto cfg = resolve_config(o);
    auto pipeline_cfg = load_pipeline(cfg);
    og::GraphStore store(cfg.store_path, store_options(cfg));
    og::Service service(cfg, store, pipeline_cfg);
    const int port = service.bind();
    std::cout << "listening on http://" << cfg.host << ":" << port << std::endl;
    g_service = &service;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    service.run();
    g_service = nullptr;
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"osintgraph: OSINT indicator graph engine"};
    app.require_subcommand(1);
    app.add_option("--config", o.config_path, "JSON config file");
    app.add_option("--store", o.store, "store directory");
    app.add_option("--data-dir", o.data_dir, "dictionary and profile directory");

    auto* ingest = app.add_subcommand("ingest", "ingest files through the full pipeline");
    ingest->add_option("--source", o.source, "text, crawler or avscan")->check(CLI::IsMember({"text", "crawler", "avscan"}));
    ingest->add_option("paths", o.paths, "files or directories")->required();
    ingest->add_flag("--recursive,-r", o.recursive, "descend into subdirectories");
    ingest->add_flag("--serial", o.serial, "prepare documents on one thread");

    auto* query = app.add_subcommand("query", "neighborhood queries");
    query->require_subcommand(1);
    auto* qind = query->add_subcommand("indicator", "neighborhood of one indicator");
    qind->add_option("type", o.type, "indicator type (md5, ip, cve, ...)")->required();
    qind->add_option("value", o.value, "indicator value")->required();
    qind->add_option("--depth", o.depth, "hops (default 1)");
    qind->add_option("--edges", o.edges, "comma-separated edge types to traverse");
    qind->add_option("--lang", o.lang, "keep documents in this language");
    qind->add_option("--topic", o.topic, "cyber, not_cyber or insufficient");
    qind->add_option("--source-tags", o.source_tags, "comma-separated source tags");
    qind->add_option("--from", o.from, "RFC 3339 window start");
    qind->add_option("--to", o.to, "RFC 3339 window end");
    qind->add_option("--budget", o.budget, "node budget");
    qind->add_option("--format", o.format, "table, jsonl or dot");

    auto* analyze = app.add_subcommand("analyze", "graph analytics");
    analyze->require_subcommand(1);
    auto* stats = analyze->add_subcommand("stats", "per-type node and edge counts");
    stats->add_option("--format", o.format, "table or json");
    stats->add_option("--out", o.out, "write to file");
    auto* pr = analyze->add_subcommand("pagerank", "top indicators by PageRank");
    pr->add_option("--type", o.pr_type, "indicator type (default cve)");
    pr->add_option("--top", o.top, "how many (default 11)");
    pr->add_option("--format", o.format, "table or jsonl");
    pr->add_option("--out", o.out, "write to file");
    auto* cvss = analyze->add_subcommand("cvss", "CVSS score correlation");
    cvss->add_option("--feed", o.feed, "CVSS CSV feed");
    cvss->add_option("--restrict", o.restrict_path, "restriction JSON file");
    cvss->add_option("--sources", o.sources, "comma-separated source tag allowlist");
    cvss->add_option("--min-degree", o.min_degree, "drop CVEs below this degree");
    cvss->add_option("--min-pagerank", o.min_pagerank, "drop CVEs below this PageRank");
    cvss->add_option("--metric", o.metric, "degree or pagerank");
    cvss->add_option("--cvss-version", o.cvss_version, "v2 or v3");
    cvss->add_option("--years", o.years, "START:END publication years");
    cvss->add_option("--out", o.out, "write report to file");

    auto* exp = app.add_subcommand("export", "export the graph");
    exp->add_option("--format", o.export_format, "cypher, graphml or jsonl")->required();
    exp->add_option("--out", o.out, "destination file")->required();

    auto* load = app.add_subcommand("load", "load an EdgeListJsonl export into the store");
    load->add_option("file", o.load_path, "jsonl file")->required();

    auto* compact = app.add_subcommand("compact", "rewrite the snapshot and truncate the log");

    auto* serve = app.add_subcommand("serve", "run the HTTP service");
    serve->add_option("--port", o.port, "listen port (0 picks one)");
    serve->add_option("--host", o.host, "listen address");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUser;
    }

    try {
        if (ingest->parsed()) return cmd_ingest(o);
        if (qind->parsed()) return cmd_query(o);
        if (stats->parsed()) return cmd_stats(o);
        if (pr->parsed()) return cmd_pagerank(o);
        if (cvss->parsed()) return cmd_cvss(o);
        if (exp->parsed()) return cmd_export(o);
        if (load->parsed()) return cmd_load(o);
        if (compact->parsed()) return cmd_compact(o);
        if (serve->parsed()) return cmd_serve(o);
    } catch (const UserError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUser;
    } catch (const og::NotFound& e) {
        std::cerr << "NotFound: " << e.what() << '\n';
        return kUser;
    } catch (const og::ArgumentError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUser;
    } catch (const og::DegenerateInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kData;
    } catch (const og::SchemaError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kData;
    } catch (const og::MalformedRecord& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kData;
    } catch (const json::exception& e) {
        std::cerr << "error: invalid JSON: " << e.what() << '\n';
        return kUser;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kUser;
}
