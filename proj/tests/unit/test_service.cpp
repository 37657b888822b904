// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#include <gtest/gtest.h>

#include <httplib.h>

#include <thread>

#include "fixtures.hpp"
#include "osintgraph/service.hpp"

using namespace osintgraph;
using namespace osintgraph::testkit;
using nlohmann::json;

namespace {

const std::string kMd5 = "84c82835a5d21bbcf75a61706d8ab549";
const std::string kSha1 = "91883e17af8fc8f3bc494e35a7832325d702d11f";
const std::string kSha256 = "9239e34cd00603b01aa72f3116f2f96c1d4133a44660de1a6c7aae71dec1d068";

class ServiceTest : public ::testing::Test {
protected:
    GraphStore store;
    std::unique_ptr<Service> service;
    std::thread thread;
    std::unique_ptr<httplib::Client> client;

    void SetUp() override {
        AppConfig cfg;
        cfg.port = 0;
        cfg.max_depth = 3;
        cfg.node_budget = 50;
        cfg.max_body_bytes = 64 * 1024;
        service = std::make_unique<Service>(cfg, store, pipeline_config());
        const int port = service->bind();
        thread = std::thread([this] { service->run(); });
        service->wait_until_ready();
        client = std::make_unique<httplib::Client>("127.0.0.1", port);
    }

    void TearDown() override {
        service->stop();
        thread.join();
    }

    json post_doc(const std::string& kind, const json& payload, int expect = 200) {
        const auto res = client->Post("/v1/documents", json{{"source_kind", kind}, {"payload", payload}}.dump(),
                                      "application/json");
        EXPECT_TRUE(res);
        if (!res) return {};
        EXPECT_EQ(res->status, expect) << res->body;
        return json::parse(res->body);
    }

    std::pair<int, json> get(const std::string& path) {
        const auto res = client->Get(path);
        EXPECT_TRUE(res);
        if (!res) return {0, {}};
        return {res->status, json::parse(res->body)};
    }

    void post_md5_corpus() {
        for (const auto* f : {"blog_tool.txt", "manalyzer_report.txt", "forum_thread.txt"}) {
            const auto r = post_doc("text", read_file(corpus_dir() / "md5_scenario" / f));
            EXPECT_EQ(r["status"], "committed");
        }
    }
};

std::set<std::string> ids(const json& sub) {
    std::set<std::string> out;
    for (const auto& n : sub["nodes"]) out.insert(n["id"].get<std::string>());
    return out;
}

}  // namespace

TEST_F(ServiceTest, Md5ScenarioEndToEnd) {
    post_md5_corpus();
    auto [status, ind] = get("/v1/indicators/md5/" + kMd5);
    EXPECT_EQ(status, 200);
    EXPECT_EQ(ind["degree"], 3);

    auto [s2, sub] = get("/v1/indicators/md5/" + kMd5 + "/neighborhood?depth=2");
    EXPECT_EQ(s2, 200);
    const auto k = ids(sub);
    EXPECT_TRUE(k.contains("ind:sha1:" + kSha1));
    EXPECT_TRUE(k.contains("ind:sha256:" + kSha256));
    EXPECT_EQ(sub["seed"], "ind:md5:" + kMd5);
    EXPECT_EQ(sub["depth"], 2);
    EXPECT_FALSE(sub["truncated"].get<bool>());
}

TEST_F(ServiceTest, LookupIsCanonicalised) {
    post_md5_corpus();
    auto [status, ind] = get("/v1/indicators/md5/84C82835A5D21BBCF75A61706D8AB549");
    EXPECT_EQ(status, 200);
    EXPECT_EQ(ind["value"], kMd5);
}

TEST_F(ServiceTest, DuplicatesAndZeroDegree) {
    const auto text = read_file(corpus_dir() / "md5_scenario/forum_thread.txt");
    const auto first = post_doc("text", text);
    EXPECT_EQ(first["status"], "committed");
    EXPECT_EQ(first["doc_id"], 0);
    EXPECT_EQ(post_doc("text", text)["status"], "skipped_duplicate");
    EXPECT_EQ(post_doc("text", "hello world")["status"], "skipped_zero_degree");

    auto [status, doc] = get("/v1/documents/" + first["checksum"].get<std::string>());
    EXPECT_EQ(status, 200);
    EXPECT_EQ(doc["raw_text"], text);
    EXPECT_EQ(doc["degree"], 2);
}

TEST_F(ServiceTest, CrawlerAndAvScanPayloads) {
    const auto line = read_lines(corpus_dir() / "qakbot/crawler.jsonl").at(0);
    EXPECT_EQ(post_doc("crawler", line)["status"], "committed");
    EXPECT_EQ(post_doc("avscan", json::parse(read_lines(corpus_dir() / "avscan/scans.jsonl").at(0)))["status"],
              "committed");
    auto [status, stats] = get("/v1/stats");
    EXPECT_EQ(status, 200);
    EXPECT_EQ(stats["documents"], 2);
    EXPECT_EQ(stats["types"]["ip"]["nodes"], 4);
    EXPECT_EQ(stats["types"].size(), 14u);
}

TEST_F(ServiceTest, ErrorMapping) {
    auto [s404, e404] = get("/v1/indicators/md5/" + kMd5);
    EXPECT_EQ(s404, 404);
    EXPECT_EQ(e404["error"]["code"], "NotFound");
    EXPECT_EQ(get("/v1/indicators/md5/xyz").first, 400);
    EXPECT_EQ(get("/v1/indicators/colour/red").first, 400);
    EXPECT_EQ(get("/v1/documents/" + std::string(64, 'a')).first, 404);
    EXPECT_EQ(get("/v1/no/such/route").first, 404);

    post_md5_corpus();
    EXPECT_EQ(get("/v1/indicators/md5/" + kMd5 + "/neighborhood?depth=0").first, 400);
    EXPECT_EQ(get("/v1/indicators/md5/" + kMd5 + "/neighborhood?depth=4").first, 400);
    EXPECT_EQ(get("/v1/indicators/md5/" + kMd5 + "/neighborhood?depth=x").first, 400);
    EXPECT_EQ(get("/v1/indicators/md5/" + kMd5 + "/neighborhood?edges=").first, 400);
    EXPECT_EQ(get("/v1/indicators/md5/" + kMd5 + "/neighborhood?topic=sports").first, 400);
    EXPECT_EQ(get("/v1/indicators/md5/" + kMd5 + "/neighborhood?from=yesterday").first, 400);

    post_doc("text", "", 400);
    post_doc("crawler", "{broken", 400);
    post_doc("pdf", "x", 400);
    post_doc("text", json::object(), 400);
    const auto res = client->Post("/v1/documents", "not json", "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 400);
    EXPECT_TRUE(json::parse(res->body).contains("error"));

    const auto big = client->Post("/v1/documents", std::string(128 * 1024, 'x'), "application/json");
    ASSERT_TRUE(big);
    EXPECT_EQ(big->status, 413);
}

TEST_F(ServiceTest, NeighborhoodFiltersAndBudget) {
    post_md5_corpus();
    auto [s, sub] = get("/v1/indicators/md5/" + kMd5 + "/neighborhood?depth=2&edges=md5,sha1");
    EXPECT_EQ(s, 200);
    EXPECT_TRUE(ids(sub).contains("ind:sha1:" + kSha1));
    EXPECT_FALSE(ids(sub).contains("ind:sha256:" + kSha256));

    auto [s2, small] = get("/v1/indicators/md5/" + kMd5 + "/neighborhood?depth=2&budget=2");
    EXPECT_EQ(small["nodes"].size(), 2u);
    EXPECT_TRUE(small["truncated"].get<bool>());
    auto [s3, capped] = get("/v1/indicators/md5/" + kMd5 + "/neighborhood?depth=2&budget=100000");
    EXPECT_EQ(s3, 200);
    EXPECT_LE(capped["nodes"].size(), 50u);

    auto [s4, es] = get("/v1/indicators/md5/" + kMd5 + "/neighborhood?lang=es");
    EXPECT_EQ(es["nodes"].size(), 1u);  // only the seed
}

TEST_F(ServiceTest, PageRankEndpoint) {
    auto [s0, empty] = get("/v1/analytics/pagerank");
    EXPECT_EQ(s0, 200);
    EXPECT_TRUE(empty["results"].empty());
    for (const auto& line : read_lines(corpus_dir() / "cve/crawler.jsonl")) post_doc("crawler", line);
    auto [s, pr] = get("/v1/analytics/pagerank?type=cve&k=11");
    EXPECT_EQ(s, 200);
    ASSERT_EQ(pr["results"].size(), 2u);
    EXPECT_EQ(pr["results"][0]["value"], "CVE-2014-4404");
    EXPECT_EQ(pr["results"][0]["rank"], 1);
    EXPECT_EQ(pr["params"]["damping"], 0.75);
    EXPECT_TRUE(pr["converged"].get<bool>());
    EXPECT_EQ(get("/v1/analytics/pagerank?k=0").first, 400);
}

TEST_F(ServiceTest, CvssCorrelationEndpoint) {
    const auto body = json{{"source_tags", {"fireeye", "exploitdb", "thehackernews"}}}.dump();
    auto res = client->Post("/v1/analytics/cvss-correlation", body, "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 409);

    service->set_cvss_feed(load_cvss_feed(corpus_dir() / "cvss/feed.csv"));
    for (const auto& line : read_lines(corpus_dir() / "cve/crawler.jsonl")) post_doc("crawler", line);
    // only two CVEs with a v2 score: r is defined but trivially +-1
    res = client->Post("/v1/analytics/cvss-correlation", json{{"cvss_version", "v2"}}.dump(), "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200) << res->body;
    const auto rep = json::parse(res->body);
    EXPECT_EQ(rep["n"], 2);
    EXPECT_EQ(rep["points"][0]["cve"], "CVE-2014-4404");

    res = client->Post("/v1/analytics/cvss-correlation", body, "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 400);  // one v3 point only
    EXPECT_EQ(json::parse(res->body)["error"]["n"], 1);

    res = client->Post("/v1/analytics/cvss-correlation", R"({"bogus":1})", "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 400);
}

TEST_F(ServiceTest, ConcurrentReadersAndWriter) {
    post_md5_corpus();
    std::atomic<int> failures{0};
    std::vector<std::thread> readers;
    const int port = client->port();
    for (int r = 0; r < 3; ++r)
        readers.emplace_back([&, port] {
            httplib::Client c("127.0.0.1", port);
            for (int i = 0; i < 20; ++i) {
                auto res = c.Get("/v1/indicators/md5/" + kMd5 + "/neighborhood?depth=2");
                if (!res || res->status != 200) ++failures;
            }
        });
    std::mt19937_64 rng(3);
    for (int i = 0; i < 40; ++i) post_doc("text", random_document(rng).text + " " + kMd5);
    for (auto& t : readers) t.join();
    EXPECT_EQ(failures.load(), 0);
}
