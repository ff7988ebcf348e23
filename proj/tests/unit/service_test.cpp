#include <gtest/gtest.h>

#include <httplib.h>
#include <json.hpp>

#include <sstream>

#include "fixtures.hpp"
#include "ocix/service/api.hpp"
#include "ocix/service/cli.hpp"
#include "ocix/service/http.hpp"
#include "ocix/service/store.hpp"

using namespace ocix;
using namespace ocix::service;
using namespace ocix::testkit;
using nlohmann::json;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli_run(args, out, err);
  return {code, out.str(), err.str()};
}

// Ingests and builds `corpus` into a fresh directory.
struct BuiltDir {
  TempDir tmp;
  std::string dir;
  explicit BuiltDir(const std::string& corpus) : dir((tmp.path() / "idx").string()) {
    auto input = tmp.write("dump.jsonl", corpus);
    auto r = cli({"ingest", "--index-dir", dir, input.string(), "--timestamp", "2022-03-01T00:00:00Z"});
    EXPECT_EQ(r.code, 0) << r.err;
    r = cli({"build", "--index-dir", dir, "--timestamp", "2022-03-01T00:00:01Z"});
    EXPECT_EQ(r.code, 0) << r.err;
  }
};

}  // namespace

TEST(Api, CitationCountAndLicense) {
  auto idx = index_from_text(kTwoRecordCorpus);
  auto r = handle_get(idx, "/api/v1/citation-count/10.1/b");
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.body, "{\"count\":1,\"license\":\"CC0-1.0\"}");
  EXPECT_EQ(handle_get(idx, "/api/v1/citation-count/10.1%2Fb").body, r.body);
  EXPECT_EQ(handle_get(idx, "/api/v1/citation-count/10.9/zz").body, "{\"count\":0,\"license\":\"CC0-1.0\"}");
}

TEST(Api, CitationByOci) {
  auto idx = index_from_text(
      "{\"doi\":\"10.1/a\",\"date\":\"2020\",\"references\":[\"10.2/b\"]}\n{\"doi\":\"10.2/b\",\"date\":\"2018\"}\n");
  auto r = handle_get(idx, "/api/v1/citation/oci:020010036013910-020010036023911");
  ASSERT_EQ(r.status, 200);
  auto j = json::parse(r.body);
  EXPECT_EQ(j["citing"], "10.1/a");
  EXPECT_EQ(j["cited"], "10.2/b");
  EXPECT_EQ(j["timespan"], "P2Y");
  EXPECT_EQ(j["license"], "CC0-1.0");
}

TEST(Api, ErrorsAre404WithName) {
  auto idx = index_from_text(kTwoRecordCorpus);
  auto r = handle_get(idx, "/api/v1/citation/oci:zz");
  EXPECT_EQ(r.status, 404);
  EXPECT_EQ(r.body, "{\"error\":\"MalformedOci\"}");
  EXPECT_EQ(handle_get(idx, "/api/v1/citation/oci:020010036013911-020010036013910").body, "{\"error\":\"UnknownOci\"}");
  EXPECT_EQ(handle_get(idx, "/api/v1/citations/11.1/x").body, "{\"error\":\"InvalidDoi\"}");
  EXPECT_EQ(handle_get(idx, "/api/v1/metadata/10.9/zz").body, "{\"error\":\"UnknownResource\"}");
  EXPECT_EQ(handle_get(idx, "/api/v2/stats").status, 404);
}

TEST(Api, ListsJsonAndCsv) {
  auto idx = index_from_text(kTwoRecordCorpus);
  auto j = json::parse(handle_get(idx, "/api/v1/citations/10.1/b").body);
  ASSERT_EQ(j["records"].size(), 1u);
  EXPECT_EQ(j["records"][0]["citing"], "10.1/a");
  EXPECT_EQ(j["license"], "CC0-1.0");
  EXPECT_TRUE(json::parse(handle_get(idx, "/api/v1/references/10.1/b").body)["records"].empty());
  EXPECT_TRUE(json::parse(handle_get(idx, "/api/v1/citations/10.9/zz").body)["records"].empty());
  auto csv = handle_get(idx, "/api/v1/citations/10.1/b", "csv");
  EXPECT_EQ(csv.content_type, "text/csv");
  EXPECT_EQ(csv.body,
            "# license: CC0-1.0\n"
            "oci,citing,cited,creation,timespan,author_sc,journal_sc,institutional_sc\n"
            "oci:020010036013910-020010036013911,10.1/a,10.1/b,2020,P2Y,no,no,no\n");
}

TEST(Api, MetadataAndStats) {
  auto idx = index_from_text(kTwoRecordCorpus);
  auto m = json::parse(handle_get(idx, "/api/v1/metadata/10.1/a").body);
  EXPECT_EQ(m["date"], "2020");
  EXPECT_EQ(m["reference_count"], 1);
  auto s = json::parse(handle_get(idx, "/api/v1/stats").body);
  EXPECT_EQ(s["citation_links"], 1);
  EXPECT_EQ(s["bibliographic_resources"], 2);
  EXPECT_EQ(s["license"], "CC0-1.0");
}

TEST(Api, RepeatedRequestsAreIdentical) {
  auto idx = index_from_text(kTwoRecordCorpus);
  for (const char* p : {"/api/v1/citations/10.1/b", "/api/v1/stats", "/api/v1/citation/oci:zz"}) {
    auto first = handle_get(idx, p).body;
    for (int i = 0; i < 3; ++i) EXPECT_EQ(handle_get(idx, p).body, first);
  }
}

TEST(Cli, QueryCountOnTwoRecordCorpus) {
  BuiltDir d(kTwoRecordCorpus);
  auto r = cli({"query", "--index-dir", d.dir, "--count", "10.1/b"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "1\n");
}

TEST(Cli, MalformedOciIsDataError) {
  BuiltDir d(kTwoRecordCorpus);
  auto r = cli({"query", "--index-dir", d.dir, "--oci", "oci:bogus"});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find("MalformedOci"), std::string::npos) << r.err;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(cli({"export", "--index-dir", "/tmp", "--format", "xml"}).code, kExitUsage);
  BuiltDir d(kTwoRecordCorpus);
  EXPECT_EQ(cli({"query", "--index-dir", d.dir}).code, kExitUsage);
  EXPECT_EQ(cli({"query", "--index-dir", d.dir, "--count", "10.1/a", "--oci", "oci:x"}).code, kExitUsage);
}

TEST(Cli, ExportOnEmptyIndex) {
  BuiltDir d("");
  auto out = (d.tmp.path() / "empty.nt").string();
  auto r = cli({"export", "--index-dir", d.dir, "--format", "nt", "--output", out});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(out));
  EXPECT_EQ(std::filesystem::file_size(out), 0u);
}

TEST(Cli, ExportCsvCarriesLicense) {
  BuiltDir d(kTwoRecordCorpus);
  auto r = cli({"export", "--index-dir", d.dir, "--format", "csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("# license: CC0-1.0\noci,citing,cited", 0), 0u) << r.out;
}

TEST(Cli, StatsAndCoverage) {
  BuiltDir d(kTwoRecordCorpus);
  auto ref = d.tmp.write("ref.csv", "citing,cited\n10.1/a,10.1/b\n10.1/b,10.1/a\n");
  auto r = cli({"stats", "--index-dir", d.dir, "--reference-set", ref.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("coverage: 50.0% (1/2)"), std::string::npos) << r.out;
}

TEST(Cli, BuildRequiredBeforeQuery) {
  TempDir tmp;
  auto input = tmp.write("dump.jsonl", kTwoRecordCorpus);
  auto dir = (tmp.path() / "idx").string();
  ASSERT_EQ(cli({"ingest", "--index-dir", dir, input.string()}).code, 0);
  auto r = cli({"query", "--index-dir", dir, "--count", "10.1/b"});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find("StaleIndex"), std::string::npos);
}

TEST(Cli, ProvenanceAfterReingest) {
  BuiltDir d(kTwoRecordCorpus);
  auto input = d.tmp.write("dump2.jsonl", std::string(kTwoRecordCorpus) + "{\"doi\":\"10.1/c\"}\n");
  ASSERT_EQ(cli({"ingest", "--index-dir", d.dir, input.string(), "--timestamp", "2022-04-01T00:00:00Z"}).code, 0);
  ASSERT_EQ(cli({"build", "--index-dir", d.dir, "--timestamp", "2022-04-01T00:00:01Z"}).code, 0);
  auto r = cli({"query", "--index-dir", d.dir, "--provenance", "10.1/a"});
  EXPECT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  int n = 0;
  for (std::string l; std::getline(lines, l);) {
    auto j = json::parse(l);
    EXPECT_EQ(j["snapshot_number"], ++n);
  }
  EXPECT_EQ(n, 2);
  auto ledger = load_ledger(IndexDirectory{d.dir});
  EXPECT_TRUE(ledger.contains("10.1/c"));
  EXPECT_TRUE(ledger.contains("oci:020010036013910-020010036013911"));
}

TEST(Http, ServesIndexAndAgreesWithCli) {
  BuiltDir d(kTwoRecordCorpus);
  auto idx = load_index(IndexDirectory{d.dir});
  HttpServer server(idx);
  int port = server.bind("127.0.0.1", 0);
  server.start();
  httplib::Client client("127.0.0.1", port);
  auto res = client.Get("/api/v1/citation-count/10.1/b");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body, "{\"count\":1,\"license\":\"CC0-1.0\"}");
  auto bad = client.Get("/api/v1/citation/oci:zz");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 404);
  EXPECT_EQ(bad->body, "{\"error\":\"MalformedOci\"}");
  auto csv = client.Get("/api/v1/citations/10.1/b?format=csv");
  ASSERT_TRUE(csv);
  EXPECT_EQ(csv->body.rfind("# license: CC0-1.0\n", 0), 0u);
  server.stop();
}

TEST(Http, BindFailure) {
  auto idx = index_from_text("");
  HttpServer first(idx);
  int port = first.bind("127.0.0.1", 0);
  HttpServer second(idx);
  EXPECT_EQ(error_code_of([&] { second.bind("127.0.0.1", port); }), ErrorCode::BindFailure);
}
