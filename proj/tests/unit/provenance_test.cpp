#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "ocix/provenance.hpp"

using namespace ocix;
using namespace ocix::testkit;
using namespace std::chrono_literals;

namespace {

Timestamp t(int seconds) { return parse_timestamp("2022-03-01T00:00:00Z") + std::chrono::seconds(seconds); }

void expect_chain_linked(const std::vector<ProvenanceSnapshot>& chain) {
  ASSERT_FALSE(chain.empty());
  EXPECT_EQ(chain.front().change_type, ChangeType::creation);
  int open = 0;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    EXPECT_EQ(chain[i].snapshot_number, static_cast<int>(i) + 1);
    if (i + 1 < chain.size()) {
      ASSERT_TRUE(chain[i].invalidated_at);
      EXPECT_EQ(*chain[i].invalidated_at, chain[i + 1].generated_at);
      EXPECT_LE(chain[i].generated_at, chain[i + 1].generated_at);
    }
    open += !chain[i].invalidated_at;
  }
  EXPECT_EQ(open, 1);
}

}  // namespace

TEST(Timestamp, Rfc3339RoundTrip) {
  auto ts = parse_timestamp("2022-03-01T12:34:56Z");
  EXPECT_EQ(format_timestamp(ts), "2022-03-01T12:34:56Z");
  EXPECT_EQ(ts - parse_timestamp("2022-03-01T00:00:00Z"), 12h + 34min + 56s);
  for (const char* bad : {"2022-03-01", "2022-03-01T12:34:56", "2022-03-01T12:34:56+01:00", "2022-02-30T00:00:00Z",
                          "2022-03-01T24:00:00Z"})
    EXPECT_NE(error_code_of([&] { parse_timestamp(bad); }), static_cast<ErrorCode>(-1)) << bad;
}

TEST(Ledger, CreationSnapshot) {
  ProvenanceLedger ledger;
  auto s = ledger.record_creation("10.1/a", "file:dump-2022-03.jsonl", "agent-1", t(0));
  EXPECT_EQ(s.snapshot_number, 1);
  EXPECT_EQ(s.change_type, ChangeType::creation);
  EXPECT_EQ(s.source, "file:dump-2022-03.jsonl");
  EXPECT_FALSE(s.invalidated_at);
  EXPECT_EQ(error_code_of([&] { ledger.record_creation("10.1/a", "x", "y", t(1)); }), ErrorCode::AlreadyExists);
}

TEST(Ledger, ModificationClosesPreviousSnapshot) {
  ProvenanceLedger ledger;
  ledger.record_creation("e", "src", "a", t(0));
  auto s2 = ledger.record_modification("e", "fixed title", "curator", t(10));
  EXPECT_EQ(s2.snapshot_number, 2);
  EXPECT_EQ(s2.change_type, ChangeType::modification);
  EXPECT_EQ(s2.source, "src");
  auto chain = ledger.provenance_chain("e");
  ASSERT_EQ(chain.size(), 2u);
  EXPECT_EQ(chain[0].invalidated_at, t(10));
  expect_chain_linked(chain);
}

TEST(Ledger, Errors) {
  ProvenanceLedger ledger;
  EXPECT_EQ(error_code_of([&] { ledger.record_modification("nope", "d", "a", t(0)); }), ErrorCode::UnknownEntity);
  ledger.record_creation("e", "src", "a", t(5));
  EXPECT_EQ(error_code_of([&] { ledger.record_modification("e", "d", "a", t(4)); }), ErrorCode::NonMonotonicTimestamp);
  // Ties are allowed.
  EXPECT_NO_THROW(ledger.record_modification("e", "d", "a", t(5)));
}

TEST(Ledger, ChainOfThreeAndUnknown) {
  ProvenanceLedger ledger;
  ledger.record_creation("e", "src", "a", t(0));
  ledger.record_modification("e", "one", "a", t(1));
  ledger.record_modification("e", "two", "a", t(2), ChangeType::merge);
  auto chain = ledger.provenance_chain("e");
  ASSERT_EQ(chain.size(), 3u);
  EXPECT_EQ(chain[2].change_type, ChangeType::merge);
  expect_chain_linked(chain);
  EXPECT_TRUE(ledger.provenance_chain("unknown").empty());
  EXPECT_EQ(ledger.entity_count(), 1u);
  EXPECT_EQ(ledger.snapshot_count(), 3u);
}

TEST(Ledger, JsonlRoundTrip) {
  ProvenanceLedger ledger;
  ledger.record_creation("10.1/a", "file:x \"quoted\"", "a", t(0));
  ledger.record_modification("10.1/a", "line\nbreak", "b", t(3));
  ledger.record_creation("oci:020010036013910-020010036013911", "file:x", "a", t(0));
  std::ostringstream out;
  ledger.write_jsonl(out);
  std::istringstream in(out.str());
  auto back = ProvenanceLedger::read_jsonl(in);
  EXPECT_EQ(back.provenance_chain("10.1/a"), ledger.provenance_chain("10.1/a"));
  EXPECT_EQ(back.snapshot_count(), 3u);
  std::ostringstream again;
  back.write_jsonl(again);
  EXPECT_EQ(again.str(), out.str());
}

TEST(Ledger, SnapshotLineHasExactFields) {
  ProvenanceLedger ledger;
  auto s = ledger.record_creation("e", "src", "a", t(0));
  EXPECT_EQ(snapshot_jsonl(s),
            "{\"entity_id\":\"e\",\"snapshot_number\":1,\"generated_at\":\"2022-03-01T00:00:00Z\","
            "\"invalidated_at\":null,\"agent\":\"a\",\"source\":\"src\",\"change_type\":\"creation\","
            "\"description\":\"created\"}");
  EXPECT_EQ(parse_snapshot_jsonl(snapshot_jsonl(s)), s);
}

TEST(Ledger, ReadRejectsBrokenChains) {
  ProvenanceLedger ledger;
  ledger.record_creation("e", "src", "a", t(0));
  ledger.record_modification("e", "m", "a", t(3));
  std::ostringstream out;
  ledger.write_jsonl(out);
  std::string text = out.str();
  // Drop the first line: chain starts at snapshot 2.
  std::istringstream missing(text.substr(text.find('\n') + 1));
  EXPECT_EQ(error_code_of([&] { ProvenanceLedger::read_jsonl(missing); }), ErrorCode::MalformedRecord);
  std::istringstream garbage("not json\n");
  EXPECT_EQ(error_code_of([&] { ProvenanceLedger::read_jsonl(garbage); }), ErrorCode::MalformedRecord);
}

TEST(Ledger, IndexCoverage) {
  auto idx = index_from_text(std::string(kTwoRecordCorpus) + "{\"doi\":\"10.1/b\",\"title\":\"again\"}\n");
  ProvenanceLedger ledger;
  record_index_provenance(ledger, idx, "file:two.jsonl", "ocix", t(0));
  EXPECT_TRUE(ledger.contains("10.1/a"));
  EXPECT_TRUE(ledger.contains("oci:020010036013910-020010036013911"));
  auto b = ledger.provenance_chain("10.1/b");
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[1].change_type, ChangeType::merge);
  for (const auto& e : ledger.entities()) expect_chain_linked(ledger.provenance_chain(e));
}
