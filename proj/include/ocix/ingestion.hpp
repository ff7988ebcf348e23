#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ocix/dates.hpp"
#include "ocix/identifiers.hpp"
#include "ocix/interner.hpp"

namespace ocix {

// One bibliographic record as exchanged with callers. Inside the pipeline
// resources are held in a ResourceStore in interned form.
struct BibResource {
  Doi doi;
  std::optional<std::string> title;
  std::optional<PartialDate> pub_date;
  std::set<std::string> author_orcids;
  std::vector<std::string> author_names;
  std::set<std::string> issns;
  std::set<std::string> ror_ids;
  std::vector<Doi> references;  // unique, first-seen order, never the record's own DOI

  friend bool operator==(const BibResource&, const BibResource&) = default;
};

// Identifier hygiene for the author/venue/institution sets. Each returns
// the canonical form or nullopt when the shape is wrong.
std::optional<std::string> normalize_orcid(std::string_view raw);  // 0000-0000-0000-000X
std::optional<std::string> normalize_issn(std::string_view raw);   // NNNN-NNNC
std::optional<std::string> normalize_ror(std::string_view raw);    // 0xxxxxxNN

// Non-fatal problems found while parsing a single record.
struct RecordIssues {
  std::size_t duplicate_references = 0;
  std::size_t self_references = 0;
  std::size_t invalid_references = 0;
  std::size_t invalid_identifiers = 0;  // ORCID/ISSN/ROR strings of the wrong shape, dropped
  bool invalid_date = false;            // unparseable "date", dropped
};

struct ParsedRecord {
  BibResource resource;
  RecordIssues issues;
};

// Parses one JSON Lines record. Throws MalformedRecord when the line is not
// a JSON object of the expected shape, InvalidDoi/UnsupportedDoiCharacter
// when the record's own DOI is unusable.
ParsedRecord parse_record(std::string_view line);

struct IngestReport {
  static constexpr std::size_t kMaxSamples = 100;

  std::size_t lines_read = 0;
  std::size_t resources_accepted = 0;  // distinct DOIs retained
  std::size_t malformed_lines = 0;     // every rejected line, whatever the reason
  std::size_t invalid_dois = 0;        // rejected lines whose own DOI was unusable
  std::size_t merged_records = 0;      // accepted lines folded into an earlier DOI
  std::size_t scalar_conflicts = 0;    // merges that overwrote a differing title/date/authors
  std::size_t duplicate_references_dropped = 0;
  std::size_t self_references_dropped = 0;
  std::size_t invalid_references_dropped = 0;
  std::size_t invalid_identifiers_dropped = 0;
  std::size_t invalid_dates_dropped = 0;
  // Category -> first kMaxSamples offending 1-based line numbers.
  std::map<std::string, std::vector<std::size_t>> samples;

  void note(const std::string& category, std::size_t line);
  void add(const IngestReport& other, std::size_t line_offset);
};

// Interned, merge-capable resource table.
class ResourceStore {
 public:
  using Id = Interner::Id;
  static constexpr Id kNone = Interner::kNone;

  // Folds a record in: new DOI appends, known DOI merges (scalar fields
  // "last non-empty wins", set fields and references take the union).
  struct Upsert {
    bool merged = false;    // DOI already had a record
    bool conflict = false;  // a non-empty scalar field was overwritten by a different value
  };
  Upsert upsert(const BibResource& r);
  // Builds a store from unique-DOI resources; throws DuplicateResourceDoi.
  static ResourceStore from_resources(std::span<const BibResource> resources);

  std::size_t size() const noexcept { return entries_.size(); }
  const Interner& dois() const noexcept { return dois_; }
  const Interner& tokens() const noexcept { return tokens_; }

  // Resource position of a DOI id / DOI string, if that DOI has a record.
  std::optional<std::size_t> position_of(Id doi) const noexcept {
    if (doi >= position_.size() || position_[doi] == kNone) return std::nullopt;
    return position_[doi];
  }
  std::optional<std::size_t> find(std::string_view doi) const;

  Id doi_id(std::size_t i) const noexcept { return entries_[i].doi; }
  const std::optional<PartialDate>& pub_date(std::size_t i) const noexcept { return entries_[i].date; }
  std::span<const Id> references(std::size_t i) const noexcept { return entries_[i].refs; }
  // Sorted interned ids, suitable for merge-style intersection.
  std::span<const Id> orcids(std::size_t i) const noexcept { return entries_[i].orcids; }
  std::span<const Id> issns(std::size_t i) const noexcept { return entries_[i].issns; }
  std::span<const Id> rors(std::size_t i) const noexcept { return entries_[i].rors; }
  std::uint32_t merge_count(std::size_t i) const noexcept { return entries_[i].merges; }

  BibResource resource(std::size_t i) const;
  std::vector<BibResource> resources() const;

  // Appends everything from `other`, in its order, with the same merge rule.
  // Returns the outcome of each of `other`'s resources.
  std::vector<Upsert> absorb(const ResourceStore& other);

 private:
  struct Entry {
    Id doi = kNone;
    Id title = kNone;
    std::optional<PartialDate> date;
    std::vector<Id> names;
    std::vector<Id> orcids, issns, rors;
    std::vector<Id> refs;
    std::uint32_t merges = 0;
  };

  Id intern_doi(std::string_view doi);
  void merge_set(std::vector<Id>& into, const std::set<std::string>& values);

  Interner dois_;
  Interner tokens_;  // ORCIDs, ISSNs, ROR ids
  Interner texts_;   // titles and author names
  std::vector<Id> position_;
  std::vector<Entry> entries_;
};

struct IngestResult {
  ResourceStore store;
  IngestReport report;
  std::vector<std::size_t> first_lines;  // per store entry, line of its first record
};

// Streaming line consumer. Holds no per-line state beyond the current line.
class Ingestor {
 public:
  // Returns false when the line was rejected (and counted in the report).
  bool consume_line(std::string_view line);
  // Reads until EOF; throws IoFailure if the stream reports a read error.
  void consume(std::istream& in);

  const IngestReport& report() const noexcept { return report_; }
  const ResourceStore& store() const noexcept { return store_; }
  IngestResult finish() &&;

 private:
  ResourceStore store_;
  IngestReport report_;
  std::vector<std::size_t> first_lines_;
};

IngestResult ingest_stream(std::istream& in);
IngestResult ingest_file(const std::filesystem::path& path);
// Ingests shards concurrently and merges them in the order given, so the
// result equals ingesting the concatenation of the shards.
IngestResult ingest_shards(std::span<const std::filesystem::path> shards);

// Writes one normalized record per line in the input schema.
void write_resource_jsonl(std::ostream& out, const BibResource& r);
void write_store_jsonl(std::ostream& out, const ResourceStore& store);

}  // namespace ocix
