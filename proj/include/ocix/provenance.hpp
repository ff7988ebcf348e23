#pragma once

#include <chrono>
#include <iosfwd>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

namespace ocix {

class CitationIndex;

// UTC, second resolution.
using Timestamp = std::chrono::sys_seconds;

// "2022-03-01T12:00:00Z"
std::string format_timestamp(Timestamp t);
// Accepts the RFC 3339 form produced by format_timestamp (UTC "Z" only).
Timestamp parse_timestamp(std::string_view text);

enum class ChangeType { creation, modification, merge };

std::string_view change_type_name(ChangeType t) noexcept;

struct ProvenanceSnapshot {
  std::string entity_id;
  int snapshot_number = 1;
  Timestamp generated_at;
  std::optional<Timestamp> invalidated_at;
  std::string agent;
  std::string source;
  ChangeType change_type = ChangeType::creation;
  std::string description;

  friend bool operator==(const ProvenanceSnapshot&, const ProvenanceSnapshot&) = default;
};

// Append-only per-entity snapshot chains. Single writer, many readers.
class ProvenanceLedger {
 public:
  ProvenanceLedger() = default;
  ProvenanceLedger(ProvenanceLedger&& other) noexcept;
  ProvenanceLedger& operator=(ProvenanceLedger&& other) noexcept;

  // Throws AlreadyExists.
  ProvenanceSnapshot record_creation(const std::string& entity_id, const std::string& source, const std::string& agent,
                                     Timestamp at, std::string description = "created");
  // Closes the current snapshot at `at` and opens the next one. Throws
  // UnknownEntity, NonMonotonicTimestamp. `type` may be modification or merge;
  // the new snapshot inherits the source of its predecessor.
  ProvenanceSnapshot record_modification(const std::string& entity_id, const std::string& description,
                                         const std::string& agent, Timestamp at,
                                         ChangeType type = ChangeType::modification);

  // Complete chain ordered by snapshot number; empty for unknown entities.
  std::vector<ProvenanceSnapshot> provenance_chain(const std::string& entity_id) const;

  bool contains(const std::string& entity_id) const;
  std::size_t entity_count() const;
  std::size_t snapshot_count() const;
  std::vector<std::string> entities() const;

  // One snapshot per line, entities in key order.
  void write_jsonl(std::ostream& out) const;
  // Rebuilds a ledger from a sidecar, re-validating every chain.
  static ProvenanceLedger read_jsonl(std::istream& in);

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::vector<ProvenanceSnapshot>, std::less<>> chains_;
};

std::string snapshot_jsonl(const ProvenanceSnapshot& s);
ProvenanceSnapshot parse_snapshot_jsonl(std::string_view line);

// Creation snapshots for every resource DOI (plus a merge snapshot per
// ingestion merge) and every citation OCI in the index.
void record_index_provenance(ProvenanceLedger& ledger, const CitationIndex& index, const std::string& source,
                             const std::string& agent, Timestamp at);

}  // namespace ocix
