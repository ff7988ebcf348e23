#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ocix/index.hpp"
#include "ocix/ingestion.hpp"
#include "ocix/provenance.hpp"

namespace ocix::service {

inline constexpr std::string_view kLicense = "CC0-1.0";
inline constexpr std::string_view kIndexFormat = "ocix-index/1";

// On-disk layout of an index directory:
//   resources.jsonl     normalized resource store, written by `ingest`
//   ingest_report.json  counters and samples from the last ingest
//   provenance.jsonl    snapshot ledger sidecar
//   manifest.json       written by `build`; marks the directory as built
struct IndexDirectory {
  std::filesystem::path root;

  std::filesystem::path resources() const { return root / "resources.jsonl"; }
  std::filesystem::path ingest_report() const { return root / "ingest_report.json"; }
  std::filesystem::path provenance() const { return root / "provenance.jsonl"; }
  std::filesystem::path manifest() const { return root / "manifest.json"; }
};

struct Stamp {
  std::string agent = "ocix";
  Timestamp at;
};

std::string report_json(const IngestReport& report);

// Ingests one or more dump files (sharded when more than one) into `dir`,
// replacing any previous store and invalidating any previous build.
IngestReport ingest_to_directory(const std::vector<std::filesystem::path>& inputs, const IndexDirectory& dir,
                                 const std::string& source, const Stamp& stamp);

// Builds the citation index from the stored resources, extends the
// provenance ledger with every new DOI and OCI, and writes the manifest.
BuildReport build_directory(const IndexDirectory& dir, const Stamp& stamp);

// Loads the immutable index of a built directory. Throws StaleIndex when
// the directory was never built or the store no longer matches the manifest.
CitationIndex load_index(const IndexDirectory& dir);

ProvenanceLedger load_ledger(const IndexDirectory& dir);

}  // namespace ocix::service
