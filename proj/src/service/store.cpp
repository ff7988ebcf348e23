#include "ocix/service/store.hpp"

#include <fstream>

#include <json.hpp>

#include "ocix/error.hpp"

namespace ocix::service {
namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + p.string());
  return out;
}

void save_ledger(const IndexDirectory& dir, const ProvenanceLedger& ledger) {
  auto tmp = dir.provenance();
  tmp += ".tmp";
  {
    auto out = open_out(tmp);
    ledger.write_jsonl(out);
  }
  fs::rename(tmp, dir.provenance());
}

}  // namespace

std::string report_json(const IngestReport& r) {
  nlohmann::ordered_json j;
  j["lines_read"] = r.lines_read;
  j["resources_accepted"] = r.resources_accepted;
  j["malformed_lines"] = r.malformed_lines;
  j["invalid_dois"] = r.invalid_dois;
  j["merged_records"] = r.merged_records;
  j["scalar_conflicts"] = r.scalar_conflicts;
  j["duplicate_references_dropped"] = r.duplicate_references_dropped;
  j["self_references_dropped"] = r.self_references_dropped;
  j["invalid_references_dropped"] = r.invalid_references_dropped;
  j["invalid_identifiers_dropped"] = r.invalid_identifiers_dropped;
  j["invalid_dates_dropped"] = r.invalid_dates_dropped;
  j["samples"] = r.samples;
  return j.dump(2);
}

ProvenanceLedger load_ledger(const IndexDirectory& dir) {
  if (!fs::exists(dir.provenance())) return {};
  std::ifstream in(dir.provenance(), std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot read " + dir.provenance().string());
  return ProvenanceLedger::read_jsonl(in);
}

IngestReport ingest_to_directory(const std::vector<fs::path>& inputs, const IndexDirectory& dir,
                                 const std::string& source, const Stamp& stamp) {
  IngestResult result = inputs.size() == 1 ? ingest_file(inputs.front()) : ingest_shards(inputs);

  fs::create_directories(dir.root);
  fs::remove(dir.manifest());
  {
    auto out = open_out(dir.resources());
    write_store_jsonl(out, result.store);
  }
  {
    auto out = open_out(dir.ingest_report());
    out << report_json(result.report) << '\n';
  }

  ProvenanceLedger ledger = load_ledger(dir);
  const auto& store = result.store;
  for (std::size_t i = 0; i < store.size(); ++i) {
    std::string doi(store.dois().view(store.doi_id(i)));
    if (ledger.contains(doi))
      ledger.record_modification(doi, "re-ingested from " + source, stamp.agent, stamp.at);
    else
      ledger.record_creation(doi, source, stamp.agent, stamp.at, "bibliographic resource ingested");
    for (std::uint32_t m = 0; m < store.merge_count(i); ++m)
      ledger.record_modification(doi, "merged a further record for the same DOI", stamp.agent, stamp.at,
                                 ChangeType::merge);
  }
  save_ledger(dir, ledger);
  return result.report;
}

BuildReport build_directory(const IndexDirectory& dir, const Stamp& stamp) {
  if (!fs::exists(dir.resources())) throw Error(ErrorCode::StaleIndex, "no resource store in " + dir.root.string());
  auto ingested = ingest_file(dir.resources());
  if (ingested.report.malformed_lines || ingested.report.merged_records)
    throw Error(ErrorCode::StaleIndex, "resource store " + dir.resources().string() + " is not normalized");
  auto index = build_index(std::move(ingested.store));

  ProvenanceLedger ledger = load_ledger(dir);
  const std::string source = "file:" + dir.resources().string();
  const auto& store = index.resources();
  for (std::size_t i = 0; i < store.size(); ++i) {
    std::string doi(store.dois().view(store.doi_id(i)));
    if (!ledger.contains(doi)) ledger.record_creation(doi, source, stamp.agent, stamp.at, "bibliographic resource ingested");
  }
  for (auto e : index.oci_order()) {
    const auto& edge = index.edges()[e];
    std::string oci;
    append_oci(oci, index.doi_view(edge.citing), index.doi_view(edge.cited));
    if (!ledger.contains(oci)) ledger.record_creation(oci, source, stamp.agent, stamp.at, "citation indexed");
  }
  save_ledger(dir, ledger);

  const auto& report = index.build_report();
  nlohmann::ordered_json m;
  m["format"] = kIndexFormat;
  m["license"] = kLicense;
  m["resources"] = report.resources;
  m["citations"] = report.citations;
  m["dangling_citations"] = report.dangling_citations;
  m["built_at"] = format_timestamp(stamp.at);
  m["agent"] = stamp.agent;
  auto out = open_out(dir.manifest());
  out << m.dump(2) << '\n';
  return report;
}

CitationIndex load_index(const IndexDirectory& dir) {
  if (!fs::exists(dir.manifest())) throw Error(ErrorCode::StaleIndex, dir.root.string() + " has not been built");
  nlohmann::json manifest;
  {
    std::ifstream in(dir.manifest());
    manifest = nlohmann::json::parse(in, nullptr, false);
  }
  if (manifest.is_discarded() || manifest.value("format", "") != kIndexFormat)
    throw Error(ErrorCode::StaleIndex, "unrecognised manifest in " + dir.root.string());

  // The store is the persisted form; the index over it is rebuilt
  // deterministically and checked against the manifest.
  auto index = build_index(ingest_file(dir.resources()).store);
  if (manifest.value("citations", std::size_t{0}) != index.size() ||
      manifest.value("resources", std::size_t{0}) != index.resources().size())
    throw Error(ErrorCode::StaleIndex, "resource store no longer matches manifest in " + dir.root.string());
  return index;
}

}  // namespace ocix::service
