#include "ocix/provenance.hpp"

#include <cstdio>
#include <istream>
#include <mutex>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "ocix/error.hpp"
#include "ocix/index.hpp"

namespace ocix {
namespace {

using namespace std::chrono;

ChangeType parse_change_type(std::string_view s) {
  if (s == "creation") return ChangeType::creation;
  if (s == "modification") return ChangeType::modification;
  if (s == "merge") return ChangeType::merge;
  throw Error(ErrorCode::MalformedRecord, "unknown change_type \"" + std::string(s) + "\"");
}

void check_append(const std::vector<ProvenanceSnapshot>& chain, const ProvenanceSnapshot& next) {
  const auto& last = chain.back();
  if (next.generated_at < last.generated_at)
    throw Error(ErrorCode::NonMonotonicTimestamp, next.entity_id + ": " + format_timestamp(next.generated_at) +
                                                      " precedes " + format_timestamp(last.generated_at));
}

}  // namespace

std::string format_timestamp(Timestamp t) {
  auto day = floor<days>(t);
  year_month_day ymd{day};
  hh_mm_ss hms{t - day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

Timestamp parse_timestamp(std::string_view text) {
  int y, mo, d, h, mi, s;
  char z;
  std::string str(text);
  if (text.size() != 20 || std::sscanf(str.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &y, &mo, &d, &h, &mi, &s, &z) != 7 ||
      z != 'Z' || text[4] != '-' || text[7] != '-' || text[10] != 'T')
    throw Error(ErrorCode::MalformedRecord, "bad timestamp \"" + str + "\"");
  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 59 || h < 0 || mi < 0 || s < 0)
    throw Error(ErrorCode::MalformedRecord, "bad timestamp \"" + str + "\"");
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{s};
}

std::string_view change_type_name(ChangeType t) noexcept {
  switch (t) {
    case ChangeType::creation: return "creation";
    case ChangeType::modification: return "modification";
    case ChangeType::merge: return "merge";
  }
  return "";
}

ProvenanceLedger::ProvenanceLedger(ProvenanceLedger&& other) noexcept {
  std::unique_lock lock(other.mutex_);
  chains_ = std::move(other.chains_);
}

ProvenanceLedger& ProvenanceLedger::operator=(ProvenanceLedger&& other) noexcept {
  if (this != &other) {
    std::scoped_lock lock(mutex_, other.mutex_);
    chains_ = std::move(other.chains_);
  }
  return *this;
}

ProvenanceSnapshot ProvenanceLedger::record_creation(const std::string& entity_id, const std::string& source,
                                                     const std::string& agent, Timestamp at, std::string description) {
  std::unique_lock lock(mutex_);
  auto [it, inserted] = chains_.try_emplace(entity_id);
  if (!inserted) throw Error(ErrorCode::AlreadyExists, entity_id);
  ProvenanceSnapshot s{entity_id, 1, at, std::nullopt, agent, source, ChangeType::creation, std::move(description)};
  it->second.push_back(s);
  return s;
}

ProvenanceSnapshot ProvenanceLedger::record_modification(const std::string& entity_id, const std::string& description,
                                                         const std::string& agent, Timestamp at, ChangeType type) {
  if (type == ChangeType::creation)
    throw std::invalid_argument("record_modification cannot append a creation snapshot");
  std::unique_lock lock(mutex_);
  auto it = chains_.find(entity_id);
  if (it == chains_.end()) throw Error(ErrorCode::UnknownEntity, entity_id);
  auto& chain = it->second;
  ProvenanceSnapshot s{entity_id, chain.back().snapshot_number + 1, at, std::nullopt, agent, chain.back().source,
                       type, description};
  check_append(chain, s);
  chain.back().invalidated_at = at;
  chain.push_back(s);
  return s;
}

std::vector<ProvenanceSnapshot> ProvenanceLedger::provenance_chain(const std::string& entity_id) const {
  std::shared_lock lock(mutex_);
  auto it = chains_.find(entity_id);
  if (it == chains_.end()) return {};
  return it->second;
}

bool ProvenanceLedger::contains(const std::string& entity_id) const {
  std::shared_lock lock(mutex_);
  return chains_.contains(entity_id);
}

std::size_t ProvenanceLedger::entity_count() const {
  std::shared_lock lock(mutex_);
  return chains_.size();
}

std::size_t ProvenanceLedger::snapshot_count() const {
  std::shared_lock lock(mutex_);
  std::size_t n = 0;
  for (const auto& [_, chain] : chains_) n += chain.size();
  return n;
}

std::vector<std::string> ProvenanceLedger::entities() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  out.reserve(chains_.size());
  for (const auto& [id, _] : chains_) out.push_back(id);
  return out;
}

std::string snapshot_jsonl(const ProvenanceSnapshot& s) {
  nlohmann::ordered_json j;
  j["entity_id"] = s.entity_id;
  j["snapshot_number"] = s.snapshot_number;
  j["generated_at"] = format_timestamp(s.generated_at);
  j["invalidated_at"] = s.invalidated_at ? nlohmann::ordered_json(format_timestamp(*s.invalidated_at)) : nullptr;
  j["agent"] = s.agent;
  j["source"] = s.source;
  j["change_type"] = change_type_name(s.change_type);
  j["description"] = s.description;
  return j.dump();
}

ProvenanceSnapshot parse_snapshot_jsonl(std::string_view line) {
  auto j = nlohmann::json::parse(line.begin(), line.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error(ErrorCode::MalformedRecord, "provenance line is not a JSON object");
  try {
    ProvenanceSnapshot s;
    s.entity_id = j.at("entity_id").get<std::string>();
    s.snapshot_number = j.at("snapshot_number").get<int>();
    s.generated_at = parse_timestamp(j.at("generated_at").get<std::string>());
    if (!j.at("invalidated_at").is_null()) s.invalidated_at = parse_timestamp(j.at("invalidated_at").get<std::string>());
    s.agent = j.at("agent").get<std::string>();
    s.source = j.at("source").get<std::string>();
    s.change_type = parse_change_type(j.at("change_type").get<std::string>());
    s.description = j.at("description").get<std::string>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedRecord, std::string("provenance line: ") + e.what());
  }
}

void ProvenanceLedger::write_jsonl(std::ostream& out) const {
  std::shared_lock lock(mutex_);
  for (const auto& [_, chain] : chains_)
    for (const auto& s : chain) out << snapshot_jsonl(s) << '\n';
  if (!out) throw Error(ErrorCode::IoFailure, "provenance write failed");
}

ProvenanceLedger ProvenanceLedger::read_jsonl(std::istream& in) {
  ProvenanceLedger ledger;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    auto s = parse_snapshot_jsonl(line);
    auto& chain = ledger.chains_[s.entity_id];
    auto where = " (line " + std::to_string(n) + ")";
    if (chain.empty()) {
      if (s.snapshot_number != 1 || s.change_type != ChangeType::creation)
        throw Error(ErrorCode::MalformedRecord, s.entity_id + ": chain must open with creation snapshot 1" + where);
    } else {
      const auto& last = chain.back();
      if (s.snapshot_number != last.snapshot_number + 1 || s.change_type == ChangeType::creation)
        throw Error(ErrorCode::MalformedRecord, s.entity_id + ": snapshot numbers must be consecutive" + where);
      if (last.invalidated_at != s.generated_at)
        throw Error(ErrorCode::MalformedRecord, s.entity_id + ": invalidated_at must equal successor's generated_at" + where);
      check_append(chain, s);
    }
    chain.push_back(std::move(s));
  }
  if (in.bad()) throw Error(ErrorCode::IoFailure, "provenance read failed");
  for (const auto& [id, chain] : ledger.chains_)
    if (chain.back().invalidated_at)
      throw Error(ErrorCode::MalformedRecord, id + ": last snapshot must not be invalidated");
  return ledger;
}

void record_index_provenance(ProvenanceLedger& ledger, const CitationIndex& index, const std::string& source,
                             const std::string& agent, Timestamp at) {
  const auto& store = index.resources();
  for (std::size_t i = 0; i < store.size(); ++i) {
    std::string doi(store.dois().view(store.doi_id(i)));
    ledger.record_creation(doi, source, agent, at, "bibliographic resource ingested");
    for (std::uint32_t m = 0; m < store.merge_count(i); ++m)
      ledger.record_modification(doi, "merged a further record for the same DOI", agent, at, ChangeType::merge);
  }
  for (auto e : index.oci_order()) {
    const auto& edge = index.edges()[e];
    std::string oci;
    append_oci(oci, index.doi_view(edge.citing), index.doi_view(edge.cited));
    ledger.record_creation(oci, source, agent, at, "citation indexed");
  }
}

}  // namespace ocix
