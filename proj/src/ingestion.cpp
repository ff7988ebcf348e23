#include "ocix/ingestion.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <future>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "ocix/error.hpp"

namespace ocix {
namespace {

using json = nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view strip_prefix_ci(std::string_view s, std::initializer_list<std::string_view> prefixes) {
  for (auto p : prefixes) {
    if (s.size() < p.size()) continue;
    bool match = true;
    for (std::size_t i = 0; i < p.size() && match; ++i)
      match = std::tolower(static_cast<unsigned char>(s[i])) == p[i];
    if (match) return s.substr(p.size());
  }
  return s;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

[[noreturn]] void malformed(const std::string& why) { throw Error(ErrorCode::MalformedRecord, why); }

const json* field(const json& obj, const char* name) {
  auto it = obj.find(name);
  if (it == obj.end() || it->is_null()) return nullptr;
  return &*it;
}

const std::string* string_field(const json& obj, const char* name) {
  const json* v = field(obj, name);
  if (!v) return nullptr;
  if (!v->is_string()) malformed(std::string("field \"") + name + "\" must be a string");
  return v->get_ptr<const std::string*>();
}

template <class Fn>
void for_each_string(const json& obj, const char* name, Fn&& fn) {
  const json* v = field(obj, name);
  if (!v) return;
  if (!v->is_array()) malformed(std::string("field \"") + name + "\" must be an array");
  for (const auto& item : *v) {
    if (!item.is_string()) malformed(std::string("field \"") + name + "\" must contain only strings");
    fn(item.get_ref<const std::string&>());
  }
}

template <class Normalize>
void collect_ids(const json& obj, const char* name, std::set<std::string>& into, std::size_t& invalid, Normalize norm) {
  for_each_string(obj, name, [&](const std::string& raw) {
    if (auto v = norm(raw))
      into.insert(std::move(*v));
    else
      ++invalid;
  });
}

void merge_sorted_unique(std::vector<Interner::Id>& into, std::span<const Interner::Id> add) {
  if (add.empty()) return;
  std::vector<Interner::Id> out;
  out.reserve(into.size() + add.size());
  std::set_union(into.begin(), into.end(), add.begin(), add.end(), std::back_inserter(out));
  into.swap(out);
}

}  // namespace

std::optional<std::string> normalize_orcid(std::string_view raw) {
  auto s = strip_prefix_ci(trim(raw), {"https://orcid.org/", "http://orcid.org/"});
  if (s.size() != 19) return std::nullopt;
  std::string out(s);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i == 4 || i == 9 || i == 14) {
      if (out[i] != '-') return std::nullopt;
    } else if (i == 18 && (out[i] == 'x' || out[i] == 'X')) {
      out[i] = 'X';
    } else if (!is_digit(out[i])) {
      return std::nullopt;
    }
  }
  return out;
}

std::optional<std::string> normalize_issn(std::string_view raw) {
  auto s = trim(raw);
  if (s.size() != 9 || s[4] != '-') return std::nullopt;
  std::string out(s);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i == 4) continue;
    if (i == 8 && (out[i] == 'x' || out[i] == 'X')) {
      out[i] = 'X';
    } else if (!is_digit(out[i])) {
      return std::nullopt;
    }
  }
  return out;
}

std::optional<std::string> normalize_ror(std::string_view raw) {
  auto s = strip_prefix_ci(trim(raw), {"https://ror.org/", "http://ror.org/"});
  if (s.size() != 9 || s[0] != '0') return std::nullopt;
  std::string out(s);
  for (auto& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (!std::isalnum(static_cast<unsigned char>(c))) return std::nullopt;
  }
  if (!is_digit(out[7]) || !is_digit(out[8])) return std::nullopt;
  return out;
}

ParsedRecord parse_record(std::string_view line) {
  json obj = json::parse(line.begin(), line.end(), nullptr, /*allow_exceptions=*/false);
  if (obj.is_discarded()) malformed("not valid JSON");
  if (!obj.is_object()) malformed("record must be a JSON object");

  const std::string* doi_raw = string_field(obj, "doi");
  if (!doi_raw) malformed("missing required field \"doi\"");

  ParsedRecord out{BibResource{normalize_doi(*doi_raw), {}, {}, {}, {}, {}, {}, {}}, {}};
  auto& r = out.resource;
  auto& issues = out.issues;

  if (auto* t = string_field(obj, "title"); t && !t->empty()) r.title = *t;
  if (auto* d = string_field(obj, "date"); d && !d->empty()) {
    try {
      r.pub_date = parse_partial_date(*d);
    } catch (const Error&) {
      issues.invalid_date = true;
    }
  }
  collect_ids(obj, "orcids", r.author_orcids, issues.invalid_identifiers, normalize_orcid);
  collect_ids(obj, "issns", r.issns, issues.invalid_identifiers, normalize_issn);
  collect_ids(obj, "rors", r.ror_ids, issues.invalid_identifiers, normalize_ror);
  for_each_string(obj, "authors", [&](const std::string& name) {
    if (!name.empty()) r.author_names.push_back(name);
  });
  for_each_string(obj, "references", [&](const std::string& raw) {
    std::optional<Doi> ref;
    try {
      ref = normalize_doi(raw);
    } catch (const Error&) {
      ++issues.invalid_references;
      return;
    }
    if (*ref == r.doi) {
      ++issues.self_references;
    } else if (std::find(r.references.begin(), r.references.end(), *ref) != r.references.end()) {
      ++issues.duplicate_references;
    } else {
      r.references.push_back(std::move(*ref));
    }
  });
  return out;
}

void IngestReport::note(const std::string& category, std::size_t line) {
  auto& s = samples[category];
  if (s.size() < kMaxSamples) s.push_back(line);
}

void IngestReport::add(const IngestReport& o, std::size_t line_offset) {
  lines_read += o.lines_read;
  malformed_lines += o.malformed_lines;
  invalid_dois += o.invalid_dois;
  merged_records += o.merged_records;
  scalar_conflicts += o.scalar_conflicts;
  duplicate_references_dropped += o.duplicate_references_dropped;
  self_references_dropped += o.self_references_dropped;
  invalid_references_dropped += o.invalid_references_dropped;
  invalid_identifiers_dropped += o.invalid_identifiers_dropped;
  invalid_dates_dropped += o.invalid_dates_dropped;
  for (const auto& [category, lines] : o.samples)
    for (auto l : lines) note(category, l + line_offset);
}

ResourceStore::Id ResourceStore::intern_doi(std::string_view doi) {
  Id id = dois_.intern(doi);
  if (id >= position_.size()) position_.resize(id + 1, kNone);
  return id;
}

void ResourceStore::merge_set(std::vector<Id>& into, const std::set<std::string>& values) {
  if (values.empty()) return;
  std::vector<Id> ids;
  ids.reserve(values.size());
  for (const auto& v : values) ids.push_back(tokens_.intern(v));
  std::sort(ids.begin(), ids.end());
  merge_sorted_unique(into, ids);
}

ResourceStore::Upsert ResourceStore::upsert(const BibResource& r) {
  Id doi = intern_doi(r.doi.str());
  bool merged = position_[doi] != kNone;
  if (!merged) {
    position_[doi] = static_cast<Id>(entries_.size());
    entries_.emplace_back().doi = doi;
  }
  Entry& e = entries_[position_[doi]];
  if (merged) ++e.merges;

  bool conflict = false;
  if (r.title) {
    Id t = texts_.intern(*r.title);
    conflict |= e.title != kNone && e.title != t;
    e.title = t;
  }
  if (r.pub_date) {
    conflict |= e.date && *e.date != *r.pub_date;
    e.date = r.pub_date;
  }
  if (!r.author_names.empty()) {
    std::vector<Id> names;
    for (const auto& n : r.author_names) names.push_back(texts_.intern(n));
    conflict |= !e.names.empty() && e.names != names;
    e.names.swap(names);
  }
  merge_set(e.orcids, r.author_orcids);
  merge_set(e.issns, r.issns);
  merge_set(e.rors, r.ror_ids);

  for (const auto& ref : r.references) {
    Id id = intern_doi(ref.str());
    if (id == doi) continue;
    if (std::find(e.refs.begin(), e.refs.end(), id) == e.refs.end()) e.refs.push_back(id);
  }
  return {merged, conflict};
}

ResourceStore ResourceStore::from_resources(std::span<const BibResource> resources) {
  ResourceStore store;
  for (const auto& r : resources)
    if (store.upsert(r).merged) throw Error(ErrorCode::DuplicateResourceDoi, r.doi.str());
  return store;
}

std::optional<std::size_t> ResourceStore::find(std::string_view doi) const {
  auto id = dois_.find(doi);
  if (!id) return std::nullopt;
  return position_of(*id);
}

BibResource ResourceStore::resource(std::size_t i) const {
  const Entry& e = entries_[i];
  BibResource r{Doi::parse(dois_.view(e.doi)), {}, e.date, {}, {}, {}, {}, {}};
  if (e.title != kNone) r.title = std::string(texts_.view(e.title));
  for (Id n : e.names) r.author_names.emplace_back(texts_.view(n));
  for (Id t : e.orcids) r.author_orcids.emplace(tokens_.view(t));
  for (Id t : e.issns) r.issns.emplace(tokens_.view(t));
  for (Id t : e.rors) r.ror_ids.emplace(tokens_.view(t));
  r.references.reserve(e.refs.size());
  for (Id ref : e.refs) r.references.push_back(Doi::parse(dois_.view(ref)));
  return r;
}

std::vector<BibResource> ResourceStore::resources() const {
  std::vector<BibResource> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(resource(i));
  return out;
}

std::vector<ResourceStore::Upsert> ResourceStore::absorb(const ResourceStore& other) {
  std::vector<Upsert> out;
  out.reserve(other.size());
  for (std::size_t i = 0; i < other.size(); ++i) {
    out.push_back(upsert(other.resource(i)));
    // upsert counted the cross-shard merge; carry the shard's own merges too.
    entries_[*find(other.dois_.view(other.entries_[i].doi))].merges += other.entries_[i].merges;
  }
  return out;
}

bool Ingestor::consume_line(std::string_view line) {
  std::size_t n = ++report_.lines_read;
  std::optional<ParsedRecord> parsed;
  try {
    parsed = parse_record(line);
  } catch (const Error& e) {
    ++report_.malformed_lines;
    if (e.code() == ErrorCode::MalformedRecord) {
      report_.note("malformed", n);
    } else {
      ++report_.invalid_dois;
      report_.note("invalid_doi", n);
    }
    return false;
  }

  const auto& is = parsed->issues;
  if (is.duplicate_references) {
    report_.duplicate_references_dropped += is.duplicate_references;
    report_.note("duplicate_reference", n);
  }
  if (is.self_references) {
    report_.self_references_dropped += is.self_references;
    report_.note("self_reference", n);
  }
  if (is.invalid_references) {
    report_.invalid_references_dropped += is.invalid_references;
    report_.note("invalid_reference", n);
  }
  if (is.invalid_identifiers) {
    report_.invalid_identifiers_dropped += is.invalid_identifiers;
    report_.note("invalid_identifier", n);
  }
  if (is.invalid_date) {
    ++report_.invalid_dates_dropped;
    report_.note("invalid_date", n);
  }
  auto up = store_.upsert(parsed->resource);
  if (!up.merged) first_lines_.push_back(n);
  if (up.merged) {
    ++report_.merged_records;
    report_.note("merged", n);
  }
  if (up.conflict) {
    ++report_.scalar_conflicts;
    report_.note("scalar_conflict", n);
  }
  report_.resources_accepted = store_.size();
  return true;
}

void Ingestor::consume(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) consume_line(line);
  if (in.bad()) throw Error(ErrorCode::IoFailure, "read error after line " + std::to_string(report_.lines_read));
}

IngestResult Ingestor::finish() && {
  report_.resources_accepted = store_.size();
  return {std::move(store_), std::move(report_), std::move(first_lines_)};
}

IngestResult ingest_stream(std::istream& in) {
  Ingestor ingestor;
  ingestor.consume(in);
  return std::move(ingestor).finish();
}

IngestResult ingest_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  return ingest_stream(in);
}

IngestResult ingest_shards(std::span<const std::filesystem::path> shards) {
  std::vector<std::future<IngestResult>> jobs;
  jobs.reserve(shards.size());
  for (const auto& p : shards) jobs.push_back(std::async(std::launch::async, [p] { return ingest_file(p); }));

  IngestResult out;
  for (auto& job : jobs) {
    IngestResult part = job.get();
    std::size_t offset = out.report.lines_read;
    auto folded = out.store.absorb(part.store);
    out.report.add(part.report, offset);
    // A resource that already existed merges at the line where the shard
    // first saw it, as it would have in one sequential pass.
    for (std::size_t i = 0; i < folded.size(); ++i) {
      std::size_t line = offset + part.first_lines[i];
      if (folded[i].merged) {
        ++out.report.merged_records;
        out.report.samples["merged"].push_back(line);
      } else {
        out.first_lines.push_back(line);
      }
      if (folded[i].conflict) {
        ++out.report.scalar_conflicts;
        out.report.samples["scalar_conflict"].push_back(line);
      }
    }
    for (auto& [category, lines] : out.report.samples) {
      std::sort(lines.begin(), lines.end());
      if (lines.size() > IngestReport::kMaxSamples) lines.resize(IngestReport::kMaxSamples);
    }
  }
  out.report.resources_accepted = out.store.size();
  return out;
}

void write_resource_jsonl(std::ostream& out, const BibResource& r) {
  nlohmann::ordered_json j;
  j["doi"] = r.doi.str();
  if (r.title) j["title"] = *r.title;
  if (r.pub_date) j["date"] = r.pub_date->str();
  if (!r.author_orcids.empty()) j["orcids"] = r.author_orcids;
  if (!r.author_names.empty()) j["authors"] = r.author_names;
  if (!r.issns.empty()) j["issns"] = r.issns;
  if (!r.ror_ids.empty()) j["rors"] = r.ror_ids;
  if (!r.references.empty()) {
    auto& refs = j["references"] = nlohmann::ordered_json::array();
    for (const auto& d : r.references) refs.push_back(d.str());
  }
  out << j.dump() << '\n';
}

void write_store_jsonl(std::ostream& out, const ResourceStore& store) {
  for (std::size_t i = 0; i < store.size(); ++i) write_resource_jsonl(out, store.resource(i));
  if (!out) throw Error(ErrorCode::IoFailure, "write failed");
}

}  // namespace ocix
