#include "ocix/index.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "ocix/error.hpp"

namespace ocix {
namespace {

using Id = Interner::Id;

bool intersects(std::span<const Id> a, std::span<const Id> b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j)
      ++i;
    else if (*j < *i)
      ++j;
    else
      return true;
  }
  return false;
}

template <class Set>
bool sets_intersect(const Set& a, const Set& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j)
      ++i;
    else if (*j < *i)
      ++j;
    else
      return true;
  }
  return false;
}

// Order of OCI digit strings: compare DOIs code by code, shorter prefix first.
bool codec_less(std::string_view a, std::string_view b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto ca = *oci_codec::code_of(a[i]);
    auto cb = *oci_codec::code_of(b[i]);
    if (ca != cb) return ca < cb;
  }
  return a.size() < b.size();
}

std::vector<std::uint32_t> ranks(const Interner& dict, bool (*less)(std::string_view, std::string_view)) {
  std::vector<Id> ids(dict.size());
  std::iota(ids.begin(), ids.end(), Id{0});
  std::sort(ids.begin(), ids.end(), [&](Id a, Id b) { return less(dict.view(a), dict.view(b)); });
  std::vector<std::uint32_t> rank(ids.size());
  for (std::uint32_t r = 0; r < ids.size(); ++r) rank[ids[r]] = r;
  return rank;
}

// Stable counting sort of `items` by key(item) in [0, buckets).
template <class Key>
std::vector<std::uint32_t> counting_sort(const std::vector<std::uint32_t>& items, std::size_t buckets, Key key,
                                         std::vector<std::uint32_t>* offsets = nullptr) {
  std::vector<std::uint32_t> count(buckets + 1, 0);
  for (auto it : items) ++count[key(it) + 1];
  std::partial_sum(count.begin(), count.end(), count.begin());
  if (offsets) *offsets = count;
  std::vector<std::uint32_t> out(items.size());
  for (auto it : items) out[count[key(it)]++] = it;
  return out;
}

}  // namespace

std::string_view self_citation_name(SelfCitation c) noexcept {
  switch (c) {
    case SelfCitation::author: return "author";
    case SelfCitation::journal: return "journal";
    case SelfCitation::institutional: return "institutional";
  }
  return "";
}

SelfCitationSet classify_self_citation(const BibResource& citing, const BibResource& cited) {
  SelfCitationSet s;
  if (sets_intersect(citing.author_orcids, cited.author_orcids)) s.insert(SelfCitation::author);
  if (sets_intersect(citing.issns, cited.issns)) s.insert(SelfCitation::journal);
  if (sets_intersect(citing.ror_ids, cited.ror_ids)) s.insert(SelfCitation::institutional);
  return s;
}

CitationIndex CitationIndex::build(std::span<const BibResource> resources) {
  return build(ResourceStore::from_resources(resources));
}

CitationIndex CitationIndex::build(ResourceStore store) {
  CitationIndex idx(std::move(store));
  const ResourceStore& rs = idx.store_;
  const Interner& dict = rs.dois();
  const std::size_t n = dict.size();

  idx.lex_rank_ = ranks(dict, [](std::string_view a, std::string_view b) { return a < b; });
  std::vector<Id> by_rank(n);
  for (Id id = 0; id < n; ++id) by_rank[idx.lex_rank_[id]] = id;

  std::size_t total_refs = 0;
  for (std::size_t i = 0; i < rs.size(); ++i) total_refs += rs.references(i).size();
  if (total_refs >= 0xffffffffu) throw std::length_error("too many citations for 32-bit edge ids");
  idx.edges_.reserve(total_refs);
  idx.out_offset_.resize(n + 1);

  std::vector<Id> refs;
  for (std::uint32_t r = 0; r < n; ++r) {
    idx.out_offset_[r] = static_cast<std::uint32_t>(idx.edges_.size());
    Id citing = by_rank[r];
    auto pos = rs.position_of(citing);
    if (!pos) continue;
    auto span = rs.references(*pos);
    refs.assign(span.begin(), span.end());
    std::sort(refs.begin(), refs.end(), [&](Id a, Id b) { return idx.lex_rank_[a] < idx.lex_rank_[b]; });
    refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
    for (Id cited : refs) {
      if (cited == citing) {
        ++idx.report_.self_references_skipped;
        continue;
      }
      std::uint8_t flags = 0;
      if (auto cpos = rs.position_of(cited)) {
        if (intersects(rs.orcids(*pos), rs.orcids(*cpos))) flags |= static_cast<std::uint8_t>(SelfCitation::author);
        if (intersects(rs.issns(*pos), rs.issns(*cpos))) flags |= static_cast<std::uint8_t>(SelfCitation::journal);
        if (intersects(rs.rors(*pos), rs.rors(*cpos))) flags |= static_cast<std::uint8_t>(SelfCitation::institutional);
      } else {
        flags = kDangling;
        ++idx.report_.dangling_citations;
      }
      idx.edges_.push_back({citing, cited, flags});
    }
  }
  idx.out_offset_[n] = static_cast<std::uint32_t>(idx.edges_.size());

  std::vector<std::uint32_t> positions(idx.edges_.size());
  std::iota(positions.begin(), positions.end(), 0u);
  // Outgoing order is already sorted by citing, so a stable sort by cited
  // yields (cited, citing) order.
  idx.in_order_ = counting_sort(
      positions, n, [&](std::uint32_t e) { return idx.lex_rank_[idx.edges_[e].cited]; }, &idx.in_offset_);

  auto codec_rank = ranks(dict, codec_less);
  auto by_cited = counting_sort(positions, n, [&](std::uint32_t e) { return codec_rank[idx.edges_[e].cited]; });
  idx.oci_order_ = counting_sort(by_cited, n, [&](std::uint32_t e) { return codec_rank[idx.edges_[e].citing]; });

  idx.report_.resources = rs.size();
  idx.report_.citations = idx.edges_.size();
  return idx;
}

CitationRecord CitationIndex::record(std::size_t e) const {
  const Edge& edge = edges_[e];
  auto citing = Doi::parse(doi_view(edge.citing));
  auto cited = Doi::parse(doi_view(edge.cited));
  auto oci = encode_oci(citing, cited);
  CitationRecord r{std::move(oci), std::move(citing), std::move(cited), {}, {}, {}, false};
  auto cpos = store_.position_of(edge.citing);
  r.creation = store_.pub_date(*cpos);
  r.dangling_cited = edge.flags & kDangling;
  if (!r.dangling_cited) {
    r.self_citation = SelfCitationSet(edge.flags);
    const auto& cited_date = store_.pub_date(*store_.position_of(edge.cited));
    if (r.creation && cited_date) r.timespan = compute_timespan(*r.creation, *cited_date);
  }
  return r;
}

CitationIndex::Range CitationIndex::outgoing_range(const Doi& doi) const {
  auto id = store_.dois().find(doi.str());
  if (!id) return {};
  auto r = lex_rank_[*id];
  return {out_offset_[r], out_offset_[r + 1]};
}

CitationIndex::Range CitationIndex::incoming_range(const Doi& doi) const {
  auto id = store_.dois().find(doi.str());
  if (!id) return {};
  auto r = lex_rank_[*id];
  return {in_offset_[r], in_offset_[r + 1]};
}

std::vector<CitationRecord> CitationIndex::lookup_citations(const Doi& doi) const {
  auto [b, e] = incoming_range(doi);
  std::vector<CitationRecord> out;
  out.reserve(e - b);
  for (auto i = b; i < e; ++i) out.push_back(record(in_order_[i]));
  return out;
}

std::vector<CitationRecord> CitationIndex::lookup_references(const Doi& doi) const {
  auto [b, e] = outgoing_range(doi);
  std::vector<CitationRecord> out;
  out.reserve(e - b);
  for (auto i = b; i < e; ++i) out.push_back(record(i));
  return out;
}

std::size_t CitationIndex::citation_count(const Doi& doi) const {
  auto [b, e] = incoming_range(doi);
  return e - b;
}

std::size_t CitationIndex::reference_count(const Doi& doi) const {
  auto [b, e] = outgoing_range(doi);
  return e - b;
}

std::optional<std::size_t> CitationIndex::find_edge(Id citing, Id cited) const {
  auto r = lex_rank_[citing];
  auto first = edges_.begin() + out_offset_[r];
  auto last = edges_.begin() + out_offset_[r + 1];
  auto key = lex_rank_[cited];
  auto it = std::lower_bound(first, last, key, [&](const Edge& e, std::uint32_t k) { return lex_rank_[e.cited] < k; });
  if (it == last || it->cited != cited) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

bool CitationIndex::contains(const Doi& citing, const Doi& cited) const {
  auto a = store_.dois().find(citing.str());
  auto b = store_.dois().find(cited.str());
  return a && b && find_edge(*a, *b).has_value();
}

CitationRecord CitationIndex::lookup_by_oci(const Oci& oci) const { return lookup_by_oci(oci.str()); }

CitationRecord CitationIndex::lookup_by_oci(std::string_view oci) const {
  auto [citing, cited] = decode_oci(oci);
  auto a = store_.dois().find(citing.str());
  auto b = store_.dois().find(cited.str());
  std::optional<std::size_t> e;
  if (a && b) e = find_edge(*a, *b);
  if (!e) throw Error(ErrorCode::UnknownOci, std::string(oci));
  return record(*e);
}

void append_csv_field(std::string& out, std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    out += field;
    return;
  }
  out += '"';
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

std::string csv_row(const CitationRecord& r) {
  std::string row;
  append_csv_field(row, r.oci.str());
  row += ',';
  append_csv_field(row, r.citing.str());
  row += ',';
  append_csv_field(row, r.cited.str());
  row += ',';
  if (r.creation) append_csv_field(row, r.creation->str());
  row += ',';
  if (r.timespan) append_csv_field(row, r.timespan->str());
  for (auto c : kAllSelfCitations) {
    row += ',';
    row += r.self_citation.contains(c) ? "yes" : "no";
  }
  return row;
}

std::size_t write_csv(std::ostream& out, const CitationIndex& index) {
  std::string buf;
  buf.reserve(1 << 20);
  buf += kCsvHeader;
  buf += '\n';
  for (auto e : index.oci_order()) {
    buf += csv_row(index.record(e));
    buf += '\n';
    if (buf.size() > (1 << 20) - 512) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw Error(ErrorCode::IoFailure, "CSV write failed");
  return index.size();
}

}  // namespace ocix
