#include "ocix/metrics.hpp"

#include <algorithm>
#include <fstream>
#include <istream>

#include "ocix/error.hpp"

namespace ocix {

std::uint64_t Ratio::percent_tenths() const noexcept {
  if (denominator == 0) return 0;
  // round(1000 * n / d) with halves rounded up
  return (2000 * numerator + denominator) / (2 * denominator);
}

std::string Ratio::percent_string() const {
  auto t = percent_tenths();
  return std::to_string(t / 10) + "." + std::to_string(t % 10);
}

CorpusStats corpus_stats(const CitationIndex& index) {
  CorpusStats s;
  std::vector<bool> seen(index.resources().dois().size(), false);
  std::uint64_t with_timespan = 0;
  const auto& store = index.resources();
  for (const auto& e : index.edges()) {
    seen[e.citing] = true;
    seen[e.cited] = true;
    if (e.flags & CitationIndex::kDangling) {
      ++s.dangling_citations;
      continue;
    }
    SelfCitationSet sc(e.flags);
    s.author_self_citations += sc.contains(SelfCitation::author);
    s.journal_self_citations += sc.contains(SelfCitation::journal);
    s.institutional_self_citations += sc.contains(SelfCitation::institutional);
    if (store.pub_date(*store.position_of(e.citing)) && store.pub_date(*store.position_of(e.cited))) ++with_timespan;
  }
  s.citation_links = index.size();
  s.bibliographic_resources = static_cast<std::uint64_t>(std::count(seen.begin(), seen.end(), true));
  s.timespan_coverage = {with_timespan, s.citation_links ? s.citation_links : 1};
  return s;
}

Ratio coverage(const CitationIndex& index, const std::vector<DoiPair>& reference_set) {
  if (reference_set.empty()) throw Error(ErrorCode::EmptyReferenceSet, "coverage needs at least one reference pair");
  std::vector<DoiPair> pairs = reference_set;
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  std::uint64_t found = 0;
  for (const auto& [citing, cited] : pairs) found += index.contains(citing, cited);
  return {found, pairs.size()};
}

std::vector<DoiPair> read_reference_set(std::istream& in) {
  std::string line;
  std::size_t n = 0;
  std::vector<DoiPair> out;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (n == 1) {
      if (line != "citing,cited") throw Error(ErrorCode::MalformedRecord, "reference set header must be \"citing,cited\"");
      continue;
    }
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
      throw Error(ErrorCode::MalformedRecord, "reference set line " + std::to_string(n) + " must have two fields");
    out.emplace_back(normalize_doi(std::string_view(line).substr(0, comma)),
                     normalize_doi(std::string_view(line).substr(comma + 1)));
  }
  if (in.bad()) throw Error(ErrorCode::IoFailure, "reference set read failed");
  return out;
}

std::vector<DoiPair> read_reference_set(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  return read_reference_set(in);
}

}  // namespace ocix
