#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ocix/index.hpp"

namespace ocix {

// Exact ratio kept as integers; rounding happens only when rendered.
struct Ratio {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;

  // Percentage in tenths, rounded half up: 1/3 -> 333 (33.3%).
  std::uint64_t percent_tenths() const noexcept;
  // "33.3"
  std::string percent_string() const;
  double value() const noexcept { return denominator ? double(numerator) / double(denominator) : 0.0; }

  friend bool operator==(const Ratio&, const Ratio&) = default;
};

struct CorpusStats {
  std::uint64_t citation_links = 0;
  std::uint64_t bibliographic_resources = 0;  // distinct DOIs that cite or are cited
  std::uint64_t dangling_citations = 0;
  std::uint64_t author_self_citations = 0;
  std::uint64_t journal_self_citations = 0;
  std::uint64_t institutional_self_citations = 0;
  Ratio timespan_coverage;  // citations with a timespan / citation_links

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

CorpusStats corpus_stats(const CitationIndex& index);

using DoiPair = std::pair<Doi, Doi>;

// Share of reference pairs present in the index. Throws EmptyReferenceSet.
// Duplicate pairs in the reference set are counted once.
Ratio coverage(const CitationIndex& index, const std::vector<DoiPair>& reference_set);

// CSV with header "citing,cited"; DOIs are normalized on load.
std::vector<DoiPair> read_reference_set(std::istream& in);
std::vector<DoiPair> read_reference_set(const std::filesystem::path& path);

}  // namespace ocix
