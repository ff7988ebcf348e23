#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ocix/dates.hpp"
#include "ocix/identifiers.hpp"
#include "ocix/ingestion.hpp"

namespace ocix {

enum class SelfCitation : std::uint8_t { author = 1, journal = 2, institutional = 4 };

std::string_view self_citation_name(SelfCitation c) noexcept;

// Small bit set over the three self-citation classes.
class SelfCitationSet {
 public:
  constexpr SelfCitationSet() = default;
  constexpr explicit SelfCitationSet(std::uint8_t bits) : bits_(bits & 7) {}
  constexpr SelfCitationSet(std::initializer_list<SelfCitation> cs) {
    for (auto c : cs) insert(c);
  }

  constexpr void insert(SelfCitation c) { bits_ |= static_cast<std::uint8_t>(c); }
  constexpr bool contains(SelfCitation c) const { return bits_ & static_cast<std::uint8_t>(c); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return (bits_ & 1) + ((bits_ >> 1) & 1) + ((bits_ >> 2) & 1); }
  constexpr std::uint8_t bits() const { return bits_; }

  friend constexpr bool operator==(SelfCitationSet, SelfCitationSet) = default;

 private:
  std::uint8_t bits_ = 0;
};

inline constexpr SelfCitation kAllSelfCitations[] = {SelfCitation::author, SelfCitation::journal,
                                                     SelfCitation::institutional};

// Shared ORCID -> author, shared ISSN -> journal, shared ROR -> institutional.
SelfCitationSet classify_self_citation(const BibResource& citing, const BibResource& cited);

// A citation as a first-class entity.
struct CitationRecord {
  Oci oci;
  Doi citing;
  Doi cited;
  std::optional<PartialDate> creation;
  std::optional<TimeSpan> timespan;
  SelfCitationSet self_citation;
  bool dangling_cited = false;

  friend bool operator==(const CitationRecord&, const CitationRecord&) = default;
};

struct BuildReport {
  std::size_t resources = 0;
  std::size_t citations = 0;
  std::size_t dangling_citations = 0;
  std::size_t self_references_skipped = 0;  // 0 for ingested stores
};

// Immutable DOI-to-DOI citation index. Citations are stored as compact
// edges over interned DOI ids; CitationRecord values are produced on demand.
class CitationIndex {
 public:
  using Id = Interner::Id;

  struct Edge {
    Id citing;
    Id cited;
    std::uint8_t flags;  // SelfCitationSet bits | kDangling
  };
  static constexpr std::uint8_t kDangling = 0x80;

  // Throws DuplicateResourceDoi if two resources share a DOI.
  static CitationIndex build(std::span<const BibResource> resources);
  static CitationIndex build(ResourceStore store);

  std::size_t size() const noexcept { return edges_.size(); }
  const ResourceStore& resources() const noexcept { return store_; }
  const BuildReport& build_report() const noexcept { return report_; }

  // Incoming citations, sorted by citing DOI.
  std::vector<CitationRecord> lookup_citations(const Doi& doi) const;
  // Outgoing citations, sorted by cited DOI.
  std::vector<CitationRecord> lookup_references(const Doi& doi) const;
  std::size_t citation_count(const Doi& doi) const;
  std::size_t reference_count(const Doi& doi) const;
  // Throws UnknownOci when the identifier is well-formed but not indexed.
  CitationRecord lookup_by_oci(const Oci& oci) const;
  CitationRecord lookup_by_oci(std::string_view oci) const;
  bool contains(const Doi& citing, const Doi& cited) const;

  // Edges in outgoing order (citing DOI, then cited DOI).
  std::span<const Edge> edges() const noexcept { return edges_; }
  // Edge positions ordered by OCI string.
  std::span<const std::uint32_t> oci_order() const noexcept { return oci_order_; }
  CitationRecord record(std::size_t edge) const;
  std::string_view doi_view(Id id) const noexcept { return store_.dois().view(id); }

 private:
  explicit CitationIndex(ResourceStore store) : store_(std::move(store)) {}

  struct Range {
    std::uint32_t begin = 0, end = 0;
  };
  Range outgoing_range(const Doi& doi) const;
  Range incoming_range(const Doi& doi) const;
  std::optional<std::size_t> find_edge(Id citing, Id cited) const;

  ResourceStore store_;
  BuildReport report_;
  std::vector<std::uint32_t> lex_rank_;     // DOI id -> rank in string order
  std::vector<Edge> edges_;                 // outgoing order
  std::vector<std::uint32_t> out_offset_;   // lex rank -> first outgoing edge
  std::vector<std::uint32_t> in_order_;     // edge positions sorted by (cited, citing)
  std::vector<std::uint32_t> in_offset_;    // lex rank -> first position in in_order_
  std::vector<std::uint32_t> oci_order_;
};

inline CitationIndex build_index(std::span<const BibResource> resources) { return CitationIndex::build(resources); }
inline CitationIndex build_index(ResourceStore store) { return CitationIndex::build(std::move(store)); }

inline constexpr std::string_view kCsvHeader = "oci,citing,cited,creation,timespan,author_sc,journal_sc,institutional_sc";

// RFC 4180 field: quoted only when it contains a comma, quote, CR or LF.
void append_csv_field(std::string& out, std::string_view field);
std::string csv_row(const CitationRecord& r);
// Header plus one row per citation in OCI order. Returns the row count.
std::size_t write_csv(std::ostream& out, const CitationIndex& index);

}  // namespace ocix
