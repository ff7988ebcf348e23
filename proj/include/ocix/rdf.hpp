#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ocix/index.hpp"

namespace ocix::rdf {

inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kCito = "http://purl.org/spar/cito/";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";

inline constexpr std::string_view kDoiBase = "https://doi.org/";
inline constexpr std::string_view kCitationBase = "https://w3id.org/oc/index/ci/";
// CiTO has no institutional self-citation class; this one is minted locally.
inline constexpr std::string_view kInstitutionalSelfCitation =
    "https://w3id.org/oc/index/ontology/InstitutionalSelfCitation";

struct Term {
  enum class Kind { iri, literal };
  Kind kind = Kind::iri;
  std::string value;     // IRI, or literal lexical form
  std::string datatype;  // literal only

  static Term iri(std::string v) { return {Kind::iri, std::move(v), {}}; }
  static Term literal(std::string lexical, std::string datatype) {
    return {Kind::literal, std::move(lexical), std::move(datatype)};
  }

  friend bool operator==(const Term&, const Term&) = default;
};

struct Triple {
  std::string subject;  // IRI
  std::string predicate;  // IRI
  Term object;

  // (subject, predicate, object) compared as term strings (IRI text or
  // literal lexical form, then datatype).
  friend bool operator<(const Triple& a, const Triple& b);
  friend bool operator==(const Triple&, const Triple&) = default;
};

std::string citation_iri(const Oci& oci);
std::string doi_iri(const Doi& doi);

// Escapes a literal lexical form per the N-Triples ECHAR rules.
std::string escape_literal(std::string_view lexical);
// "<s> <p> <o> ." without the trailing newline.
std::string ntriples_line(const Triple& t);

// rdf:type cito:Citation, one extra type per self-citation class, citing and
// cited entities, creation date and timespan when present. Sorted.
std::vector<Triple> citation_to_triples(const CitationRecord& record);

// Streams the whole index in (subject, predicate, object) order. Returns
// the number of triples written.
std::size_t serialize_ntriples(const CitationIndex& index, std::ostream& sink);

}  // namespace ocix::rdf
