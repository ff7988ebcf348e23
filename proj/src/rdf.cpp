#include "ocix/rdf.hpp"

#include <algorithm>
#include <ostream>
#include <tuple>

#include "ocix/error.hpp"

namespace ocix::rdf {
namespace {

std::string cito(std::string_view local) { return std::string(kCito) + std::string(local); }
std::string xsd(std::string_view local) { return std::string(kXsd) + std::string(local); }

std::string_view date_datatype(Precision p) {
  switch (p) {
    case Precision::year: return "gYear";
    case Precision::month: return "gYearMonth";
    case Precision::day: return "date";
  }
  return "date";
}

}  // namespace

bool operator<(const Triple& a, const Triple& b) {
  return std::tie(a.subject, a.predicate, a.object.value, a.object.datatype) <
         std::tie(b.subject, b.predicate, b.object.value, b.object.datatype);
}

std::string citation_iri(const Oci& oci) { return std::string(kCitationBase) + oci.local_part(); }
std::string doi_iri(const Doi& doi) { return std::string(kDoiBase) + doi.str(); }

std::string escape_literal(std::string_view lexical) {
  std::string out;
  out.reserve(lexical.size());
  for (char c : lexical) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default: out += c;
    }
  }
  return out;
}

std::string ntriples_line(const Triple& t) {
  std::string line;
  line.reserve(t.subject.size() + t.predicate.size() + t.object.value.size() + t.object.datatype.size() + 16);
  line += '<';
  line += t.subject;
  line += "> <";
  line += t.predicate;
  line += "> ";
  if (t.object.kind == Term::Kind::iri) {
    line += '<';
    line += t.object.value;
    line += '>';
  } else {
    line += '"';
    line += escape_literal(t.object.value);
    line += "\"^^<";
    line += t.object.datatype;
    line += '>';
  }
  line += " .";
  return line;
}

std::vector<Triple> citation_to_triples(const CitationRecord& r) {
  std::string s = citation_iri(r.oci);
  std::vector<Triple> out;
  out.reserve(8);
  out.push_back({s, std::string(kRdfType), Term::iri(cito("Citation"))});
  if (r.self_citation.contains(SelfCitation::author))
    out.push_back({s, std::string(kRdfType), Term::iri(cito("AuthorSelfCitation"))});
  if (r.self_citation.contains(SelfCitation::journal))
    out.push_back({s, std::string(kRdfType), Term::iri(cito("JournalSelfCitation"))});
  if (r.self_citation.contains(SelfCitation::institutional))
    out.push_back({s, std::string(kRdfType), Term::iri(std::string(kInstitutionalSelfCitation))});
  out.push_back({s, cito("hasCitingEntity"), Term::iri(doi_iri(r.citing))});
  out.push_back({s, cito("hasCitedEntity"), Term::iri(doi_iri(r.cited))});
  if (r.creation)
    out.push_back({s, cito("hasCitationCreationDate"),
                   Term::literal(r.creation->str(), xsd(date_datatype(r.creation->precision())))});
  if (r.timespan) out.push_back({s, cito("hasCitationTimeSpan"), Term::literal(r.timespan->str(), xsd("duration"))});
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t serialize_ntriples(const CitationIndex& index, std::ostream& sink) {
  // Citation IRIs share one prefix followed by the OCI local part, so OCI
  // order is subject order and each citation's triples can be emitted as a
  // sorted block.
  std::size_t count = 0;
  std::string buf;
  buf.reserve(1 << 20);
  for (auto e : index.oci_order()) {
    for (const auto& t : citation_to_triples(index.record(e))) {
      buf += ntriples_line(t);
      buf += '\n';
      ++count;
    }
    if (buf.size() > (1 << 20) - 4096) {
      sink.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  sink.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!sink) throw Error(ErrorCode::IoFailure, "N-Triples write failed");
  return count;
}

}  // namespace ocix::rdf
