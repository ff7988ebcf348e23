#include "ocix/service/api.hpp"

#include <json.hpp>

#include "ocix/error.hpp"
#include "ocix/service/store.hpp"

namespace ocix::service {
namespace {

using ojson = nlohmann::ordered_json;

ojson record_object(const CitationRecord& r) {
  ojson j;
  j["oci"] = r.oci.str();
  j["citing"] = r.citing.str();
  j["cited"] = r.cited.str();
  j["creation"] = r.creation ? ojson(r.creation->str()) : ojson(nullptr);
  j["timespan"] = r.timespan ? ojson(r.timespan->str()) : ojson(nullptr);
  auto& sc = j["self_citation"] = ojson::array();
  for (auto c : kAllSelfCitations)
    if (r.self_citation.contains(c)) sc.push_back(self_citation_name(c));
  j["dangling_cited"] = r.dangling_cited;
  return j;
}

Response json_response(int status, std::string body) { return {status, "application/json", std::move(body)}; }

Response error_response(std::string_view name) { return json_response(404, error_json(name)); }

}  // namespace

std::string license_comment() { return "# license: " + std::string(kLicense) + "\n"; }

std::string record_json(const CitationRecord& r) {
  auto j = record_object(r);
  j["license"] = kLicense;
  return j.dump();
}

std::string records_body(std::string_view doi, const std::vector<CitationRecord>& records, Format format) {
  if (format == Format::csv) {
    std::string out = license_comment();
    out += kCsvHeader;
    out += '\n';
    for (const auto& r : records) {
      out += csv_row(r);
      out += '\n';
    }
    return out;
  }
  ojson j;
  j["doi"] = doi;
  auto& list = j["records"] = ojson::array();
  for (const auto& r : records) list.push_back(record_object(r));
  j["license"] = kLicense;
  return j.dump();
}

std::string count_json(std::size_t count) {
  ojson j;
  j["count"] = count;
  j["license"] = kLicense;
  return j.dump();
}

std::string metadata_json(const BibResource& r, std::size_t citation_count, std::size_t reference_count) {
  ojson j;
  j["doi"] = r.doi.str();
  j["title"] = r.title ? ojson(*r.title) : ojson(nullptr);
  j["date"] = r.pub_date ? ojson(r.pub_date->str()) : ojson(nullptr);
  j["orcids"] = r.author_orcids;
  j["authors"] = r.author_names;
  j["issns"] = r.issns;
  j["rors"] = r.ror_ids;
  auto& refs = j["references"] = ojson::array();
  for (const auto& d : r.references) refs.push_back(d.str());
  j["citation_count"] = citation_count;
  j["reference_count"] = reference_count;
  j["license"] = kLicense;
  return j.dump();
}

std::string stats_json(const CorpusStats& s) {
  ojson j;
  j["citation_links"] = s.citation_links;
  j["bibliographic_resources"] = s.bibliographic_resources;
  j["dangling_citations"] = s.dangling_citations;
  j["self_citations"] = {{"author", s.author_self_citations},
                         {"journal", s.journal_self_citations},
                         {"institutional", s.institutional_self_citations}};
  j["timespan_coverage"] = {{"numerator", s.timespan_coverage.numerator},
                            {"denominator", s.timespan_coverage.denominator},
                            {"percent", s.timespan_coverage.percent_string()}};
  j["license"] = kLicense;
  return j.dump();
}

std::string error_json(std::string_view name) {
  ojson j;
  j["error"] = name;
  return j.dump();
}

std::string percent_decode(std::string_view s) {
  auto hex = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && i + 2 < s.size() && hex(s[i + 1]) >= 0 && hex(s[i + 2]) >= 0) {
      out += static_cast<char>(hex(s[i + 1]) * 16 + hex(s[i + 2]));
      i += 2;
    } else {
      out += s[i];
    }
  }
  return out;
}

Response handle_get(const CitationIndex& index, std::string_view raw_path, std::string_view format_param) {
  const std::string path = percent_decode(raw_path);
  const Format format = format_param == "csv" ? Format::csv : Format::json;
  constexpr std::string_view kCitations = "/api/v1/citations/";
  constexpr std::string_view kReferences = "/api/v1/references/";
  constexpr std::string_view kCitation = "/api/v1/citation/";
  constexpr std::string_view kCount = "/api/v1/citation-count/";
  constexpr std::string_view kMetadata = "/api/v1/metadata/";
  constexpr std::string_view kStats = "/api/v1/stats";

  auto rest = [&](std::string_view prefix) { return std::string_view(path).substr(prefix.size()); };
  auto list = [&](std::string_view doi, std::vector<CitationRecord> records) {
    if (format == Format::csv) return Response{200, "text/csv", records_body(doi, records, format)};
    return json_response(200, records_body(doi, records, format));
  };

  try {
    if (path.starts_with(kCitations)) {
      auto doi = normalize_doi(rest(kCitations));
      return list(doi.str(), index.lookup_citations(doi));
    }
    if (path.starts_with(kReferences)) {
      auto doi = normalize_doi(rest(kReferences));
      return list(doi.str(), index.lookup_references(doi));
    }
    if (path.starts_with(kCitation)) return json_response(200, record_json(index.lookup_by_oci(rest(kCitation))));
    if (path.starts_with(kCount)) return json_response(200, count_json(index.citation_count(normalize_doi(rest(kCount)))));
    if (path.starts_with(kMetadata)) {
      auto doi = normalize_doi(rest(kMetadata));
      auto pos = index.resources().find(doi.str());
      if (!pos) return error_response(error_name(ErrorCode::UnknownResource));
      return json_response(200, metadata_json(index.resources().resource(*pos), index.citation_count(doi),
                                              index.reference_count(doi)));
    }
    if (path == kStats || path == "/api/v1/stats/") return json_response(200, stats_json(corpus_stats(index)));
  } catch (const Error& e) {
    return error_response(e.name());
  }
  return error_response("NotFound");
}

}  // namespace ocix::service
