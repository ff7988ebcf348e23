#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ocix/index.hpp"
#include "ocix/metrics.hpp"

namespace ocix::service {

enum class Format { json, csv };

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

// Rendering shared by the CLI and the HTTP API. Every JSON body carries
// "license"; every CSV body starts with a "# license:" comment line.
std::string record_json(const CitationRecord& r);
std::string records_body(std::string_view doi, const std::vector<CitationRecord>& records, Format format);
std::string count_json(std::size_t count);
std::string metadata_json(const BibResource& r, std::size_t citation_count, std::size_t reference_count);
std::string stats_json(const CorpusStats& s);
std::string error_json(std::string_view name);
std::string license_comment();

std::string percent_decode(std::string_view s);

// Routes one GET request against the immutable index:
//   /api/v1/citations/{doi}       incoming citations
//   /api/v1/references/{doi}      outgoing citations
//   /api/v1/citation/{oci}        one citation
//   /api/v1/citation-count/{doi}  {"count": n}
//   /api/v1/metadata/{doi}        resource record
//   /api/v1/stats                 corpus statistics
// DOIs take the whole path remainder (they contain "/"); percent-encoded
// paths are decoded first. `format` is the value of the format= parameter.
Response handle_get(const CitationIndex& index, std::string_view path, std::string_view format = "");

}  // namespace ocix::service
