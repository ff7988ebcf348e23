#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "ocix/dates.hpp"
#include "ocix/error.hpp"
#include "ocix/identifiers.hpp"
#include "ocix/index.hpp"
#include "ocix/ingestion.hpp"
#include "ocix/metrics.hpp"
#include "ocix/rdf.hpp"
#include "ocix/service/cli.hpp"
#include "ocix/service/store.hpp"

namespace py = pybind11;
using namespace ocix;

namespace {

py::dict record_dict(const CitationRecord& r) {
  py::dict d;
  d["oci"] = r.oci.str();
  d["citing"] = r.citing.str();
  d["cited"] = r.cited.str();
  d["creation"] = r.creation ? py::object(py::str(r.creation->str())) : py::object(py::none());
  d["timespan"] = r.timespan ? py::object(py::str(r.timespan->str())) : py::object(py::none());
  py::list sc;
  for (auto c : kAllSelfCitations)
    if (r.self_citation.contains(c)) sc.append(std::string(self_citation_name(c)));
  d["self_citation"] = sc;
  d["dangling_cited"] = r.dangling_cited;
  return d;
}

py::list record_list(const std::vector<CitationRecord>& rs) {
  py::list out;
  for (const auto& r : rs) out.append(record_dict(r));
  return out;
}

py::dict report_dict(const IngestReport& r) {
  py::dict d;
  d["lines_read"] = r.lines_read;
  d["resources_accepted"] = r.resources_accepted;
  d["malformed_lines"] = r.malformed_lines;
  d["invalid_dois"] = r.invalid_dois;
  d["merged_records"] = r.merged_records;
  d["scalar_conflicts"] = r.scalar_conflicts;
  d["duplicate_references_dropped"] = r.duplicate_references_dropped;
  d["self_references_dropped"] = r.self_references_dropped;
  d["invalid_references_dropped"] = r.invalid_references_dropped;
  d["invalid_identifiers_dropped"] = r.invalid_identifiers_dropped;
  d["invalid_dates_dropped"] = r.invalid_dates_dropped;
  d["samples"] = r.samples;
  return d;
}

py::dict ratio_dict(const Ratio& r) {
  py::dict d;
  d["numerator"] = r.numerator;
  d["denominator"] = r.denominator;
  d["percent"] = r.percent_string();
  return d;
}

// An index plus the report of the ingestion it came from.
struct PyIndex {
  CitationIndex index;
  std::optional<IngestReport> report;
};

PyIndex from_result(IngestResult r) { return {build_index(std::move(r.store)), std::move(r.report)}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "DOI-to-DOI citation index core";

  // Lives as long as the interpreter; `name` holds the structured error name.
  static PyObject* error_type = PyErr_NewException("ocix._core.OcixError", PyExc_Exception, nullptr);
  m.attr("OcixError") = py::handle(error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::handle(error_type)(e.what());
      inst.attr("name") = e.name();
      PyErr_SetObject(error_type, inst.ptr());
    }
  });

  m.def("normalize_doi", [](std::string_view raw) { return normalize_doi(raw).str(); }, py::arg("raw"));
  m.def("encode_oci", [](std::string_view citing, std::string_view cited) { return encode_oci(citing, cited).str(); },
        py::arg("citing"), py::arg("cited"));
  m.def("decode_oci",
        [](std::string_view oci) {
          auto [a, b] = decode_oci(oci);
          return std::make_pair(a.str(), b.str());
        },
        py::arg("oci"));
  m.def("parse_partial_date",
        [](std::string_view text) {
          auto d = parse_partial_date(text);
          return py::make_tuple(d.year(), d.month(), d.day());
        },
        py::arg("text"), "Returns (year, month or None, day or None).");
  m.def("compute_timespan",
        [](std::string_view citing, std::string_view cited) {
          return compute_timespan(parse_partial_date(citing), parse_partial_date(cited)).str();
        },
        py::arg("citing"), py::arg("cited"));
  m.def("cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          int code;
          {
            py::gil_scoped_release release;
            code = service::cli_run(args, out, err);
          }
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command line tool in-process; returns (exit_code, stdout, stderr).");

  py::class_<PyIndex>(m, "Index")
      .def_static("from_jsonl",
                  [](const std::string& text) {
                    std::istringstream in(text);
                    return from_result(ingest_stream(in));
                  },
                  py::arg("text"))
      .def_static("from_files",
                  [](const std::vector<std::filesystem::path>& paths) {
                    py::gil_scoped_release release;
                    return from_result(paths.size() == 1 ? ingest_file(paths[0]) : ingest_shards(paths));
                  },
                  py::arg("paths"))
      .def_static("load",
                  [](const std::filesystem::path& dir) { return PyIndex{service::load_index({dir}), std::nullopt}; },
                  py::arg("index_dir"))
      .def("__len__", [](const PyIndex& p) { return p.index.size(); })
      .def_property_readonly("ingest_report",
                             [](const PyIndex& p) { return p.report ? py::object(report_dict(*p.report)) : py::none(); })
      .def("citations", [](const PyIndex& p, std::string_view doi) { return record_list(p.index.lookup_citations(normalize_doi(doi))); })
      .def("references", [](const PyIndex& p, std::string_view doi) { return record_list(p.index.lookup_references(normalize_doi(doi))); })
      .def("citation_count", [](const PyIndex& p, std::string_view doi) { return p.index.citation_count(normalize_doi(doi)); })
      .def("by_oci", [](const PyIndex& p, std::string_view oci) { return record_dict(p.index.lookup_by_oci(oci)); })
      .def("stats",
           [](const PyIndex& p) {
             auto s = corpus_stats(p.index);
             py::dict d;
             d["citation_links"] = s.citation_links;
             d["bibliographic_resources"] = s.bibliographic_resources;
             d["dangling_citations"] = s.dangling_citations;
             d["author_self_citations"] = s.author_self_citations;
             d["journal_self_citations"] = s.journal_self_citations;
             d["institutional_self_citations"] = s.institutional_self_citations;
             d["timespan_coverage"] = ratio_dict(s.timespan_coverage);
             return d;
           })
      .def("coverage",
           [](const PyIndex& p, const std::vector<std::pair<std::string, std::string>>& pairs) {
             std::vector<DoiPair> set;
             set.reserve(pairs.size());
             for (const auto& [a, b] : pairs) set.emplace_back(normalize_doi(a), normalize_doi(b));
             return ratio_dict(coverage(p.index, set));
           },
           py::arg("pairs"))
      .def("csv",
           [](const PyIndex& p) {
             std::ostringstream out;
             write_csv(out, p.index);
             return out.str();
           })
      .def("ntriples", [](const PyIndex& p) {
        std::ostringstream out;
        rdf::serialize_ntriples(p.index, out);
        return out.str();
      });
}
