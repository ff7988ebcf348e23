#include "ocix/service/cli.hpp"

#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ocix/error.hpp"
#include "ocix/metrics.hpp"
#include "ocix/rdf.hpp"
#include "ocix/service/api.hpp"
#include "ocix/service/http.hpp"
#include "ocix/service/store.hpp"

namespace ocix::service {
namespace {

namespace fs = std::filesystem;

std::atomic<HttpServer*> g_serving{nullptr};

extern "C" void stop_serving(int) {
  if (auto* s = g_serving.load()) s->stop();
}

Timestamp stamp_time(const std::string& text) {
  if (!text.empty()) return parse_timestamp(text);
  return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
}

struct Options {
  std::string index_dir;
  std::string agent = "ocix";
  std::string timestamp;
  std::vector<std::string> inputs;
  std::string source;
  std::string format = "csv";
  std::string output;
  std::string reference_set;
  std::string citations, references, count, oci, metadata, provenance;
  std::string query_format = "json";
  int port = 8080;
};

void add_index_dir(CLI::App* sub, Options& o) {
  sub->add_option("--index-dir", o.index_dir, "Index directory")->envname("INDEX_DIR")->required();
}

void add_stamp(CLI::App* sub, Options& o) {
  sub->add_option("--agent", o.agent, "Agent recorded in provenance snapshots");
  sub->add_option("--timestamp", o.timestamp, "UTC time for provenance (YYYY-MM-DDTHH:MM:SSZ); default now");
}

int run_export(const Options& o, std::ostream& out) {
  auto index = load_index({o.index_dir});
  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.output.empty()) {
    file.open(o.output, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorCode::IoFailure, "cannot write " + o.output);
    sink = &file;
  }
  if (o.format == "nt") {
    rdf::serialize_ntriples(index, *sink);
  } else {
    *sink << license_comment();
    write_csv(*sink, index);
  }
  sink->flush();
  if (!*sink) throw Error(ErrorCode::IoFailure, "export write failed");
  return kExitOk;
}

int run_stats(const Options& o, std::ostream& out) {
  auto index = load_index({o.index_dir});
  out << stats_json(corpus_stats(index)) << '\n';
  if (!o.reference_set.empty()) {
    auto c = coverage(index, read_reference_set(fs::path(o.reference_set)));
    out << "coverage: " << c.percent_string() << "% (" << c.numerator << "/" << c.denominator << ")\n";
  }
  return kExitOk;
}

int run_query(const Options& o, std::ostream& out) {
  auto index = load_index({o.index_dir});
  Format format = o.query_format == "csv" ? Format::csv : Format::json;
  if (!o.count.empty()) {
    out << index.citation_count(normalize_doi(o.count)) << '\n';
  } else if (!o.citations.empty()) {
    auto doi = normalize_doi(o.citations);
    out << records_body(doi.str(), index.lookup_citations(doi), format);
    if (format == Format::json) out << '\n';
  } else if (!o.references.empty()) {
    auto doi = normalize_doi(o.references);
    out << records_body(doi.str(), index.lookup_references(doi), format);
    if (format == Format::json) out << '\n';
  } else if (!o.oci.empty()) {
    out << record_json(index.lookup_by_oci(o.oci)) << '\n';
  } else if (!o.metadata.empty()) {
    auto doi = normalize_doi(o.metadata);
    auto pos = index.resources().find(doi.str());
    if (!pos) throw Error(ErrorCode::UnknownResource, doi.str());
    out << metadata_json(index.resources().resource(*pos), index.citation_count(doi), index.reference_count(doi))
        << '\n';
  } else {
    auto ledger = load_ledger({o.index_dir});
    auto chain = ledger.provenance_chain(o.provenance);
    if (chain.empty()) throw Error(ErrorCode::UnknownEntity, o.provenance);
    for (const auto& s : chain) out << snapshot_jsonl(s) << '\n';
  }
  return kExitOk;
}

int run_serve(const Options& o, std::ostream& out) {
  auto index = load_index({o.index_dir});
  HttpServer server(index);
  int port = server.bind("0.0.0.0", o.port);
  out << "serving " << index.size() << " citations on port " << port << std::endl;
  g_serving = &server;
  auto prev_int = std::signal(SIGINT, stop_serving);
  auto prev_term = std::signal(SIGTERM, stop_serving);
  server.run();
  std::signal(SIGINT, prev_int);
  std::signal(SIGTERM, prev_term);
  g_serving = nullptr;
  return kExitOk;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ocix: open DOI-to-DOI citation index", "ocix"};
  app.require_subcommand(1);
  Options o;

  auto* ingest = app.add_subcommand("ingest", "Ingest JSON Lines dumps into the resource store");
  add_index_dir(ingest, o);
  add_stamp(ingest, o);
  ingest->add_option("inputs", o.inputs, "Dump files (several are ingested as shards)")->required()->check(CLI::ExistingFile);
  ingest->add_option("--source", o.source, "Source URI recorded in provenance; default file:<first input>");

  auto* build = app.add_subcommand("build", "Build the citation index from the resource store");
  add_index_dir(build, o);
  add_stamp(build, o);

  auto* exp = app.add_subcommand("export", "Export all citations as CSV or N-Triples");
  add_index_dir(exp, o);
  exp->add_option("--format", o.format, "csv or nt")->check(CLI::IsMember({"csv", "nt"}));
  exp->add_option("--output,-o", o.output, "Output file; default stdout");

  auto* stats = app.add_subcommand("stats", "Corpus statistics, optionally coverage of a reference set");
  add_index_dir(stats, o);
  stats->add_option("--reference-set", o.reference_set, "CSV with header citing,cited")->check(CLI::ExistingFile);

  auto* query = app.add_subcommand("query", "Look up citations by DOI or OCI");
  add_index_dir(query, o);
  auto* group = query->add_option_group("lookup");
  group->add_option("--citations", o.citations, "Incoming citations of DOI");
  group->add_option("--references", o.references, "Outgoing citations of DOI");
  group->add_option("--count", o.count, "Incoming citation count of DOI");
  group->add_option("--oci", o.oci, "Citation by OCI");
  group->add_option("--metadata", o.metadata, "Resource metadata of DOI");
  group->add_option("--provenance", o.provenance, "Provenance chain of a DOI or OCI");
  group->require_option(1);
  query->add_option("--format", o.query_format, "json or csv (list lookups)")->check(CLI::IsMember({"json", "csv"}));

  auto* serve = app.add_subcommand("serve", "Serve the read-only HTTP API");
  add_index_dir(serve, o);
  serve->add_option("--port", o.port, "TCP port")->envname("PORT")->check(CLI::Range(0, 65535));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (ingest->parsed()) {
      std::vector<fs::path> inputs(o.inputs.begin(), o.inputs.end());
      std::string source = o.source.empty() ? "file:" + o.inputs.front() : o.source;
      auto report = ingest_to_directory(inputs, {o.index_dir}, source, {o.agent, stamp_time(o.timestamp)});
      out << report_json(report) << '\n';
    } else if (build->parsed()) {
      auto report = build_directory({o.index_dir}, {o.agent, stamp_time(o.timestamp)});
      out << "built " << report.citations << " citations (" << report.dangling_citations << " dangling) from "
          << report.resources << " resources\n";
    } else if (exp->parsed()) {
      return run_export(o, out);
    } else if (stats->parsed()) {
      return run_stats(o, out);
    } else if (query->parsed()) {
      return run_query(o, out);
    } else if (serve->parsed()) {
      return run_serve(o, out);
    }
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    err << error_name(ErrorCode::IoFailure) << ": " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace ocix::service
