#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ocix/error.hpp"
#include "ocix/index.hpp"
#include "ocix/ingestion.hpp"

namespace ocix::testkit {

// A(2020, refs=[B]) and B(2018).
inline const char* kTwoRecordCorpus =
    "{\"doi\":\"10.1/a\",\"date\":\"2020\",\"references\":[\"10.1/b\"]}\n"
    "{\"doi\":\"10.1/b\",\"date\":\"2018\"}\n";

inline std::vector<BibResource> ingest_text(const std::string& text) {
  std::istringstream in(text);
  return ingest_stream(in).store.resources();
}

inline CitationIndex index_from_text(const std::string& text) {
  std::istringstream in(text);
  return build_index(ingest_stream(in).store);
}

inline ErrorCode error_code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(-1);
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("ocix-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path write(const std::string& name, const std::string& content) const {
    auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace ocix::testkit
