#pragma once

// Minimal N-Triples line parser for tests, written from the W3C grammar
// (IRIREF, STRING_LITERAL_QUOTE with ECHAR/UCHAR, '^^' datatype or LANGTAG)
// and independent of the serializer.

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

namespace ocix::testkit {

struct ParsedTriple {
  std::string subject;
  std::string predicate;
  std::string object;  // IRI text or unescaped lexical form
  bool object_is_literal = false;
  std::string datatype;
};

class NTriplesLineParser {
 public:
  explicit NTriplesLineParser(std::string_view line) : s_(line) {}

  std::optional<ParsedTriple> parse() {
    ParsedTriple t;
    skip_ws();
    if (!iri(t.subject)) return std::nullopt;
    if (!skip_ws_required()) return std::nullopt;
    if (!iri(t.predicate)) return std::nullopt;
    if (!skip_ws_required()) return std::nullopt;
    if (peek() == '<') {
      if (!iri(t.object)) return std::nullopt;
    } else if (peek() == '"') {
      t.object_is_literal = true;
      if (!literal(t.object)) return std::nullopt;
      if (s_.substr(i_, 2) == "^^") {
        i_ += 2;
        if (!iri(t.datatype)) return std::nullopt;
      } else if (peek() == '@') {
        ++i_;
        std::size_t start = i_;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '-')) ++i_;
        if (i_ == start) return std::nullopt;
      }
    } else {
      return std::nullopt;
    }
    skip_ws();
    if (peek() != '.') return std::nullopt;
    ++i_;
    skip_ws();
    if (i_ != s_.size()) return std::nullopt;
    return t;
  }

 private:
  char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
  void skip_ws() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t')) ++i_;
  }
  bool skip_ws_required() {
    std::size_t start = i_;
    skip_ws();
    return i_ > start;
  }

  bool iri(std::string& out) {
    if (peek() != '<') return false;
    ++i_;
    std::size_t start = i_;
    while (i_ < s_.size() && s_[i_] != '>') {
      unsigned char c = static_cast<unsigned char>(s_[i_]);
      if (c <= 0x20 || std::string_view("<\"{}|^`\\").find(static_cast<char>(c)) != std::string_view::npos) return false;
      ++i_;
    }
    if (i_ >= s_.size()) return false;
    out = std::string(s_.substr(start, i_ - start));
    ++i_;
    // Absolute: scheme ":" ...
    auto colon = out.find(':');
    if (colon == std::string::npos || colon == 0 || !std::isalpha(static_cast<unsigned char>(out[0]))) return false;
    for (std::size_t k = 1; k < colon; ++k) {
      char c = out[k];
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') return false;
    }
    return true;
  }

  bool literal(std::string& out) {
    ++i_;  // opening quote
    while (i_ < s_.size() && s_[i_] != '"') {
      char c = s_[i_];
      if (c == '\n' || c == '\r') return false;
      if (c == '\\') {
        if (i_ + 1 >= s_.size()) return false;
        char e = s_[i_ + 1];
        static constexpr std::string_view kEscapes = "tbnrf\"'\\";
        static constexpr std::string_view kValues = "\t\b\n\r\f\"'\\";
        auto k = kEscapes.find(e);
        if (k != std::string_view::npos) {
          out += kValues[k];
          i_ += 2;
          continue;
        }
        if (e == 'u' || e == 'U') {
          std::size_t n = e == 'u' ? 4 : 8;
          if (i_ + 2 + n > s_.size()) return false;
          for (std::size_t h = 0; h < n; ++h)
            if (!std::isxdigit(static_cast<unsigned char>(s_[i_ + 2 + h]))) return false;
          out += '?';
          i_ += 2 + n;
          continue;
        }
        return false;
      }
      out += c;
      ++i_;
    }
    if (i_ >= s_.size()) return false;
    ++i_;  // closing quote
    return true;
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

inline std::optional<ParsedTriple> parse_ntriples_line(std::string_view line) {
  return NTriplesLineParser(line).parse();
}

}  // namespace ocix::testkit
