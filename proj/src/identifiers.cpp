#include "ocix/identifiers.hpp"

#include <array>
#include <cctype>

#include "ocix/error.hpp"

namespace ocix {
namespace {

constexpr std::uint8_t kNoCode = 0xff;

constexpr std::array<std::uint8_t, 256> make_code_table() {
  std::array<std::uint8_t, 256> t{};
  for (auto& v : t) v = kNoCode;
  for (int i = 0; i < 10; ++i) t['0' + i] = static_cast<std::uint8_t>(i);
  for (int i = 0; i < 26; ++i) t['a' + i] = static_cast<std::uint8_t>(10 + i);
  constexpr std::string_view punct = ".-_/():;<>#+";
  for (std::size_t i = 0; i < punct.size(); ++i)
    t[static_cast<unsigned char>(punct[i])] = static_cast<std::uint8_t>(36 + i);
  return t;
}

constexpr auto kCodeTable = make_code_table();
constexpr std::uint8_t kCodeCount = 48;

constexpr std::array<char, kCodeCount> make_char_table() {
  std::array<char, kCodeCount> t{};
  for (int c = 0; c < 256; ++c)
    if (kCodeTable[c] != kNoCode) t[kCodeTable[c]] = static_cast<char>(c);
  return t;
}

constexpr auto kCharTable = make_char_table();

// Shape first, then alphabet: "10." prefix, non-empty registrant, "/", non-empty suffix.
void validate_canonical(std::string_view s) {
  if (!s.starts_with("10.")) throw Error(ErrorCode::InvalidDoi, "DOI must start with \"10.\": " + std::string(s));
  auto slash = s.find('/');
  if (slash == std::string_view::npos) throw Error(ErrorCode::InvalidDoi, "DOI lacks \"/\" separator: " + std::string(s));
  if (slash == 3) throw Error(ErrorCode::InvalidDoi, "empty DOI registrant: " + std::string(s));
  if (slash + 1 == s.size()) throw Error(ErrorCode::InvalidDoi, "empty DOI suffix: " + std::string(s));
  for (char c : s) {
    if (kCodeTable[static_cast<unsigned char>(c)] == kNoCode)
      throw Error(ErrorCode::UnsupportedDoiCharacter,
                  "character '" + std::string(1, c) + "' in " + std::string(s));
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool istarts_with(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(s[i])) != prefix[i]) return false;
  return true;
}

void append_part(std::string& out, std::string_view doi) {
  out += oci_codec::kSupplierPrefix;
  for (char c : doi) {
    auto code = kCodeTable[static_cast<unsigned char>(c)];
    if (code == kNoCode)
      throw Error(ErrorCode::UnsupportedDoiCharacter,
                  "character '" + std::string(1, c) + "' in " + std::string(doi));
    out += static_cast<char>('0' + code / 10);
    out += static_cast<char>('0' + code % 10);
  }
}

}  // namespace

Doi Doi::parse(std::string_view canonical) {
  validate_canonical(canonical);
  return Doi(std::string(canonical));
}

std::string_view Doi::prefix() const noexcept {
  return std::string_view(value_).substr(0, value_.find('/'));
}

Doi normalize_doi(std::string_view raw) {
  auto s = trim(raw);
  for (std::string_view p : {"https://doi.org/", "http://doi.org/", "doi:"}) {
    if (istarts_with(s, p)) {
      s.remove_prefix(p.size());
      break;
    }
  }
  std::string folded(s);
  for (auto& c : folded) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return Doi::parse(folded);
}

namespace oci_codec {

std::optional<std::uint8_t> code_of(char c) noexcept {
  auto code = kCodeTable[static_cast<unsigned char>(c)];
  if (code == kNoCode) return std::nullopt;
  return code;
}

std::optional<char> char_of(std::uint8_t code) noexcept {
  if (code >= kCodeCount) return std::nullopt;
  return kCharTable[code];
}

std::string encode_part(std::string_view doi) {
  std::string out;
  out.reserve(kSupplierPrefix.size() + 2 * doi.size());
  append_part(out, doi);
  return out;
}

Doi decode_part(std::string_view part) {
  for (char c : part)
    if (c < '0' || c > '9') throw Error(ErrorCode::MalformedOci, "non-digit character in OCI part \"" + std::string(part) + "\"");
  if (part.size() < 5 || part.size() % 2 == 0)
    throw Error(ErrorCode::MalformedOci, "OCI part must have odd length >= 5: \"" + std::string(part) + "\"");
  if (!part.starts_with(kSupplierPrefix))
    throw Error(ErrorCode::MalformedOci, "unknown supplier prefix in \"" + std::string(part) + "\"");
  std::string doi;
  doi.reserve((part.size() - 3) / 2);
  for (std::size_t i = kSupplierPrefix.size(); i < part.size(); i += 2) {
    auto code = static_cast<std::uint8_t>((part[i] - '0') * 10 + (part[i + 1] - '0'));
    auto c = char_of(code);
    if (!c) throw Error(ErrorCode::UnknownCode, "code " + std::string(part.substr(i, 2)) + " in \"" + std::string(part) + "\"");
    doi += *c;
  }
  try {
    return Doi::parse(doi);
  } catch (const Error& e) {
    throw Error(ErrorCode::MalformedOci, "OCI part does not decode to a DOI (" + std::string(e.what()) + ")");
  }
}

}  // namespace oci_codec

namespace {

std::pair<std::string_view, std::string_view> split_oci(std::string_view text) {
  if (!text.starts_with(oci_codec::kScheme))
    throw Error(ErrorCode::MalformedOci, "missing \"oci:\" scheme: \"" + std::string(text) + "\"");
  text.remove_prefix(oci_codec::kScheme.size());
  auto dash = text.find('-');
  if (dash == std::string_view::npos)
    throw Error(ErrorCode::MalformedOci, "missing \"-\" separator: \"" + std::string(text) + "\"");
  return {text.substr(0, dash), text.substr(dash + 1)};
}

}  // namespace

Oci Oci::parse(std::string_view text) {
  auto [a, b] = split_oci(text);
  oci_codec::decode_part(a);
  oci_codec::decode_part(b);
  return Oci(std::string(a), std::string(b));
}

Oci encode_oci(const Doi& citing, const Doi& cited) {
  return Oci(oci_codec::encode_part(citing.str()), oci_codec::encode_part(cited.str()));
}

Oci encode_oci(std::string_view citing, std::string_view cited) {
  return encode_oci(Doi::parse(citing), Doi::parse(cited));
}

std::pair<Doi, Doi> decode_oci(std::string_view oci) {
  auto [a, b] = split_oci(oci);
  return {oci_codec::decode_part(a), oci_codec::decode_part(b)};
}

void append_oci(std::string& out, std::string_view citing, std::string_view cited) {
  out += oci_codec::kScheme;
  append_part(out, citing);
  out += '-';
  append_part(out, cited);
}

}  // namespace ocix
