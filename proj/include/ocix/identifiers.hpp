#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace ocix {

// Canonical (lowercase, validated) DOI. Only constructible through
// Doi::parse or normalize_doi, so holding one means the invariants hold.
class Doi {
 public:
  // Accepts an already-canonical DOI; does not case-fold or strip prefixes.
  static Doi parse(std::string_view canonical);

  const std::string& str() const noexcept { return value_; }
  // Registrant prefix, e.g. "10.1002" for "10.1002/abc".
  std::string_view prefix() const noexcept;

  friend bool operator==(const Doi&, const Doi&) = default;
  friend std::strong_ordering operator<=>(const Doi& a, const Doi& b) noexcept {
    return a.value_.compare(b.value_) <=> 0;
  }

 private:
  explicit Doi(std::string v) : value_(std::move(v)) {}
  std::string value_;
};

// Strips one resolver/scheme prefix, trims whitespace and case-folds.
Doi normalize_doi(std::string_view raw);

namespace oci_codec {

inline constexpr std::string_view kSupplierPrefix = "020";
inline constexpr std::string_view kScheme = "oci:";

// Two-digit code for a DOI character, or nullopt if outside the table.
std::optional<std::uint8_t> code_of(char c) noexcept;
// Inverse of code_of; nullopt for codes with no character.
std::optional<char> char_of(std::uint8_t code) noexcept;

// Supplier prefix followed by the 2-digit code of every character.
std::string encode_part(std::string_view doi);
// Inverse of encode_part; validates digits, parity and the supplier prefix.
Doi decode_part(std::string_view part);

}  // namespace oci_codec

// Open Citation Identifier: "oci:" citing_part "-" cited_part.
class Oci {
 public:
  static Oci parse(std::string_view text);

  const std::string& citing_part() const noexcept { return citing_; }
  const std::string& cited_part() const noexcept { return cited_; }
  // Digits only, no scheme: citing_part "-" cited_part.
  std::string local_part() const { return citing_ + "-" + cited_; }
  std::string str() const { return std::string(oci_codec::kScheme) + local_part(); }

  friend bool operator==(const Oci&, const Oci&) = default;

 private:
  friend Oci encode_oci(const Doi& citing, const Doi& cited);
  Oci(std::string citing, std::string cited) : citing_(std::move(citing)), cited_(std::move(cited)) {}
  std::string citing_;
  std::string cited_;
};

Oci encode_oci(const Doi& citing, const Doi& cited);
// Raw-string overload for callers holding unvalidated text.
Oci encode_oci(std::string_view citing, std::string_view cited);

std::pair<Doi, Doi> decode_oci(std::string_view oci);

// Appends the canonical OCI string for two canonical DOIs to `out`
// without intermediate allocations. Used on the export hot path.
void append_oci(std::string& out, std::string_view citing, std::string_view cited);

}  // namespace ocix
