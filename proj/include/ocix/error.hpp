#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ocix {

// Structured error categories. The name of each enumerator is what the CLI
// prints on stderr and what the HTTP API returns in {"error": ...}.
enum class ErrorCode {
  InvalidDoi,
  UnsupportedDoiCharacter,
  MalformedOci,
  UnknownCode,
  InvalidDate,
  MalformedRecord,
  IoFailure,
  DuplicateResourceDoi,
  UnknownOci,
  UnknownResource,
  AlreadyExists,
  UnknownEntity,
  NonMonotonicTimestamp,
  EmptyReferenceSet,
  StaleIndex,
  BindFailure,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace ocix
