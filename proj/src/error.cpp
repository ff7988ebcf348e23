#include "ocix/error.hpp"

namespace ocix {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidDoi: return "InvalidDoi";
    case ErrorCode::UnsupportedDoiCharacter: return "UnsupportedDoiCharacter";
    case ErrorCode::MalformedOci: return "MalformedOci";
    case ErrorCode::UnknownCode: return "UnknownCode";
    case ErrorCode::InvalidDate: return "InvalidDate";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::DuplicateResourceDoi: return "DuplicateResourceDoi";
    case ErrorCode::UnknownOci: return "UnknownOci";
    case ErrorCode::UnknownResource: return "UnknownResource";
    case ErrorCode::AlreadyExists: return "AlreadyExists";
    case ErrorCode::UnknownEntity: return "UnknownEntity";
    case ErrorCode::NonMonotonicTimestamp: return "NonMonotonicTimestamp";
    case ErrorCode::EmptyReferenceSet: return "EmptyReferenceSet";
    case ErrorCode::StaleIndex: return "StaleIndex";
    case ErrorCode::BindFailure: return "BindFailure";
  }
  return "Unknown";
}

}  // namespace ocix
