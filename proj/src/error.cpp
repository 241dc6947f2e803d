#include "cltkit/error.hpp"

namespace cltkit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::InvalidTolerance: return "InvalidTolerance";
    case ErrorCode::NotOscillatory: return "NotOscillatory";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::InvalidScale: return "InvalidScale";
    case ErrorCode::UnsupportedPair: return "UnsupportedPair";
    case ErrorCode::UnsupportedRepresentation: return "UnsupportedRepresentation";
    case ErrorCode::NonZeroMean: return "NonZeroMean";
    case ErrorCode::NonZeroVariance: return "NonZeroVariance";
    case ErrorCode::DegenerateInterval: return "DegenerateInterval";
    case ErrorCode::AtomOnGrid: return "AtomOnGrid";
    case ErrorCode::InvalidProbe: return "InvalidProbe";
    case ErrorCode::MalformedSet: return "MalformedSet";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace cltkit
