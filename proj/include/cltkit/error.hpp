#ifndef CLTKIT_ERROR_HPP
#define CLTKIT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace cltkit {

enum class ErrorCode {
  NonConvergence,
  InvalidTolerance,
  NotOscillatory,
  OutOfRange,
  SizeLimit,
  InvalidParams,
  InvalidDistribution,
  InvalidScale,
  UnsupportedPair,
  UnsupportedRepresentation,
  NonZeroMean,
  NonZeroVariance,
  DegenerateInterval,
  AtomOnGrid,
  InvalidProbe,
  MalformedSet,
  ParseError,
  IoFailure,
};

std::string_view to_string(ErrorCode code);

// All library failures surface as this exception; what() is
// "<Code>: <detail>" so the CLI can print it as a single parseable line.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cltkit

#endif  // CLTKIT_ERROR_HPP
