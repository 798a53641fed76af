#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rriqa {

enum class ErrorCode {
  UnsupportedFormat,
  CorruptFile,
  EmptyImage,
  ImageTooSmall,
  InvalidSigma,
  DimensionNotDivisible,
  MalformedDecomposition,
  IndexOutOfRange,
  TooFewSamples,
  DegenerateSample,
  DegenerateSubband,
  InvalidParams,
  EmptyBands,
  NonIntegrable,
  HypergeometricDivergence,
  DomainError,
  NoConvergence,
  MalformedPayload,
  BadMagic,
  UnsupportedVersion,
  TooFewPoints,
  DegenerateScores,
  ConstantInput,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures are reported through this type. what() is
// "<CodeName>: <detail>" so diagnostics can be matched on the code name.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace rriqa
