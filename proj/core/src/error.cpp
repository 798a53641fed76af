#include "rriqa/error.hpp"

namespace rriqa {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::CorruptFile: return "CorruptFile";
    case ErrorCode::EmptyImage: return "EmptyImage";
    case ErrorCode::ImageTooSmall: return "ImageTooSmall";
    case ErrorCode::InvalidSigma: return "InvalidSigma";
    case ErrorCode::DimensionNotDivisible: return "DimensionNotDivisible";
    case ErrorCode::MalformedDecomposition: return "MalformedDecomposition";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::DegenerateSubband: return "DegenerateSubband";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::EmptyBands: return "EmptyBands";
    case ErrorCode::NonIntegrable: return "NonIntegrable";
    case ErrorCode::HypergeometricDivergence: return "HypergeometricDivergence";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::MalformedPayload: return "MalformedPayload";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::DegenerateScores: return "DegenerateScores";
    case ErrorCode::ConstantInput: return "ConstantInput";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code), detail_(detail) {}

}  // namespace rriqa
