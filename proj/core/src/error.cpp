#include "vincstat/error.hpp"

namespace vincstat {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotAPermutation: return "NotAPermutation";
    case ErrorKind::EmptyBlock: return "EmptyBlock";
    case ErrorKind::MalformedToken: return "MalformedToken";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NonPositivePart: return "NonPositivePart";
    case ErrorKind::DuplicateEntry: return "DuplicateEntry";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::ZeroSize: return "ZeroSize";
    case ErrorKind::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorKind::DegreeCertificateFailed: return "DegreeCertificateFailed";
    case ErrorKind::VarianceNotPositive: return "VarianceNotPositive";
    case ErrorKind::BadWindow: return "BadWindow";
    case ErrorKind::NonPositiveInput: return "NonPositiveInput";
    case ErrorKind::BadOrder: return "BadOrder";
    case ErrorKind::NonPositiveDelta: return "NonPositiveDelta";
    case ErrorKind::EmptySample: return "EmptySample";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::PatternTooSmall: return "PatternTooSmall";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Overflow: return "Overflow";
  }
  return "Unknown";
}

}  // namespace vincstat
