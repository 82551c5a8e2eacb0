#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vincstat {

// Every failure raised by the library carries one of these kinds. The CLI
// reports the kind name verbatim in its structured error object.
enum class ErrorKind {
  NotAPermutation,
  EmptyBlock,
  MalformedToken,
  OutOfRange,
  NonPositivePart,
  DuplicateEntry,
  NotAdmissible,
  SizeMismatch,
  ZeroSize,
  SizeLimitExceeded,
  DegreeCertificateFailed,
  VarianceNotPositive,
  BadWindow,
  NonPositiveInput,
  BadOrder,
  NonPositiveDelta,
  EmptySample,
  TooFewSamples,
  PatternTooSmall,
  DegenerateInput,
  InvalidArgument,
  Overflow,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace vincstat
