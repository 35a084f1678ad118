#pragma once

#include <stdexcept>
#include <string>

namespace levbound {

// Numeric values are shared with the lb_status codes of the C API.
enum class ErrorCode : int {
  Domain = -1,
  Degenerate = -2,
  GapRegime = -3,
  NonFinite = -4,
  Parse = -5,
  Order = -6,
  Value = -7,
  TooShort = -8,
  YearGap = -9,
  EmptySet = -10,
  InvalidArgument = -11,
  Io = -12,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

template <ErrorCode Code>
class TaggedError : public Error {
 public:
  explicit TaggedError(const std::string& what) : Error(Code, what) {}
};

/// A leveraged price would become non-positive, or an argument lies outside
/// the hypotheses of the bound being requested.
using DomainError = TaggedError<ErrorCode::Domain>;
using DegenerateError = TaggedError<ErrorCode::Degenerate>;
/// 0 < L < 1 with log(1/L - 1) inside [y0, y1]: no quadratic bound exists.
using GapRegimeError = TaggedError<ErrorCode::GapRegime>;
using NonFiniteError = TaggedError<ErrorCode::NonFinite>;
using ParseError = TaggedError<ErrorCode::Parse>;
using OrderError = TaggedError<ErrorCode::Order>;
using ValueError = TaggedError<ErrorCode::Value>;
using TooShortError = TaggedError<ErrorCode::TooShort>;
/// Missing calendar year in an annual record sequence.
using YearGapError = TaggedError<ErrorCode::YearGap>;
using EmptySetError = TaggedError<ErrorCode::EmptySet>;
using InvalidArgumentError = TaggedError<ErrorCode::InvalidArgument>;
using IoError = TaggedError<ErrorCode::Io>;

}  // namespace levbound
