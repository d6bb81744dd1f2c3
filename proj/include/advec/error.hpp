#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace advec {

enum class ErrorCode {
  DivByZeroInterval,
  ExpOverflow,
  DomainError,
  StiffnessError,
  DissipativityUnverified,
  CoefficientNotReal,
  PeriodRequired,
  LemmaHypothesisFails,
  CoefficientMismatch,
  ParseError,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DivByZeroInterval: return "DivByZeroInterval";
    case ErrorCode::ExpOverflow: return "ExpOverflow";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::StiffnessError: return "StiffnessError";
    case ErrorCode::DissipativityUnverified: return "DissipativityUnverified";
    case ErrorCode::CoefficientNotReal: return "CoefficientNotReal";
    case ErrorCode::PeriodRequired: return "PeriodRequired";
    case ErrorCode::LemmaHypothesisFails: return "LemmaHypothesisFails";
    case ErrorCode::CoefficientMismatch: return "CoefficientMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// message is `<Code>: <detail>`.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return to_string(code_); }

 private:
  ErrorCode code_;
};

}  // namespace advec
