#pragma once

#include <stdexcept>
#include <string>

namespace berezin {

enum class ErrorCode {
  NonHermitian,
  NoConvergence,
  NotPSD,
  Singular,
  UnsupportedSpace,
  OutOfDomain,
  TruncationTooSmall,
  SpaceMismatch,
  SeriesNotConverged,
  EmptyInput,
  SignatureMismatch,
  HypothesisUncheckable,
  LengthMismatch,
  InvalidArgument,
  ParseError,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Numeric failures (eigensolver, series, singular input) as opposed to bad input.
  bool is_numeric() const noexcept {
    return code_ == ErrorCode::NoConvergence || code_ == ErrorCode::NotPSD ||
           code_ == ErrorCode::Singular || code_ == ErrorCode::SeriesNotConverged;
  }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::UnsupportedSpace: return "UnsupportedSpace";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::SeriesNotConverged: return "SeriesNotConverged";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::SignatureMismatch: return "SignatureMismatch";
    case ErrorCode::HypothesisUncheckable: return "HypothesisUncheckable";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace berezin
