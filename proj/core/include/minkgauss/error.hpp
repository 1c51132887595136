#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace minkgauss {

enum class ErrorCode {
  // mink-algebra
  NotLightlike,
  DependentBasis,
  NotPositiveDefinite,
  // jets
  DivisionNearZero,
  MismatchedBase,
  DomainError,
  OrderExceeded,
  OrderExhausted,
  // expressions and surface files
  SyntaxError,
  UnknownFunction,
  UnboundIdentifier,
  NonIntegerExponent,
  ParseError,
  ValidationError,
  IoError,
  // geometry engine
  NotLorentzian,
  DegenerateImmersion,
  NotNormal,
  FrameBranchSwitch,
  OutsideDomain,
  // catalog
  NotLightlikeDirection,
  NotNullCurve,
  DegenerateMetric,
  UnknownSurface,
};

std::string_view to_string(ErrorCode code) noexcept;

// Base of every exception the library throws. The code is stable and is what
// callers and tests should switch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected,
              const std::string& message)
      : Error(ErrorCode::SyntaxError, message),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept {
    return expected_;
  }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

// Surface-file parse failure; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(ErrorCode::ParseError, message), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace minkgauss
