#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nhq {

enum class ErrorCode {
  InvalidArgument,
  MalformedHeader,
  NonThreeSatClause,
  VariableOutOfRange,
  DuplicateVariableInClause,
  ParseError,
  TooLarge,
  IndexOutOfRange,
  DimensionMismatch,
  LengthMismatch,
  ZeroNorm,
  SeriesRegime,
  NonConvergence,
  FidelityBelowFloor,
  NonDiagonalHamiltonian,
  ConfigError,
  MixedProblem,
  EmptyInput,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Numerical breakdowns (as opposed to bad input) map to a distinct CLI exit code.
constexpr bool is_numerical(ErrorCode code) {
  return code == ErrorCode::ZeroNorm || code == ErrorCode::SeriesRegime ||
         code == ErrorCode::NonConvergence || code == ErrorCode::FidelityBelowFloor;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nhq
