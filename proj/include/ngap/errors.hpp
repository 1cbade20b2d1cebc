#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ngap {

enum class ErrorCode {
  DimensionMismatch,
  SingularSystem,
  AsymmetricInput,
  NegativeDistance,
  NonzeroDiagonal,
  TriangleViolation,
  DisconnectedGraph,
  InvalidSize,
  NotATree,
  InvalidWeight,
  ZeroFunctional,
  PositiveDirectionMissing,
  NotStrict,
  TooLarge,
  EvenCycle,
  ParseError,
  SchemaError,
  OracleMismatch,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exit status used by the command-line tool for an error of this kind.
/// 2 parse, 3 not-a-metric, 4 negative-type hypothesis failure, 5 too
/// large, 6 oracle mismatch, 1 anything else.
int exit_code(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ngap
