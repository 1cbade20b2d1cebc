#include "ngap/errors.hpp"

namespace ngap {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::AsymmetricInput: return "AsymmetricInput";
    case ErrorCode::NegativeDistance: return "NegativeDistance";
    case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::TriangleViolation: return "TriangleViolation";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::InvalidSize: return "InvalidSize";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::InvalidWeight: return "InvalidWeight";
    case ErrorCode::ZeroFunctional: return "ZeroFunctional";
    case ErrorCode::PositiveDirectionMissing: return "PositiveDirectionMissing";
    case ErrorCode::NotStrict: return "NotStrict";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::EvenCycle: return "EvenCycle";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::OracleMismatch: return "OracleMismatch";
  }
  return "Unknown";
}

int exit_code(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::SchemaError:
    case ErrorCode::InvalidSize:
    case ErrorCode::NotATree:
    case ErrorCode::InvalidWeight:
    case ErrorCode::DimensionMismatch:
      return 2;
    case ErrorCode::AsymmetricInput:
    case ErrorCode::NegativeDistance:
    case ErrorCode::NonzeroDiagonal:
    case ErrorCode::TriangleViolation:
    case ErrorCode::DisconnectedGraph:
      return 3;
    case ErrorCode::PositiveDirectionMissing:
    case ErrorCode::ZeroFunctional:
      return 4;
    case ErrorCode::TooLarge:
      return 5;
    case ErrorCode::OracleMismatch:
      return 6;
    default:
      return 1;
  }
}

}  // namespace ngap
