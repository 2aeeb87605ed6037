#include "bkhopf/error.hpp"

namespace bkhopf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NotEisenstein: return "NotEisenstein";
    case ErrorCode::NotAFactor: return "NotAFactor";
    case ErrorCode::ConditionsFailed: return "ConditionsFailed";
    case ErrorCode::F1DivisibleByP: return "F1DivisibleByP";
    case ErrorCode::NegativeValuationEntry: return "NegativeValuationEntry";
    case ErrorCode::IdentityFails: return "IdentityFails";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace bkhopf
