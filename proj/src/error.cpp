#include "chaincore/error.hpp"

namespace chaincore {

std::string_view to_string(ErrorKind kind)
{
  switch (kind) {
  case ErrorKind::CapExceeded: return "CapExceeded";
  case ErrorKind::InvalidPermutation: return "InvalidPermutation";
  case ErrorKind::ParentMismatch: return "ParentMismatch";
  case ErrorKind::NotNormal: return "NotNormal";
  case ErrorKind::SplitFailure: return "SplitFailure";
  case ErrorKind::NonIntegral: return "NonIntegral";
  case ErrorKind::NotCentral: return "NotCentral";
  case ErrorKind::NoExponent: return "NoExponent";
  case ErrorKind::NotAPower: return "NotAPower";
  case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
  case ErrorKind::PrimeMismatch: return "PrimeMismatch";
  case ErrorKind::DimensionMismatch: return "DimensionMismatch";
  case ErrorKind::ParseError: return "ParseError";
  case ErrorKind::ValidationError: return "ValidationError";
  case ErrorKind::TheoremViolation: return "TheoremViolation";
  case ErrorKind::UncoveredIrrep: return "UncoveredIrrep";
  case ErrorKind::NonCommutativeFusion: return "NonCommutativeFusion";
  case ErrorKind::NotAbelian: return "NotAbelian";
  case ErrorKind::SpecParseError: return "SpecParseError";
  case ErrorKind::Overflow: return "Overflow";
  case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

} // namespace chaincore
