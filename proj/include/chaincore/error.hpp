#ifndef CHAINCORE_ERROR_HPP
#define CHAINCORE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace chaincore {

enum class ErrorKind {
  CapExceeded,
  InvalidPermutation,
  ParentMismatch,
  NotNormal,
  SplitFailure,
  NonIntegral,
  NotCentral,
  NoExponent,
  NotAPower,
  NotAHomomorphism,
  PrimeMismatch,
  DimensionMismatch,
  ParseError,
  ValidationError,
  TheoremViolation,
  UncoveredIrrep,
  NonCommutativeFusion,
  NotAbelian,
  SpecParseError,
  Overflow,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error
{
public:
  Error(ErrorKind kind, std::string const &what)
  : std::runtime_error(std::string(to_string(kind)) + ": " + what),
    _kind(kind)
  {}

  ErrorKind kind() const noexcept
  { return _kind; }

private:
  ErrorKind _kind;
};

} // namespace chaincore

#endif // CHAINCORE_ERROR_HPP
