#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace troplane {

enum class Errc {
  ZeroVector,
  IrrationalDirection,
  NotATriangle,
  ParseError,
  DuplicateExponent,
  EmptyCurve,
  WrongGenus,
  CycleNotClosed,
  NonpositiveLength,
  PointNotOnCurve,
  NotProper,
  DegenerateDirection,
  InvalidPl,
  UnsupportedGenus,
  ResolutionMismatch,
  NotInLinearSystem,
  NotSmooth,
  NotRational,
  Tie,
  OnConeBoundary,
  NotLinearHere,
  PolygonTooLarge,
  ZeroDivision,
  OrderTooLow,
  ZeroRoot,
  GenericityFailure,
  NewtonNotContained,
  EmptyScene,
  InvalidInput,
};

// Stable machine-readable name, e.g. "CYCLE_NOT_CLOSED".
std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace troplane
