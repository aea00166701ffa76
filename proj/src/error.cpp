#include "troplane/error.hpp"

namespace troplane {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::ZeroVector: return "ZERO_VECTOR";
    case Errc::IrrationalDirection: return "IRRATIONAL_DIRECTION";
    case Errc::NotATriangle: return "NOT_A_TRIANGLE";
    case Errc::ParseError: return "PARSE_ERROR";
    case Errc::DuplicateExponent: return "DUPLICATE_EXPONENT";
    case Errc::EmptyCurve: return "EMPTY_CURVE";
    case Errc::WrongGenus: return "WRONG_GENUS";
    case Errc::CycleNotClosed: return "CYCLE_NOT_CLOSED";
    case Errc::NonpositiveLength: return "NONPOSITIVE_LENGTH";
    case Errc::PointNotOnCurve: return "POINT_NOT_ON_CURVE";
    case Errc::NotProper: return "NOT_PROPER";
    case Errc::DegenerateDirection: return "DEGENERATE_DIRECTION";
    case Errc::InvalidPl: return "INVALID_PL";
    case Errc::UnsupportedGenus: return "UNSUPPORTED_GENUS";
    case Errc::ResolutionMismatch: return "RESOLUTION_MISMATCH";
    case Errc::NotInLinearSystem: return "NOT_IN_LINEAR_SYSTEM";
    case Errc::NotSmooth: return "NOT_SMOOTH";
    case Errc::NotRational: return "NOT_RATIONAL";
    case Errc::Tie: return "TIE";
    case Errc::OnConeBoundary: return "ON_CONE_BOUNDARY";
    case Errc::NotLinearHere: return "NOT_LINEAR_HERE";
    case Errc::PolygonTooLarge: return "POLYGON_TOO_LARGE";
    case Errc::ZeroDivision: return "ZERO_DIVISION";
    case Errc::OrderTooLow: return "ORDER_TOO_LOW";
    case Errc::ZeroRoot: return "ZERO_ROOT";
    case Errc::GenericityFailure: return "GENERICITY_FAILURE";
    case Errc::NewtonNotContained: return "NEWTON_NOT_CONTAINED";
    case Errc::EmptyScene: return "EMPTY_SCENE";
    case Errc::InvalidInput: return "INVALID_INPUT";
  }
  return "UNKNOWN";
}

}  // namespace troplane
