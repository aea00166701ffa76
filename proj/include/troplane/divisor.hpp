#pragma once

#include <vector>

#include "troplane/intersect.hpp"

namespace troplane {

// Piecewise linear function on a curve. pieces[s] describes segment s (edge
// ids, then rays): breaks are strictly increasing lattice-length parameters
// inside the segment and slopes[i] is the slope on the i-th piece, measured
// along the segment direction. Ray slopes must end at 0.
struct PLFunction {
  struct Piece {
    std::vector<Rational> breaks;
    std::vector<Rational> slopes;  // breaks.size() + 1 entries
  };
  std::vector<Piece> pieces;
  Rational anchor_value;  // value at vertex 0
};

// Throws InvalidPl on non-integer slopes, discontinuities or rays that are
// not eventually constant.
Divisor divisor_of_pl(const TropicalCurve& c, const PLFunction& phi);

// Values of phi at the vertices; validates phi.
std::vector<Rational> vertex_values(const TropicalCurve& c, const PLFunction& phi);

struct AbelJacobiClass {
  std::int64_t degree = 0;
  Rational position;  // in [0, cycle length)

  bool operator==(const AbelJacobiClass&) const = default;
};

// Counterclockwise lattice arclength from the least cycle vertex of a point
// on the cycle.
Rational cycle_arclength(const TropicalCurve& c, const Cycle& cyc, const RationalPoint& p);

AbelJacobiClass abel_jacobi(const TropicalCurve& c, const Divisor& d);
bool linearly_equivalent(const TropicalCurve& c, const Divisor& d1, const Divisor& d2);

// Chip-firing decision on the 1/n subdivision of the curve.
bool equivalent_bruteforce(const TropicalCurve& c, const Divisor& d1, const Divisor& d2, int n);

bool is_internal(const TropicalCurve& c, const Divisor& d);

struct DivisorCell {
  std::vector<int> pinned;  // vertex ids, sorted, with repetition
  std::vector<int> free;    // segment ids carrying interior chips, sorted, with repetition
  int dimension = 0;
  bool maximal = false;
  bool internal = false;  // maximal of dimension deg - 1
  bool exposed = false;
};

DivisorCell cell_of(const TropicalCurve& c, const Divisor& d);
int cell_dimension(const TropicalCurve& c, const DivisorCell& cell);
bool generalized_internal(const TropicalCurve& c, const DivisorCell& cell);

// Throws NotSmooth; every divisor operation assumes a smooth curve.
void require_smooth(const TropicalCurve& c);

// Throws PointNotOnCurve unless every support point lies on c.
void require_on_curve(const TropicalCurve& c, const Divisor& d);

}  // namespace troplane
