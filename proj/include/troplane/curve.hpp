#pragma once

#include <array>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "troplane/lattice.hpp"

namespace troplane {

// Max-plus tropical polynomial recorded through coefficient valuations; the
// term with exponent e contributes <e, w> - nu(e).
struct TropicalPolynomial {
  std::map<LatticeVector, Rational> terms;

  LiftedConfiguration lifted() const;
  LatticePolygon newton() const;
};

// JSON ({"terms":[{"exp":[i,j],"val":"q"}]}) or infix text such as
// "t + x + y + t*x*y", "t^(1/2)*x^2 + y^-1". Throws ParseError or
// DuplicateExponent.
TropicalPolynomial parse_polynomial(std::string_view text);

struct BoundedEdge {
  std::array<int, 2> v{};  // v[0] < v[1]
  LatticeVector dir;       // primitive, pointing from v[0] to v[1]
  Rational length;         // lattice length
  std::int64_t weight = 1;
  LatticeSegment dual;
};

struct Ray {
  int v = 0;
  LatticeVector dir;  // primitive
  std::int64_t weight = 1;
  LatticeSegment dual;
};

// Combinatorial skeleton shared by every curve with a given dual subdivision.
struct DualGraph {
  int vertex_count = 0;
  std::vector<BoundedEdge> edges;  // lengths left at zero
  std::vector<Ray> rays;
};

DualGraph dual_graph(const Subdivision& dual);

struct TropicalCurve {
  std::vector<RationalPoint> vertices;  // vertex i is dual to dual.cells()[i]
  std::vector<BoundedEdge> edges;
  std::vector<Ray> rays;
  Subdivision dual;
  LatticePolygon newton;

  // Edge ids first, then ray ids offset by edges.size().
  int segment_count() const { return static_cast<int>(edges.size() + rays.size()); }
};

// Builds a curve from its dual subdivision and vertex positions; checks that
// every bounded edge points along its dual normal with positive length.
TropicalCurve make_curve(const Subdivision& dual, std::vector<RationalPoint> positions);

TropicalCurve curve_of(const TropicalPolynomial& f);

// Recovers a polynomial (up to an additive constant in the lifts) whose curve
// is the given one.
TropicalPolynomial dual_polynomial(const TropicalCurve& c);

bool is_smooth(const TropicalCurve& c);
int genus(const TropicalCurve& c);
int vertex_degree(const TropicalCurve& c, int v);

struct RecessionFan {
  std::vector<LatticeVector> rays;  // counterclockwise from the positive x axis
  std::vector<std::pair<LatticeVector, LatticeVector>> cones() const;
};

RecessionFan recession_fan(const TropicalCurve& c);

struct Cycle {
  std::vector<int> vertices;  // counterclockwise, starting at the least vertex
  std::vector<int> edges;     // edges[k] joins vertices[k] and vertices[k+1]
  std::vector<bool> forward;  // edges[k] traversed from its v[0]
  Rational length;
};

Cycle cycle_of(const TropicalCurve& c);

TropicalCurve translate(const TropicalCurve& c, const RationalPoint& shift);

// Lengths are indexed like dual_graph(dual).edges.
TropicalCurve assemble_curve(const Subdivision& dual, int base_vertex,
                             const RationalPoint& base_position,
                             const std::vector<Rational>& lengths);

std::vector<int> check_balancing(const TropicalCurve& c);

// A point of a curve: a vertex, or a parameter in lattice length measured
// from v[0] of an edge or from the base of a ray (strictly inside).
struct CurvePoint {
  enum class Kind { Vertex, Edge, Ray };
  Kind kind = Kind::Vertex;
  int index = 0;
  Rational t;
};

std::optional<CurvePoint> locate(const TropicalCurve& c, const RationalPoint& p);
RationalPoint position(const TropicalCurve& c, const CurvePoint& p);

// Uniform view of edges and rays.
struct Segment {
  RationalPoint origin;
  LatticeVector dir;
  std::optional<Rational> length;  // empty for rays
  std::int64_t weight = 1;
  int from = 0;
  int to = -1;  // -1 for rays
};

std::vector<Segment> segments(const TropicalCurve& c);

// Segments (by segment id) whose closure contains p.
std::vector<int> segments_through(const TropicalCurve& c, const RationalPoint& p);

RationalPoint retraction(const TropicalCurve& c, const RationalPoint& p);

// Equality of the embedded weighted curves, independent of labels.
bool same_curve(const TropicalCurve& a, const TropicalCurve& b);

}  // namespace troplane
