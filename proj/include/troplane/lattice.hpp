#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "troplane/rational.hpp"

namespace troplane {

struct LatticeVector {
  std::int64_t x = 0;
  std::int64_t y = 0;

  auto operator<=>(const LatticeVector&) const = default;

  LatticeVector operator+(const LatticeVector& o) const { return {x + o.x, y + o.y}; }
  LatticeVector operator-(const LatticeVector& o) const { return {x - o.x, y - o.y}; }
  LatticeVector operator-() const { return {-x, -y}; }
  LatticeVector operator*(std::int64_t k) const { return {k * x, k * y}; }
};

struct RationalPoint {
  Rational x;
  Rational y;

  RationalPoint() = default;
  RationalPoint(Rational px, Rational py) : x(std::move(px)), y(std::move(py)) {}
  explicit RationalPoint(const LatticeVector& v) : x(v.x), y(v.y) {}

  bool operator==(const RationalPoint& o) const { return x == o.x && y == o.y; }
  bool operator<(const RationalPoint& o) const { return x < o.x || (x == o.x && y < o.y); }

  RationalPoint operator+(const RationalPoint& o) const { return {x + o.x, y + o.y}; }
  RationalPoint operator-(const RationalPoint& o) const { return {x - o.x, y - o.y}; }
  RationalPoint operator-() const { return {-x, -y}; }
  RationalPoint operator+(const LatticeVector& v) const { return {x + v.x, y + v.y}; }
};

inline RationalPoint operator*(const Rational& s, const LatticeVector& v) {
  return {s * v.x, s * v.y};
}
inline RationalPoint operator*(const Rational& s, const RationalPoint& p) {
  return {s * p.x, s * p.y};
}

std::int64_t det2(const LatticeVector& u, const LatticeVector& v);
std::int64_t dot(const LatticeVector& u, const LatticeVector& v);
Rational det2(const RationalPoint& u, const RationalPoint& v);
Rational det2(const RationalPoint& u, const LatticeVector& v);
Rational dot(const RationalPoint& u, const LatticeVector& v);
Rational dot(const RationalPoint& u, const RationalPoint& v);

// (p, k) with v = k p, k >= 1 and p primitive. Throws ZeroVector.
std::pair<LatticeVector, std::int64_t> primitive(const LatticeVector& v);

// Primitive lattice direction of a nonzero rational vector. Throws ZeroVector.
LatticeVector primitive_direction(const RationalPoint& v);

// The lambda >= 0 with q - p = lambda * primitive direction.
Rational lattice_length(const RationalPoint& p, const RationalPoint& q);

// Counterclockwise angular order starting at the positive x axis.
bool angle_less(const LatticeVector& a, const LatticeVector& b);

// Convex lattice polygon; vertices counterclockwise, starting at the
// lexicographically least one. Degenerate polygons (a point or a segment)
// are allowed and have one or two vertices.
class LatticePolygon {
 public:
  LatticePolygon() = default;

  static LatticePolygon hull(std::span<const LatticeVector> points);

  const std::vector<LatticeVector>& vertices() const { return vertices_; }
  int dimension() const;
  bool empty() const { return vertices_.empty(); }

  // Containment of a lattice point in the closed polygon.
  bool contains(const LatticeVector& p) const;
  bool contains_in_interior(const LatticeVector& p) const;
  std::vector<LatticeVector> lattice_points() const;

  bool operator==(const LatticePolygon&) const = default;
  auto operator<=>(const LatticePolygon& o) const { return vertices_ <=> o.vertices_; }

 private:
  std::vector<LatticeVector> vertices_;
};

Rational area(const LatticePolygon& p);
bool is_unimodular(const LatticePolygon& t);
LatticePolygon minkowski_sum(const LatticePolygon& p, const LatticePolygon& q);
Rational mixed_volume(const LatticePolygon& p, const LatticePolygon& q);

struct LiftedPoint {
  LatticeVector exponent;
  Rational lift;
};

using LiftedConfiguration = std::vector<LiftedPoint>;

// Segment between two lattice points, stored with a < b.
struct LatticeSegment {
  LatticeVector a;
  LatticeVector b;

  auto operator<=>(const LatticeSegment&) const = default;
};

LatticeSegment make_segment(const LatticeVector& p, const LatticeVector& q);

// A polyhedral subdivision of a lattice polygon. Cells are kept in canonical
// (sorted) order; edges are derived from the cells and sorted by segment.
class Subdivision {
 public:
  struct Edge {
    LatticeSegment segment;
    int left = -1;   // cell having the segment counterclockwise as a->b
    int right = -1;  // cell on the other side, -1 on the boundary
    bool interior() const { return left >= 0 && right >= 0; }
  };

  Subdivision() = default;
  explicit Subdivision(std::vector<LatticePolygon> cells);

  const std::vector<LatticePolygon>& cells() const { return cells_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const LatticePolygon& support() const { return support_; }

  // Vertices of all cells, sorted and unique.
  std::vector<LatticeVector> vertices() const;

  bool operator==(const Subdivision& o) const { return cells_ == o.cells_; }

 private:
  std::vector<LatticePolygon> cells_;
  std::vector<Edge> edges_;
  LatticePolygon support_;
};

// Projects the upper faces of the lifted configuration.
Subdivision regular_subdivision(const LiftedConfiguration& cfg);

// Value of the upper hull of the lifted configuration over a lattice point of
// its support.
Rational upper_hull_value(const LiftedConfiguration& cfg, const LatticeVector& p);

}  // namespace troplane
