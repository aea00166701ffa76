#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>

#include "troplane/curve.hpp"

namespace troplane::testing {

inline std::uint64_t test_seed() {
  if (const char* s = std::getenv("TROPLANE_SEED")) return std::stoull(s);
  return 20240917;
}

inline std::mt19937_64 make_rng(std::uint64_t salt) { return std::mt19937_64(test_seed() ^ salt); }

inline RationalPoint pt(const std::string& x, const std::string& y) {
  return {parse_rational(x), parse_rational(y)};
}

inline Rational q(const std::string& s) { return parse_rational(s); }

// t + x + y + t*x*y
inline TropicalCurve curve_f() { return curve_of(parse_polynomial("t + x + y + t*x*y")); }

// The square cycle with vertices (+-1, +-1) and diagonal rays.
inline TropicalCurve gamma_sq() {
  return curve_of(parse_polynomial("t*x + t*y + x*y + t*x^2*y + t*x*y^2"));
}

inline TropicalCurve tropical_line() { return curve_of(parse_polynomial("1 + x + y")); }

// Same dual as gamma_sq, vertices moved by a coordinatewise map.
template <class F>
TropicalCurve reshape(const TropicalCurve& c, F&& move) {
  std::vector<RationalPoint> pos;
  for (const auto& v : c.vertices) pos.push_back(move(v));
  return make_curve(c.dual, std::move(pos));
}

// The 3x2 rectangle with vertices (+-3/2, +-1).
inline TropicalCurve gamma_rect() {
  return reshape(gamma_sq(), [](const RationalPoint& v) {
    return RationalPoint{v.x * Rational(3, 2), v.y};
  });
}

inline int vertex_at(const TropicalCurve& c, const RationalPoint& p) {
  for (std::size_t i = 0; i < c.vertices.size(); ++i)
    if (c.vertices[i] == p) return static_cast<int>(i);
  return -1;
}

}  // namespace troplane::testing

namespace troplane::testing {

// Vertex positions remapped by lookup; unmatched vertices stay put.
inline TropicalCurve moved_vertices(const TropicalCurve& c,
                                    std::vector<std::pair<RationalPoint, RationalPoint>> moves) {
  return reshape(c, [&](const RationalPoint& v) {
    for (auto& [from, to] : moves)
      if (from == v) return to;
    return v;
  });
}

// Same dual as t + x + y + txy, vertices at a and b.
inline TropicalCurve f_type(const RationalPoint& a, const RationalPoint& b) {
  return moved_vertices(curve_f(), {{pt("-1", "-1"), a}, {pt("1", "1"), b}});
}

// Anti-diagonal curve with vertices (-7/10, 7/10) and (7/10, -7/10).
inline TropicalCurve anti_diagonal() {
  return curve_of(parse_polynomial("1 + t^(7/10)*x + t^(7/10)*y + x*y"));
}

// The rectangle over the square dual with top y = 1 + eps, right x = 1 + d3,
// left x = -1 - d4 and bottom y = -R.
inline TropicalCurve rectangle(const Rational& eps, const Rational& d3, const Rational& d4,
                               const Rational& R) {
  return reshape(gamma_sq(), [&](const RationalPoint& v) {
    return RationalPoint{v.x > 0 ? Rational(1 + d3) : Rational(-1 - d4),
                         v.y > 0 ? Rational(1 + eps) : Rational(-R)};
  });
}

// Smooth curve over a random polygon with at most max_points lattice points;
// strictly concave quadratic lifts keep every lattice point in the subdivision.
inline TropicalCurve random_smooth_curve(std::mt19937_64& rng, std::size_t max_points = 8) {
  std::uniform_int_distribution<int> coord(0, 2), quad(40, 120), mix(-15, 15), noise(0, 9);
  while (true) {
    std::vector<LatticeVector> pts;
    for (int i = 0; i < 4; ++i) pts.push_back({coord(rng), coord(rng)});
    auto hull = LatticePolygon::hull(pts);
    if (hull.dimension() < 2) continue;
    auto lattice = hull.lattice_points();
    if (lattice.size() > max_points) continue;
    int a = quad(rng), b = mix(rng), c = quad(rng);
    TropicalPolynomial f;
    for (const auto& e : lattice) f.terms[e] = a * e.x * e.x + b * e.x * e.y + c * e.y * e.y + noise(rng);
    auto curve = curve_of(f);
    if (is_smooth(curve)) return curve;
  }
}

}  // namespace troplane::testing
