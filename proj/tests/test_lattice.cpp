#include <doctest.h>

#include <algorithm>

#include "support.hpp"
#include "troplane/error.hpp"
#include "troplane/lattice.hpp"

using namespace troplane;
using namespace troplane::testing;

namespace {

LatticePolygon poly(std::initializer_list<LatticeVector> pts) {
  std::vector<LatticeVector> v(pts);
  return LatticePolygon::hull(v);
}

LatticePolygon unit_square() { return poly({{0, 0}, {1, 0}, {0, 1}, {1, 1}}); }
LatticePolygon diamond() { return poly({{1, 0}, {2, 1}, {1, 2}, {0, 1}}); }

}  // namespace

TEST_CASE("primitive vectors") {
  CHECK(primitive({4, 6}) == std::pair<LatticeVector, std::int64_t>{{2, 3}, 2});
  CHECK(primitive({0, -5}) == std::pair<LatticeVector, std::int64_t>{{0, -1}, 5});
  CHECK(primitive({1, 1}) == std::pair<LatticeVector, std::int64_t>{{1, 1}, 1});
  try {
    primitive({0, 0});
    FAIL("expected ZeroVector");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ZeroVector);
  }
}

TEST_CASE("primitive reconstructs random vectors") {
  auto rng = make_rng(1);
  std::uniform_int_distribution<int> d(-60, 60);
  for (int i = 0; i < 500; ++i) {
    LatticeVector v{d(rng), d(rng)};
    if (v == LatticeVector{}) continue;
    auto [p, k] = primitive(v);
    CHECK(k >= 1);
    CHECK(p * k == v);
    CHECK(std::gcd(std::abs(p.x), std::abs(p.y)) == 1);
  }
}

TEST_CASE("determinants") {
  CHECK(det2(LatticeVector{1, 0}, LatticeVector{0, 1}) == 1);
  CHECK(det2(LatticeVector{1, 1}, LatticeVector{1, -1}) == -2);
  CHECK(det2(LatticeVector{1, 1}, LatticeVector{2, 2}) == 0);
}

TEST_CASE("lattice lengths") {
  CHECK(lattice_length(pt("-1", "-1"), pt("1", "1")) == 2);
  CHECK(lattice_length(pt("0", "0"), pt("0", "0")) == 0);
  CHECK(lattice_length(pt("0", "0"), pt("3/2", "1/2")) == q("1/2"));
}

TEST_CASE("rationals round trip through their string form") {
  auto rng = make_rng(2);
  std::uniform_int_distribution<long> num(-100000, 100000), den(1, 5000);
  for (int i = 0; i < 500; ++i) {
    Rational r = frac(num(rng), den(rng));
    CHECK(parse_rational(to_string(r)) == r);
  }
  CHECK(to_string(q("6/4")) == "3/2");
  CHECK(to_string(q("-8/4")) == "-2");
  CHECK(q("1.25") == Rational(5, 4));
  CHECK_THROWS_AS(parse_rational("1/"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
}

TEST_CASE("regular subdivision of the lifted unit square") {
  LiftedConfiguration cfg{{{0, 0}, -1}, {{1, 0}, 0}, {{0, 1}, 0}, {{1, 1}, -1}};
  auto s = regular_subdivision(cfg);
  REQUIRE(s.cells().size() == 2);
  CHECK(s.cells()[0] == poly({{0, 0}, {1, 0}, {0, 1}}));
  CHECK(s.cells()[1] == poly({{1, 0}, {1, 1}, {0, 1}}));
  int interior = 0;
  for (const auto& e : s.edges())
    if (e.interior()) {
      ++interior;
      CHECK(e.segment == make_segment({1, 0}, {0, 1}));
    }
  CHECK(interior == 1);
}

TEST_CASE("regular subdivision of the lifted diamond") {
  LiftedConfiguration cfg{{{1, 0}, -1}, {{2, 1}, -1}, {{1, 2}, -1}, {{0, 1}, -1}, {{1, 1}, 0}};
  auto s = regular_subdivision(cfg);
  REQUIRE(s.cells().size() == 4);
  for (const auto& c : s.cells()) {
    CHECK(c.vertices().size() == 3);
    CHECK(is_unimodular(c));
    CHECK(std::count(c.vertices().begin(), c.vertices().end(), LatticeVector{1, 1}) == 1);
  }
}

TEST_CASE("flat lifts give the trivial subdivision") {
  LiftedConfiguration cfg{{{0, 0}, 0}, {{2, 0}, 0}, {{0, 2}, 0}, {{1, 0}, 0}, {{1, 1}, 0}};
  auto s = regular_subdivision(cfg);
  REQUIRE(s.cells().size() == 1);
  CHECK(s.cells()[0] == poly({{0, 0}, {2, 0}, {0, 2}}));
}

TEST_CASE("unimodular triangles") {
  CHECK(is_unimodular(poly({{0, 0}, {1, 0}, {0, 1}})));
  CHECK_FALSE(is_unimodular(poly({{0, 0}, {2, 0}, {0, 1}})));
  CHECK(is_unimodular(poly({{1, 0}, {2, 1}, {1, 1}})));
  CHECK_THROWS_AS(is_unimodular(unit_square()), Error);
}

TEST_CASE("mixed volumes") {
  CHECK(mixed_volume(unit_square(), unit_square()) == 2);
  CHECK(mixed_volume(diamond(), diamond()) == 4);
  CHECK(mixed_volume(diamond(), poly({{3, 4}})) == 0);
  CHECK(mixed_volume(diamond(), diamond()) == 2 * area(diamond()));
}

TEST_CASE("random subdivisions tile their hull and mixed volume is additive") {
  auto rng = make_rng(3);
  std::uniform_int_distribution<int> coord(0, 3), lift(-6, 6);
  for (int trial = 0; trial < 150; ++trial) {
    LiftedConfiguration cfg;
    std::vector<LatticeVector> pts;
    int n = 3 + trial % 6;
    for (int i = 0; i < n; ++i) {
      LatticeVector e{coord(rng), coord(rng)};
      if (std::find(pts.begin(), pts.end(), e) != pts.end()) continue;
      pts.push_back(e);
      cfg.push_back({e, lift(rng)});
    }
    auto hull = LatticePolygon::hull(pts);
    if (hull.dimension() < 2) continue;
    auto s = regular_subdivision(cfg);
    Rational total = 0;
    for (const auto& c : s.cells()) total += area(c);
    CHECK(total == area(hull));
    for (const auto& e : s.edges()) {
      if (!e.interior()) {
        // A boundary edge lies on an edge of the hull.
        bool found = false;
        const auto& hv = hull.vertices();
        for (std::size_t k = 0; k < hv.size(); ++k) {
          auto a = hv[k], b = hv[(k + 1) % hv.size()];
          if (det2(b - a, e.segment.a - a) == 0 && det2(b - a, e.segment.b - a) == 0) found = true;
        }
        CHECK(found);
      }
    }
    std::vector<LatticeVector> qpts{{0, 0}, {coord(rng), coord(rng)}, {coord(rng), coord(rng)}};
    auto other = LatticePolygon::hull(qpts);
    CHECK(mixed_volume(hull, minkowski_sum(other, other)) == 2 * mixed_volume(hull, other));
    CHECK(mixed_volume(hull, other) == mixed_volume(other, hull));
  }
}
