#include <doctest.h>

#include <algorithm>
#include <set>

#include "support.hpp"
#include "troplane/curve.hpp"
#include "troplane/error.hpp"

using namespace troplane;
using namespace troplane::testing;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::InvalidInput;
}

std::set<std::pair<RationalPoint, LatticeVector>> ray_set(const TropicalCurve& c) {
  std::set<std::pair<RationalPoint, LatticeVector>> out;
  for (const auto& r : c.rays) out.insert({c.vertices[r.v], r.dir});
  return out;
}

std::vector<Rational> lengths_of(const TropicalCurve& c) {
  std::vector<Rational> out;
  for (const auto& e : c.edges) out.push_back(e.length);
  return out;
}

// Rectangle over the square dual: horizontal edges of length w, vertical of h.
std::vector<Rational> rectangle_lengths(const TropicalCurve& sq, Rational top, Rational bottom,
                                        Rational left, Rational right) {
  std::vector<Rational> out;
  for (const auto& e : sq.edges) {
    auto a = sq.vertices[e.v[0]], b = sq.vertices[e.v[1]];
    if (e.dir.y == 0) out.push_back(a.y > 0 ? top : bottom);
    else out.push_back(a.x > 0 ? right : left);
    (void)b;
  }
  return out;
}

TropicalPolynomial random_polynomial(std::mt19937_64& rng, int max_terms, int box) {
  std::uniform_int_distribution<int> coord(0, box), val(-5, 5), count(2, max_terms);
  TropicalPolynomial f;
  int n = count(rng);
  while (static_cast<int>(f.terms.size()) < n) f.terms[{coord(rng), coord(rng)}] = val(rng);
  return f;
}

}  // namespace

TEST_CASE("polynomials parse from JSON and text") {
  auto f = parse_polynomial(R"({"terms":[{"exp":[0,0],"val":"1"},{"exp":[1,0],"val":"0"},
                                         {"exp":[0,1],"val":"0"},{"exp":[1,1],"val":"1"}]})");
  CHECK(f.terms == parse_polynomial("t + x + y + t*x*y").terms);
  CHECK(f.terms.at({1, 1}) == 1);
  CHECK(code_of([] { parse_polynomial(R"({"terms":[]})"); }) == Errc::ParseError);
  CHECK(code_of([] {
          parse_polynomial(R"({"terms":[{"exp":[1,1],"val":"0"},{"exp":[1,1],"val":"2"}]})");
        }) == Errc::DuplicateExponent);
  auto g = parse_polynomial("t^(1/2)*x^2 + y^-1 + 3");
  CHECK(g.terms.at({2, 0}) == Rational(1, 2));
  CHECK(g.terms.at({0, -1}) == 0);
  CHECK(g.terms.at({0, 0}) == 0);
  try {
    parse_polynomial("x + * y");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
    CHECK(e.detail().find("position 4") != std::string::npos);
  }
}

TEST_CASE("curve of t + x + y + txy") {
  auto c = curve_f();
  REQUIRE(c.vertices.size() == 2);
  CHECK(c.vertices[0] == pt("-1", "-1"));
  CHECK(c.vertices[1] == pt("1", "1"));
  REQUIRE(c.edges.size() == 1);
  CHECK(c.edges[0].dir == LatticeVector{1, 1});
  CHECK(c.edges[0].length == 2);
  std::set<std::pair<RationalPoint, LatticeVector>> expected{
      {pt("-1", "-1"), {-1, 0}}, {pt("-1", "-1"), {0, -1}},
      {pt("1", "1"), {1, 0}}, {pt("1", "1"), {0, 1}}};
  CHECK(ray_set(c) == expected);
  CHECK(code_of([] { curve_of(parse_polynomial("t*x")); }) == Errc::EmptyCurve);
}

TEST_CASE("the square cycle fixture") {
  auto c = gamma_sq();
  std::set<RationalPoint> vs(c.vertices.begin(), c.vertices.end());
  CHECK(vs == std::set<RationalPoint>{pt("-1", "-1"), pt("-1", "1"), pt("1", "-1"), pt("1", "1")});
  std::set<std::pair<RationalPoint, LatticeVector>> expected{
      {pt("1", "1"), {1, 1}}, {pt("-1", "1"), {-1, 1}},
      {pt("-1", "-1"), {-1, -1}}, {pt("1", "-1"), {1, -1}}};
  CHECK(ray_set(c) == expected);
  for (const auto& e : c.edges) CHECK(e.length == 2);
}

TEST_CASE("smoothness and genus") {
  CHECK(is_smooth(curve_f()));
  CHECK(is_smooth(gamma_sq()));
  CHECK_FALSE(is_smooth(curve_of(parse_polynomial("1 + x^2"))));
  CHECK(genus(curve_f()) == 0);
  CHECK(genus(gamma_sq()) == 1);
  CHECK(genus(tropical_line()) == 0);
}

TEST_CASE("recession fans") {
  CHECK(recession_fan(gamma_sq()).rays ==
        std::vector<LatticeVector>{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}});
  auto ff = recession_fan(curve_f());
  CHECK(ff.rays == std::vector<LatticeVector>{{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  CHECK(ff.cones().size() == 4);
  CHECK(recession_fan(tropical_line()).cones().size() == 3);
}

TEST_CASE("cycles") {
  auto sq = gamma_sq();
  auto cyc = cycle_of(sq);
  CHECK(cyc.length == 8);
  CHECK(sq.vertices[cyc.vertices[0]] == pt("-1", "-1"));
  CHECK(sq.vertices[cyc.vertices[1]] == pt("1", "-1"));
  CHECK(code_of([] { cycle_of(curve_f()); }) == Errc::WrongGenus);

  Rational eps = q("1/4"), d3 = q("1/2"), d4 = q("3/4"), R = 2;
  auto rect = reshape(sq, [&](const RationalPoint& v) {
    return RationalPoint{v.x > 0 ? Rational(1 + d3) : Rational(-1 - d4),
                         v.y > 0 ? Rational(1 + eps) : Rational(-R)};
  });
  CHECK(cycle_of(rect).length == 2 * (2 + d3 + d4) + 2 * (1 + eps + R));
  CHECK(check_balancing(rect).empty());
}

TEST_CASE("translation") {
  auto sq = gamma_sq();
  auto moved = translate(sq, pt("1/4", "1/2"));
  for (std::size_t i = 0; i < sq.vertices.size(); ++i)
    CHECK(moved.vertices[i] == sq.vertices[i] + pt("1/4", "1/2"));
  CHECK(same_curve(translate(sq, pt("0", "0")), sq));
  CHECK(same_curve(translate(moved, pt("-1/4", "-1/2")), sq));
}

TEST_CASE("assembling from lengths") {
  auto sq = gamma_sq();
  int base = vertex_at(sq, pt("-1", "-1"));
  auto again = assemble_curve(sq.dual, base, pt("-1", "-1"), lengths_of(sq));
  CHECK(same_curve(again, sq));

  auto rect = assemble_curve(sq.dual, base, pt("-1", "-1"), rectangle_lengths(sq, 3, 3, 2, 2));
  CHECK(cycle_of(rect).length == 10);
  CHECK(recession_fan(rect).rays == recession_fan(sq).rays);
  CHECK(vertex_at(rect, pt("2", "1")) >= 0);

  try {
    assemble_curve(sq.dual, base, pt("-1", "-1"), rectangle_lengths(sq, 2, 3, 2, 2));
    FAIL("expected CYCLE_NOT_CLOSED");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::CycleNotClosed);
    CHECK(e.detail().find("defect") != std::string::npos);
  }
  CHECK(code_of([&] {
          assemble_curve(sq.dual, base, pt("0", "0"), rectangle_lengths(sq, 0, 0, 2, 2));
        }) == Errc::NonpositiveLength);
}

TEST_CASE("balancing violations are reported") {
  auto sq = gamma_sq();
  CHECK(check_balancing(sq).empty());
  auto broken = sq;
  int v = broken.rays[0].v;
  broken.rays.erase(broken.rays.begin());
  CHECK(check_balancing(broken) == std::vector<int>{v});
}

TEST_CASE("retraction onto the cycle") {
  auto sq = gamma_sq();
  CHECK(retraction(sq, pt("0", "1")) == pt("0", "1"));
  CHECK(retraction(sq, pt("2", "2")) == pt("1", "1"));
  CHECK(code_of([] { retraction(curve_f(), pt("0", "0")); }) == Errc::WrongGenus);
  CHECK(code_of([&] { retraction(sq, pt("5", "0")); }) == Errc::PointNotOnCurve);
}

TEST_CASE("random polynomials give balanced curves with dual counts") {
  auto rng = make_rng(11);
  int smooth = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto f = random_polynomial(rng, 8, 3);
    auto c = curve_of(f);
    CHECK(check_balancing(c).empty());
    if (c.newton.dimension() < 2) continue;
    int interior = 0, boundary = 0;
    for (const auto& e : c.dual.edges()) (e.interior() ? interior : boundary)++;
    CHECK(c.vertices.size() == c.dual.cells().size());
    CHECK(static_cast<int>(c.rays.size()) == boundary);
    CHECK(static_cast<int>(c.edges.size()) == interior);
    CHECK(same_curve(curve_of(dual_polynomial(c)), c));
    if (is_smooth(c)) {
      ++smooth;
      CHECK(Rational(static_cast<long>(c.vertices.size())) == 2 * area(c.newton));
      auto dual_vertices = c.dual.vertices();
      int inner = static_cast<int>(std::count_if(dual_vertices.begin(), dual_vertices.end(),
          [&](auto& p) { return c.newton.contains_in_interior(p); }));
      CHECK(genus(c) == inner);
    }
    if (!c.edges.empty()) {
      auto back = assemble_curve(c.dual, 0, c.vertices[0], lengths_of(c));
      CHECK(same_curve(back, c));
    }
    if (genus(c) == 1) {
      for (const auto& r : c.rays) {
        auto p = c.vertices[r.v] + r.dir;
        auto once = retraction(c, p);
        CHECK(retraction(c, once) == once);
      }
    }
  }
  CHECK(smooth > 0);
}
