#include <doctest.h>

#include <algorithm>
#include <set>

#include "support.hpp"
#include "troplane/error.hpp"
#include "troplane/realize.hpp"

using namespace troplane;
using namespace troplane::testing;

namespace {

Divisor chips(std::initializer_list<std::pair<RationalPoint, std::int64_t>> list) {
  Divisor d;
  for (const auto& [p, m] : list) d.add(p, m);
  return d;
}

template <class F>
std::optional<Errc> code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

Divisor equal_speed_divisor() {
  return chips({{pt("-5/4", "5/4"), 1}, {pt("5/4", "5/4"), 1}, {pt("3/2", "-3/2"), 1}, {pt("-7/4", "-7/4"), 1}});
}

Divisor one_sided_divisor() {
  return chips({{pt("-1", "1"), 1}, {pt("5/4", "5/4"), 1}, {pt("3/2", "-3/2"), 1}, {pt("-7/4", "-7/4"), 1}});
}

FamilyPoint at(const RationalPoint& shift, std::vector<Rational> lengths) {
  FamilyPoint p;
  p.shift = shift;
  p.lengths = std::move(lengths);
  return p;
}

// Small generic translation with denominator 97.
RationalPoint random_eta(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-40, 40);
  return {frac(num(rng), 97), frac(num(rng), 97)};
}

}  // namespace

TEST_CASE("curve families") {
  auto sq = family_of(gamma_sq());
  CHECK(sq.graph.edges.size() == 4);
  CHECK(sq.closure_rank == 2);
  CHECK(sq.free_lengths() == 2);
  for (const auto& v : length_space(sq)) {
    // Opposite square edges keep equal lengths.
    auto c = member(sq, at({0, 0}, {2 + v[0], 2 + v[1], 2 + v[2], 2 + v[3]}));
    CHECK(c.vertices.size() == 4);
  }
  auto f = family_of(curve_f());
  CHECK(f.graph.edges.size() == 1);
  CHECK(f.closure.empty());
  CHECK(family_of(gamma_rect()).free_lengths() == 2);
  CHECK(code_of([] { family_of(curve_of(parse_polynomial("1 + x^2"))); }) == Errc::NotSmooth);

  auto base = point_of(sq);
  CHECK(same_curve(member(sq, base), gamma_sq()));
  auto shifted = base;
  shifted.shift = pt("1/4", "1/2");
  CHECK(same_curve(member(sq, shifted), translate(gamma_sq(), pt("1/4", "1/2"))));
  auto wide = at(pt("1/4", "1/2"), {q("17/8"), 2, q("17/8"), 2});
  std::vector<Rational> lengths = wide.lengths;
  for (std::size_t k = 0; k < 4; ++k) {
    if (sq.graph.edges[k].dir.x == 0) lengths[k] = 2;
    else lengths[k] = q("17/8");
  }
  wide.lengths = lengths;
  auto widened = member(sq, wide);
  auto ys = std::set<Rational>{};
  for (const auto& v : widened.vertices) ys.insert(v.y);
  CHECK(ys.size() == 2);
  wide.lengths[0] += 1;
  CHECK(code_of([&] { member(sq, wide); }) == Errc::CycleNotClosed);
}

TEST_CASE("base vertex and unbounded region") {
  auto sq = gamma_sq();
  CHECK(sq.vertices[lowest_vertex(sq, pt("1/4", "1/2"))] == pt("-1", "-1"));
  CHECK(code_of([&] { lowest_vertex(sq, pt("0", "1")); }) == Errc::Tie);
  auto f = curve_f();
  CHECK(f.vertices[lowest_vertex(f, pt("1/3", "1/5"))] == pt("-1", "-1"));

  auto top = unbounded_region(sq, pt("1/4", "1/2"));
  CHECK(top.first_ray == LatticeVector{1, 1});
  CHECK(top.second_ray == LatticeVector{-1, 1});
  CHECK(in_region(sq, top.monomial, pt("0", "5")));
  CHECK_FALSE(in_region(sq, top.monomial, pt("5", "0")));
  CHECK_FALSE(in_region(sq, top.monomial, pt("0", "0")));
  auto right = unbounded_region(sq, pt("1/2", "1/4"));
  CHECK(in_region(sq, right.monomial, pt("5", "0")));
  CHECK(code_of([&] { unbounded_region(sq, pt("1", "1")); }) == Errc::OnConeBoundary);
  // The bounded square is never the region of a generic direction.
  auto rng = make_rng(71);
  for (int i = 0; i < 40; ++i) {
    auto shift = random_eta(rng);
    std::optional<UnboundedRegion> region;
    try {
      region = unbounded_region(sq, shift);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::OnConeBoundary);
      continue;
    }
    CHECK_FALSE(in_region(sq, region->monomial, pt("0", "0")));
  }
}

TEST_CASE("pinned vertices of the shifted square") {
  auto sq = gamma_sq();
  auto shift = pt("1/4", "1/2");
  auto shifted = translate(sq, shift);
  auto pinned = pinned_vertices(sq, shifted, shift);
  std::set<RationalPoint> where;
  for (int v : pinned) where.insert(shifted.vertices[v]);
  CHECK(where == std::set<RationalPoint>{pt("-1", "-1") + shift, pt("1", "-1") + shift});

  auto line = tropical_line();
  auto moved = translate(line, pt("1/3", "1/5"));
  CHECK(pinned_vertices(line, moved, pt("1/3", "1/5")).size() == 1);

  auto f = curve_f();
  auto g = translate(f, pt("1/3", "1/5"));
  auto fp = pinned_vertices(f, g, pt("1/3", "1/5"));
  auto region = unbounded_region(f, pt("1/3", "1/5"));
  for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v)
    if (!in_region(f, region.monomial, g.vertices[v])) CHECK(std::count(fp.begin(), fp.end(), v) == 1);
  CHECK(code_of([&] { pinned_vertices(sq, sq, shift); }) == Errc::NotProper);
}

TEST_CASE("vertices outside the unbounded region are pinned") {
  auto rng = make_rng(73);
  std::vector<TropicalCurve> fixtures{gamma_sq(), gamma_rect(), curve_f(), tropical_line()};
  for (int i = 0; i < 3; ++i) fixtures.push_back(random_smooth_curve(rng));
  for (const auto& c : fixtures) {
    int sampled = 0;
    for (int attempt = 0; attempt < 400 && sampled < 20; ++attempt) {
      auto shift = random_eta(rng);
      std::optional<UnboundedRegion> region;
      std::vector<int> pinned;
      auto other = translate(c, shift);
      try {
        region = unbounded_region(c, shift);
        pinned = pinned_vertices(c, other, shift);
      } catch (const Error&) {
        continue;
      }
      ++sampled;
      for (int v = 0; v < static_cast<int>(other.vertices.size()); ++v)
        if (!in_region(c, region->monomial, other.vertices[v]))
          CHECK(std::count(pinned.begin(), pinned.end(), v) == 1);
    }
    CHECK(sampled == 20);
  }
}

TEST_CASE("psi and local dimensions") {
  auto sq = gamma_sq();
  auto fam = family_of(sq);
  auto p = at(pt("1/4", "1/2"), {2, 2, 2, 2});
  auto d = intersection_divisor(sq, fam, p);
  CHECK(d.degree() == 4);
  for (const auto& [x, m] : d.chips()) CHECK(m == 1);
  CHECK(intersection_divisor(sq, fam, point_of(fam)) == self_intersection(sq));

  auto dims = local_dims(sq, fam, p);
  CHECK(dims.kernel == 1);
  CHECK(dims.image == 1);
  CHECK(dims.total_image == 3);
  CHECK(dims.image == static_cast<int>(fam.graph.edges.size()) - 2 - 1);

  auto line = tropical_line();
  auto lf = family_of(line);
  auto ld = local_dims(line, lf, at(pt("1/3", "1/5"), {}));
  CHECK(ld.kernel == 0);
  CHECK(ld.image == 0);
  // The single chip can only slide along the line.
  CHECK(ld.total_image == 1);

  auto rect = gamma_rect();
  auto rf = family_of(rect);
  auto rp = point_of(rf);
  rp.shift = pt("1/5", "3/7");
  auto rd = local_dims(rect, rf, rp);
  CHECK(rd.kernel == 1);
  CHECK(rd.image == 1);
}

TEST_CASE("psi on random generic translations has a one-dimensional fiber") {
  auto sq = gamma_sq();
  auto fam = family_of(sq);
  auto rng = make_rng(79);
  int sampled = 0;
  for (int attempt = 0; attempt < 200 && sampled < 20; ++attempt) {
    auto shift = random_eta(rng);
    LocalDims dims;
    try {
      unbounded_region(sq, shift);
      dims = local_dims(sq, fam, at(shift, {2, 2, 2, 2}));
    } catch (const Error&) {
      continue;
    }
    ++sampled;
    CHECK(dims.kernel == 1);
    CHECK(dims.image == 1);
    CHECK(dims.total_image == 3);
  }
  CHECK(sampled == 20);
}

TEST_CASE("pinned vertices stay fixed along the fiber") {
  auto sq = gamma_sq();
  auto fam = family_of(sq);
  auto shift = pt("1/4", "1/2");
  auto p = at(shift, {2, 2, 2, 2});
  p.base_vertex = lowest_vertex(sq, shift);
  auto here = member(fam, p);
  auto target = intersection_divisor(sq, fam, p);
  auto pinned = pinned_vertices(sq, here, shift);
  auto dims = local_dims(sq, fam, p);
  REQUIRE(dims.kernel_basis.size() == 1);
  const auto& k = dims.kernel_basis[0];
  int moved = 0;
  for (const auto& t : {q("1/16"), q("-1/16"), q("1/7"), q("-1/9"), q("1/3")}) {
    auto there = p;
    for (std::size_t i = 0; i < 4; ++i) there.lengths[i] += t * k[i];
    auto other = member(fam, there);
    REQUIRE(intersection_divisor(sq, fam, there) == target);
    for (int v : pinned) CHECK(other.vertices[v] == here.vertices[v]);
    for (int v = 0; v < 4; ++v) moved += other.vertices[v] != here.vertices[v];
  }
  CHECK(moved > 0);
}

TEST_CASE("local dimensions need a domain of linearity") {
  auto sq = gamma_sq();
  auto fam = family_of(sq);
  // The base vertex of the translate sits on the top edge.
  CHECK(code_of([&] { local_dims(sq, fam, at(pt("1/2", "2"), {2, 2, 2, 2})); }) == Errc::NotLinearHere);
}

TEST_CASE("the equal-speed divisor has a rectangle witness") {
  auto sq = gamma_sq();
  auto d = equal_speed_divisor();
  auto v = rst_membership(sq, d);
  REQUIRE(v.status == Verdict::RealizableWitness);
  REQUIRE(v.witness);
  CHECK(stable_intersection(sq, *v.witness) == d);
  std::set<Rational> xs, ys;
  for (const auto& p : v.witness->vertices) xs.insert(p.x), ys.insert(p.y);
  REQUIRE(xs.size() == 2);
  REQUIRE(ys.size() == 2);
  CHECK(*xs.begin() == q("-7/4"));
  CHECK(*xs.rbegin() == q("3/2"));
  CHECK(*ys.rbegin() == q("5/4"));
  CHECK(*ys.begin() < q("-7/4"));

  // The same rectangle as a point of the family based at (-1,-1).
  auto fam = family_of(sq);
  auto bottom = *ys.begin();
  auto p = at({q("-3/4"), bottom + 1}, {});
  p.base_vertex = vertex_at(sq, pt("-1", "-1"));
  for (const auto& e : fam.graph.edges)
    p.lengths.push_back(e.dir.x == 0 ? Rational(q("5/4") - bottom) : q("13/4"));
  CHECK(intersection_divisor(sq, fam, p) == d);
}

TEST_CASE("divisors outside the family image") {
  auto f = curve_f();
  auto d = chips({{pt("1", "2"), 1}, {pt("1", "3"), 1}});
  auto v = rst_membership(f, d);
  CHECK(v.status == Verdict::NotInRst);
  CHECK(verify_certificates(v));
  auto alt = rst_membership(f, d, {.alt_subdivisions = true});
  CHECK(alt.subdivisions == 2);
  CHECK(alt.status == Verdict::NotInRst);
  CHECK(verify_certificates(alt));

  auto sq = gamma_sq();
  auto one_sided = one_sided_divisor();
  auto w = rst_membership(sq, one_sided, {.alt_subdivisions = true});
  CHECK(w.subdivisions == 1);
  CHECK(w.status == Verdict::NotInRst);
  CHECK(w.matchings > 0);
  CHECK(verify_certificates(w));
  // Tampering with a multiplier breaks the check.
  auto broken = w;
  REQUIRE_FALSE(broken.certificate.empty());
  auto& y = broken.certificate[0].multipliers;
  auto nz = std::find_if(y.begin(), y.end(), [](const Rational& r) { return r != 0; });
  REQUIRE(nz != y.end());
  *nz *= 2;
  *nz += 1;
  CHECK_FALSE(verify_certificates(broken));

  auto wrong_degree = rst_membership(sq, chips({{pt("-1", "1"), 1}}));
  CHECK(wrong_degree.status == Verdict::NotInRst);
}

TEST_CASE("certificate bookkeeping") {
  auto sq = gamma_sq();
  auto v = rst_membership(sq, one_sided_divisor());
  REQUIRE(v.status == Verdict::NotInRst);
  std::uint64_t sum = 0;
  for (const auto& s : v.certificate) {
    sum += s.matchings;
    CHECK((s.system == "chips" || s.system == "crossings"));
    CHECK(s.rows.variables == 2 + 4);
    for (const auto& pair : s.assignment) CHECK(one_sided_divisor().chips().count(pair.chip) == 1);
  }
  CHECK(sum == v.matchings);
}

TEST_CASE("an alternative subdivision realizes a double point") {
  auto f = curve_f();
  auto d = chips({{pt("0", "0"), 2}});
  auto own = rst_membership(f, d);
  CHECK(own.status == Verdict::NotInRst);
  CHECK(verify_certificates(own));
  auto v = rst_membership(f, d, {.alt_subdivisions = true});
  REQUIRE(v.status == Verdict::RealizableWitness);
  CHECK(stable_intersection(f, *v.witness) == d);
  CHECK(v.witness->dual != f.dual);

  auto tris = unimodular_triangulations(f);
  CHECK(tris.size() == 2);
  CHECK(tris[0] == f.dual);
  CHECK(unimodular_triangulations(gamma_sq()).size() == 1);
  TropicalPolynomial grid;
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j) grid.terms[{i, j}] = 50 * i * i + 7 * i * j + 60 * j * j + i;
  auto big = curve_of(grid);
  REQUIRE(is_smooth(big));
  CHECK(code_of([&] { unimodular_triangulations(big); }) == Errc::PolygonTooLarge);
}

TEST_CASE("triangulations found by flips are regular") {
  // Oracle: the regular subdivision of the heights solved for each
  // triangulation reproduces it.
  auto rng = make_rng(83);
  for (int i = 0; i < 5; ++i) {
    auto c = random_smooth_curve(rng, 7);
    auto tris = unimodular_triangulations(c);
    REQUIRE_FALSE(tris.empty());
    CHECK(tris[0] == c.dual);
    for (std::size_t a = 0; a < tris.size(); ++a)
      for (std::size_t b = a + 1; b < tris.size(); ++b) CHECK(tris[a] != tris[b]);
    for (const auto& t : tris) {
      for (const auto& cell : t.cells()) CHECK(is_unimodular(cell));
      Rational total = 0;
      for (const auto& cell : t.cells()) total += area(cell);
      CHECK(total == area(c.newton));
    }
  }
}

TEST_CASE("random witnesses re-verify") {
  // Intersections with random family members are realized by construction.
  auto rng = make_rng(89);
  auto sq = gamma_sq();
  auto fam = family_of(sq);
  std::uniform_int_distribution<int> len(5, 40);
  int found = 0;
  for (int trial = 0; trial < 8; ++trial) {
    auto shift = random_eta(rng);
    Rational a = frac(len(rng), 10), b = frac(len(rng), 10);
    FamilyPoint p;
    p.shift = shift;
    for (const auto& e : fam.graph.edges) p.lengths.push_back(e.dir.x == 0 ? b : a);
    TropicalCurve other;
    try {
      other = member(fam, p);
      if (!proper_crossings(sq, other).size()) continue;
    } catch (const Error&) {
      continue;
    }
    auto d = stable_intersection(sq, other);
    if (d.chips().size() != 4) continue;
    auto v = rst_membership(sq, d);
    REQUIRE(v.status == Verdict::RealizableWitness);
    CHECK(stable_intersection(sq, *v.witness) == d);
    ++found;
  }
  CHECK(found >= 4);
}

TEST_CASE("decision procedure for genus at most one") {
  auto rect = gamma_rect();
  auto two_and_two = chips({{pt("-6/5", "1"), 1}, {pt("6/5", "1"), 1}, {pt("-7/10", "-1"), 1}, {pt("7/10", "-1"), 1}});
  CHECK(realizable_internal(rect, two_and_two).status == Verdict::RealizableByTheorem);

  auto sq = gamma_sq();
  auto v = realizable_internal(sq, one_sided_divisor());
  CHECK(v.status == Verdict::NotInRst);
  CHECK(realizable_internal(sq, equal_speed_divisor()).status == Verdict::RealizableWitness);
  CHECK(realizable_internal(sq, chips({{pt("-1", "1"), 4}})).status == Verdict::NotEquivalent);

  auto f = curve_f();
  CHECK(realizable_internal(f, chips({{pt("5", "1"), 1}, {pt("-1", "-1"), 1}})).status ==
        Verdict::RealizableByTheorem);
  CHECK(realizable_internal(f, chips({{pt("1", "2"), 1}, {pt("1", "3"), 1}})).status ==
        Verdict::RealizableByTheorem);
  CHECK(realizable_internal(f, chips({{pt("1", "2"), 1}})).status == Verdict::NotEquivalent);
  CHECK(verdict_name(Verdict::NotInRst) == "NOT_IN_RST");
}

TEST_CASE("balancing around an exposed cell") {
  auto sq = gamma_sq();
  auto exposed = chips({{pt("-1", "1"), 1}, {pt("1", "1"), 1}, {pt("3/2", "-3/2"), 1}, {pt("-7/4", "-7/4"), 1}});
  auto cone = equal_speed_cone(sq, exposed);
  REQUIRE(cone.attached.size() == 3);
  CHECK(cone.base.size() == 2);
  // Pinned (-1,1) then (1,1) in point order.
  CHECK(cone.attached[0].second == std::vector<std::int64_t>{0, -1, 0, -1, 0, 0, 0, 0});
  CHECK(cone.attached[1].second == std::vector<std::int64_t>{1, 0, -1, 0, 0, 0, 0, 0});
  CHECK(cone.attached[2].second == std::vector<std::int64_t>{-1, 1, 1, 1, 0, 0, 0, 0});
  auto zero = std::vector<Rational>(8, 0);
  CHECK(balancing_defect(cone) == zero);
  auto missing = cone;
  missing.attached.erase(missing.attached.begin() + 1);
  CHECK(balancing_defect(missing) != zero);
  LocalCone empty;
  empty.base = cone.base;
  CHECK(balancing_defect(empty) == zero);

  auto rect = gamma_rect();
  auto rect_exposed = chips({{pt("-3/2", "-1"), 1}, {pt("3/2", "-1"), 1}, {pt("-2", "3/2"), 1}, {pt("17/10", "6/5"), 1}});
  CHECK(balancing_defect(equal_speed_cone(rect, rect_exposed)) == zero);
  CHECK(code_of([&] { equal_speed_cone(sq, equal_speed_divisor()); }) == Errc::InvalidInput);
}

TEST_CASE("counterexample reports") {
  auto sq = gamma_sq();
  auto rep = certify_counterexample(sq, one_sided_divisor());
  CHECK(rep.equivalent);
  CHECK_FALSE(rep.internal);
  CHECK(rep.rst.status == Verdict::NotInRst);
  CHECK(verify_certificates(rep.rst));
  CHECK(rep.certified);
  REQUIRE(rep.exposed);
  CHECK(*rep.exposed == chips({{pt("-1", "1"), 1}, {pt("1", "1"), 1}, {pt("3/2", "-3/2"), 1}, {pt("-7/4", "-7/4"), 1}}));
  REQUIRE(rep.balancing);
  CHECK(*rep.balancing == std::vector<Rational>(8, 0));

  auto equal_speed = certify_counterexample(sq, equal_speed_divisor());
  CHECK(equal_speed.rst.status == Verdict::RealizableWitness);
  CHECK_FALSE(equal_speed.certified);
  CHECK(equal_speed.note.rfind("NOT_A_COUNTEREXAMPLE", 0) == 0);

  auto bad = certify_counterexample(sq, chips({{pt("-1", "1"), 4}}));
  CHECK_FALSE(bad.equivalent);
  CHECK_FALSE(bad.certified);
  CHECK(bad.note.rfind("NOT_A_COUNTEREXAMPLE", 0) == 0);
  CHECK(equivalent_to_self_intersection(sq, self_intersection(sq)));
  CHECK_FALSE(equivalent_to_self_intersection(sq, chips({{pt("-1", "1"), 1}})));
  CHECK(code_of([] { certify_counterexample(curve_f(), chips({{pt("1", "2"), 2}})); }) == Errc::WrongGenus);
}
