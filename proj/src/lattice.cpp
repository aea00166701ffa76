#include "troplane/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "troplane/error.hpp"

namespace troplane {

std::int64_t det2(const LatticeVector& u, const LatticeVector& v) { return u.x * v.y - u.y * v.x; }
std::int64_t dot(const LatticeVector& u, const LatticeVector& v) { return u.x * v.x + u.y * v.y; }
Rational det2(const RationalPoint& u, const RationalPoint& v) { return u.x * v.y - u.y * v.x; }
Rational det2(const RationalPoint& u, const LatticeVector& v) { return u.x * v.y - u.y * v.x; }
Rational dot(const RationalPoint& u, const LatticeVector& v) { return u.x * v.x + u.y * v.y; }
Rational dot(const RationalPoint& u, const RationalPoint& v) { return u.x * v.x + u.y * v.y; }

std::pair<LatticeVector, std::int64_t> primitive(const LatticeVector& v) {
  if (v.x == 0 && v.y == 0) throw Error(Errc::ZeroVector, "primitive of (0,0)");
  std::int64_t g = std::gcd(v.x, v.y);
  return {{v.x / g, v.y / g}, g};
}

LatticeVector primitive_direction(const RationalPoint& v) {
  if (v.x == 0 && v.y == 0) throw Error(Errc::ZeroVector, "direction of a zero vector");
  Integer l;
  mpz_lcm(l.get_mpz_t(), v.x.get_den_mpz_t(), v.y.get_den_mpz_t());
  Rational sx = v.x * l, sy = v.y * l;
  Integer ix = sx.get_num(), iy = sy.get_num();
  Integer g;
  mpz_gcd(g.get_mpz_t(), ix.get_mpz_t(), iy.get_mpz_t());
  ix /= g;
  iy /= g;
  if (!ix.fits_slong_p() || !iy.fits_slong_p())
    throw Error(Errc::IrrationalDirection, "direction exceeds machine range");
  return {ix.get_si(), iy.get_si()};
}

Rational lattice_length(const RationalPoint& p, const RationalPoint& q) {
  RationalPoint v = q - p;
  if (v.x == 0 && v.y == 0) return 0;
  LatticeVector d = primitive_direction(v);
  return d.x != 0 ? Rational(v.x / d.x) : Rational(v.y / d.y);
}

bool angle_less(const LatticeVector& a, const LatticeVector& b) {
  auto half = [](const LatticeVector& v) { return (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1; };
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return det2(a, b) > 0;
}

LatticePolygon LatticePolygon::hull(std::span<const LatticeVector> points) {
  std::vector<LatticeVector> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  LatticePolygon out;
  if (pts.size() <= 2) {
    out.vertices_ = pts;
    return out;
  }
  auto cross = [](const LatticeVector& o, const LatticeVector& a, const LatticeVector& b) {
    return det2(a - o, b - o);
  };
  std::vector<LatticeVector> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  if (h.size() == 2 || (h.size() >= 2 && h[0] == h[1])) {
    out.vertices_ = {pts.front(), pts.back()};
    return out;
  }
  out.vertices_ = h;
  return out;
}

int LatticePolygon::dimension() const {
  if (vertices_.empty()) return -1;
  return std::min<int>(2, static_cast<int>(vertices_.size()) - 1);
}

bool LatticePolygon::contains(const LatticeVector& p) const {
  const auto& v = vertices_;
  if (v.empty()) return false;
  if (v.size() == 1) return p == v[0];
  if (v.size() == 2) {
    if (det2(v[1] - v[0], p - v[0]) != 0) return false;
    auto t = dot(p - v[0], v[1] - v[0]);
    return t >= 0 && t <= dot(v[1] - v[0], v[1] - v[0]);
  }
  for (std::size_t i = 0; i < v.size(); ++i)
    if (det2(v[(i + 1) % v.size()] - v[i], p - v[i]) < 0) return false;
  return true;
}

bool LatticePolygon::contains_in_interior(const LatticeVector& p) const {
  const auto& v = vertices_;
  if (v.size() < 3) return false;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (det2(v[(i + 1) % v.size()] - v[i], p - v[i]) <= 0) return false;
  return true;
}

std::vector<LatticeVector> LatticePolygon::lattice_points() const {
  std::vector<LatticeVector> out;
  if (vertices_.empty()) return out;
  auto [xmin, xmax] = std::minmax_element(vertices_.begin(), vertices_.end(),
                                          [](auto& a, auto& b) { return a.x < b.x; });
  auto [ymin, ymax] = std::minmax_element(vertices_.begin(), vertices_.end(),
                                          [](auto& a, auto& b) { return a.y < b.y; });
  for (auto x = xmin->x; x <= xmax->x; ++x)
    for (auto y = ymin->y; y <= ymax->y; ++y)
      if (contains({x, y})) out.push_back({x, y});
  return out;
}

Rational area(const LatticePolygon& p) {
  const auto& v = p.vertices();
  if (v.size() < 3) return 0;
  std::int64_t twice = 0;
  for (std::size_t i = 0; i < v.size(); ++i) twice += det2(v[i], v[(i + 1) % v.size()]);
  return frac(twice, 2);
}

bool is_unimodular(const LatticePolygon& t) {
  if (t.vertices().size() != 3) throw Error(Errc::NotATriangle, "polygon has " +
                                                std::to_string(t.vertices().size()) + " vertices");
  return area(t) == Rational(1, 2);
}

LatticePolygon minkowski_sum(const LatticePolygon& p, const LatticePolygon& q) {
  std::vector<LatticeVector> sums;
  for (const auto& a : p.vertices())
    for (const auto& b : q.vertices()) sums.push_back(a + b);
  return LatticePolygon::hull(sums);
}

Rational mixed_volume(const LatticePolygon& p, const LatticePolygon& q) {
  return area(minkowski_sum(p, q)) - area(p) - area(q);
}

LatticeSegment make_segment(const LatticeVector& p, const LatticeVector& q) {
  return p < q ? LatticeSegment{p, q} : LatticeSegment{q, p};
}

Subdivision::Subdivision(std::vector<LatticePolygon> cells) : cells_(std::move(cells)) {
  std::sort(cells_.begin(), cells_.end());
  std::vector<LatticeVector> all;
  for (const auto& c : cells_) all.insert(all.end(), c.vertices().begin(), c.vertices().end());
  support_ = LatticePolygon::hull(all);

  std::map<LatticeSegment, Edge> by_segment;
  for (int i = 0; i < static_cast<int>(cells_.size()); ++i) {
    const auto& v = cells_[i].vertices();
    if (v.size() < 3) continue;
    for (std::size_t k = 0; k < v.size(); ++k) {
      const auto& a = v[k];
      const auto& b = v[(k + 1) % v.size()];
      auto seg = make_segment(a, b);
      auto& e = by_segment[seg];
      e.segment = seg;
      (a < b ? e.left : e.right) = i;
    }
  }
  for (auto& [seg, e] : by_segment) edges_.push_back(e);
}

std::vector<LatticeVector> Subdivision::vertices() const {
  std::vector<LatticeVector> out;
  for (const auto& c : cells_) out.insert(out.end(), c.vertices().begin(), c.vertices().end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

struct UpperFace {
  std::vector<int> members;
  Rational a, b, c;  // lift = a x + b y + c
};

std::vector<UpperFace> upper_faces_2d(const LiftedConfiguration& cfg) {
  const int n = static_cast<int>(cfg.size());
  std::set<std::vector<int>> seen;
  std::vector<UpperFace> faces;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const auto& p0 = cfg[i];
        const auto& p1 = cfg[j];
        const auto& p2 = cfg[k];
        LatticeVector d1 = p1.exponent - p0.exponent, d2 = p2.exponent - p0.exponent;
        std::int64_t den = det2(d1, d2);
        if (den == 0) continue;
        Rational z1 = p1.lift - p0.lift, z2 = p2.lift - p0.lift;
        Rational a = (z1 * d2.y - z2 * d1.y) / den;
        Rational b = (d1.x * z2 - d2.x * z1) / den;
        Rational c = p0.lift - a * p0.exponent.x - b * p0.exponent.y;
        std::vector<int> on;
        bool ok = true;
        for (int m = 0; m < n && ok; ++m) {
          Rational plane = a * cfg[m].exponent.x + b * cfg[m].exponent.y + c;
          if (cfg[m].lift > plane) ok = false;
          else if (cfg[m].lift == plane) on.push_back(m);
        }
        if (!ok || !seen.insert(on).second) continue;
        faces.push_back({std::move(on), a, b, c});
      }
  return faces;
}

// Upper hull chain of a collinear configuration, as indices ordered along
// the line.
std::vector<int> upper_chain_1d(const LiftedConfiguration& cfg, LatticeVector& origin,
                                LatticeVector& dir) {
  std::vector<LatticeVector> pts;
  for (const auto& p : cfg) pts.push_back(p.exponent);
  auto seg = LatticePolygon::hull(pts);
  origin = seg.vertices()[0];
  dir = primitive(seg.vertices()[1] - seg.vertices()[0]).first;
  std::vector<int> order(cfg.size());
  std::iota(order.begin(), order.end(), 0);
  auto param = [&](int i) { return dot(cfg[i].exponent - origin, dir); };
  std::sort(order.begin(), order.end(), [&](int a, int b) { return param(a) < param(b); });
  std::vector<int> chain;
  for (int i : order) {
    while (chain.size() >= 2) {
      int a = chain[chain.size() - 2], b = chain.back();
      // Drop b when it lies on or below segment a-i.
      Rational lhs = (cfg[b].lift - cfg[a].lift) * (param(i) - param(a));
      Rational rhs = (cfg[i].lift - cfg[a].lift) * (param(b) - param(a));
      if (lhs <= rhs) chain.pop_back();
      else break;
    }
    chain.push_back(i);
  }
  return chain;
}

int support_dimension(const LiftedConfiguration& cfg) {
  std::vector<LatticeVector> pts;
  for (const auto& p : cfg) pts.push_back(p.exponent);
  return LatticePolygon::hull(pts).dimension();
}

}  // namespace

Subdivision regular_subdivision(const LiftedConfiguration& cfg) {
  if (cfg.empty()) throw Error(Errc::InvalidInput, "empty lifted configuration");
  std::vector<LatticePolygon> cells;
  int dim = support_dimension(cfg);
  if (dim == 0) {
    LatticeVector p = cfg[0].exponent;
    cells.push_back(LatticePolygon::hull(std::span(&p, 1)));
  } else if (dim == 1) {
    LatticeVector origin, dir;
    auto chain = upper_chain_1d(cfg, origin, dir);
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
      LatticeVector ends[2] = {cfg[chain[k]].exponent, cfg[chain[k + 1]].exponent};
      cells.push_back(LatticePolygon::hull(ends));
    }
  } else {
    for (const auto& f : upper_faces_2d(cfg)) {
      std::vector<LatticeVector> pts;
      for (int m : f.members) pts.push_back(cfg[m].exponent);
      cells.push_back(LatticePolygon::hull(pts));
    }
  }
  return Subdivision(std::move(cells));
}

Rational upper_hull_value(const LiftedConfiguration& cfg, const LatticeVector& p) {
  int dim = support_dimension(cfg);
  if (dim == 0) return cfg[0].lift;
  if (dim == 1) {
    LatticeVector origin, dir;
    auto chain = upper_chain_1d(cfg, origin, dir);
    auto t = dot(p - origin, dir);
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
      const auto& a = cfg[chain[k]];
      const auto& b = cfg[chain[k + 1]];
      auto ta = dot(a.exponent - origin, dir), tb = dot(b.exponent - origin, dir);
      if (t >= ta && t <= tb) return a.lift + (b.lift - a.lift) * frac(t - ta, tb - ta);
    }
    throw Error(Errc::InvalidInput, "point outside the configuration support");
  }
  auto faces = upper_faces_2d(cfg);
  Rational best = faces.at(0).a * p.x + faces[0].b * p.y + faces[0].c;
  for (const auto& f : faces) best = std::min(best, Rational(f.a * p.x + f.b * p.y + f.c));
  return best;
}

}  // namespace troplane
