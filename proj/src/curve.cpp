#include "troplane/curve.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>
#include <string>
#include <tuple>

#include <json.hpp>

#include "troplane/error.hpp"

namespace troplane {

LiftedConfiguration TropicalPolynomial::lifted() const {
  LiftedConfiguration cfg;
  for (const auto& [e, nu] : terms) cfg.push_back({e, -nu});
  return cfg;
}

LatticePolygon TropicalPolynomial::newton() const {
  std::vector<LatticeVector> pts;
  for (const auto& [e, nu] : terms) pts.push_back(e);
  return LatticePolygon::hull(pts);
}

namespace {

class TextParser {
 public:
  explicit TextParser(std::string_view s) : s_(s) {}

  TropicalPolynomial parse() {
    TropicalPolynomial f;
    skip();
    if (at_end()) fail("empty polynomial");
    while (true) {
      std::size_t start = pos_;
      auto [e, nu] = term();
      if (!f.terms.emplace(e, nu).second)
        throw Error(Errc::DuplicateExponent, "exponent (" + std::to_string(e.x) + "," +
                                                 std::to_string(e.y) + ") repeated at position " +
                                                 std::to_string(start));
      skip();
      if (at_end()) break;
      expect('+');
    }
    return f;
  }

 private:
  std::pair<LatticeVector, Rational> term() {
    LatticeVector e;
    Rational nu = 0;
    bool any = false;
    while (true) {
      skip();
      if (at_end()) fail("expected a factor");
      char ch = s_[pos_];
      if (ch == 't') {
        ++pos_;
        nu += power_rational();
      } else if (ch == 'x' || ch == 'y') {
        ++pos_;
        Rational k = power_rational();
        if (k.get_den() != 1) fail("monomial exponents must be integers");
        (ch == 'x' ? e.x : e.y) += k.get_num().get_si();
      } else if (std::isdigit(static_cast<unsigned char>(ch))) {
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (Integer(std::string(s_.substr(start, pos_ - start))) == 0)
          fail("zero coefficient");
      } else {
        fail(std::string("unexpected character '") + ch + "'");
      }
      any = true;
      skip();
      if (!at_end() && s_[pos_] == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    if (!any) fail("empty term");
    return {e, nu};
  }

  Rational power_rational() {
    skip();
    if (at_end() || s_[pos_] != '^') return 1;
    ++pos_;
    skip();
    bool paren = !at_end() && s_[pos_] == '(';
    if (paren) ++pos_;
    std::size_t start = pos_;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-' ||
                         s_[pos_] == '/' || s_[pos_] == '.' || (paren && s_[pos_] == ' ')))
      ++pos_;
    if (start == pos_) fail("expected an exponent");
    Rational k;
    try {
      k = parse_rational(s_.substr(start, pos_ - start));
    } catch (const Error&) {
      pos_ = start;
      fail("malformed exponent");
    }
    if (paren) expect(')');
    return k;
  }

  void expect(char ch) {
    skip();
    if (at_end() || s_[pos_] != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::ParseError, "at position " + std::to_string(pos_) + ": " + what);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

Rational json_rational(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  throw Error(Errc::ParseError, "expected a rational string, got " + j.dump());
}

TropicalPolynomial polynomial_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::ParseError, "at position " + std::to_string(e.byte) + ": malformed JSON");
  }
  if (!doc.is_object() || !doc.contains("terms") || !doc["terms"].is_array())
    throw Error(Errc::ParseError, "at position 0: expected an object with a \"terms\" array");
  const auto& terms = doc["terms"];
  if (terms.empty()) throw Error(Errc::ParseError, "at position 0: empty term list");
  TropicalPolynomial f;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& t = terms[k];
    if (!t.is_object() || !t.contains("exp") || !t["exp"].is_array() || t["exp"].size() != 2 ||
        !t["exp"][0].is_number_integer() || !t["exp"][1].is_number_integer() || !t.contains("val"))
      throw Error(Errc::ParseError, "at term " + std::to_string(k) + ": expected {exp:[i,j],val}");
    LatticeVector e{t["exp"][0].get<std::int64_t>(), t["exp"][1].get<std::int64_t>()};
    if (!f.terms.emplace(e, json_rational(t["val"])).second)
      throw Error(Errc::DuplicateExponent, "exponent (" + std::to_string(e.x) + "," +
                                               std::to_string(e.y) + ") at term " +
                                               std::to_string(k));
  }
  return f;
}

LatticeVector outward_of_left(const LatticeSegment& s) {
  LatticeVector d = s.b - s.a;
  return primitive({d.y, -d.x}).first;
}

}  // namespace

TropicalPolynomial parse_polynomial(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return polynomial_from_json(text);
  return TextParser(text).parse();
}

DualGraph dual_graph(const Subdivision& dual) {
  DualGraph g;
  g.vertex_count = static_cast<int>(dual.cells().size());
  int dim = dual.support().dimension();
  if (dim <= 0) throw Error(Errc::EmptyCurve, "the dual subdivision is a single point");
  if (dim == 1) {
    for (int i = 0; i < g.vertex_count; ++i) {
      const auto& v = dual.cells()[i].vertices();
      auto seg = make_segment(v[0], v[1]);
      auto [n, w] = primitive(seg.b - seg.a);
      LatticeVector normal{n.y, -n.x};
      g.rays.push_back({i, normal, w, seg});
      g.rays.push_back({i, -normal, w, seg});
    }
    return g;
  }
  for (const auto& e : dual.edges()) {
    LatticeVector n = outward_of_left(e.segment);
    std::int64_t w = primitive(e.segment.b - e.segment.a).second;
    if (e.interior()) {
      int i = std::min(e.left, e.right), j = std::max(e.left, e.right);
      g.edges.push_back({{i, j}, i == e.left ? n : -n, Rational(0), w, e.segment});
    } else {
      int c = e.left >= 0 ? e.left : e.right;
      g.rays.push_back({c, c == e.left ? n : -n, w, e.segment});
    }
  }
  return g;
}

TropicalCurve make_curve(const Subdivision& dual, std::vector<RationalPoint> positions) {
  DualGraph g = dual_graph(dual);
  if (static_cast<int>(positions.size()) != g.vertex_count)
    throw Error(Errc::InvalidInput, "expected " + std::to_string(g.vertex_count) +
                                        " vertex positions, got " +
                                        std::to_string(positions.size()));
  TropicalCurve c;
  c.vertices = std::move(positions);
  c.dual = dual;
  c.newton = dual.support();
  c.rays = std::move(g.rays);
  c.edges = std::move(g.edges);
  for (std::size_t k = 0; k < c.edges.size(); ++k) {
    auto& e = c.edges[k];
    RationalPoint d = c.vertices[e.v[1]] - c.vertices[e.v[0]];
    Rational along = dot(d, e.dir);
    if (det2(d, e.dir) != 0 || along <= 0)
      throw Error(Errc::InvalidInput, "edge " + std::to_string(k) +
                                          " is not a positive multiple of its dual normal");
    e.length = along / dot(e.dir, e.dir);
  }
  return c;
}

TropicalCurve curve_of(const TropicalPolynomial& f) {
  if (f.terms.size() < 2)
    throw Error(Errc::EmptyCurve, "a single term attains the maximum everywhere");
  auto cfg = f.lifted();
  Subdivision dual = regular_subdivision(cfg);
  auto lift = [&](const LatticeVector& e) { return Rational(-f.terms.at(e)); };
  std::vector<RationalPoint> pos;
  for (const auto& cell : dual.cells()) {
    const auto& v = cell.vertices();
    if (v.size() == 2) {
      LatticeVector d = v[1] - v[0];
      Rational s = (lift(v[0]) - lift(v[1])) / dot(d, d);
      pos.push_back(s * d);
      continue;
    }
    LatticeVector d1 = v[1] - v[0], d2 = v[2] - v[0];
    Rational z1 = lift(v[1]) - lift(v[0]), z2 = lift(v[2]) - lift(v[0]);
    auto den = det2(d1, d2);
    Rational a = (z1 * d2.y - z2 * d1.y) / den;
    Rational b = (d1.x * z2 - d2.x * z1) / den;
    pos.push_back({-a, -b});
  }
  return make_curve(dual, std::move(pos));
}

TropicalPolynomial dual_polynomial(const TropicalCurve& c) {
  std::map<LatticeVector, Rational> lift;
  const auto& cells = c.dual.cells();
  std::vector<bool> done(cells.size(), false);
  std::size_t remaining = cells.size();
  lift[cells.at(0).vertices()[0]] = 0;
  while (remaining > 0) {
    bool progress = false;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (done[i]) continue;
      const auto& w = c.vertices[i];
      const auto& vs = cells[i].vertices();
      auto known = std::find_if(vs.begin(), vs.end(), [&](auto& e) { return lift.count(e) > 0; });
      if (known == vs.end()) continue;
      Rational m = dot(w, *known) + lift[*known];
      for (const auto& e : vs) lift[e] = m - dot(w, e);
      done[i] = true;
      --remaining;
      progress = true;
    }
    if (!progress) throw Error(Errc::InvalidInput, "dual subdivision is not connected");
  }
  TropicalPolynomial f;
  for (const auto& [e, l] : lift) f.terms[e] = -l;
  return f;
}

int vertex_degree(const TropicalCurve& c, int v) {
  int d = 0;
  for (const auto& e : c.edges) d += (e.v[0] == v) + (e.v[1] == v);
  for (const auto& r : c.rays) d += (r.v == v);
  return d;
}

bool is_smooth(const TropicalCurve& c) {
  for (const auto& cell : c.dual.cells())
    if (cell.vertices().size() != 3 || !is_unimodular(cell)) return false;
  for (int v = 0; v < static_cast<int>(c.vertices.size()); ++v)
    if (vertex_degree(c, v) != 3) return false;
  return true;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

int genus(const TropicalCurve& c) {
  int n = static_cast<int>(c.vertices.size());
  UnionFind uf(n);
  int components = n;
  for (const auto& e : c.edges)
    if (uf.unite(e.v[0], e.v[1])) --components;
  return static_cast<int>(c.edges.size()) - n + components;
}

std::vector<std::pair<LatticeVector, LatticeVector>> RecessionFan::cones() const {
  std::vector<std::pair<LatticeVector, LatticeVector>> out;
  for (std::size_t i = 0; i < rays.size(); ++i) out.emplace_back(rays[i], rays[(i + 1) % rays.size()]);
  return out;
}

RecessionFan recession_fan(const TropicalCurve& c) {
  RecessionFan fan;
  for (const auto& r : c.rays) fan.rays.push_back(r.dir);
  std::sort(fan.rays.begin(), fan.rays.end(), angle_less);
  fan.rays.erase(std::unique(fan.rays.begin(), fan.rays.end()), fan.rays.end());
  return fan;
}

Cycle cycle_of(const TropicalCurve& c) {
  if (int g = genus(c); g != 1)
    throw Error(Errc::WrongGenus, "cycle requires genus 1, curve has genus " + std::to_string(g));
  int n = static_cast<int>(c.vertices.size());
  std::vector<int> deg(n, 0);
  std::vector<bool> live_edge(c.edges.size(), true);
  for (const auto& e : c.edges) ++deg[e.v[0]], ++deg[e.v[1]];
  std::deque<int> leaves;
  for (int v = 0; v < n; ++v)
    if (deg[v] <= 1) leaves.push_back(v);
  std::vector<bool> removed(n, false);
  while (!leaves.empty()) {
    int v = leaves.front();
    leaves.pop_front();
    if (removed[v]) continue;
    removed[v] = true;
    for (std::size_t k = 0; k < c.edges.size(); ++k) {
      if (!live_edge[k]) continue;
      const auto& e = c.edges[k];
      if (e.v[0] != v && e.v[1] != v) continue;
      live_edge[k] = false;
      int u = e.v[0] == v ? e.v[1] : e.v[0];
      if (--deg[u] <= 1 && !removed[u]) leaves.push_back(u);
    }
  }
  int start = -1;
  for (int v = 0; v < n; ++v)
    if (!removed[v] && (start < 0 || c.vertices[v] < c.vertices[start])) start = v;

  Cycle cyc;
  int cur = start, prev_edge = -1;
  do {
    int next_edge = -1;
    for (std::size_t k = 0; k < c.edges.size(); ++k)
      if (live_edge[k] && static_cast<int>(k) != prev_edge &&
          (c.edges[k].v[0] == cur || c.edges[k].v[1] == cur)) {
        next_edge = static_cast<int>(k);
        break;
      }
    const auto& e = c.edges[next_edge];
    cyc.vertices.push_back(cur);
    cyc.edges.push_back(next_edge);
    cyc.forward.push_back(e.v[0] == cur);
    cur = e.v[0] == cur ? e.v[1] : e.v[0];
    prev_edge = next_edge;
  } while (cur != start);

  Rational twice_area = 0;
  for (std::size_t k = 0; k < cyc.vertices.size(); ++k)
    twice_area += det2(c.vertices[cyc.vertices[k]],
                       c.vertices[cyc.vertices[(k + 1) % cyc.vertices.size()]]);
  if (twice_area < 0) {
    std::reverse(cyc.vertices.begin() + 1, cyc.vertices.end());
    std::reverse(cyc.edges.begin(), cyc.edges.end());
    std::vector<bool> fwd(cyc.forward.rbegin(), cyc.forward.rend());
    for (auto&& f : fwd) f = !f;
    cyc.forward = fwd;
  }
  cyc.length = 0;
  for (int k : cyc.edges) cyc.length += c.edges[k].length;
  return cyc;
}

TropicalCurve translate(const TropicalCurve& c, const RationalPoint& shift) {
  TropicalCurve out = c;
  for (auto& v : out.vertices) v = v + shift;
  return out;
}

TropicalCurve assemble_curve(const Subdivision& dual, int base_vertex,
                             const RationalPoint& base_position,
                             const std::vector<Rational>& lengths) {
  DualGraph g = dual_graph(dual);
  if (lengths.size() != g.edges.size())
    throw Error(Errc::InvalidInput, "expected " + std::to_string(g.edges.size()) +
                                        " edge lengths, got " + std::to_string(lengths.size()));
  if (base_vertex < 0 || base_vertex >= g.vertex_count)
    throw Error(Errc::InvalidInput, "base vertex out of range");
  for (std::size_t k = 0; k < lengths.size(); ++k)
    if (lengths[k] <= 0)
      throw Error(Errc::NonpositiveLength, "edge " + std::to_string(k) + " has length " +
                                               to_string(lengths[k]));
  std::vector<std::optional<RationalPoint>> pos(g.vertex_count);
  std::vector<bool> tree_edge(g.edges.size(), false);
  pos[base_vertex] = base_position;
  std::deque<int> queue{base_vertex};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
      const auto& e = g.edges[k];
      int u;
      RationalPoint step = lengths[k] * e.dir;
      if (e.v[0] == v) u = e.v[1];
      else if (e.v[1] == v) u = e.v[0], step = -step;
      else continue;
      if (pos[u]) continue;
      pos[u] = *pos[v] + step;
      tree_edge[k] = true;
      queue.push_back(u);
    }
  }
  for (int v = 0; v < g.vertex_count; ++v)
    if (!pos[v]) throw Error(Errc::InvalidInput, "bounded part of the dual graph is disconnected");
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    if (tree_edge[k]) continue;
    const auto& e = g.edges[k];
    RationalPoint defect = *pos[e.v[0]] + lengths[k] * e.dir - *pos[e.v[1]];
    if (defect.x != 0 || defect.y != 0)
      throw Error(Errc::CycleNotClosed, "cycle through edge " + std::to_string(k) +
                                            " has defect (" + to_string(defect.x) + "," +
                                            to_string(defect.y) + ")");
  }
  std::vector<RationalPoint> out;
  for (auto& p : pos) out.push_back(*p);
  return make_curve(dual, std::move(out));
}

std::vector<int> check_balancing(const TropicalCurve& c) {
  std::vector<LatticeVector> sum(c.vertices.size());
  for (const auto& e : c.edges) {
    sum[e.v[0]] = sum[e.v[0]] + e.dir * e.weight;
    sum[e.v[1]] = sum[e.v[1]] - e.dir * e.weight;
  }
  for (const auto& r : c.rays) sum[r.v] = sum[r.v] + r.dir * r.weight;
  std::vector<int> bad;
  for (std::size_t v = 0; v < sum.size(); ++v)
    if (sum[v] != LatticeVector{}) bad.push_back(static_cast<int>(v));
  return bad;
}

std::vector<Segment> segments(const TropicalCurve& c) {
  std::vector<Segment> out;
  for (const auto& e : c.edges)
    out.push_back({c.vertices[e.v[0]], e.dir, e.length, e.weight, e.v[0], e.v[1]});
  for (const auto& r : c.rays) out.push_back({c.vertices[r.v], r.dir, std::nullopt, r.weight, r.v, -1});
  return out;
}

namespace {

// Parameter of p along s when p lies on the supporting line, else nullopt.
std::optional<Rational> param_on(const Segment& s, const RationalPoint& p) {
  RationalPoint d = p - s.origin;
  if (det2(d, s.dir) != 0) return std::nullopt;
  return dot(d, s.dir) / dot(s.dir, s.dir);
}

}  // namespace

std::optional<CurvePoint> locate(const TropicalCurve& c, const RationalPoint& p) {
  for (std::size_t v = 0; v < c.vertices.size(); ++v)
    if (c.vertices[v] == p) return CurvePoint{CurvePoint::Kind::Vertex, static_cast<int>(v), 0};
  auto segs = segments(c);
  for (std::size_t k = 0; k < segs.size(); ++k) {
    auto t = param_on(segs[k], p);
    if (!t || *t <= 0) continue;
    if (segs[k].length) {
      if (*t < *segs[k].length) return CurvePoint{CurvePoint::Kind::Edge, static_cast<int>(k), *t};
    } else {
      return CurvePoint{CurvePoint::Kind::Ray, static_cast<int>(k - c.edges.size()), *t};
    }
  }
  return std::nullopt;
}

RationalPoint position(const TropicalCurve& c, const CurvePoint& p) {
  switch (p.kind) {
    case CurvePoint::Kind::Vertex: return c.vertices.at(p.index);
    case CurvePoint::Kind::Edge: {
      const auto& e = c.edges.at(p.index);
      return c.vertices[e.v[0]] + p.t * e.dir;
    }
    case CurvePoint::Kind::Ray: {
      const auto& r = c.rays.at(p.index);
      return c.vertices[r.v] + p.t * r.dir;
    }
  }
  return {};
}

std::vector<int> segments_through(const TropicalCurve& c, const RationalPoint& p) {
  std::vector<int> out;
  auto segs = segments(c);
  for (std::size_t k = 0; k < segs.size(); ++k) {
    auto t = param_on(segs[k], p);
    if (!t || *t < 0) continue;
    if (!segs[k].length || *t <= *segs[k].length) out.push_back(static_cast<int>(k));
  }
  return out;
}

RationalPoint retraction(const TropicalCurve& c, const RationalPoint& p) {
  Cycle cyc = cycle_of(c);
  auto where = locate(c, p);
  if (!where) throw Error(Errc::PointNotOnCurve, "(" + to_string(p.x) + "," + to_string(p.y) + ")");
  int n = static_cast<int>(c.vertices.size());
  std::vector<int> attach(n, -1);
  std::deque<int> queue;
  for (int v : cyc.vertices) attach[v] = v, queue.push_back(v);
  std::set<int> cycle_edges(cyc.edges.begin(), cyc.edges.end());
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < c.edges.size(); ++k) {
      if (cycle_edges.count(static_cast<int>(k))) continue;
      const auto& e = c.edges[k];
      int u = e.v[0] == v ? e.v[1] : (e.v[1] == v ? e.v[0] : -1);
      if (u < 0 || attach[u] >= 0) continue;
      attach[u] = attach[v];
      queue.push_back(u);
    }
  }
  switch (where->kind) {
    case CurvePoint::Kind::Vertex: return c.vertices[attach[where->index]];
    case CurvePoint::Kind::Ray: return c.vertices[attach[c.rays[where->index].v]];
    case CurvePoint::Kind::Edge:
      if (cycle_edges.count(where->index)) return p;
      return c.vertices[attach[c.edges[where->index].v[0]]];
  }
  return p;
}

bool same_curve(const TropicalCurve& a, const TropicalCurve& b) {
  using EdgeKey = std::tuple<RationalPoint, RationalPoint, std::int64_t>;
  using RayKey = std::tuple<RationalPoint, LatticeVector, std::int64_t>;
  auto keys = [](const TropicalCurve& c) {
    std::vector<RationalPoint> vs = c.vertices;
    std::vector<EdgeKey> es;
    std::vector<RayKey> rs;
    for (const auto& e : c.edges) {
      auto p = c.vertices[e.v[0]], q = c.vertices[e.v[1]];
      if (q < p) std::swap(p, q);
      es.emplace_back(p, q, e.weight);
    }
    for (const auto& r : c.rays) rs.emplace_back(c.vertices[r.v], r.dir, r.weight);
    std::sort(vs.begin(), vs.end());
    std::sort(es.begin(), es.end());
    std::sort(rs.begin(), rs.end());
    return std::make_tuple(vs, es, rs);
  };
  return keys(a) == keys(b);
}

}  // namespace troplane
