#include "troplane/realize.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "troplane/error.hpp"

namespace troplane {

namespace {

using Matrix = std::vector<std::vector<Rational>>;

std::string show(const RationalPoint& p) { return "(" + to_string(p.x) + "," + to_string(p.y) + ")"; }

// Reduced row echelon form in place; returns the pivot columns.
std::vector<int> row_reduce(Matrix& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < static_cast<int>(m.size()); ++c) {
    int p = r;
    while (p < static_cast<int>(m.size()) && m[p][c] == 0) ++p;
    if (p == static_cast<int>(m.size())) continue;
    std::swap(m[p], m[r]);
    Rational lead = m[r][c];
    for (auto& v : m[r]) v /= lead;
    for (int i = 0; i < static_cast<int>(m.size()); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (int j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank_of(Matrix m) { return static_cast<int>(row_reduce(m).size()); }

// Basis of {x : m x = 0}, scaled to integer entries.
Matrix nullspace(Matrix m, int cols) {
  auto pivots = row_reduce(m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  Matrix out;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
    Integer scale = 1;
    for (const auto& x : v) scale = lcm(scale, Integer(x.get_den()));
    for (auto& x : v) x *= scale;
    out.push_back(std::move(v));
  }
  return out;
}

// Vertex positions relative to a root as signed sums of edge vectors over a
// breadth-first spanning tree.
struct Layout {
  std::vector<std::vector<int>> coef;  // coef[v][k] in {-1, 0, 1}
  std::vector<int> non_tree;
};

Layout layout(const DualGraph& g, int root) {
  const int e = static_cast<int>(g.edges.size());
  Layout out;
  out.coef.assign(g.vertex_count, {});
  std::vector<bool> seen(g.vertex_count, false), tree(e, false);
  out.coef[root].assign(e, 0);
  seen[root] = true;
  std::deque<int> queue{root};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int k = 0; k < e; ++k) {
      const auto& edge = g.edges[k];
      int u, step;
      if (edge.v[0] == v) u = edge.v[1], step = 1;
      else if (edge.v[1] == v) u = edge.v[0], step = -1;
      else continue;
      if (seen[u]) continue;
      seen[u] = true;
      tree[k] = true;
      out.coef[u] = out.coef[v];
      out.coef[u][k] += step;
      queue.push_back(u);
    }
  }
  for (int v = 0; v < g.vertex_count; ++v)
    if (!seen[v]) throw Error(Errc::InvalidInput, "bounded part of the dual graph is disconnected");
  for (int k = 0; k < e; ++k)
    if (!tree[k]) out.non_tree.push_back(k);
  return out;
}

}  // namespace

CurveFamily family_of(const TropicalCurve& c) {
  require_smooth(c);
  CurveFamily f;
  f.origin = c;
  f.graph = dual_graph(c.dual);
  auto lay = layout(f.graph, 0);
  const int e = static_cast<int>(f.graph.edges.size());
  for (int k : lay.non_tree) {
    const auto& edge = f.graph.edges[k];
    std::vector<Rational> rx(e, 0), ry(e, 0);
    for (int j = 0; j < e; ++j) {
      int s = lay.coef[edge.v[0]][j] - lay.coef[edge.v[1]][j] + (j == k ? 1 : 0);
      rx[j] = s * f.graph.edges[j].dir.x;
      ry[j] = s * f.graph.edges[j].dir.y;
    }
    f.closure.push_back(rx);
    f.closure.push_back(ry);
  }
  f.closure_rank = rank_of(f.closure);
  return f;
}

std::vector<std::vector<Rational>> length_space(const CurveFamily& f) {
  return nullspace(f.closure, static_cast<int>(f.graph.edges.size()));
}

FamilyPoint point_of(const CurveFamily& f) {
  FamilyPoint p;
  p.shift = {0, 0};
  for (const auto& e : f.origin.edges) p.lengths.push_back(e.length);
  return p;
}

int lowest_vertex(const TropicalCurve& c, const RationalPoint& shift) {
  int best = -1;
  bool tie = false;
  Rational low;
  for (int v = 0; v < static_cast<int>(c.vertices.size()); ++v) {
    Rational d = dot(c.vertices[v], shift);
    if (best < 0 || d < low) {
      best = v;
      low = d;
      tie = false;
    } else if (d == low) {
      tie = true;
    }
  }
  if (best < 0) throw Error(Errc::InvalidInput, "curve has no vertices");
  if (tie) throw Error(Errc::Tie, "several vertices minimize <v, shift> for shift = " + show(shift));
  return best;
}

TropicalCurve member(const CurveFamily& f, const FamilyPoint& p) {
  int base = 0;
  if (p.base_vertex) base = *p.base_vertex;
  else if (p.shift.x != 0 || p.shift.y != 0) base = lowest_vertex(f.origin, p.shift);
  if (base < 0 || base >= static_cast<int>(f.origin.vertices.size()))
    throw Error(Errc::InvalidInput, "base vertex out of range");
  return assemble_curve(f.origin.dual, base, f.origin.vertices[base] + p.shift, p.lengths);
}

UnboundedRegion unbounded_region(const TropicalCurve& c, const RationalPoint& shift) {
  const auto& vs = c.newton.vertices();
  const int n = static_cast<int>(vs.size());
  int best = -1;
  int count = 0;
  Rational high;
  for (int i = 0; i < n; ++i) {
    Rational d = dot(RationalPoint(vs[i]), shift);
    if (best < 0 || d > high) best = i, high = d, count = 1;
    else if (d == high) ++count;
  }
  // A Newton edge maximizing <e, shift> also reaches its lattice points.
  if (count > 1 || n < 2)
    throw Error(Errc::OnConeBoundary, "shift = " + show(shift) + " lies on a cone of the recession fan");
  const auto& e = vs[best];
  const auto& prev = vs[(best + n - 1) % n];
  const auto& next = vs[(best + 1) % n];
  auto normal = [](const LatticeVector& a, const LatticeVector& b) {
    LatticeVector d = b - a;
    return primitive({d.y, -d.x}).first;
  };
  return {e, normal(prev, e), normal(e, next)};
}

bool in_region(const TropicalCurve& c, const LatticeVector& monomial, const RationalPoint& p) {
  auto f = dual_polynomial(c);
  auto it = f.terms.find(monomial);
  if (it == f.terms.end()) return false;
  Rational own = dot(p, monomial) - it->second;
  for (const auto& [e, nu] : f.terms)
    if (e != monomial && dot(p, e) - nu >= own) return false;
  return true;
}

std::vector<int> pinned_vertices(const TropicalCurve& c, const TropicalCurve& other,
                                 const RationalPoint& shift) {
  auto crossings = proper_crossings(c, other);
  std::set<int> crossing;
  for (const auto& x : crossings) crossing.insert(x.b);
  const int n = static_cast<int>(other.vertices.size());
  const int e = static_cast<int>(other.edges.size());
  std::vector<std::vector<int>> incident(n);
  std::vector<std::vector<std::pair<int, int>>> neighbours(n);
  for (int k = 0; k < e; ++k) {
    const auto& edge = other.edges[k];
    incident[edge.v[0]].push_back(k);
    incident[edge.v[1]].push_back(k);
    neighbours[edge.v[0]].push_back({edge.v[1], k});
    neighbours[edge.v[1]].push_back({edge.v[0], k});
  }
  for (int r = 0; r < static_cast<int>(other.rays.size()); ++r) incident[other.rays[r].v].push_back(e + r);
  std::vector<bool> pinned(n, false);
  pinned[lowest_vertex(other, shift)] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (pinned[v]) continue;
      std::vector<int> crossing_here;
      for (int s : incident[v])
        if (crossing.count(s)) crossing_here.push_back(s);
      std::vector<int> via;
      for (const auto& [u, k] : neighbours[v])
        if (pinned[u]) via.push_back(k);
      bool rule_one = crossing_here.size() >= 2;
      bool rule_two = via.size() >= 2;
      bool rule_three = false;
      for (int s : crossing_here)
        for (int k : via)
          if (k != s) rule_three = true;
      if (rule_one || rule_two || rule_three) {
        pinned[v] = true;
        changed = true;
      }
    }
  }
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (pinned[v]) out.push_back(v);
  return out;
}

Divisor intersection_divisor(const TropicalCurve& c, const CurveFamily& f, const FamilyPoint& p) {
  return stable_intersection(c, member(f, p));
}

namespace {

using Labelled = std::map<std::pair<int, int>, RationalPoint>;

std::optional<Labelled> labelled_crossings(const TropicalCurve& c, const TropicalCurve& other,
                                           const LatticeVector& v) {
  auto r = perturbed_crossings(c, other, v);
  if (!r) return std::nullopt;
  Labelled out;
  for (const auto& x : *r) out[{x.a, x.b}] = x.point;
  return out;
}

}  // namespace

LocalDims local_dims(const TropicalCurve& c, const CurveFamily& f, const FamilyPoint& p) {
  FamilyPoint at = p;
  if (!at.base_vertex) at.base_vertex = (p.shift.x != 0 || p.shift.y != 0) ? lowest_vertex(f.origin, p.shift) : 0;
  auto here_curve = member(f, at);
  std::optional<LatticeVector> dir;
  for (const auto& cand : perturbation_candidates(12))
    if (perturbed_crossings(c, here_curve, cand)) {
      dir = cand;
      break;
    }
  if (!dir) throw Error(Errc::NotLinearHere, "no generic perturbation at this point");
  auto here = *labelled_crossings(c, here_curve, *dir);

  auto basis = length_space(f);
  const int e = static_cast<int>(f.graph.edges.size());
  // Directions: length basis vectors, then the two shift directions.
  std::vector<std::pair<std::vector<Rational>, RationalPoint>> moves;
  for (const auto& b : basis) moves.push_back({b, {0, 0}});
  moves.push_back({std::vector<Rational>(e, 0), {1, 0}});
  moves.push_back({std::vector<Rational>(e, 0), {0, 1}});

  auto evaluate = [&](const std::vector<Rational>& w, const RationalPoint& d, const Rational& h)
      -> std::optional<Labelled> {
    FamilyPoint q = at;
    q.shift = at.shift + h * d;
    for (int k = 0; k < e; ++k) {
      q.lengths[k] += h * w[k];
      if (q.lengths[k] <= 0) return std::nullopt;
    }
    return labelled_crossings(c, member(f, q), *dir);
  };
  auto same_labels = [&](const Labelled& a) {
    if (a.size() != here.size()) return false;
    for (auto ia = a.cbegin(), ib = here.cbegin(); ia != a.cend(); ++ia, ++ib)
      if (ia->first != ib->first) return false;
    return true;
  };

  Matrix columns;
  for (const auto& [w, d] : moves) {
    std::optional<std::vector<Rational>> derivative;
    Rational h = frac(1, 64);
    for (int attempt = 0; attempt < 24 && !derivative; ++attempt, h /= 2) {
      std::vector<std::vector<Rational>> slopes;
      bool ok = true;
      for (const Rational& step : {Rational(h), Rational(h / 2), Rational(-h), Rational(-h / 2)}) {
        auto there = evaluate(w, d, step);
        if (!there || !same_labels(*there)) {
          ok = false;
          break;
        }
        std::vector<Rational> s;
        for (const auto& [label, pt] : *there) {
          s.push_back((pt.x - here.at(label).x) / step);
          s.push_back((pt.y - here.at(label).y) / step);
        }
        slopes.push_back(std::move(s));
      }
      if (ok && std::all_of(slopes.begin(), slopes.end(), [&](auto& s) { return s == slopes[0]; }))
        derivative = slopes[0];
    }
    if (!derivative) throw Error(Errc::NotLinearHere, "the chip map is not linear around this point");
    columns.push_back(*derivative);
  }
  // Rank of the length columns alone and with the shift columns.
  const int nv = static_cast<int>(basis.size());
  Matrix lengths_only(columns.begin(), columns.begin() + nv);
  LocalDims out;
  out.image = rank_of(lengths_only);
  out.kernel = nv - out.image;
  out.total_image = rank_of(columns);
  if (nv > 0 && out.kernel > 0) {
    // Kernel of the map: combinations of basis vectors with zero image.
    const int rows = static_cast<int>(columns[0].size());
    Matrix jac(rows, std::vector<Rational>(nv));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < nv; ++j) jac[i][j] = lengths_only[j][i];
    for (const auto& coeffs : nullspace(jac, nv)) {
      std::vector<Rational> v(e, 0);
      for (int j = 0; j < nv; ++j)
        for (int k = 0; k < e; ++k) v[k] += coeffs[j] * basis[j][k];
      out.kernel_basis.push_back(std::move(v));
    }
  }
  return out;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::RealizableWitness: return "REALIZABLE_WITNESS";
    case Verdict::RealizableByTheorem: return "REALIZABLE_BY_THEOREM";
    case Verdict::NotInRst: return "NOT_IN_RST";
    case Verdict::NotEquivalent: return "NOT_EQUIVALENT";
    case Verdict::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

namespace {

using Triangle = std::array<LatticeVector, 3>;
using Triangulation = std::vector<Triangle>;

Triangle make_triangle(LatticeVector a, LatticeVector b, LatticeVector c) {
  Triangle t{a, b, c};
  std::sort(t.begin(), t.end());
  return t;
}

int side(const LatticeVector& a, const LatticeVector& b, const LatticeVector& p) {
  auto d = det2(b - a, p - a);
  return d > 0 ? 1 : d < 0 ? -1 : 0;
}

struct InteriorEdge {
  LatticeVector p, q;  // the shared edge
  LatticeVector r, s;  // apexes of its two triangles
  int first, second;   // triangle indices
};

std::vector<InteriorEdge> interior_edges(const Triangulation& t) {
  std::map<std::pair<LatticeVector, LatticeVector>, std::vector<std::pair<int, LatticeVector>>> by_edge;
  for (int i = 0; i < static_cast<int>(t.size()); ++i)
    for (int k = 0; k < 3; ++k) {
      auto a = t[i][k], b = t[i][(k + 1) % 3], apex = t[i][(k + 2) % 3];
      by_edge[{std::min(a, b), std::max(a, b)}].push_back({i, apex});
    }
  std::vector<InteriorEdge> out;
  for (const auto& [edge, sides] : by_edge)
    if (sides.size() == 2)
      out.push_back({edge.first, edge.second, sides[0].second, sides[1].second, sides[0].first,
                     sides[1].first});
  return out;
}

// Heights lifting the triangulation to a strictly concave upper surface.
std::optional<std::vector<Rational>> regular_heights(const Triangulation& t,
                                                     const std::vector<LatticeVector>& points) {
  std::map<LatticeVector, int> index;
  for (int i = 0; i < static_cast<int>(points.size()); ++i) index[points[i]] = i;
  LinearSystem sys(static_cast<int>(points.size()));
  for (const auto& e : interior_edges(t)) {
    // s = alpha p + beta q + gamma r with alpha + beta + gamma = 1.
    RationalPoint d1(e.q - e.p), d2(e.r - e.p), ds(e.s - e.p);
    Rational den = det2(d1, d2);
    Rational beta = det2(ds, d2) / den, gamma = det2(d1, ds) / den;
    Rational alpha = 1 - beta - gamma;
    std::vector<Rational> row(points.size(), 0);
    row[index[e.s]] += 1;
    row[index[e.p]] -= alpha;
    row[index[e.q]] -= beta;
    row[index[e.r]] -= gamma;
    sys.add(row, Relation::Less, 0);
  }
  auto res = solve_strict(sys);
  if (!res.feasible) return std::nullopt;
  return res.point;
}

Subdivision to_subdivision(const Triangulation& t) {
  std::vector<LatticePolygon> cells;
  for (const auto& tri : t) cells.push_back(LatticePolygon::hull(std::vector<LatticeVector>(tri.begin(), tri.end())));
  return Subdivision(cells);
}

}  // namespace

std::vector<Subdivision> unimodular_triangulations(const TropicalCurve& c) {
  require_smooth(c);
  auto points = c.newton.lattice_points();
  if (points.size() > 12)
    throw Error(Errc::PolygonTooLarge, std::to_string(points.size()) + " lattice points, at most 12 supported");
  Triangulation start;
  for (const auto& cell : c.dual.cells()) {
    const auto& v = cell.vertices();
    start.push_back(make_triangle(v[0], v[1], v[2]));
  }
  std::sort(start.begin(), start.end());
  std::vector<Subdivision> out;
  std::set<Triangulation> seen{start};
  std::deque<Triangulation> queue{start};
  while (!queue.empty()) {
    auto t = queue.front();
    queue.pop_front();
    if (regular_heights(t, points)) out.push_back(to_subdivision(t));
    for (const auto& e : interior_edges(t)) {
      if (side(e.r, e.s, e.p) * side(e.r, e.s, e.q) >= 0) continue;  // not convex
      Triangulation next;
      for (int i = 0; i < static_cast<int>(t.size()); ++i)
        if (i != e.first && i != e.second) next.push_back(t[i]);
      next.push_back(make_triangle(e.r, e.s, e.p));
      next.push_back(make_triangle(e.r, e.s, e.q));
      std::sort(next.begin(), next.end());
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return out;
}

namespace {

// Affine form over the stratum variables: base position (x, y), then one
// length per bounded edge.
struct Form {
  std::vector<Rational> c;
  Rational k;
};

Form operator+(Form a, const Form& b) {
  for (std::size_t i = 0; i < a.c.size(); ++i) a.c[i] += b.c[i];
  a.k += b.k;
  return a;
}

Form scaled(Form a, const Rational& s) {
  for (auto& v : a.c) v *= s;
  a.k *= s;
  return a;
}

struct FormPoint {
  Form x, y;
};

struct OtherSegment {
  FormPoint origin;
  LatticeVector dir;
  int length_var = -1;  // -1 for rays
  std::int64_t weight = 1;
};

struct Stratum {
  Subdivision dual;
  DualGraph graph;
  int vars = 0;
  std::vector<FormPoint> pos;
  std::vector<OtherSegment> segments;
  LinearSystem base;  // closure and positive lengths
};

// form (rel) rhs, moving the constant across.
void add_row(LinearSystem& s, const Form& f, Relation rel, const Rational& rhs, std::string label) {
  s.add(f.c, rel, rhs - f.k, std::move(label));
}

Stratum make_stratum(const Subdivision& dual) {
  Stratum st;
  st.dual = dual;
  st.graph = dual_graph(dual);
  const int e = static_cast<int>(st.graph.edges.size());
  st.vars = 2 + e;
  auto lay = layout(st.graph, 0);
  auto var = [&](int i) {
    Form f{std::vector<Rational>(st.vars, 0), 0};
    f.c[i] = 1;
    return f;
  };
  for (int v = 0; v < st.graph.vertex_count; ++v) {
    FormPoint p{var(0), var(1)};
    for (int k = 0; k < e; ++k) {
      if (lay.coef[v][k] == 0) continue;
      p.x = p.x + scaled(var(2 + k), lay.coef[v][k] * st.graph.edges[k].dir.x);
      p.y = p.y + scaled(var(2 + k), lay.coef[v][k] * st.graph.edges[k].dir.y);
    }
    st.pos.push_back(p);
  }
  st.base = LinearSystem(st.vars);
  for (int k : lay.non_tree) {
    const auto& edge = st.graph.edges[k];
    Form dx = st.pos[edge.v[0]].x + scaled(var(2 + k), edge.dir.x) + scaled(st.pos[edge.v[1]].x, -1);
    Form dy = st.pos[edge.v[0]].y + scaled(var(2 + k), edge.dir.y) + scaled(st.pos[edge.v[1]].y, -1);
    add_row(st.base, dx, Relation::Equal, 0, "closure x through edge " + std::to_string(k));
    add_row(st.base, dy, Relation::Equal, 0, "closure y through edge " + std::to_string(k));
  }
  for (int k = 0; k < e; ++k) add_row(st.base, scaled(var(2 + k), -1), Relation::Less, 0, "length " + std::to_string(k) + " > 0");
  for (int k = 0; k < e; ++k) {
    const auto& edge = st.graph.edges[k];
    st.segments.push_back({st.pos[edge.v[0]], edge.dir, 2 + k, edge.weight});
  }
  for (const auto& r : st.graph.rays) st.segments.push_back({st.pos[r.v], r.dir, -1, r.weight});
  return st;
}

Form length_form(const Stratum& st, int var) {
  Form f{std::vector<Rational>(st.vars, 0), 0};
  f.c[var] = 1;
  return f;
}

// The chip lies on the closed segment b.
void add_chip_rows(const Stratum& st, const ChipPair& pair, LinearSystem& s) {
  const auto& b = st.segments[pair.other_segment];
  const auto& q = pair.chip;
  const auto& u = b.dir;
  std::string tag = " for chip " + show(q) + " on segment " + std::to_string(pair.other_segment);
  // det(q - P, u) = 0
  Form line = scaled(b.origin.x, u.y) + scaled(b.origin.y, -u.x);
  add_row(s, line, Relation::Equal, q.x * u.y - q.y * u.x, "on the line" + tag);
  // 0 <= <q - P, u> (<= |u|^2 length)
  Form along = scaled(b.origin.x, u.x) + scaled(b.origin.y, u.y);
  Rational uq = dot(q, u);
  add_row(s, along, Relation::LessEqual, uq, "after the start" + tag);
  if (b.length_var >= 0)
    add_row(s, scaled(along, -1) + scaled(length_form(st, b.length_var), -dot(u, u)), Relation::LessEqual,
            -uq, "before the end" + tag);
}

// Segment a of c and segment b cross strictly inside both.
void add_crossing_rows(const Stratum& st, const std::vector<Segment>& mine, const ChipPair& pair,
                       LinearSystem& s) {
  const auto& a = mine[pair.segment];
  const auto& b = st.segments[pair.other_segment];
  const std::int64_t d = det2(a.dir, b.dir);
  const int sg = d > 0 ? 1 : -1;
  std::string tag = " for segments " + std::to_string(pair.segment) + "/" + std::to_string(pair.other_segment);
  // rel = P - p_a;  s d = det(rel, u_b);  t d = det(rel, u_a).
  auto det_with = [&](const LatticeVector& u) {
    Form f = scaled(b.origin.x, u.y) + scaled(b.origin.y, -u.x);
    f.k -= a.origin.x * u.y - a.origin.y * u.x;
    return scaled(f, sg);
  };
  Form sd = det_with(b.dir), td = det_with(a.dir);
  add_row(s, scaled(sd, -1), Relation::Less, 0, "crossing after the start of mine" + tag);
  if (a.length) add_row(s, sd, Relation::Less, std::abs(d) * *a.length, "crossing before the end of mine" + tag);
  add_row(s, scaled(td, -1), Relation::Less, 0, "crossing after the start of theirs" + tag);
  if (b.length_var >= 0)
    add_row(s, td + scaled(length_form(st, b.length_var), -std::abs(d)), Relation::Less, 0,
            "crossing before the end of theirs" + tag);
}

LinearSystem chip_system(const Stratum& st, const std::vector<ChipPair>& prefix) {
  LinearSystem s = st.base;
  for (const auto& p : prefix) add_chip_rows(st, p, s);
  return s;
}

LinearSystem crossing_system(const Stratum& st, const std::vector<Segment>& mine,
                             const std::vector<ChipPair>& prefix) {
  LinearSystem s = st.base;
  for (const auto& p : prefix) add_crossing_rows(st, mine, p, s);
  return s;
}

// All ways to split a chip of multiplicity m into distinct transverse pairs.
std::vector<std::vector<ChipPair>> chip_options(const TropicalCurve& c, const std::vector<Segment>& mine,
                                                const Stratum& st, const RationalPoint& q, std::int64_t m) {
  std::vector<ChipPair> pairs;
  for (int a : segments_through(c, q))
    for (int b = 0; b < static_cast<int>(st.segments.size()); ++b) {
      std::int64_t mult = std::abs(det2(mine[a].dir, st.segments[b].dir)) * mine[a].weight * st.segments[b].weight;
      if (mult > 0 && mult <= m) pairs.push_back({q, a, b, mult});
    }
  std::vector<std::vector<ChipPair>> out;
  std::vector<ChipPair> chosen;
  std::function<void(std::size_t, std::int64_t)> pick = [&](std::size_t from, std::int64_t left) {
    if (left == 0) {
      out.push_back(chosen);
      return;
    }
    for (std::size_t i = from; i < pairs.size(); ++i) {
      if (pairs[i].multiplicity > left) continue;
      chosen.push_back(pairs[i]);
      pick(i + 1, left - pairs[i].multiplicity);
      chosen.pop_back();
    }
  };
  pick(0, m);
  return out;
}

std::vector<Rational> witness_lengths(const Stratum& st, const std::vector<Rational>& x) {
  return {x.begin() + 2, x.begin() + st.vars};
}

}  // namespace

RealizabilityVerdict rst_membership(const TropicalCurve& c, const Divisor& d, RstOptions opts) {
  require_smooth(c);
  require_on_curve(c, d);
  if (!d.effective()) throw Error(Errc::InvalidInput, "divisor is not effective");
  RealizabilityVerdict out;
  Rational expected = 2 * area(c.newton);
  if (Rational(d.degree()) != expected) {
    out.status = Verdict::NotInRst;
    out.note = "degree " + std::to_string(d.degree()) + " differs from the self-intersection degree " +
               to_string(expected);
    return out;
  }
  std::vector<Subdivision> duals = opts.alt_subdivisions ? unimodular_triangulations(c)
                                                         : std::vector<Subdivision>{c.dual};
  out.subdivisions = static_cast<int>(duals.size());
  auto mine = segments(c);
  bool unverified = false;

  for (int si = 0; si < static_cast<int>(duals.size()); ++si) {
    Stratum st = make_stratum(duals[si]);
    std::vector<std::vector<std::vector<ChipPair>>> options;
    for (const auto& [q, m] : d.chips()) options.push_back(chip_options(c, mine, st, q, m));
    std::stable_sort(options.begin(), options.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    const int n = static_cast<int>(options.size());
    std::vector<std::uint64_t> below(n + 1, 1);
    for (int i = n - 1; i >= 0; --i) below[i] = below[i + 1] * options[i].size();
    out.matchings += below[0];
    if (below[0] == 0) continue;

    std::vector<ChipPair> prefix;
    std::function<bool(int)> search = [&](int depth) -> bool {
      for (const char* kind : {"chips", "crossings"}) {
        LinearSystem sys = std::string(kind) == "chips" ? chip_system(st, prefix) : crossing_system(st, mine, prefix);
        auto res = solve_strict(sys);
        if (!res.feasible) {
          out.certificate.push_back({si, prefix, kind, std::move(sys), std::move(res.certificate), below[depth]});
          out.covered += below[depth];
          return false;
        }
      }
      if (depth == n) {
        auto sys = chip_system(st, prefix);
        auto x = relative_interior_point(sys);
        auto w = assemble_curve(st.dual, 0, {x[0], x[1]}, witness_lengths(st, x));
        if (stable_intersection(c, w) == d) {
          out.status = Verdict::RealizableWitness;
          out.witness = w;
          return true;
        }
        unverified = true;
        return false;
      }
      for (const auto& option : options[depth]) {
        prefix.insert(prefix.end(), option.begin(), option.end());
        if (search(depth + 1)) return true;
        prefix.resize(prefix.size() - option.size());
      }
      return false;
    };
    if (search(0)) return out;
  }
  if (out.covered == out.matchings && !unverified) {
    out.status = Verdict::NotInRst;
  } else {
    out.status = Verdict::Unknown;
    out.note = "a feasible stratum did not re-verify";
  }
  return out;
}

bool verify_certificates(const RealizabilityVerdict& v) {
  if (v.status != Verdict::NotInRst) return false;
  std::uint64_t covered = 0;
  for (const auto& s : v.certificate) {
    if (!certifies_infeasible(s.rows, s.multipliers)) return false;
    covered += s.matchings;
  }
  return covered == v.covered && covered == v.matchings;
}

bool equivalent_to_self_intersection(const TropicalCurve& c, const Divisor& d) {
  return linearly_equivalent(c, d, self_intersection(c));
}

RealizabilityVerdict realizable_internal(const TropicalCurve& c, const Divisor& d) {
  int g = genus(c);
  if (g > 1) throw Error(Errc::UnsupportedGenus, "genus " + std::to_string(g));
  require_smooth(c);
  RealizabilityVerdict out;
  if (!equivalent_to_self_intersection(c, d)) {
    out.status = Verdict::NotEquivalent;
    out.note = "not linearly equivalent to the self-intersection";
    return out;
  }
  if (g == 0) {
    out.status = Verdict::RealizableByTheorem;
    out.note = "genus 0: every divisor of the right degree is realizable";
    return out;
  }
  if (is_internal(c, d)) {
    auto rst = rst_membership(c, d);
    out.status = Verdict::RealizableByTheorem;
    out.witness = rst.witness;
    out.note = "internal divisor";
    return out;
  }
  out = rst_membership(c, d);
  return out;
}

std::vector<Rational> balancing_defect(const LocalCone& cone) {
  std::size_t dim = 0;
  for (const auto& b : cone.base) dim = std::max(dim, b.size());
  for (const auto& [label, v] : cone.attached) dim = std::max(dim, v.size());
  std::vector<Rational> sum(dim, 0);
  for (const auto& [label, v] : cone.attached)
    for (std::size_t i = 0; i < v.size(); ++i) sum[i] += v[i];
  Matrix base;
  for (const auto& b : cone.base) {
    std::vector<Rational> row(dim, 0);
    for (std::size_t i = 0; i < b.size(); ++i) row[i] = b[i];
    base.push_back(row);
  }
  auto pivots = row_reduce(base);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    Rational f = sum[pivots[r]];
    if (f == 0) continue;
    for (std::size_t j = 0; j < dim; ++j) sum[j] -= f * base[r][j];
  }
  return sum;
}

LocalCone equal_speed_cone(const TropicalCurve& c, const Divisor& exposed) {
  auto cell = cell_of(c, exposed);
  if (!cell.exposed) throw Error(Errc::InvalidInput, "divisor is not in an exposed cell");
  Cycle cyc = cycle_of(c);
  const int len = static_cast<int>(cyc.vertices.size());
  auto position_in_cycle = [&](int v) {
    return static_cast<int>(std::find(cyc.vertices.begin(), cyc.vertices.end(), v) - cyc.vertices.begin());
  };
  // Primitive directions leaving cycle vertex k forwards and backwards.
  auto forward = [&](int k) {
    const auto& e = c.edges[cyc.edges[k]];
    return cyc.forward[k] ? e.dir : -e.dir;
  };
  auto backward = [&](int k) {
    int prev = (k + len - 1) % len;
    const auto& e = c.edges[cyc.edges[prev]];
    return cyc.forward[prev] ? -e.dir : e.dir;
  };
  int a = cell.pinned[0], b = cell.pinned[1];
  int ka = position_in_cycle(a), kb = position_in_cycle(b);
  if ((ka + 1) % len != kb) std::swap(ka, kb), std::swap(a, b);
  if ((ka + 1) % len != kb) throw Error(Errc::InvalidInput, "pinned chips are not at adjacent cycle vertices");

  // Coordinates: pinned chips in point order, then free chips in point order.
  std::vector<RationalPoint> pinned_pts, free_pts;
  for (const auto& [p, m] : exposed.chips())
    for (std::int64_t i = 0; i < m; ++i)
      (locate(c, p)->kind == CurvePoint::Kind::Vertex ? pinned_pts : free_pts).push_back(p);
  const std::size_t dim = 2 * (pinned_pts.size() + free_pts.size());
  int slot_a = c.vertices[a] < c.vertices[b] ? 0 : 1;
  int slot_b = 1 - slot_a;
  auto put = [&](std::vector<std::int64_t>& v, int slot, const LatticeVector& u) {
    v[2 * slot] = u.x;
    v[2 * slot + 1] = u.y;
  };
  LocalCone cone;
  for (std::size_t i = 0; i < free_pts.size(); ++i) {
    auto where = *locate(c, free_pts[i]);
    LatticeVector u = where.kind == CurvePoint::Kind::Ray ? c.rays[where.index].dir : c.edges[where.index].dir;
    std::vector<std::int64_t> v(dim, 0);
    put(v, static_cast<int>(pinned_pts.size() + i), u);
    cone.base.push_back(v);
  }
  std::vector<std::int64_t> away(dim, 0), toward(dim, 0), out(dim, 0);
  put(away, slot_a, backward(ka));
  put(away, slot_b, forward(kb));
  put(toward, slot_a, forward(ka));
  put(toward, slot_b, backward(kb));
  put(out, slot_a, -(forward(ka) + backward(ka)));
  put(out, slot_b, -(forward(kb) + backward(kb)));
  cone.attached = {{"away", away}, {"toward", toward}, {"equal-speed", out}};
  return cone;
}

CounterexampleReport certify_counterexample(const TropicalCurve& c, const Divisor& d) {
  if (int g = genus(c); g != 1)
    throw Error(Errc::WrongGenus, "counterexample certification needs genus 1, curve has genus " + std::to_string(g));
  CounterexampleReport rep;
  rep.equivalent = equivalent_to_self_intersection(c, d);
  if (!rep.equivalent) {
    rep.note = "NOT_A_COUNTEREXAMPLE: fails the necessary linear equivalence condition";
    return rep;
  }
  rep.internal = is_internal(c, d);
  rep.rst = rst_membership(c, d, {.alt_subdivisions = true});

  // Neighbouring exposed divisor: pull the ray chip closest to the cycle back
  // to its vertex.
  auto cyc = cycle_of(c);
  std::optional<std::pair<Rational, RationalPoint>> nearest;
  for (const auto& [p, m] : d.chips()) {
    auto where = *locate(c, p);
    if (where.kind != CurvePoint::Kind::Ray) continue;
    int v = c.rays[where.index].v;
    if (std::find(cyc.vertices.begin(), cyc.vertices.end(), v) == cyc.vertices.end()) continue;
    if (!nearest || where.t < nearest->first) nearest = {where.t, p};
  }
  if (nearest) {
    Divisor e = d;
    e.add(nearest->second, -1);
    e.add(retraction(c, nearest->second), 1);
    if (cell_of(c, e).exposed) {
      rep.exposed = e;
      rep.balancing = balancing_defect(equal_speed_cone(c, e));
    }
  }
  rep.certified = rep.equivalent && !rep.internal && rep.rst.status == Verdict::NotInRst;
  if (rep.rst.status == Verdict::RealizableWitness)
    rep.note = "NOT_A_COUNTEREXAMPLE: a curve with the same dual polygon realizes the divisor";
  else if (rep.certified)
    rep.note = "COUNTEREXAMPLE: equivalent to the self-intersection, not internal, and no curve with this dual polygon "
               "realizes it; non-realizability by arbitrary curves further rests on the balancing "
               "argument, checked here only through the balancing defect of the neighbouring exposed cell";
  else
    rep.note = "NOT_A_COUNTEREXAMPLE: internal, or the stratum search was inconclusive";
  return rep;
}

}  // namespace troplane
