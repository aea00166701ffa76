#include "troplane/divisor.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

#include "troplane/error.hpp"

namespace troplane {

namespace {

std::string show(const RationalPoint& p) { return "(" + to_string(p.x) + "," + to_string(p.y) + ")"; }

void validate_piece(const PLFunction::Piece& piece, const Segment& s, int id) {
  auto fail = [&](const std::string& what) {
    throw Error(Errc::InvalidPl, "segment " + std::to_string(id) + ": " + what);
  };
  if (piece.slopes.size() != piece.breaks.size() + 1) fail("expected one more slope than breaks");
  for (const auto& k : piece.slopes)
    if (k.get_den() != 1) fail("slope " + to_string(k) + " is not an integer");
  Rational prev = 0;
  for (const auto& b : piece.breaks) {
    if (b <= prev) fail("breakpoints must increase strictly from 0");
    prev = b;
  }
  if (s.length && !piece.breaks.empty() && piece.breaks.back() >= *s.length)
    fail("breakpoint beyond the edge");
  if (!s.length && piece.slopes.back() != 0) fail("not constant far out on the ray");
}

Rational rise_along(const PLFunction::Piece& piece, const Rational& length) {
  Rational total = 0, prev = 0;
  for (std::size_t i = 0; i < piece.slopes.size(); ++i) {
    Rational end = i < piece.breaks.size() ? piece.breaks[i] : length;
    total += piece.slopes[i] * (end - prev);
    prev = end;
  }
  return total;
}

}  // namespace

void require_smooth(const TropicalCurve& c) {
  if (!is_smooth(c)) throw Error(Errc::NotSmooth, "divisor operations need a smooth curve");
}

void require_on_curve(const TropicalCurve& c, const Divisor& d) {
  for (const auto& [p, m] : d.chips())
    if (!locate(c, p)) throw Error(Errc::PointNotOnCurve, "chip at " + show(p));
}

std::vector<Rational> vertex_values(const TropicalCurve& c, const PLFunction& phi) {
  auto segs = segments(c);
  if (phi.pieces.size() != segs.size())
    throw Error(Errc::InvalidPl, "expected " + std::to_string(segs.size()) + " pieces");
  for (std::size_t s = 0; s < segs.size(); ++s) validate_piece(phi.pieces[s], segs[s], static_cast<int>(s));
  int n = static_cast<int>(c.vertices.size());
  std::vector<std::optional<Rational>> value(n);
  for (int root = 0; root < n; ++root) {
    if (value[root]) continue;
    value[root] = root == 0 ? phi.anchor_value : Rational(0);
    std::deque<int> queue{root};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (std::size_t k = 0; k < c.edges.size(); ++k) {
        const auto& e = c.edges[k];
        Rational rise = rise_along(phi.pieces[k], e.length);
        int u;
        Rational there;
        if (e.v[0] == v) u = e.v[1], there = *value[v] + rise;
        else if (e.v[1] == v) u = e.v[0], there = *value[v] - rise;
        else continue;
        if (!value[u]) {
          value[u] = there;
          queue.push_back(u);
        } else if (*value[u] != there) {
          throw Error(Errc::InvalidPl, "discontinuous at vertex " + show(c.vertices[u]));
        }
      }
    }
  }
  std::vector<Rational> out;
  for (auto& v : value) out.push_back(*v);
  return out;
}

Divisor divisor_of_pl(const TropicalCurve& c, const PLFunction& phi) {
  require_smooth(c);
  vertex_values(c, phi);
  auto segs = segments(c);
  std::vector<Rational> outgoing(c.vertices.size(), 0);
  Divisor d;
  for (std::size_t s = 0; s < segs.size(); ++s) {
    const auto& piece = phi.pieces[s];
    outgoing[segs[s].from] += piece.slopes.front();
    if (segs[s].to >= 0) outgoing[segs[s].to] -= piece.slopes.back();
    for (std::size_t i = 0; i < piece.breaks.size(); ++i) {
      Rational chips = piece.slopes[i] - piece.slopes[i + 1];
      d.add(segs[s].origin + piece.breaks[i] * segs[s].dir, chips.get_num().get_si());
    }
  }
  for (std::size_t v = 0; v < c.vertices.size(); ++v)
    d.add(c.vertices[v], Rational(-outgoing[v]).get_num().get_si());
  return d;
}

Rational cycle_arclength(const TropicalCurve& c, const Cycle& cyc, const RationalPoint& p) {
  Rational before = 0;
  for (std::size_t k = 0; k < cyc.edges.size(); ++k) {
    const auto& e = c.edges[cyc.edges[k]];
    const auto& start = c.vertices[cyc.vertices[k]];
    if (start == p) return before;
    RationalPoint d = p - start;
    LatticeVector dir = cyc.forward[k] ? e.dir : -e.dir;
    if (det2(d, dir) == 0) {
      Rational t = dot(d, dir) / dot(dir, dir);
      if (t > 0 && t < e.length) return before + t;
    }
    before += e.length;
  }
  throw Error(Errc::PointNotOnCurve, show(p) + " is not on the cycle");
}

AbelJacobiClass abel_jacobi(const TropicalCurve& c, const Divisor& d) {
  require_smooth(c);
  Cycle cyc = cycle_of(c);
  require_on_curve(c, d);
  AbelJacobiClass out;
  Rational total = 0;
  for (const auto& [p, m] : d.chips()) {
    out.degree += m;
    total += m * cycle_arclength(c, cyc, retraction(c, p));
  }
  out.position = mod_positive(total, cyc.length);
  return out;
}

bool linearly_equivalent(const TropicalCurve& c, const Divisor& d1, const Divisor& d2) {
  require_smooth(c);
  int g = genus(c);
  if (g > 1) throw Error(Errc::UnsupportedGenus, "genus " + std::to_string(g));
  require_on_curve(c, d1);
  require_on_curve(c, d2);
  if (g == 0) return d1.degree() == d2.degree();
  return abel_jacobi(c, d1) == abel_jacobi(c, d2);
}

namespace {

struct ChipGraph {
  std::vector<std::vector<int>> adj;
  int add_node() {
    adj.emplace_back();
    return static_cast<int>(adj.size()) - 1;
  }
  void link(int a, int b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
};

std::int64_t grid_steps(const Rational& t, int n, const std::string& what) {
  Rational s = t * n;
  if (s.get_den() != 1)
    throw Error(Errc::ResolutionMismatch, what + " " + to_string(t) + " is off the 1/" +
                                              std::to_string(n) + " grid");
  return s.get_num().get_si();
}

// Dhar burning reduction with respect to node 0; e must be nonnegative away
// from node 0.
void reduce(const ChipGraph& g, std::vector<std::int64_t>& e) {
  const int n = static_cast<int>(g.adj.size());
  while (true) {
    std::vector<bool> burnt(n, false);
    std::vector<std::int64_t> heat(n, 0);
    burnt[0] = true;
    std::deque<int> queue{0};
    int count = 1;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int w : g.adj[u]) {
        if (burnt[w]) continue;
        if (++heat[w] > e[w]) {
          burnt[w] = true;
          ++count;
          queue.push_back(w);
        }
      }
    }
    if (count == n) return;
    for (int u = 0; u < n; ++u) {
      if (burnt[u]) continue;
      for (int w : g.adj[u])
        if (burnt[w]) --e[u], ++e[w];
    }
  }
}

}  // namespace

bool equivalent_bruteforce(const TropicalCurve& c, const Divisor& d1, const Divisor& d2, int n) {
  require_smooth(c);
  if (n <= 0) throw Error(Errc::InvalidInput, "resolution must be positive");
  int g = genus(c);
  if (g > 1) throw Error(Errc::UnsupportedGenus, "genus " + std::to_string(g));
  require_on_curve(c, d1);
  require_on_curve(c, d2);
  if (d1.degree() != d2.degree()) return false;

  ChipGraph graph;
  for (std::size_t v = 0; v < c.vertices.size(); ++v) graph.add_node();
  std::vector<std::vector<int>> edge_nodes(c.edges.size());
  for (std::size_t k = 0; k < c.edges.size(); ++k) {
    const auto& e = c.edges[k];
    auto steps = grid_steps(e.length, n, "edge length");
    auto& chain = edge_nodes[k];
    chain.push_back(e.v[0]);
    for (std::int64_t j = 1; j < steps; ++j) chain.push_back(graph.add_node());
    chain.push_back(e.v[1]);
    for (std::size_t j = 0; j + 1 < chain.size(); ++j) graph.link(chain[j], chain[j + 1]);
  }
  std::vector<Rational> ray_reach(c.rays.size(), 0);
  for (const Divisor* d : {&d1, &d2})
    for (const auto& [p, m] : d->chips())
      if (auto where = locate(c, p); where->kind == CurvePoint::Kind::Ray)
        ray_reach[where->index] = std::max(ray_reach[where->index], where->t);
  std::vector<std::vector<int>> ray_nodes(c.rays.size());
  for (std::size_t r = 0; r < c.rays.size(); ++r) {
    auto steps = grid_steps(ray_reach[r], n, "ray chip parameter");
    auto& chain = ray_nodes[r];
    chain.push_back(c.rays[r].v);
    for (std::int64_t j = 1; j <= steps; ++j) {
      chain.push_back(graph.add_node());
      graph.link(chain[j - 1], chain[j]);
    }
  }

  auto place = [&](const Divisor& d) {
    std::vector<std::int64_t> e(graph.adj.size(), 0);
    for (const auto& [p, m] : d.chips()) {
      auto where = *locate(c, p);
      int node = where.index;
      if (where.kind == CurvePoint::Kind::Edge)
        node = edge_nodes[where.index][grid_steps(where.t, n, "chip parameter")];
      else if (where.kind == CurvePoint::Kind::Ray)
        node = ray_nodes[where.index][grid_steps(where.t, n, "chip parameter")];
      e[node] += m;
    }
    return e;
  };
  auto e1 = place(d1), e2 = place(d2);
  std::int64_t lift = 0;
  for (std::size_t v = 1; v < e1.size(); ++v) lift = std::max({lift, -e1[v], -e2[v]});
  for (std::size_t v = 1; v < e1.size(); ++v) e1[v] += lift, e2[v] += lift;
  reduce(graph, e1);
  reduce(graph, e2);
  return e1 == e2;
}

namespace {

struct CycleMembership {
  std::set<int> vertices;
  std::set<int> edges;
};

CycleMembership cycle_membership(const TropicalCurve& c) {
  Cycle cyc = cycle_of(c);
  return {{cyc.vertices.begin(), cyc.vertices.end()}, {cyc.edges.begin(), cyc.edges.end()}};
}

}  // namespace

bool is_internal(const TropicalCurve& c, const Divisor& d) {
  require_smooth(c);
  int g = genus(c);
  if (g > 1) throw Error(Errc::UnsupportedGenus, "genus " + std::to_string(g));
  require_on_curve(c, d);
  if (!d.effective()) throw Error(Errc::InvalidInput, "divisor is not effective");
  if (g == 0) return true;
  auto cyc = cycle_membership(c);
  std::int64_t on_cycle = 0;
  bool interior_chip = false;
  for (const auto& [p, m] : d.chips()) {
    auto where = *locate(c, p);
    if (where.kind == CurvePoint::Kind::Vertex && cyc.vertices.count(where.index)) on_cycle += m;
    if (where.kind == CurvePoint::Kind::Edge && cyc.edges.count(where.index)) {
      on_cycle += m;
      interior_chip = true;
    }
  }
  return on_cycle >= 2 || (on_cycle == 1 && interior_chip);
}

int cell_dimension(const TropicalCurve& c, const DivisorCell& cell) {
  int g = genus(c);
  if (g == 0) return static_cast<int>(cell.free.size());
  auto cyc = cycle_membership(c);
  bool constrained = std::any_of(cell.free.begin(), cell.free.end(),
                                 [&](int s) { return cyc.edges.count(s) > 0; });
  return static_cast<int>(cell.free.size()) - (constrained ? 1 : 0);
}

bool generalized_internal(const TropicalCurve& c, const DivisorCell& cell) {
  int d = static_cast<int>(cell.pinned.size() + cell.free.size());
  int k = static_cast<int>(cell.pinned.size());
  return cell_dimension(c, cell) == d - genus(c) - k;
}

DivisorCell cell_of(const TropicalCurve& c, const Divisor& d) {
  require_smooth(c);
  if (int g = genus(c); g != 1)
    throw Error(Errc::WrongGenus, "cell structure needs genus 1, curve has genus " + std::to_string(g));
  if (!d.effective()) throw Error(Errc::InvalidInput, "divisor is not effective");
  if (!linearly_equivalent(c, d, self_intersection(c)))
    throw Error(Errc::NotInLinearSystem, "divisor is not equivalent to the self-intersection");
  auto cyc = cycle_membership(c);
  DivisorCell cell;
  for (const auto& [p, m] : d.chips()) {
    auto where = *locate(c, p);
    int id = where.index;
    if (where.kind == CurvePoint::Kind::Ray) id += static_cast<int>(c.edges.size());
    for (std::int64_t k = 0; k < m; ++k)
      (where.kind == CurvePoint::Kind::Vertex ? cell.pinned : cell.free).push_back(id);
  }
  std::sort(cell.pinned.begin(), cell.pinned.end());
  std::sort(cell.free.begin(), cell.free.end());
  cell.dimension = cell_dimension(c, cell);
  cell.maximal = cell.pinned.empty();
  cell.internal = cell.maximal && cell.dimension == d.degree() - 1;
  bool pinned_on_cycle = std::all_of(cell.pinned.begin(), cell.pinned.end(),
                                     [&](int v) { return cyc.vertices.count(v) > 0; });
  bool free_external = std::none_of(cell.free.begin(), cell.free.end(),
                                    [&](int s) { return cyc.edges.count(s) > 0; });
  cell.exposed = cell.pinned.size() == 2 && pinned_on_cycle && free_external;
  return cell;
}

}  // namespace troplane
