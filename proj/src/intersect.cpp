#include "troplane/intersect.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>
#include <variant>

#include "troplane/error.hpp"

namespace troplane {

int EpsilonRational::sign() const {
  if (value != 0) return value > 0 ? 1 : -1;
  if (drift != 0) return drift > 0 ? 1 : -1;
  return 0;
}

int compare(const EpsilonRational& a, const EpsilonRational& b) {
  return EpsilonRational{a.value - b.value, a.drift - b.drift}.sign();
}

void Divisor::add(const RationalPoint& p, std::int64_t m) {
  if (m == 0) return;
  auto& slot = chips_[p];
  slot += m;
  if (slot == 0) chips_.erase(p);
}

std::int64_t Divisor::degree() const {
  std::int64_t d = 0;
  for (const auto& [p, m] : chips_) d += m;
  return d;
}

bool Divisor::effective() const {
  return std::all_of(chips_.begin(), chips_.end(), [](auto& c) { return c.second > 0; });
}

std::int64_t Divisor::at(const RationalPoint& p) const {
  auto it = chips_.find(p);
  return it == chips_.end() ? 0 : it->second;
}

Divisor Divisor::operator+(const Divisor& o) const {
  Divisor out = *this;
  for (const auto& [p, m] : o.chips_) out.add(p, m);
  return out;
}

Divisor Divisor::operator-(const Divisor& o) const {
  Divisor out = *this;
  for (const auto& [p, m] : o.chips_) out.add(p, -m);
  return out;
}

Divisor divisor_of(const std::vector<Crossing>& crossings) {
  Divisor d;
  for (const auto& c : crossings) d.add(c.point, c.multiplicity);
  return d;
}

namespace {

std::string show(const RationalPoint& p) { return "(" + to_string(p.x) + "," + to_string(p.y) + ")"; }

struct Degenerate {
  std::string witness;
};

// Scans all segment pairs of c1 against c2 + eps v. Returns the crossings or
// the first degeneracy found.
std::variant<std::vector<Crossing>, Degenerate> scan(const TropicalCurve& c1,
                                                     const TropicalCurve& c2,
                                                     const LatticeVector& v) {
  auto s1 = segments(c1), s2 = segments(c2);
  std::vector<Crossing> out;
  RationalPoint drift(v);
  for (int i = 0; i < static_cast<int>(s1.size()); ++i) {
    const auto& a = s1[i];
    for (int j = 0; j < static_cast<int>(s2.size()); ++j) {
      const auto& b = s2[j];
      RationalPoint d0 = b.origin - a.origin;
      std::int64_t den = det2(a.dir, b.dir);
      if (den == 0) {
        EpsilonRational offset{det2(d0, a.dir), det2(drift, a.dir)};
        if (offset.sign() != 0) continue;
        // Same supporting line: compare parameter intervals along a.dir.
        Rational nn = dot(a.dir, a.dir);
        Rational start = dot(d0, a.dir) / nn;
        int orient = dot(a.dir, b.dir) > 0 ? 1 : -1;
        Rational lo1 = 0;
        std::optional<Rational> hi1 = a.length;
        std::optional<Rational> lo2, hi2;
        if (b.length) {
          Rational other = start + orient * *b.length;
          lo2 = std::min(start, other);
          hi2 = std::max(start, other);
        } else if (orient > 0) {
          lo2 = start;
        } else {
          hi2 = start;
        }
        bool meets = (!hi2 || *hi2 >= lo1) && (!hi1 || !lo2 || *lo2 <= *hi1);
        if (meets) return Degenerate{"segments overlap along the line through " + show(a.origin)};
        continue;
      }
      EpsilonRational s{det2(d0, b.dir) / den, det2(drift, b.dir) / den};
      EpsilonRational t{det2(d0, a.dir) / den, det2(drift, a.dir) / den};
      auto outside = [](const EpsilonRational& x, const std::optional<Rational>& len) {
        return x.sign() < 0 || (len && compare(x, {*len, 0}) > 0);
      };
      if (outside(s, a.length) || outside(t, b.length)) continue;
      auto at_end = [](const EpsilonRational& x, const std::optional<Rational>& len) {
        return x.sign() == 0 || (len && compare(x, {*len, 0}) == 0);
      };
      RationalPoint p = a.origin + s.value * a.dir;
      if (at_end(s, a.length) || at_end(t, b.length))
        return Degenerate{"a vertex meets the other curve at " + show(p)};
      out.push_back({i, j, p, std::abs(den) * a.weight * b.weight});
    }
  }
  return out;
}

}  // namespace

std::vector<Crossing> proper_crossings(const TropicalCurve& c1, const TropicalCurve& c2) {
  auto r = scan(c1, c2, {0, 0});
  if (auto* d = std::get_if<Degenerate>(&r)) throw Error(Errc::NotProper, d->witness);
  return std::get<std::vector<Crossing>>(r);
}

Divisor proper_intersection(const TropicalCurve& c1, const TropicalCurve& c2) {
  return divisor_of(proper_crossings(c1, c2));
}

std::optional<std::vector<Crossing>> perturbed_crossings(const TropicalCurve& c1,
                                                         const TropicalCurve& c2,
                                                         const LatticeVector& v) {
  auto r = scan(c1, c2, v);
  if (std::holds_alternative<Degenerate>(r)) return std::nullopt;
  return std::get<std::vector<Crossing>>(r);
}

std::vector<LatticeVector> perturbation_candidates(int max_norm) {
  std::vector<LatticeVector> out;
  for (int n = 1; n <= max_norm; ++n) {
    std::vector<LatticeVector> ring;
    for (int a = -n; a <= n; ++a)
      for (int b = -n; b <= n; ++b)
        if (std::max(std::abs(a), std::abs(b)) == n && std::gcd(a, b) == 1) ring.push_back({a, b});
    std::sort(ring.begin(), ring.end(), angle_less);
    out.insert(out.end(), ring.begin(), ring.end());
  }
  return out;
}

Divisor stable_intersection(const TropicalCurve& c1, const TropicalCurve& c2,
                            std::optional<LatticeVector> v) {
  if (v) {
    if (*v == LatticeVector{}) throw Error(Errc::DegenerateDirection, "zero perturbation");
    auto r = perturbed_crossings(c1, c2, *v);
    if (!r)
      throw Error(Errc::DegenerateDirection, "direction (" + std::to_string(v->x) + "," +
                                                 std::to_string(v->y) + ") is not generic");
    return divisor_of(*r);
  }
  for (const auto& cand : perturbation_candidates(12))
    if (auto r = perturbed_crossings(c1, c2, cand)) return divisor_of(*r);
  throw Error(Errc::DegenerateDirection, "no generic direction of max-norm <= 12");
}

Divisor self_intersection(const TropicalCurve& c) { return stable_intersection(c, c); }

}  // namespace troplane
