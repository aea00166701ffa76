#pragma once

#include <map>
#include <optional>
#include <vector>

#include "troplane/curve.hpp"

namespace troplane {

// value + drift * eps for a formal infinitesimal eps > 0.
struct EpsilonRational {
  Rational value;
  Rational drift;

  int sign() const;
  bool operator==(const EpsilonRational&) const = default;
};

int compare(const EpsilonRational& a, const EpsilonRational& b);

struct EpsilonPoint {
  RationalPoint value;
  RationalPoint drift;
};

class Divisor {
 public:
  Divisor() = default;

  void add(const RationalPoint& p, std::int64_t m);
  const std::map<RationalPoint, std::int64_t>& chips() const { return chips_; }
  std::int64_t degree() const;
  bool effective() const;
  std::int64_t at(const RationalPoint& p) const;

  Divisor operator+(const Divisor& o) const;
  Divisor operator-(const Divisor& o) const;
  bool operator==(const Divisor& o) const = default;

 private:
  std::map<RationalPoint, std::int64_t> chips_;
};

// A transverse crossing of segment a of the first curve with segment b of the
// second (segment ids as in segments()).
struct Crossing {
  int a = 0;
  int b = 0;
  RationalPoint point;
  std::int64_t multiplicity = 0;
};

// Throws NotProper with a witness when a vertex of one curve lies on the
// other or segments overlap.
std::vector<Crossing> proper_crossings(const TropicalCurve& c1, const TropicalCurve& c2);
Divisor proper_intersection(const TropicalCurve& c1, const TropicalCurve& c2);

// Crossings of c1 with c2 + eps*v as eps -> 0+, reported at their limits.
// nullopt when v is not generic for the pair.
std::optional<std::vector<Crossing>> perturbed_crossings(const TropicalCurve& c1,
                                                         const TropicalCurve& c2,
                                                         const LatticeVector& v);

// Candidate perturbation directions in search order (max-norm, then angle).
std::vector<LatticeVector> perturbation_candidates(int max_norm);

Divisor stable_intersection(const TropicalCurve& c1, const TropicalCurve& c2,
                            std::optional<LatticeVector> v = std::nullopt);
Divisor self_intersection(const TropicalCurve& c);

Divisor divisor_of(const std::vector<Crossing>& crossings);

}  // namespace troplane
