#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "troplane/curve.hpp"
#include "troplane/divisor.hpp"

namespace troplane {

// Sum of c t^e over the retained exponents plus an unknown remainder of
// valuation at least order.
class TruncatedPuiseux {
 public:
  explicit TruncatedPuiseux(Rational order = 8) : order_(std::move(order)) {}
  TruncatedPuiseux(std::map<Rational, Rational> terms, Rational order);

  static TruncatedPuiseux monomial(const Rational& coeff, const Rational& exponent, const Rational& order);

  const std::map<Rational, Rational>& terms() const { return terms_; }
  const Rational& order() const { return order_; }
  bool is_zero() const { return terms_.empty(); }  // zero up to the truncation

  // Least retained exponent; empty when nothing is retained.
  std::optional<Rational> valuation() const;
  // Valuation, or OrderTooLow when nothing is retained.
  Rational certified_valuation() const;
  // Lower bound on the valuation: the valuation, or the order.
  Rational valuation_bound() const;

  TruncatedPuiseux operator+(const TruncatedPuiseux& o) const;
  TruncatedPuiseux operator-(const TruncatedPuiseux& o) const;
  TruncatedPuiseux operator-() const;
  TruncatedPuiseux operator*(const TruncatedPuiseux& o) const;
  // t^k times this series.
  TruncatedPuiseux shifted(const Rational& k) const;
  bool operator==(const TruncatedPuiseux& o) const = default;

 private:
  void normalize();
  std::map<Rational, Rational> terms_;
  Rational order_;
};

std::string to_string(const TruncatedPuiseux& s);

// Bivariate Laurent polynomial with series coefficients; absent exponents are
// exactly zero.
struct PuiseuxPolynomial {
  std::map<LatticeVector, TruncatedPuiseux> terms;

  PuiseuxPolynomial operator+(const PuiseuxPolynomial& o) const;
  PuiseuxPolynomial operator*(const PuiseuxPolynomial& o) const;
};

// Univariate Laurent polynomial with series coefficients.
struct PuiseuxUnivariate {
  std::map<int, TruncatedPuiseux> coeffs;

  PuiseuxUnivariate operator+(const PuiseuxUnivariate& o) const;
  PuiseuxUnivariate operator-(const PuiseuxUnivariate& o) const;
  PuiseuxUnivariate operator*(const PuiseuxUnivariate& o) const;
  bool is_zero() const;  // every coefficient zero up to truncation
};

enum class Variable { X, Y };

// Sylvester determinant of f and g as polynomials in the eliminated variable,
// after dividing each by the largest power of that variable dividing it (only
// roots in the torus matter).
// Throws OrderTooLow when a leading coefficient is not certified, and
// InvalidInput when both have degree 0 in it.
PuiseuxUnivariate resultant(const PuiseuxPolynomial& f, const PuiseuxPolynomial& g, Variable eliminate);

// Valuations of the nonzero roots, with multiplicity, ascending. Throws
// ZeroRoot when zero is a root, OrderTooLow when the Newton polygon is not
// certified, InvalidInput for the zero polynomial.
std::vector<Rational> root_valuations(const PuiseuxUnivariate& p);

// Coefficients may contain named parameters standing for generic constants
// of valuation 0: each term is coeff * t^exponent * symbol (or without a
// symbol when symbol is empty).
struct ParameterTerm {
  Rational exponent;
  Rational coeff;
  std::string symbol;
};

struct GenericPolynomial {
  std::map<LatticeVector, std::vector<ParameterTerm>> terms;

  std::set<std::string> symbols() const;
};

PuiseuxPolynomial instantiate(const GenericPolynomial& f, const std::map<std::string, Rational>& values,
                              const Rational& order);

// Infix syntax: monomials joined by + or -, each an optional coefficient in
// parentheses times x and y powers. A coefficient is a sum of terms like
// "3/2", "t^2", "-t^(1/2)*beta", "a". Example: "(a + beta - t*gamma)*x + t*a".
GenericPolynomial parse_generic(std::string_view text);

// Tropical polynomial of exact valuations; throws OrderTooLow.
TropicalPolynomial tropicalization(const PuiseuxPolynomial& f);

struct IntersectionValuations {
  std::vector<Rational> x;  // tropical x-coordinates (negated valuations)
  std::vector<Rational> y;
  std::optional<Divisor> divisor;  // empty when unpaired
  int trials = 0;
};

struct ValuationOptions {
  int trials = 3;
  Rational order = 8;
  std::uint64_t seed = 20240917;
};

// Tropicalization of V(f) and V(g) in the torus from the two resultants.
// Parameters are drawn as distinct integers in [2, 97] per trial; the trials
// must agree (GenericityFailure). Coordinates are paired only when one side
// is constant or the tropical curves meet properly.
IntersectionValuations tropicalize_intersection(const GenericPolynomial& f, const GenericPolynomial& g,
                                                const ValuationOptions& opts = {});

struct PerturbationReport {
  PuiseuxPolynomial h;          // f1 + t^r f2
  bool same_tropicalization = false;
  int minimal_r = 0;            // least positive r giving the same curve
};

// Throws NewtonNotContained when the support of f2 leaves the Newton polygon
// of f1.
PerturbationReport perturb_by_multiple(const PuiseuxPolynomial& f1, const PuiseuxPolynomial& f2, int r);

}  // namespace troplane
