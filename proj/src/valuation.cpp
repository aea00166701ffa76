#include "troplane/valuation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "troplane/error.hpp"
#include "troplane/intersect.hpp"
#include "troplane/lp.hpp"

namespace troplane {

TruncatedPuiseux::TruncatedPuiseux(std::map<Rational, Rational> terms, Rational order)
    : terms_(std::move(terms)), order_(std::move(order)) {
  normalize();
}

TruncatedPuiseux TruncatedPuiseux::monomial(const Rational& coeff, const Rational& exponent,
                                            const Rational& order) {
  return TruncatedPuiseux({{exponent, coeff}}, order);
}

void TruncatedPuiseux::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0 || it->first >= order_) it = terms_.erase(it);
    else ++it;
  }
}

std::optional<Rational> TruncatedPuiseux::valuation() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first;
}

Rational TruncatedPuiseux::certified_valuation() const {
  if (terms_.empty())
    throw Error(Errc::OrderTooLow, "series vanishes below order " + troplane::to_string(order_));
  return terms_.begin()->first;
}

Rational TruncatedPuiseux::valuation_bound() const { return terms_.empty() ? order_ : terms_.begin()->first; }

TruncatedPuiseux TruncatedPuiseux::operator+(const TruncatedPuiseux& o) const {
  auto terms = terms_;
  for (const auto& [e, c] : o.terms_) terms[e] += c;
  return TruncatedPuiseux(std::move(terms), std::min(order_, o.order_));
}

TruncatedPuiseux TruncatedPuiseux::operator-() const {
  auto terms = terms_;
  for (auto& [e, c] : terms) c = -c;
  return TruncatedPuiseux(std::move(terms), order_);
}

TruncatedPuiseux TruncatedPuiseux::operator-(const TruncatedPuiseux& o) const { return *this + (-o); }

TruncatedPuiseux TruncatedPuiseux::operator*(const TruncatedPuiseux& o) const {
  Rational order = std::min(Rational(order_ + o.valuation_bound()), Rational(o.order_ + valuation_bound()));
  std::map<Rational, Rational> terms;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Rational e = e1 + e2;
      if (e < order) terms[e] += c1 * c2;
    }
  return TruncatedPuiseux(std::move(terms), order);
}

TruncatedPuiseux TruncatedPuiseux::shifted(const Rational& k) const {
  std::map<Rational, Rational> terms;
  for (const auto& [e, c] : terms_) terms[e + k] = c;
  return TruncatedPuiseux(std::move(terms), order_ + k);
}

std::string to_string(const TruncatedPuiseux& s) {
  std::ostringstream out;
  for (const auto& [e, c] : s.terms()) {
    if (out.tellp() > 0) out << " + ";
    out << to_string(c);
    if (e != 0) out << "*t^(" << to_string(e) << ")";
  }
  if (out.tellp() > 0) out << " + ";
  out << "O(t^(" << to_string(s.order()) << "))";
  return out.str();
}

PuiseuxPolynomial PuiseuxPolynomial::operator+(const PuiseuxPolynomial& o) const {
  auto out = *this;
  for (const auto& [e, c] : o.terms) {
    auto it = out.terms.find(e);
    if (it == out.terms.end()) out.terms.emplace(e, c);
    else it->second = it->second + c;
  }
  return out;
}

PuiseuxPolynomial PuiseuxPolynomial::operator*(const PuiseuxPolynomial& o) const {
  PuiseuxPolynomial out;
  for (const auto& [e1, c1] : terms)
    for (const auto& [e2, c2] : o.terms) {
      auto prod = c1 * c2;
      auto it = out.terms.find(e1 + e2);
      if (it == out.terms.end()) out.terms.emplace(e1 + e2, prod);
      else it->second = it->second + prod;
    }
  return out;
}

PuiseuxUnivariate PuiseuxUnivariate::operator+(const PuiseuxUnivariate& o) const {
  auto out = *this;
  for (const auto& [k, c] : o.coeffs) {
    auto it = out.coeffs.find(k);
    if (it == out.coeffs.end()) out.coeffs.emplace(k, c);
    else it->second = it->second + c;
  }
  return out;
}

PuiseuxUnivariate PuiseuxUnivariate::operator-(const PuiseuxUnivariate& o) const {
  PuiseuxUnivariate neg;
  for (const auto& [k, c] : o.coeffs) neg.coeffs.emplace(k, -c);
  return *this + neg;
}

PuiseuxUnivariate PuiseuxUnivariate::operator*(const PuiseuxUnivariate& o) const {
  PuiseuxUnivariate out;
  for (const auto& [k1, c1] : coeffs)
    for (const auto& [k2, c2] : o.coeffs) {
      auto prod = c1 * c2;
      auto it = out.coeffs.find(k1 + k2);
      if (it == out.coeffs.end()) out.coeffs.emplace(k1 + k2, prod);
      else it->second = it->second + prod;
    }
  return out;
}

bool PuiseuxUnivariate::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

namespace {

// Coefficients of f in the eliminated variable, as polynomials in the other,
// with the least power shifted to 0.
std::vector<PuiseuxUnivariate> split(const PuiseuxPolynomial& f, Variable eliminate) {
  if (f.terms.empty()) throw Error(Errc::InvalidInput, "resultant of the zero polynomial");
  auto z = [&](const LatticeVector& e) { return eliminate == Variable::Y ? e.y : e.x; };
  auto w = [&](const LatticeVector& e) { return eliminate == Variable::Y ? e.x : e.y; };
  std::int64_t lo = z(f.terms.begin()->first), hi = lo;
  for (const auto& [e, c] : f.terms) lo = std::min(lo, z(e)), hi = std::max(hi, z(e));
  std::vector<PuiseuxUnivariate> out(hi - lo + 1);
  for (const auto& [e, c] : f.terms) out[z(e) - lo].coeffs.emplace(static_cast<int>(w(e)), c);
  if (out.back().is_zero())
    throw Error(Errc::OrderTooLow, "leading coefficient in the eliminated variable is not certified");
  return out;
}

}  // namespace

PuiseuxUnivariate resultant(const PuiseuxPolynomial& f, const PuiseuxPolynomial& g, Variable eliminate) {
  auto a = split(f, eliminate), b = split(g, eliminate);
  const int m = static_cast<int>(a.size()) - 1, n = static_cast<int>(b.size()) - 1;
  const int size = m + n;
  if (size == 0) throw Error(Errc::InvalidInput, "both polynomials have degree 0 in the eliminated variable");
  if (size > 20) throw Error(Errc::InvalidInput, "Sylvester matrix larger than 20");
  // Row i < n holds a shifted by i (descending powers); the rest hold b.
  std::vector<std::vector<const PuiseuxUnivariate*>> rows(size, std::vector<const PuiseuxUnivariate*>(size, nullptr));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k)
      if (!a[m - k].coeffs.empty()) rows[i][i + k] = &a[m - k];
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k)
      if (!b[n - k].coeffs.empty()) rows[n + i][i + k] = &b[n - k];
  // Expansion along rows: dp[mask] sums the signed products of rows
  // 0..|mask|-1 placed in the columns of mask.
  std::vector<std::optional<PuiseuxUnivariate>> dp(std::size_t{1} << size);
  for (int c = 0; c < size; ++c)
    if (rows[0][c]) dp[std::size_t{1} << c] = *rows[0][c];
  for (std::size_t mask = 1; mask < dp.size(); ++mask) {
    if (!dp[mask]) continue;
    int r = __builtin_popcountll(mask);
    if (r == size) continue;
    for (int c = 0; c < size; ++c) {
      if ((mask >> c) & 1 || !rows[r][c]) continue;
      int above = __builtin_popcountll(mask >> (c + 1));
      auto term = *dp[mask] * *rows[r][c];
      auto& slot = dp[mask | (std::size_t{1} << c)];
      if (above % 2) slot = slot ? *slot - term : PuiseuxUnivariate{} - term;
      else slot = slot ? *slot + term : term;
    }
  }
  auto& full = dp.back();
  return full ? *full : PuiseuxUnivariate{};
}

std::vector<Rational> root_valuations(const PuiseuxUnivariate& p) {
  if (p.coeffs.empty()) throw Error(Errc::InvalidInput, "root valuations of the zero polynomial");
  if (p.is_zero()) throw Error(Errc::OrderTooLow, "every coefficient vanishes at this truncation");
  const int lo = p.coeffs.begin()->first, hi = p.coeffs.rbegin()->first;
  if (p.coeffs.begin()->second.is_zero() || p.coeffs.rbegin()->second.is_zero())
    throw Error(Errc::OrderTooLow, "extreme coefficients are not certified");
  if (lo > 0) throw Error(Errc::ZeroRoot, "zero is a root of multiplicity " + std::to_string(lo));
  if (lo == hi) return {};
  // Lower hull of (i, valuation) over the certified coefficients.
  std::vector<std::pair<int, Rational>> hull;
  for (const auto& [i, c] : p.coeffs) {
    if (c.is_zero()) continue;
    Rational v = *c.valuation();
    while (hull.size() >= 2) {
      const auto& [i1, v1] = hull[hull.size() - 2];
      const auto& [i2, v2] = hull.back();
      // Drop the middle point unless it lies strictly below the chord.
      if ((v2 - v1) * (i - i1) >= (v - v1) * (i2 - i1)) hull.pop_back();
      else break;
    }
    hull.push_back({i, v});
  }
  auto hull_at = [&](int i) {
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
      const auto& [i1, v1] = hull[k];
      const auto& [i2, v2] = hull[k + 1];
      if (i1 <= i && i <= i2) return Rational(v1 + (v2 - v1) * Rational(i - i1, i2 - i1));
    }
    return hull.front().second;
  };
  for (const auto& [i, c] : p.coeffs)
    if (c.is_zero() && c.order() <= hull_at(i))
      throw Error(Errc::OrderTooLow, "coefficient of degree " + std::to_string(i) + " is not certified above the Newton polygon");
  std::vector<Rational> out;
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    const auto& [i1, v1] = hull[k];
    const auto& [i2, v2] = hull[k + 1];
    Rational slope = (v2 - v1) / (i2 - i1);
    for (int j = i1; j < i2; ++j) out.push_back(-slope);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::set<std::string> GenericPolynomial::symbols() const {
  std::set<std::string> out;
  for (const auto& [e, terms] : terms)
    for (const auto& t : terms)
      if (!t.symbol.empty()) out.insert(t.symbol);
  return out;
}

PuiseuxPolynomial instantiate(const GenericPolynomial& f, const std::map<std::string, Rational>& values,
                              const Rational& order) {
  PuiseuxPolynomial out;
  for (const auto& [e, terms] : f.terms) {
    std::map<Rational, Rational> series;
    for (const auto& t : terms) {
      Rational c = t.coeff;
      if (!t.symbol.empty()) {
        auto it = values.find(t.symbol);
        if (it == values.end()) throw Error(Errc::InvalidInput, "no value for parameter " + t.symbol);
        c *= it->second;
      }
      series[t.exponent] += c;
    }
    out.terms.emplace(e, TruncatedPuiseux(std::move(series), order));
  }
  return out;
}

namespace {

using Terms = std::vector<ParameterTerm>;

void merge(Terms& ts) {
  std::map<std::pair<Rational, std::string>, Rational> sum;
  for (const auto& t : ts) sum[{t.exponent, t.symbol}] += t.coeff;
  ts.clear();
  for (const auto& [key, c] : sum)
    if (c != 0) ts.push_back({key.first, c, key.second});
}

GenericPolynomial add(GenericPolynomial a, const GenericPolynomial& b, int sign) {
  for (const auto& [e, ts] : b.terms) {
    auto& dst = a.terms[e];
    for (auto t : ts) {
      t.coeff *= sign;
      dst.push_back(t);
    }
    merge(dst);
    if (dst.empty()) a.terms.erase(e);
  }
  return a;
}

GenericPolynomial multiply(const GenericPolynomial& a, const GenericPolynomial& b) {
  GenericPolynomial out;
  for (const auto& [e1, t1] : a.terms)
    for (const auto& [e2, t2] : b.terms) {
      auto& dst = out.terms[e1 + e2];
      for (const auto& x : t1)
        for (const auto& y : t2) {
          if (!x.symbol.empty() && !y.symbol.empty())
            throw Error(Errc::ParseError, "product of two parameters " + x.symbol + "*" + y.symbol);
          dst.push_back({x.exponent + y.exponent, x.coeff * y.coeff, x.symbol.empty() ? y.symbol : x.symbol});
        }
      merge(dst);
      if (dst.empty()) out.terms.erase(e1 + e2);
    }
  return out;
}

GenericPolynomial constant(const Rational& c, const Rational& exponent = 0, std::string symbol = {}) {
  GenericPolynomial p;
  p.terms[{0, 0}] = {{exponent, c, std::move(symbol)}};
  return p;
}

class GenericParser {
 public:
  explicit GenericParser(std::string_view text) : s_(text) {}

  GenericPolynomial parse() {
    auto p = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw Error(Errc::ParseError, why + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  GenericPolynomial sum() {
    int sign = eat('-') ? -1 : (eat('+'), 1);
    GenericPolynomial acc = add({}, product(), sign);
    while (true) {
      if (eat('+')) acc = add(acc, product(), 1);
      else if (eat('-')) acc = add(acc, product(), -1);
      else return acc;
    }
  }

  GenericPolynomial product() {
    auto acc = factor();
    while (eat('*')) acc = multiply(acc, factor());
    return acc;
  }

  Rational number() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/' || s_[pos_] == '.'))
      ++pos_;
    if (start == pos_) fail("expected a number");
    return parse_rational(s_.substr(start, pos_ - start));
  }

  Rational exponent() {
    if (!eat('^')) return 1;
    bool negative = eat('-');
    Rational e;
    if (eat('(')) {
      bool inner_negative = eat('-');
      e = number();
      if (inner_negative) e = -e;
      if (!eat(')')) fail("expected ')'");
    } else {
      e = number();
    }
    return negative ? Rational(-e) : e;
  }

  std::int64_t integer_exponent() {
    Rational e = exponent();
    if (e.get_den() != 1) fail("fractional power of a variable");
    return e.get_num().get_si();
  }

  GenericPolynomial factor() {
    skip();
    if (eat('(')) {
      auto p = sum();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
      return constant(number());
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected a factor");
    std::string name(s_.substr(start, pos_ - start));
    if (std::isdigit(static_cast<unsigned char>(name[0]))) fail("bad name");
    if (name == "t") return constant(1, exponent());
    if (name == "x" || name == "y") {
      auto k = integer_exponent();
      GenericPolynomial p;
      p.terms[name == "x" ? LatticeVector{k, 0} : LatticeVector{0, k}] = {{0, 1, {}}};
      return p;
    }
    return constant(1, 0, name);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

GenericPolynomial parse_generic(std::string_view text) { return GenericParser(text).parse(); }

TropicalPolynomial tropicalization(const PuiseuxPolynomial& f) {
  TropicalPolynomial out;
  for (const auto& [e, c] : f.terms) out.terms[e] = c.certified_valuation();
  return out;
}

IntersectionValuations tropicalize_intersection(const GenericPolynomial& f, const GenericPolynomial& g,
                                                const ValuationOptions& opts) {
  if (opts.trials < 1) throw Error(Errc::InvalidInput, "at least one trial is needed");
  auto names = f.symbols();
  for (const auto& s : g.symbols()) names.insert(s);
  if (names.size() > 96) throw Error(Errc::InvalidInput, "too many parameters");
  IntersectionValuations out;
  std::optional<PuiseuxPolynomial> first_f, first_g;
  for (int trial = 0; trial < opts.trials; ++trial) {
    std::mt19937_64 rng(opts.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(trial + 1));
    std::vector<int> pool(96);
    std::iota(pool.begin(), pool.end(), 2);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::map<std::string, Rational> values;
    std::size_t k = 0;
    for (const auto& s : names) values[s] = pool[k++];
    auto F = instantiate(f, values, opts.order), G = instantiate(g, values, opts.order);
    std::vector<Rational> xs, ys;
    for (const auto& v : root_valuations(resultant(F, G, Variable::Y))) xs.push_back(-v);
    for (const auto& v : root_valuations(resultant(F, G, Variable::X))) ys.push_back(-v);
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    if (trial == 0) {
      out.x = xs;
      out.y = ys;
      first_f = F;
      first_g = G;
    } else if (xs != out.x || ys != out.y) {
      throw Error(Errc::GenericityFailure, "trial " + std::to_string(trial) + " gives different valuations");
    }
  }
  out.trials = opts.trials;
  if (out.x.size() != out.y.size() || out.x.empty()) return out;
  auto constant_side = [](const std::vector<Rational>& v) { return v.front() == v.back(); };
  if (constant_side(out.x) || constant_side(out.y)) {
    Divisor d;
    for (std::size_t i = 0; i < out.x.size(); ++i) d.add({out.x[i], out.y[i]}, 1);
    out.divisor = d;
    return out;
  }
  try {
    auto tf = curve_of(tropicalization(*first_f)), tg = curve_of(tropicalization(*first_g));
    auto d = proper_intersection(tf, tg);
    std::vector<Rational> xs, ys;
    for (const auto& [p, m] : d.chips())
      for (std::int64_t i = 0; i < m; ++i) xs.push_back(p.x), ys.push_back(p.y);
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    if (xs == out.x && ys == out.y) out.divisor = d;
  } catch (const Error&) {
  }
  return out;
}

namespace {

// Value at e of the lower convex envelope of the valuations of f.
Rational envelope_at(const PuiseuxPolynomial& f, const LatticeVector& e) {
  const int n = static_cast<int>(f.terms.size());
  LinearSystem s(n);
  std::vector<Rational> rx, ry, one(n, 1), objective;
  for (const auto& [p, c] : f.terms) {
    rx.push_back(p.x);
    ry.push_back(p.y);
    objective.push_back(-c.certified_valuation());
  }
  s.add(rx, Relation::Equal, e.x);
  s.add(ry, Relation::Equal, e.y);
  s.add(one, Relation::Equal, 1);
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> row(n, 0);
    row[i] = -1;
    s.add(row, Relation::LessEqual, 0);
  }
  auto res = maximize(s, objective);
  if (res.status != LpResult::Status::Optimal)
    throw Error(Errc::NewtonNotContained, "exponent outside the Newton polygon");
  return -res.value;
}

bool same_tropical_curve(const PuiseuxPolynomial& a, const PuiseuxPolynomial& b) {
  return same_curve(curve_of(tropicalization(a)), curve_of(tropicalization(b)));
}

PuiseuxPolynomial add_multiple(const PuiseuxPolynomial& f1, const PuiseuxPolynomial& f2, int r) {
  PuiseuxPolynomial scaled;
  for (const auto& [e, c] : f2.terms) scaled.terms.emplace(e, c.shifted(r));
  return f1 + scaled;
}

}  // namespace

PerturbationReport perturb_by_multiple(const PuiseuxPolynomial& f1, const PuiseuxPolynomial& f2, int r) {
  if (f1.terms.empty()) throw Error(Errc::InvalidInput, "f1 is zero");
  std::vector<LatticeVector> support;
  for (const auto& [e, c] : f1.terms) support.push_back(e);
  auto newton = LatticePolygon::hull(support);
  for (const auto& [e, c] : f2.terms)
    if (!newton.contains(e))
      throw Error(Errc::NewtonNotContained, "exponent (" + std::to_string(e.x) + "," + std::to_string(e.y) +
                                                ") lies outside the Newton polygon of f1");
  PerturbationReport rep;
  rep.h = add_multiple(f1, f2, r);
  rep.same_tropicalization = same_tropical_curve(rep.h, f1);
  // Beyond this bound every term of t^r f2 lies strictly above the envelope
  // of f1, so the tropical curve cannot change.
  Integer bound = 1;
  for (const auto& [e, c] : f2.terms) {
    if (c.is_zero()) continue;
    Integer b = floor_of(envelope_at(f1, e) - c.certified_valuation()) + 1;
    if (b > bound) bound = b;
  }
  for (int k = 1; k <= bound.get_si(); ++k)
    if (same_tropical_curve(add_multiple(f1, f2, k), f1)) {
      rep.minimal_r = k;
      break;
    }
  return rep;
}

}  // namespace troplane
