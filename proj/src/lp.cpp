#include "troplane/lp.hpp"

#include <stdexcept>

#include "troplane/error.hpp"

namespace troplane {

void LinearSystem::add(std::vector<Rational> coeffs, Relation rel, Rational rhs, std::string label) {
  if (static_cast<int>(coeffs.size()) != variables)
    throw Error(Errc::InvalidInput, "constraint has the wrong number of coefficients");
  rows.push_back({std::move(coeffs), rel, std::move(rhs), std::move(label)});
}

namespace {

// Dense tableau for: maximize c.z, T z = rhs, z >= 0, rhs >= 0. The last
// m columns are artificial and start as the basis.
class Tableau {
 public:
  Tableau(std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs, int structural)
      : m_(static_cast<int>(rows.size())), n_(structural), t_(std::move(rows)), rhs_(std::move(rhs)) {
    for (int i = 0; i < m_; ++i) {
      t_[i].resize(n_ + m_, 0);
      t_[i][n_ + i] = 1;
      basis_.push_back(n_ + i);
    }
  }

  // Runs Bland's rule on the given costs; artificial columns never enter.
  // Returns false when unbounded.
  bool optimize(const std::vector<Rational>& cost) {
    while (true) {
      int enter = -1;
      for (int j = 0; j < n_ && enter < 0; ++j) {
        if (is_basic(j)) continue;
        Rational r = cost[j];
        for (int i = 0; i < m_; ++i)
          if (t_[i][j] != 0) r -= cost[basis_[i]] * t_[i][j];
        if (r > 0) enter = j;
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int i = 0; i < m_; ++i) {
        if (t_[i][enter] <= 0) continue;
        Rational ratio = rhs_[i] / t_[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  // Moves zero-valued artificials out of the basis where a structural
  // column can replace them.
  void expel_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (int j = 0; j < n_; ++j)
        if (t_[i][j] != 0 && !is_basic(j)) {
          pivot(i, j);
          break;
        }
    }
  }

  Rational objective(const std::vector<Rational>& cost) const {
    Rational v = 0;
    for (int i = 0; i < m_; ++i) v += cost[basis_[i]] * rhs_[i];
    return v;
  }

  std::vector<Rational> values() const {
    std::vector<Rational> z(n_ + m_, 0);
    for (int i = 0; i < m_; ++i) z[basis_[i]] = rhs_[i];
    return z;
  }

  // y = c_B B^{-1}, read from the artificial block that started as identity.
  std::vector<Rational> duals(const std::vector<Rational>& cost) const {
    std::vector<Rational> y(m_, 0);
    for (int k = 0; k < m_; ++k)
      for (int i = 0; i < m_; ++i)
        if (t_[i][n_ + k] != 0) y[k] += cost[basis_[i]] * t_[i][n_ + k];
    return y;
  }

 private:
  bool is_basic(int j) const {
    for (int b : basis_)
      if (b == j) return true;
    return false;
  }

  void pivot(int r, int c) {
    Rational p = t_[r][c];
    for (auto& v : t_[r]) v /= p;
    rhs_[r] /= p;
    for (int i = 0; i < m_; ++i) {
      if (i == r || t_[i][c] == 0) continue;
      Rational f = t_[i][c];
      for (int j = 0; j < n_ + m_; ++j)
        if (t_[r][j] != 0) t_[i][j] -= f * t_[r][j];
      rhs_[i] -= f * rhs_[r];
    }
    basis_[r] = c;
  }

  int m_, n_;
  std::vector<std::vector<Rational>> t_;
  std::vector<Rational> rhs_;
  std::vector<int> basis_;
};

}  // namespace

LpResult maximize(const LinearSystem& s, const std::vector<Rational>& objective) {
  const int n = s.variables;
  const int m = static_cast<int>(s.rows.size());
  if (static_cast<int>(objective.size()) != n)
    throw Error(Errc::InvalidInput, "objective has the wrong number of coefficients");
  // Columns: x+ (n), x- (n), one slack per inequality row.
  std::vector<int> slack(m, -1);
  int cols = 2 * n;
  for (int i = 0; i < m; ++i)
    if (s.rows[i].rel != Relation::Equal) slack[i] = cols++;
  std::vector<std::vector<Rational>> rows(m, std::vector<Rational>(cols, 0));
  std::vector<Rational> rhs(m);
  std::vector<int> sign(m, 1);
  for (int i = 0; i < m; ++i) {
    const auto& r = s.rows[i];
    sign[i] = r.rhs < 0 ? -1 : 1;
    for (int j = 0; j < n; ++j) {
      rows[i][j] = sign[i] * r.coeffs[j];
      rows[i][n + j] = -sign[i] * r.coeffs[j];
    }
    if (slack[i] >= 0) rows[i][slack[i]] = sign[i];
    rhs[i] = sign[i] * r.rhs;
  }
  Tableau tab(std::move(rows), std::move(rhs), cols);

  std::vector<Rational> phase1(cols + m, 0);
  for (int i = 0; i < m; ++i) phase1[cols + i] = -1;
  tab.optimize(phase1);
  LpResult out;
  if (tab.objective(phase1) < 0) {
    out.status = LpResult::Status::Infeasible;
    auto y = tab.duals(phase1);
    for (int i = 0; i < m; ++i) out.multipliers.push_back(sign[i] * y[i]);
    return out;
  }
  tab.expel_artificials();

  std::vector<Rational> cost(cols + m, 0);
  for (int j = 0; j < n; ++j) {
    cost[j] = objective[j];
    cost[n + j] = -objective[j];
  }
  if (!tab.optimize(cost)) {
    out.status = LpResult::Status::Unbounded;
    return out;
  }
  out.status = LpResult::Status::Optimal;
  auto z = tab.values();
  for (int j = 0; j < n; ++j) out.point.push_back(z[j] - z[n + j]);
  out.value = tab.objective(cost);
  auto y = tab.duals(cost);
  for (int i = 0; i < m; ++i) out.multipliers.push_back(sign[i] * y[i]);
  return out;
}

StrictFeasibility solve_strict(const LinearSystem& s) {
  const int n = s.variables;
  LinearSystem aug(n + 1);
  for (const auto& r : s.rows) {
    auto a = r.coeffs;
    a.push_back(r.rel == Relation::Less ? 1 : 0);
    aug.add(std::move(a), r.rel == Relation::Equal ? Relation::Equal : Relation::LessEqual, r.rhs);
  }
  std::vector<Rational> cap(n + 1, 0);
  cap[n] = 1;
  aug.add(cap, Relation::LessEqual, 1);
  auto res = maximize(aug, cap);
  StrictFeasibility out;
  if (res.status == LpResult::Status::Optimal && res.value > 0) {
    out.feasible = true;
    out.point.assign(res.point.begin(), res.point.begin() + n);
    return out;
  }
  out.certificate.assign(res.multipliers.begin(), res.multipliers.begin() + s.rows.size());
  return out;
}

bool satisfies(const LinearSystem& s, const std::vector<Rational>& x) {
  if (static_cast<int>(x.size()) != s.variables) return false;
  for (const auto& r : s.rows) {
    Rational lhs = 0;
    for (int j = 0; j < s.variables; ++j) lhs += r.coeffs[j] * x[j];
    if (r.rel == Relation::Equal && lhs != r.rhs) return false;
    if (r.rel == Relation::LessEqual && lhs > r.rhs) return false;
    if (r.rel == Relation::Less && lhs >= r.rhs) return false;
  }
  return true;
}

bool certifies_infeasible(const LinearSystem& s, const std::vector<Rational>& y) {
  if (y.size() != s.rows.size()) return false;
  std::vector<Rational> combo(s.variables, 0);
  Rational bound = 0, strict = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const auto& r = s.rows[i];
    if (r.rel != Relation::Equal && y[i] < 0) return false;
    for (int j = 0; j < s.variables; ++j) combo[j] += y[i] * r.coeffs[j];
    bound += y[i] * r.rhs;
    if (r.rel == Relation::Less) strict += y[i];
  }
  for (const auto& c : combo)
    if (c != 0) return false;
  return bound < 0 || (bound == 0 && strict > 0);
}

std::vector<Rational> relative_interior_point(const LinearSystem& s) {
  auto base = solve_strict(s);
  if (!base.feasible) throw Error(Errc::InvalidInput, "system is infeasible");
  const int n = s.variables;
  std::vector<Rational> sum(n, 0);
  int count = 0;
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    if (s.rows[i].rel == Relation::Equal) continue;
    // Maximize sigma <= min(1, slack of row i) over the closed system.
    LinearSystem capped(n + 1);
    for (std::size_t k = 0; k < s.rows.size(); ++k) {
      const auto& r = s.rows[k];
      auto a = r.coeffs;
      a.push_back(k == i ? 1 : 0);
      capped.add(std::move(a), r.rel == Relation::Equal ? Relation::Equal : Relation::LessEqual, r.rhs);
    }
    std::vector<Rational> sigma(n + 1, 0);
    sigma[n] = 1;
    capped.add(sigma, Relation::LessEqual, 1);
    auto res = maximize(capped, sigma);
    for (int j = 0; j < n; ++j) sum[j] += res.point[j];
    ++count;
  }
  if (count == 0) return base.point;
  // The strict solution joins the average so strict rows stay strict.
  for (int j = 0; j < n; ++j) sum[j] += base.point[j];
  for (auto& v : sum) v /= count + 1;
  return sum;
}

}  // namespace troplane
