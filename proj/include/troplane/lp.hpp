#pragma once

#include <string>
#include <vector>

#include "troplane/rational.hpp"

namespace troplane {

enum class Relation { LessEqual, Equal, Less };

// coeffs . x  (rel)  rhs over free real variables x.
struct LinearConstraint {
  std::vector<Rational> coeffs;
  Relation rel = Relation::LessEqual;
  Rational rhs;
  std::string label;
};

struct LinearSystem {
  int variables = 0;
  std::vector<LinearConstraint> rows;

  explicit LinearSystem(int n = 0) : variables(n) {}
  void add(std::vector<Rational> coeffs, Relation rel, Rational rhs, std::string label = {});
};

struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  std::vector<Rational> point;
  Rational value;
  // Optimal: dual multipliers, one per row, with sum(y_i a_i) = objective.
  // Infeasible: Farkas multipliers, nonnegative on inequality rows, with
  // sum(y_i a_i) = 0 and sum(y_i b_i) < 0.
  std::vector<Rational> multipliers;
};

// Maximizes objective . x; strict rows are read as non-strict. Exact dense
// two-phase simplex with Bland's rule.
LpResult maximize(const LinearSystem& s, const std::vector<Rational>& objective);

struct StrictFeasibility {
  bool feasible = false;
  std::vector<Rational> point;
  // When infeasible: y >= 0 on inequality rows, sum(y_i a_i) = 0, and either
  // sum(y_i b_i) < 0, or sum(y_i b_i) = 0 with y positive on some strict row.
  std::vector<Rational> certificate;
};

// Decides the mixed strict/non-strict system by maximizing a common slack on
// the strict rows.
StrictFeasibility solve_strict(const LinearSystem& s);

bool satisfies(const LinearSystem& s, const std::vector<Rational>& x);

// Independent check of an infeasibility certificate for solve_strict.
bool certifies_infeasible(const LinearSystem& s, const std::vector<Rational>& y);

// A point in the relative interior of the closure of a feasible system,
// keeping strict rows strict. Requires solve_strict(s).feasible.
std::vector<Rational> relative_interior_point(const LinearSystem& s);

}  // namespace troplane
