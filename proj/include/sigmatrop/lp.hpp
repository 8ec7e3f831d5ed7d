#pragma once

// Exact two-phase simplex over Q with Bland's rule.  All variables are free
// unless bounded by explicit rows.

#include <vector>

#include "sigmatrop/rational.hpp"

namespace sigmatrop {

enum class RowSense { Le, Eq, Ge };

struct LpRow {
  RVector a;
  RowSense sense;
  Rational b;
};

struct LinearProgram {
  std::size_t nvars = 0;
  std::vector<LpRow> rows;
  RVector objective;  // maximized; empty means feasibility only

  void add(RVector a, RowSense s, Rational b) { rows.push_back({std::move(a), s, std::move(b)}); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  RVector x;
};

LpResult solve_lp(const LinearProgram& lp);

}  // namespace sigmatrop
