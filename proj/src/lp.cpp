#include "sigmatrop/lp.hpp"

#include <optional>

namespace sigmatrop {

namespace {

struct Tableau {
  std::vector<RVector> t;  // constraint rows
  RVector rhs;
  std::vector<std::size_t> basis;
  std::size_t ncols = 0;

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / t[r][c];
    for (auto& x : t[r]) x *= inv;
    rhs[r] *= inv;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i == r || sgn(t[i][c]) == 0) continue;
      const Rational f = t[i][c];
      for (std::size_t j = 0; j < ncols; ++j)
        if (sgn(t[r][j]) != 0) t[i][j] -= f * t[r][j];
      rhs[i] -= f * rhs[r];
    }
    basis[r] = c;
  }

  // Maximizes cost . z over the current feasible basis; false if unbounded.
  bool maximize(const RVector& cost, const std::vector<bool>& allowed) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < ncols && !enter; ++j) {
        if (!allowed[j]) continue;
        Rational d = cost[j];
        for (std::size_t i = 0; i < t.size(); ++i)
          if (sgn(t[i][j]) != 0) d -= cost[basis[i]] * t[i][j];
        if (sgn(d) > 0) enter = j;
      }
      if (!enter) return true;
      const std::size_t c = *enter;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (sgn(t[i][c]) <= 0) continue;
        const Rational ratio = rhs[i] / t[i][c];
        if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, c);
    }
  }

  Rational value(const RVector& cost) const {
    Rational v = 0;
    for (std::size_t i = 0; i < t.size(); ++i) v += cost[basis[i]] * rhs[i];
    return v;
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.nvars;
  for (const auto& r : lp.rows)
    if (r.a.size() != n) throw DimensionError("solve_lp: row length mismatch");
  if (!lp.objective.empty() && lp.objective.size() != n) throw DimensionError("solve_lp: objective length");

  // Columns: x+ (n), x- (n), one slack/surplus per inequality row, then artificials.
  std::size_t nslack = 0;
  for (const auto& r : lp.rows)
    if (r.sense != RowSense::Eq) ++nslack;
  const std::size_t m = lp.rows.size();
  const std::size_t art0 = 2 * n + nslack;
  Tableau tb;
  tb.ncols = art0 + m;
  tb.t.assign(m, RVector(tb.ncols));
  tb.rhs.assign(m, 0);
  tb.basis.assign(m, 0);
  std::size_t slack = 2 * n;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& r = lp.rows[i];
    const int flip = sgn(r.b) < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) {
      tb.t[i][j] = r.a[j] * flip;
      tb.t[i][n + j] = -r.a[j] * flip;
    }
    tb.rhs[i] = r.b * flip;
    if (r.sense != RowSense::Eq) {
      const int s = (r.sense == RowSense::Le ? 1 : -1) * flip;
      tb.t[i][slack++] = s;
    }
    tb.t[i][art0 + i] = 1;
    tb.basis[i] = art0 + i;
  }

  std::vector<bool> allowed(tb.ncols, true);
  RVector phase1(tb.ncols);
  for (std::size_t i = 0; i < m; ++i) phase1[art0 + i] = -1;
  tb.maximize(phase1, allowed);
  LpResult res;
  if (sgn(tb.value(phase1)) < 0) {
    res.status = LpStatus::Infeasible;
    return res;
  }
  // Drive artificials out of the basis; drop redundant rows.
  for (std::size_t i = 0; i < tb.t.size();) {
    if (tb.basis[i] < art0) {
      ++i;
      continue;
    }
    std::optional<std::size_t> c;
    for (std::size_t j = 0; j < art0 && !c; ++j)
      if (sgn(tb.t[i][j]) != 0) c = j;
    if (c) {
      tb.pivot(i, *c);
      ++i;
    } else {
      tb.t.erase(tb.t.begin() + static_cast<std::ptrdiff_t>(i));
      tb.rhs.erase(tb.rhs.begin() + static_cast<std::ptrdiff_t>(i));
      tb.basis.erase(tb.basis.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }
  for (std::size_t j = art0; j < tb.ncols; ++j) allowed[j] = false;

  RVector cost(tb.ncols);
  for (std::size_t j = 0; j < lp.objective.size(); ++j) {
    cost[j] = lp.objective[j];
    cost[n + j] = -lp.objective[j];
  }
  if (!tb.maximize(cost, allowed)) {
    res.status = LpStatus::Unbounded;
    return res;
  }
  res.status = LpStatus::Optimal;
  RVector z(tb.ncols);
  for (std::size_t i = 0; i < tb.t.size(); ++i) z[tb.basis[i]] = tb.rhs[i];
  res.x.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) res.x[j] = z[j] - z[n + j];
  res.value = lp.objective.empty() ? Rational(0) : dot(lp.objective, res.x);
  return res;
}

}  // namespace sigmatrop
