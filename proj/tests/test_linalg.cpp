#include <gtest/gtest.h>

#include <random>

#include "sigmatrop/linalg.hpp"
#include "sigmatrop/lp.hpp"
#include "support.hpp"

using namespace sigmatrop;
using sigmatrop::testing::rv;

TEST(QMatrix, InverseAndDet) {
  QMatrix m({rv({2, 1}), rv({1, 1})});
  EXPECT_EQ(m.det(), 1);
  auto inv = m.inverse();
  ASSERT_TRUE(inv);
  EXPECT_EQ(m * *inv, QMatrix::identity(2));
  EXPECT_FALSE(QMatrix({rv({1, 2}), rv({2, 4})}).inverse());
  EXPECT_EQ(m.pow(-2) * m.pow(2), QMatrix::identity(2));
}

TEST(QMatrix, NullspaceAndRank) {
  QMatrix m({rv({1, 1, 0}), rv({0, 1, 1})});
  EXPECT_EQ(rank(m), 2u);
  auto ns = nullspace(m);
  ASSERT_EQ(ns.size(), 1u);
  EXPECT_TRUE(is_zero(m.apply(ns[0])));
}

TEST(QMatrix, CharacteristicPolynomialAndRoots) {
  QMatrix m({rv({2, 0}), rv({1, 3})});
  auto c = characteristic_polynomial(m);
  EXPECT_EQ(c, rv({6, -5, 1}));
  EXPECT_EQ(rational_roots(c), (std::vector<Rational>{2, 3}));
  EXPECT_EQ(rational_roots(rv({-1, 0, 4})), (std::vector<Rational>{Rational(-1, 2), Rational(1, 2)}));
  EXPECT_TRUE(rational_roots(rv({1, 0, 1})).empty());
}

TEST(IntegerSolve, ProvesInfeasibility) {
  // 1 + 6 c1 + 36 c2 = 0 has no integer solution.
  ZMatrix a{{6, 36}};
  EXPECT_FALSE(solve_integer(a, {-1}));
  auto s = solve_integer(ZMatrix{{6, 4}}, ZVector{2});
  ASSERT_TRUE(s);
  EXPECT_EQ(6 * s->particular[0] + 4 * s->particular[1], 2);
  ASSERT_EQ(s->kernel.size(), 1u);
  EXPECT_EQ(6 * s->kernel[0][0] + 4 * s->kernel[0][1], 0);
}

TEST(IntegerSolve, RandomSystemsAgreeWithSubstitution) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + rng() % 3, s = 1 + rng() % 5;
    ZMatrix a(m, ZVector(s));
    ZVector x(s), b(m, 0);
    for (auto& row : a)
      for (auto& e : row) e = static_cast<long>(rng() % 13) - 6;
    for (auto& e : x) e = static_cast<long>(rng() % 9) - 4;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < s; ++j) b[i] += a[i][j] * x[j];
    auto sol = solve_integer(a, b);
    ASSERT_TRUE(sol);
    for (std::size_t i = 0; i < m; ++i) {
      Integer lhs = 0;
      for (std::size_t j = 0; j < s; ++j) lhs += a[i][j] * sol->particular[j];
      EXPECT_EQ(lhs, b[i]);
      for (const auto& k : sol->kernel) {
        Integer z = 0;
        for (std::size_t j = 0; j < s; ++j) z += a[i][j] * k[j];
        EXPECT_EQ(z, 0);
      }
    }
    auto red = lll_reduce(sol->kernel);
    auto w = babai_reduce(sol->particular, red);
    for (std::size_t i = 0; i < m; ++i) {
      Integer lhs = 0;
      for (std::size_t j = 0; j < s; ++j) lhs += a[i][j] * w[j];
      EXPECT_EQ(lhs, b[i]);
    }
  }
}

TEST(Lp, SimpleOptimum) {
  LinearProgram lp;
  lp.nvars = 2;
  lp.add(rv({1, 1}), RowSense::Le, 4);
  lp.add(rv({1, 0}), RowSense::Le, 3);
  lp.add(rv({1, 0}), RowSense::Ge, 0);
  lp.add(rv({0, 1}), RowSense::Ge, 0);
  lp.objective = rv({1, 2});
  auto r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_EQ(r.value, 8);
}

TEST(Lp, InfeasibleAndUnbounded) {
  LinearProgram lp;
  lp.nvars = 1;
  lp.add(rv({1}), RowSense::Ge, 2);
  lp.add(rv({1}), RowSense::Le, 1);
  EXPECT_EQ(solve_lp(lp).status, LpStatus::Infeasible);
  LinearProgram u;
  u.nvars = 1;
  u.add(rv({1}), RowSense::Ge, -5);
  u.objective = rv({1});
  EXPECT_EQ(solve_lp(u).status, LpStatus::Unbounded);
}

// Random bounded LPs in the plane against vertex enumeration.
TEST(Lp, MatchesVertexEnumeration) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    LinearProgram lp;
    lp.nvars = 2;
    std::vector<std::pair<RVector, Rational>> rows;
    for (int i = 0; i < 4; ++i) {
      RVector a = rv({static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 7) - 3});
      Rational b(static_cast<long>(rng() % 9) - 6);
      rows.push_back({a, b});
    }
    for (auto [a, b] : std::vector<std::pair<RVector, long>>{{rv({1, 0}), -5}, {rv({-1, 0}), -5}, {rv({0, 1}), -5}, {rv({0, -1}), -5}})
      rows.push_back({a, Rational(b)});
    for (auto& [a, b] : rows) lp.add(a, RowSense::Ge, b);
    lp.objective = rv({static_cast<long>(rng() % 5) - 2, static_cast<long>(rng() % 5) - 2});
    auto r = solve_lp(lp);
    std::optional<Rational> best;
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = i + 1; j < rows.size(); ++j) {
        auto x = solve(QMatrix({rows[i].first, rows[j].first}), RVector{rows[i].second, rows[j].second});
        if (!x || rank(QMatrix({rows[i].first, rows[j].first})) < 2) continue;
        bool ok = true;
        for (auto& [a, b] : rows) ok = ok && dot(a, *x) >= b;
        if (ok) {
          Rational v = dot(lp.objective, *x);
          if (!best || v > *best) best = v;
        }
      }
    if (!best) {
      EXPECT_EQ(r.status, LpStatus::Infeasible);
    } else {
      ASSERT_EQ(r.status, LpStatus::Optimal);
      EXPECT_EQ(r.value, *best);
    }
  }
}
