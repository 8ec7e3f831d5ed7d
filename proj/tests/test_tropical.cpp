#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sigmatrop/amoeba.hpp"
#include "sigmatrop/tropical.hpp"
#include "support.hpp"

using namespace sigmatrop;
using sigmatrop::testing::rv;

namespace {

ValuedPoly vp(const char* s, std::size_t n, Valuation v = Valuation::trivial()) {
  return {parse_laurent(s, n), v};
}

// All rationals num/den with |num|, den <= h, as a sorted set.
std::vector<Rational> heights(long h) {
  std::set<Rational> out;
  for (long d = 1; d <= h; ++d)
    for (long num = -h; num <= h; ++num) {
      Rational q(num, d);
      q.canonicalize();
      out.insert(q);
    }
  return {out.begin(), out.end()};
}

void expect_matches_oracle(const ValuedPoly& f, long h) {
  const auto t = trop_hypersurface(f);
  const auto qs = heights(h);
  for (const auto& a : qs)
    for (const auto& b : qs) {
      const RVector chi{a, b};
      ASSERT_EQ(t.fan.contains(chi), min_attained_twice(f, chi)) << to_string(f.poly) << " at " << to_string(a) << "," << to_string(b);
    }
}

std::vector<Direction> fan_rays(const Fan& f) {
  std::set<Direction> out;
  for (const auto& c : f.cells)
    for (const auto& d : rays(c)) out.insert(d);
  return {out.begin(), out.end()};
}

}  // namespace

TEST(Hypersurface, TropicalLine) {
  const auto f = vp("x + y + 1", 2);
  const auto t = trop_hypersurface(f);
  EXPECT_EQ(fan_rays(t.fan), (std::vector<Direction>{Direction({-1, -1}), Direction({0, 1}), Direction({1, 0})}));
  for (const auto& c : t.fan.cells) EXPECT_TRUE(c.is_conical());
  // Brute-force grid {-3..3}^2 with the direct min condition.
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b) EXPECT_EQ(t.fan.contains(rv({a, b})), min_attained_twice(f, rv({a, b})));
  EXPECT_EQ(pure_dimension(t.fan), 1);
  EXPECT_TRUE(balanceable_at(t.fan, rv({0, 0})));
}

TEST(Hypersurface, PadicPoint) {
  const auto t = trop_hypersurface(vp("x - 6", 1, Valuation::padic(2)));
  EXPECT_TRUE(same_set(t.fan, Fan(1, {Polyhedron::point(rv({1}))})));
  const auto z = trop_hypersurface(vp("x - 6", 1));
  EXPECT_TRUE(same_set(z.fan, Fan(1, {Polyhedron::point(rv({0}))})));
}

TEST(Hypersurface, UnitMonomial) {
  const auto t = trop_hypersurface(vp("3*x^2*y", 2));
  EXPECT_TRUE(t.unit);
  EXPECT_TRUE(t.fan.cells.empty());
}

// Exhaustive comparison with the direct min-attained-twice evaluation on all
// characters of height <= 8, for random rank-2 polynomials with <= 6 terms
// under trivial, 2-adic and 3-adic valuations.
TEST(Hypersurface, MatchesOracleOnHeightGrid) {
  std::mt19937_64 rng(42);
  const Valuation vals[] = {Valuation::trivial(), Valuation::padic(2), Valuation::padic(3)};
  for (int trial = 0; trial < 12; ++trial) {
    LaurentPoly f(2);
    const int terms = 2 + static_cast<int>(rng() % 5);
    while (static_cast<int>(f.size()) < terms) {
      long c = static_cast<long>(rng() % 25) - 12;
      if (c == 0) continue;
      f.add_term(Monomial{static_cast<long>(rng() % 5) - 2, static_cast<long>(rng() % 5) - 2}, Rational(c));
    }
    expect_matches_oracle({f, vals[trial % 3]}, 8);
  }
}

TEST(Hypersurface, DimensionTheoremOnRandomFans) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 15; ++trial) {
    LaurentPoly f(2);
    const int terms = 2 + static_cast<int>(rng() % 4);
    while (static_cast<int>(f.size()) < terms) {
      long c = static_cast<long>(rng() % 19) - 9;
      if (c == 0) continue;
      f.add_term(Monomial{static_cast<long>(rng() % 5) - 2, static_cast<long>(rng() % 5) - 2}, Rational(c));
    }
    const ValuedPoly vf{f, trial % 2 ? Valuation::padic(3) : Valuation::trivial()};
    const auto t = trop_hypersurface(vf);
    EXPECT_EQ(pure_dimension(t.fan), 1) << to_string(f);
    for (const auto& c : t.fan.cells) {
      auto x = c.interior_point();
      ASSERT_TRUE(x);
      EXPECT_TRUE(balanceable_at(t.fan, *x)) << to_string(f);
    }
  }
}

TEST(Prevariety, Examples) {
  const auto single = trop_prevariety({vp("x - 6", 1)});
  EXPECT_TRUE(same_set(single.fan, trop_hypersurface(vp("x - 6", 1)).fan));
  EXPECT_FALSE(single.outer_bound);
  const auto two = trop_prevariety({vp("x + y + 1", 2), vp("x - y", 2)});
  EXPECT_TRUE(two.outer_bound);
  // Oracle: both tie conditions at once.
  for (long a = -4; a <= 4; ++a)
    for (long b = -4; b <= 4; ++b) {
      const bool want = min_attained_twice(vp("x + y + 1", 2), rv({a, b})) && min_attained_twice(vp("x - y", 2), rv({a, b}));
      EXPECT_EQ(two.fan.contains(rv({a, b})), want);
    }
  EXPECT_TRUE(same_set(two.fan, Fan(2, {Polyhedron::closed_ray(rv({-1, -1}))})));
  EXPECT_TRUE(trop_prevariety({vp("x + 1", 1), vp("2*x", 1)}).fan.cells.empty());
}

TEST(GlobalZ, Examples) {
  auto g = global_tropical_Z(parse_laurent("x - 6", 1));
  EXPECT_EQ(g.padic.size(), 2u);
  EXPECT_TRUE(same_set(g.fan, Fan(1, {Polyhedron::point(rv({0})), Polyhedron::point(rv({1}))})));
  auto h = global_tropical_Z(parse_laurent("2*x - y", 2));
  Fan want(2);
  want.add(Polyhedron(2).add(rv({1, -1}), Relation::Eq, 0));
  want.add(Polyhedron(2).add(rv({-1, 1}), Relation::Eq, 1));
  EXPECT_TRUE(same_set(h.fan, want));
  auto u = global_tropical_Z(parse_laurent("x - 1", 1));
  EXPECT_TRUE(u.padic.empty());
  EXPECT_TRUE(same_set(u.fan, Fan(1, {Polyhedron::point(rv({0}))})));
}

// Recession cones of the p-adic hypersurfaces of x - m give the trivial one,
// and no p-adic hypersurface passes through the origin.
TEST(LocalCones, ScalarHypersurfaces) {
  for (long m : {2, 3, 4, 5, 8, 9}) {
    const auto p = *prime_support({Rational(m)}).begin();
    const auto f = parse_laurent("x - " + std::to_string(m), 1);
    const auto tp = trop_hypersurface({f, Valuation::padic(p)});
    const auto t0 = trop_hypersurface({f, Valuation::trivial()});
    EXPECT_TRUE(same_set(local_cone_at_infinity(tp.fan), t0.fan)) << m;
    EXPECT_TRUE(local_cone_at_origin(tp.fan).cells.empty()) << m;
  }
}

TEST(Amoeba, Examples) {
  const std::vector<double> grid{-3, -1, 0.5, 2};
  auto diag = amoeba_sample(parse_laurent("y - x", 2), grid, 8);
  ASSERT_EQ(diag.points.size(), grid.size() * 8);
  for (const auto& p : diag.points) EXPECT_NEAR(p[0], p[1], 1e-12);
  auto six = amoeba_sample(parse_laurent("y - 6", 2), grid, 4);
  for (const auto& p : six.points) EXPECT_NEAR(p[1], std::log(6.0), 1e-12);
  auto line = amoeba_sample(parse_laurent("x + y + 1", 2), {10.0}, 16);
  for (const auto& p : line.points) EXPECT_TRUE(std::abs(p[1] - 10) < 1e-3 || std::abs(p[1]) < 1e-3) << p[1];
  EXPECT_THROW(amoeba_sample(parse_laurent("x + 1", 2), grid, 4), std::invalid_argument);
}

TEST(Amoeba, QuadraticRootsAreSortedAndDeterministic) {
  const auto f = parse_laurent("y^2 + x*y + 1", 2);
  auto a = amoeba_sample(f, default_s_grid(), 12, Exec::Serial);
  auto b = amoeba_sample(f, default_s_grid(), 12, Exec::Parallel);
  EXPECT_EQ(a.points, b.points);
  EXPECT_EQ(a.dropped, b.dropped);
  EXPECT_EQ(a.points.size() + a.dropped, default_s_grid().size() * 12 * 2);
}

TEST(LogLimit, Examples) {
  auto cloud = amoeba_sample(parse_laurent("x + y + 1", 2), default_s_grid(), 64);
  auto dirs = log_limit_directions(cloud, 20, 72);
  ASSERT_FALSE(dirs.no_far_points);
  const std::vector<std::array<double, 2>> expected{{-1, -1}, {1, 0}, {0, 1}};
  for (const auto& b : dirs.bins) {
    double best = 180;
    for (const auto& e : expected) best = std::min(best, angle_degrees(b.dir, e));
    EXPECT_LT(best, 5.0);
  }
  auto diag = log_limit_directions(amoeba_sample(parse_laurent("y - x", 2), default_s_grid(), 8), 15, 72);
  ASSERT_EQ(diag.bins.size(), 2u);
  for (const auto& b : diag.bins) EXPECT_NEAR(std::abs(b.dir[0] - b.dir[1]), 0.0, 1e-9);
  auto none = log_limit_directions(amoeba_sample(parse_laurent("y - 6", 2), {0.0}, 4), 15, 72);
  EXPECT_TRUE(none.no_far_points);
  EXPECT_TRUE(none.bins.empty());
}
