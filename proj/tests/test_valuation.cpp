#include <gtest/gtest.h>

#include <random>

#include "sigmatrop/ring.hpp"
#include "sigmatrop/valuation.hpp"

using namespace sigmatrop;

TEST(Valuation, Values) {
  EXPECT_EQ(Valuation::padic(2).value(6), Extended(1));
  EXPECT_EQ(Valuation::padic(3).value(Rational(1, 9)), Extended(-2));
  EXPECT_TRUE(Valuation::trivial().value(0).is_infinite());
  EXPECT_EQ(Valuation::trivial().value(Rational(-7, 3)), Extended(0));
  EXPECT_THROW(Valuation::padic(6), std::invalid_argument);
}

TEST(Valuation, TableExtendsMultiplicatively) {
  auto v = Valuation::table({{Rational(2), Extended(Rational(1, 2))}, {Rational(5), Extended(3)}});
  EXPECT_EQ(v.value(-2), Extended(Rational(1, 2)));
  EXPECT_EQ(v.value(Rational(1, 2)), Extended(Rational(-1, 2)));
  EXPECT_EQ(v.value(10), Extended(Rational(7, 2)));
  EXPECT_EQ(v.value(1), Extended(0));
  EXPECT_THROW(v.value(7), UnknownCoefficientError);
  EXPECT_TRUE(v.check_multiplicativity().empty());
  auto bad = Valuation::table({{Rational(2), Extended(1)}, {Rational(4), Extended(3)}});
  EXPECT_FALSE(bad.check_multiplicativity().empty());
  EXPECT_THROW(Valuation::table({{Rational(1), Extended(2)}}), std::invalid_argument);
  EXPECT_THROW(Valuation::table({{Rational(3), Extended::infinity()}}), std::invalid_argument);
}

TEST(NewtonPolygon, Examples) {
  auto np = newton_polygon({Rational(-6), Rational(1)}, Valuation::padic(2));
  ASSERT_EQ(np.segments.size(), 1u);
  EXPECT_EQ(np.segments[0].slope, -1);
  EXPECT_EQ(np.root_valuations(), (std::vector<Rational>{1}));

  np = newton_polygon({Rational(8), Rational(-6), Rational(1)}, Valuation::padic(2));
  ASSERT_EQ(np.segments.size(), 2u);
  EXPECT_EQ(np.segments[0].slope, -2);
  EXPECT_EQ(np.segments[1].slope, -1);
  EXPECT_EQ(np.root_valuations(), (std::vector<Rational>{1, 2}));

  np = newton_polygon({Rational(1), Rational(0), Rational(1)}, Valuation::trivial());
  ASSERT_EQ(np.segments.size(), 1u);
  EXPECT_EQ(np.segments[0].slope, 0);
  EXPECT_EQ(np.segments[0].length, 2);
  EXPECT_THROW(newton_polygon({Rational(0), Rational(0)}, Valuation::trivial()), std::invalid_argument);
}

// Products of linear factors (X - r_i): negated slopes must reproduce the
// multiset of v_p(r_i), an oracle independent of the hull construction.
TEST(NewtonPolygon, MatchesExplicitFactorizations) {
  std::mt19937_64 rng(20260101);
  const std::uint64_t primes[] = {2, 3, 5};
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = primes[trial % 3];
    const auto v = Valuation::padic(p);
    const int deg = 1 + static_cast<int>(rng() % 5);
    RVector poly{Rational(1)};
    std::vector<Rational> expected;
    for (int i = 0; i < deg; ++i) {
      const long num = static_cast<long>(rng() % 60) + 1;
      const long den = static_cast<long>(rng() % 12) + 1;
      Rational r(num * ((rng() % 2) ? 1 : -1), den);
      r.canonicalize();
      expected.push_back(v.value(r).value());
      RVector next(poly.size() + 1);
      for (std::size_t k = 0; k < poly.size(); ++k) {
        next[k + 1] += poly[k];
        next[k] -= r * poly[k];
      }
      poly = next;
    }
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(newton_polygon(poly, v).root_valuations(), expected) << "trial " << trial;
  }
}

TEST(PrimeSupport, Examples) {
  EXPECT_EQ(prime_support({Rational(6)}), (std::set<std::uint64_t>{2, 3}));
  EXPECT_EQ(prime_support({Rational(2), Rational(1, 3)}), (std::set<std::uint64_t>{2, 3}));
  EXPECT_TRUE(prime_support({Rational(1), Rational(-1)}).empty());
  EXPECT_THROW(prime_support({Rational(0)}), std::invalid_argument);
}

TEST(PrimeSupport, OutsidePrimesGiveZero) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    RVector xs;
    for (int i = 0; i < 3; ++i) {
      Rational q(static_cast<long>(rng() % 5000) + 1, static_cast<unsigned long>(rng() % 300) + 1);
      q.canonicalize();
      xs.push_back(q);
    }
    const auto s = prime_support(xs);
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47})
      if (!s.count(p))
        for (const auto& x : xs) EXPECT_EQ(Valuation::padic(p).value(x), Extended(0));
  }
}

TEST(Factorize, LargeSemiprime) {
  const Integer n = Integer("1000000007") * Integer("998244353");
  auto f = factorize(n);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f.begin()->first, Integer("998244353"));
}
