#include <gtest/gtest.h>

#include "sigmatrop/ring.hpp"
#include "support.hpp"

using namespace sigmatrop;
using sigmatrop::testing::random_character;
using sigmatrop::testing::random_poly;

namespace {

LaurentPoly P(const char* s, std::size_t n, CoefficientDomain d = CoefficientDomain::rationals()) {
  return parse_laurent(s, n, d);
}

}  // namespace

TEST(ChiValue, DotProduct) {
  EXPECT_EQ(chi_value(Character{1, -1}, Monomial{2, 3}), -1);
  EXPECT_EQ(chi_value(Character{0, 0}, Monomial{5, 7}), 0);
  EXPECT_EQ(chi_value(Character{Rational(1, 2), Rational(1, 3)}, Monomial{2, -3}), 0);
  EXPECT_THROW(chi_value(Character{1}, Monomial{1, 2}), DimensionError);
}

TEST(VChi, Examples) {
  EXPECT_EQ(v_chi(Character{-1}, P("x - 6", 1)), Extended(-1));
  EXPECT_TRUE(v_chi(Character{1}, LaurentPoly(1)).is_infinite());
  EXPECT_EQ(v_chi(Character{2, 3}, P("x + y + 1", 2)), Extended(0));
}

TEST(InitialPart, Examples) {
  EXPECT_EQ(initial_part(Character{1}, P("x - 6", 1)), P("-6", 1));
  EXPECT_EQ(initial_part(Character{-1}, P("x - 6", 1)), P("x", 1));
  // chi(x^-2) = 2 > 0 for chi = (-1), so the constant term is minimal.
  EXPECT_EQ(initial_part(Character{-1}, P("1 - 36*x^-2", 1)), P("1", 1));
  EXPECT_EQ(initial_part(Character{1}, P("1 - 36*x^-2", 1)), P("-36*x^-2", 1));
  EXPECT_TRUE(initial_part(Character{1}, LaurentPoly(1)).is_zero());
}

TEST(Grading, Examples) {
  auto g = grading(Character{1, 2}, P("x + y + 1", 2));
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g[0].value, 0);
  EXPECT_EQ(g[0].component, P("1", 2));
  EXPECT_EQ(g[1].value, 1);
  EXPECT_EQ(g[1].component, P("x", 2));
  EXPECT_EQ(g[2].value, 2);
  EXPECT_EQ(g[2].component, P("y", 2));
  auto h = grading(Character{1, 1}, P("x + y", 2));
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h[0].component, P("x + y", 2));
  EXPECT_TRUE(grading(Character{1, 1}, LaurentPoly(2)).empty());
}

TEST(Parse, RoundTrip) {
  for (const char* s : {"x + y + 1", "1 - 36*x^-2", "-6*x^-1 + 1", "1/2*x*y^3 - 2"}) {
    const auto f = P(s, 2);
    EXPECT_EQ(P(to_string(f).c_str(), 2), f) << s;
  }
  EXPECT_THROW(P("x +", 1), std::invalid_argument);
  EXPECT_THROW(P("q", 1), std::invalid_argument);
}

TEST(Arithmetic, PrimeFieldReduces) {
  const auto d = CoefficientDomain::prime_field(2);
  EXPECT_TRUE((P("x + 1", 1, d) + P("x + 1", 1, d)).is_zero());
  EXPECT_EQ(P("x + 1", 1, d).pow(2), P("x^2 + 1", 1, d));
  EXPECT_THROW(CoefficientDomain::prime_field(4), std::invalid_argument);
}

TEST(Arithmetic, IntegerDomainRejectsFractions) {
  EXPECT_THROW(P("1/2*x", 1, CoefficientDomain::integers()), std::invalid_argument);
}

TEST(Direction, Normalizes) {
  EXPECT_EQ(Direction({4, -6}).coords, (ZVector{2, -3}));
  EXPECT_EQ(Direction::of(Character{Rational(1, 2), Rational(1, 3)}), Direction({3, 2}));
  EXPECT_THROW(Direction({0, 0}), std::invalid_argument);
}

// Properties over 1000 random polynomials, rank <= 4, degree <= 6.
TEST(RingProperties, ValuationAndInitialParts) {
  std::mt19937_64 rng(0x5eed0000u);
  for (int trial = 0; trial < 1000; ++trial) {
  const std::size_t n = 1 + static_cast<std::size_t>(trial % 4);
  for (const auto dom : {CoefficientDomain::integers(), CoefficientDomain::rationals(), CoefficientDomain::prime_field(5)}) {
    const auto f = random_poly(rng, n, 3, 5, dom);
    const auto h = random_poly(rng, n, 3, 5, dom);
    const auto chi = random_character(rng, n);
    if (f.is_zero() || h.is_zero()) continue;
    EXPECT_EQ(v_chi(chi, f * h), v_chi(chi, f) + v_chi(chi, h));
    EXPECT_GE(v_chi(chi, f + h), min(v_chi(chi, f), v_chi(chi, h)));
    EXPECT_EQ(initial_part(chi, f * h), initial_part(chi, f) * initial_part(chi, h));
  }
  }
}

TEST(RingProperties, GradingReassembles) {
  std::mt19937_64 rng(0xa11ce000u);
  for (int trial = 0; trial < 1000; ++trial) {
  const std::size_t n = 1 + static_cast<std::size_t>(trial % 4);
  const auto f = random_poly(rng, n, 6, 8);
  const auto chi = random_character(rng, n);
  LaurentPoly sum(n);
  Rational prev;
  bool first = true;
  for (const auto& g : grading(chi, f)) {
    if (!first) EXPECT_LT(prev, g.value);
    first = false;
    prev = g.value;
    for (const auto& [m, c] : g.component.terms()) EXPECT_EQ(chi_value(chi, m), g.value);
    sum += g.component;
  }
  EXPECT_EQ(sum, f);
  const auto init = initial_part(chi, f);
  const auto rest = f - init;
  if (!rest.is_zero()) EXPECT_GT(v_chi(chi, rest), v_chi(chi, init));
  }
}
