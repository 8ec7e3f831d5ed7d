#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sigmatrop/hyperbolic.hpp"

using namespace sigmatrop;
using namespace sigmatrop::h2;

namespace {

GroupElement random_element(std::mt19937_64& rng, std::uint64_t p) {
  std::uniform_int_distribution<int> kd(-4, 4), md(-30, 30), jd(0, 3);
  return {kd(rng), Rational(md(rng)) / rational_power(Rational(static_cast<long>(p)), jd(rng))};
}

ComplexQ random_point(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n(-20, 20), d(1, 9), pos(1, 20);
  ComplexQ z{Rational(n(rng), d(rng)), Rational(pos(rng), d(rng))};
  z.re.canonicalize();
  z.im.canonicalize();
  return z;
}

BoundaryPoint random_boundary(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n(-20, 20), d(1, 9), inf(0, 4);
  if (inf(rng) == 0) return BoundaryPoint::infinity();
  Rational x(n(rng), d(rng));
  x.canonicalize();
  return BoundaryPoint::real(x);
}

}  // namespace

namespace sigmatrop::h2 {
void PrintTo(const ComplexQ& z, std::ostream* os) { *os << sigmatrop::to_string(z.re) << " + " << sigmatrop::to_string(z.im) << "i"; }
}  // namespace sigmatrop::h2

TEST(Hyperbolic, ActionExamples) {
  EXPECT_EQ(mobius_act(GroupElement{1, 0}, ComplexQ{0, 1}, 2), (ComplexQ{0, 4}));
  EXPECT_EQ(mobius_act(GroupElement{-1, 0}, ComplexQ{0, 1}, 2), (ComplexQ{0, Rational(1, 4)}));
  EXPECT_EQ(mobius_act(GroupElement{0, 1}, ComplexQ{0, 1}, 2), (ComplexQ{1, 1}));
  EXPECT_THROW(mobius_act(GroupElement{0, 0}, ComplexQ{0, 0}, 2), std::invalid_argument);
  EXPECT_THROW(validate(GroupElement{0, Rational(1, 3)}, 2), std::invalid_argument);
  EXPECT_NO_THROW(validate(GroupElement{0, Rational(3, 8)}, 2));
}

TEST(Hyperbolic, BusemannExamples) {
  const auto a = busemann(BoundaryPoint::infinity(), ComplexQ{0, 4});
  EXPECT_EQ(a.log_arg, 4);
  EXPECT_NEAR(a.value, std::log(4.0), 1e-15);
  EXPECT_EQ(busemann(BoundaryPoint::real(0), ComplexQ{0, Rational(1, 4)}).log_arg, 4);
  EXPECT_EQ(busemann(BoundaryPoint::real(3), ComplexQ{0, 1}).log_arg, 1);
  EXPECT_EQ(busemann(BoundaryPoint::infinity(), ComplexQ{7, 1}).log_arg, 1);
}

TEST(Hyperbolic, EpsilonExamples) {
  EXPECT_EQ(epsilon(t_power(-1), Module::A, 2), Rational(1, 4));
  EXPECT_EQ(epsilon(t_power(-1), Module::B, 2), 4);
  EXPECT_EQ(epsilon(GroupElement{0, Rational(5, 8)}, Module::A, 2), 1);
  GroupRingElement c{{t_power(1), 1}, {t_power(0), -4}};
  EXPECT_EQ(epsilon(c, Module::A, 2), 0);
}

// Oracle: 2x2 rational matrix multiplication.
TEST(Hyperbolic, GroupLawMatchesMatrices) {
  std::mt19937_64 rng(11);
  for (std::uint64_t p : {2u, 3u, 5u})
    for (int i = 0; i < 500; ++i) {
      const auto g = random_element(rng, p), h = random_element(rng, p);
      EXPECT_EQ(as_matrix(compose(g, h, p), p), as_matrix(g, p) * as_matrix(h, p));
      EXPECT_EQ(compose(g, inverse(g, p), p), GroupElement{});
    }
}

// Oracle: the Mobius formula (a z + b) / d of the matrix.
TEST(Hyperbolic, ActionIsMatrixMobius) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 300; ++i) {
    const auto g = random_element(rng, 3), h = random_element(rng, 3);
    const auto z = random_point(rng);
    const QMatrix m = as_matrix(g, 3);
    const ComplexQ expect{(m(0, 0) * z.re + m(0, 1)) / m(1, 1), m(0, 0) * z.im / m(1, 1)};
    EXPECT_EQ(mobius_act(g, z, 3), expect);
    EXPECT_EQ(mobius_act(compose(g, h, 3), z, 3), mobius_act(g, mobius_act(h, z, 3), 3));
  }
}

TEST(Hyperbolic, BusemannDifferenceConstantAtInfinity) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_element(rng, 2);
    const auto z = random_point(rng), w = random_point(rng);
    const auto inf = BoundaryPoint::infinity();
    const Rational r1 = busemann(inf, mobius_act(g, z, 2)).log_arg / busemann(inf, z).log_arg;
    const Rational r2 = busemann(inf, mobius_act(g, w, 2)).log_arg / busemann(inf, w).log_arg;
    EXPECT_EQ(r1, r2);
    EXPECT_EQ(r1, rational_power(Rational(2), 2 * g.k));
  }
}

// Busemann cocycle beta_{g xi}(g z) = beta_xi(z) + beta_{g xi}(g i), and
// horoball membership transported with the shifted level.
TEST(Hyperbolic, HoroballEquivariance) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 50; ++i) {
    const auto g = random_element(rng, 2);
    const auto xi = random_boundary(rng);
    const auto z = random_point(rng);
    const BoundaryPoint gxi = mobius_act(g, xi, 2);
    const Rational lhs = busemann(gxi, mobius_act(g, z, 2)).log_arg;
    const Rational rhs = busemann(xi, z).log_arg * busemann(gxi, mobius_act(g, ComplexQ{0, 1}, 2)).log_arg;
    EXPECT_EQ(lhs, rhs);
    for (const Rational level : {Rational(1, 3), Rational(1), Rational(5, 2)}) {
      const Horoball hb{xi, level};
      EXPECT_EQ(hb.contains(z), mobius_act(g, hb, 2).contains(mobius_act(g, z, 2)));
    }
  }
}

TEST(Hyperbolic, SupportAtZeroA) {
  const auto r = verify_support_at_zero_A(2, 0, 5);
  EXPECT_TRUE(r.pass);
  ASSERT_EQ(r.rows.size(), 6u);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.epsilon, 1);
    EXPECT_EQ(row.busemann_arg, rational_power(Rational(2), 2 * row.j));
  }
  EXPECT_TRUE(verify_support_at_zero_A(3, 2, 6).pass);
  EXPECT_TRUE(verify_support_at_zero_A(2, -2, 4).pass);
  EXPECT_THROW(verify_support_at_zero_A(2, 2, 1), std::invalid_argument);
  EXPECT_THROW(verify_support_at_zero_A(1, 0, 3), std::invalid_argument);
}

TEST(Hyperbolic, InfinityObstructionA) {
  const auto r = verify_infinity_obstruction_A(2, 2, 10, 4);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.candidates, 194481u);
  EXPECT_EQ(r.k_min, 1);
  EXPECT_EQ(r.divisor, 4);
  EXPECT_TRUE(r.two_p_divides);
  const auto odd = verify_infinity_obstruction_A(3, 2, 6, 3);
  EXPECT_TRUE(odd.pass);
  EXPECT_FALSE(odd.two_p_divides);
  const auto low = verify_infinity_obstruction_A(2, Rational(1, 2), 10, 4);
  EXPECT_EQ(low.status, "inconclusive");
  EXPECT_FALSE(low.pass);
}

TEST(Hyperbolic, InfinityObstructionSerialMatchesParallel) {
  const auto a = verify_infinity_obstruction_A(2, 5, 8, 4, Exec::Serial);
  const auto b = verify_infinity_obstruction_A(2, 5, 8, 4, Exec::Parallel);
  EXPECT_EQ(a.candidates, b.candidates);
  EXPECT_EQ(a.solutions, b.solutions);
  EXPECT_EQ(a.k_min, 2);
  EXPECT_EQ(a.divisor, 16);
}

TEST(Hyperbolic, PushB) {
  for (std::uint64_t p : {2u, 3u, 7u}) {
    const auto r = verify_push_B(p);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.samples.size(), 23u);
    EXPECT_EQ(r.shift_arg, static_cast<long>(p * p));
    EXPECT_NEAR(r.shift, 2 * std::log(static_cast<double>(p)), 1e-12);
  }
}

TEST(Hyperbolic, ZeroObstructionB) {
  const auto r = verify_zero_obstruction_B(2, 4, 5, 3);
  EXPECT_TRUE(r.pass);
  EXPECT_GT(r.candidates, 0u);
  EXPECT_GT(r.elements_in_horoball, 0u);
  const auto vacuous = verify_zero_obstruction_B(2, 4, 5, 0);
  EXPECT_TRUE(vacuous.pass);
  EXPECT_EQ(vacuous.candidates, 0u);
}

TEST(Hyperbolic, ZeroSearchFindsWitnessForA) {
  const auto r = zero_obstruction_search(2, 4, 5, 3, 3, Module::A);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(epsilon(*r.witness, Module::A, 2), 1);
  const Horoball hb{BoundaryPoint::real(0), 4};
  for (const auto& z : control_image(*r.witness, 2)) EXPECT_TRUE(hb.contains(z));
  const auto par = zero_obstruction_search(2, 4, 5, 3, 3, Module::A, Exec::Parallel);
  EXPECT_EQ(par.witness, r.witness);
  EXPECT_EQ(par.candidates, r.candidates);
}
