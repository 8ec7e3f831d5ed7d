#include <gtest/gtest.h>

#include <random>

#include "sigmatrop/sigma.hpp"
#include "sigmatrop/tropical.hpp"
#include "support.hpp"

using namespace sigmatrop;
using sigmatrop::testing::rv;
using sigmatrop::testing::uniform;

namespace {

LaurentPoly P(const char* s, std::size_t n = 1, CoefficientDomain d = CoefficientDomain::integers()) {
  return parse_laurent(s, n, d);
}

SphericalSet dirs(std::size_t n, std::vector<Direction> d) { return SphericalSet::points(n, d); }

bool same_sphere(const SphericalSet& a, const SphericalSet& b) {
  return SphericalSet(subtract(a.fan, b.fan)).empty_set() && SphericalSet(subtract(b.fan, a.fan)).empty_set();
}

void expect_sound(const SigmaResult& r, const ModulePresentation& m) {
  EXPECT_TRUE(certificates_verified(r, m));
  EXPECT_TRUE(pairwise_disjoint(r));
}

const ModulePresentation six = ModulePresentation::scalar({Rational(6)});

}  // namespace

TEST(CertificateSearch, ScalarSix) {
  SearchBounds b;
  b.box = 3;
  b.coeff_bound = 300;
  const auto lam = certificate_search(six, Character{-1}, b);
  ASSERT_TRUE(lam);
  EXPECT_EQ(*lam, P("1 - 6*x^-1"));
  EXPECT_TRUE(certificate_valid(*lam, Character{-1}, six));
  b.box = 6;
  b.coeff_bound = 1000000;
  EXPECT_FALSE(certificate_search(six, Character{1}, b));
}

TEST(CertificateSearch, Guards) {
  const auto lamp = ModulePresentation::cyclic(1, CoefficientDomain::prime_field(2), {});
  EXPECT_THROW(certificate_search(lamp, Character{1}), UnsupportedError);
  EXPECT_THROW(certificate_search(six, Character{0}), std::invalid_argument);
  EXPECT_THROW(certificate_search(six, Character{1, 1}), DimensionError);
}

TEST(CertificateSearch, TwoPrimes) {
  const auto m = ModulePresentation::scalar({Rational(2), Rational(3)});
  const auto lam = certificate_search(m, Character{1, 1});
  ASSERT_TRUE(lam);
  EXPECT_TRUE(certificate_valid(*lam, Character{1, 1}, m));
  EXPECT_FALSE(certificate_search(m, Character{1, 0}));
}

TEST(SimplicialFanTest, StellarSubdivision) {
  auto f = SimplicialFan::orthants(2);
  EXPECT_EQ(f.cones.size(), 4u);
  f.insert_ray(Direction{1, 1});
  EXPECT_EQ(f.cones.size(), 5u);
  f.insert_ray(Direction{1, 0});
  EXPECT_EQ(f.cones.size(), 5u);
  // Faces: 5 two-dimensional, 5 rays.
  EXPECT_EQ(f.faces().size(), 10u);
  auto g = SimplicialFan::orthants(3);
  g.insert_ray(Direction{1, 1, 0});  // on a 2-face shared by two octants
  EXPECT_EQ(g.cones.size(), 10u);
  // The open cells of all faces partition R^3 \ 0.
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    RVector x{Rational(uniform(rng, -3, 3)), Rational(uniform(rng, -3, 3)), Rational(uniform(rng, -3, 3))};
    if (is_zero(x)) continue;
    int hits = 0;
    for (const auto& face : g.faces()) hits += relint_cone(face, 3).contains(x) ? 1 : 0;
    EXPECT_EQ(hits, 1);
  }
}

TEST(SigmaScalar, Six) {
  const auto r = compute_sigma(six);
  EXPECT_TRUE(same_sphere(r.proved_complement(), dirs(1, {Direction{1}})));
  EXPECT_TRUE(same_sphere(r.proved_sigma(), dirs(1, {Direction{-1}})));
  EXPECT_TRUE(r.exact());
  EXPECT_EQ(*r.certificate_for(Direction{-1}), P("1 - 6*x^-1"));
  EXPECT_TRUE(r.witness_for(Direction{1}));
  expect_sound(r, six);
}

TEST(SigmaScalar, TwoThree) {
  const auto m = ModulePresentation::scalar({Rational(2), Rational(3)});
  const auto r = compute_sigma(m);
  EXPECT_TRUE(same_sphere(r.proved_complement(), dirs(2, {Direction{1, 0}, Direction{0, 1}})));
  EXPECT_TRUE(r.exact());
  EXPECT_TRUE(same_sphere(r.proved_sigma(), r.proved_complement().complement()));
  expect_sound(r, m);
}

TEST(SigmaScalar, TrivialAction) {
  const auto m = ModulePresentation::scalar({Rational(1)});
  const auto r = compute_sigma(m);
  EXPECT_TRUE(r.proved_complement().empty_set());
  EXPECT_TRUE(same_sphere(r.proved_sigma(), SphericalSet::whole(1)));
  expect_sound(r, m);
}

// Complement of a scalar action is the set of p-adic value vectors, for
// random rational multipliers in rank 2.
TEST(SigmaScalar, RandomMultipliers) {
  std::mt19937_64 rng(5);
  const long pool[] = {1, 2, 3, 5, 6, 10, 12};
  for (int t = 0; t < 8; ++t) {
    RVector rho;
    for (int i = 0; i < 2; ++i) {
      Rational q(pool[uniform(rng, 0, 6)], pool[uniform(rng, 0, 6)]);
      q.canonicalize();
      if (uniform(rng, 0, 1)) q = -q;
      rho.push_back(q);
    }
    const auto m = ModulePresentation::scalar(rho);
    const auto r = compute_sigma(m);
    std::vector<Direction> expected;
    for (auto p : prime_support(rho)) {
      RVector w;
      for (const auto& q : rho) w.push_back(Valuation::padic(p).value(q).value());
      if (!is_zero(w)) expected.push_back(Direction::of(w));
    }
    EXPECT_TRUE(same_sphere(r.proved_complement(), dirs(2, expected))) << m.str();
    EXPECT_TRUE(r.exact()) << m.str();
    expect_sound(r, m);
  }
}

TEST(SigmaMatrix, DiagonalAndJordan) {
  QMatrix d(2, 2);
  d(0, 0) = 2;
  d(1, 1) = 3;
  const auto diag = ModulePresentation::matrix({d}, {{1, 0}, {0, 1}});
  const auto r = compute_sigma(diag);
  EXPECT_TRUE(same_sphere(r.proved_complement(), dirs(1, {Direction{1}})));
  EXPECT_TRUE(r.exact());
  expect_sound(r, diag);

  QMatrix j(2, 2);
  j(0, 0) = 1;
  j(0, 1) = 1;
  j(1, 1) = 1;
  const auto jordan = ModulePresentation::matrix({j}, {{1, 0}, {0, 1}});
  const auto s = compute_sigma(jordan);
  EXPECT_FALSE(s.notes.empty());
  EXPECT_TRUE(s.proved_complement().empty_set());
  EXPECT_TRUE(s.exact());  // every cell certified, e.g. by (x - 1)^2 up to a shift
  expect_sound(s, jordan);

  QMatrix rot(2, 2);  // x^2 + 1: no rational eigenvalues
  rot(0, 1) = -1;
  rot(1, 0) = 1;
  const auto rm = ModulePresentation::matrix({rot}, {{1, 0}, {0, 1}});
  const auto t = compute_sigma(rm);
  EXPECT_TRUE(t.exact());
  expect_sound(t, rm);
}

TEST(SigmaCyclic, FieldExamples) {
  const auto q = CoefficientDomain::rationals();
  const auto line = ModulePresentation::cyclic(2, q, {P("x + y + 1", 2, q)});
  const auto r = compute_sigma(line);
  EXPECT_TRUE(same_sphere(r.proved_complement(), dirs(2, {Direction{-1, -1}, Direction{1, 0}, Direction{0, 1}})));
  EXPECT_TRUE(r.exact());
  expect_sound(r, line);

  const auto lamp = ModulePresentation::cyclic(1, CoefficientDomain::prime_field(2), {});
  const auto l = compute_sigma(lamp);
  EXPECT_TRUE(same_sphere(l.proved_complement(), SphericalSet::whole(1)));
  EXPECT_TRUE(l.proved_sigma().empty_set());

  const auto triv = ModulePresentation::cyclic(1, q, {P("x - 1", 1, q)});
  const auto t = compute_sigma(triv);
  EXPECT_TRUE(t.proved_complement().empty_set());
  EXPECT_TRUE(same_sphere(t.proved_sigma(), SphericalSet::whole(1)));
  expect_sound(t, triv);
}

TEST(SigmaCyclic, SeveralGenerators) {
  const auto q = CoefficientDomain::rationals();
  const auto m = ModulePresentation::cyclic(2, q, {P("x + y + 1", 2, q), P("x - 2", 2, q)});
  const auto r = compute_sigma(m);
  ASSERT_TRUE(r.outer_candidate);
  EXPECT_FALSE(r.notes.empty());
  expect_sound(r, m);
  // Everything uncertified lies in the prevariety.
  EXPECT_TRUE(SphericalSet(subtract(r.undecided, *r.outer_candidate)).empty_set());
}

// The complement is contained in the radial projection of the prevariety.
TEST(SigmaCyclic, ComplementInsidePrevariety) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 10; ++t) {
    auto f = sigmatrop::testing::random_poly(rng, 2, 2, 4);
    if (f.size() < 2) continue;
    const auto m = ModulePresentation::cyclic(2, CoefficientDomain::rationals(), {f});
    const auto r = compute_sigma(m);
    const auto pre = trop_prevariety(std::vector<ValuedPoly>{ValuedPoly{f, Valuation::trivial()}});
    EXPECT_TRUE(SphericalSet(subtract(r.proved_complement().fan, pre.fan)).empty_set()) << to_string(f);
    EXPECT_TRUE(r.exact());
    expect_sound(r, m);
  }
}

// Over Q the module Q[x^+-1]/(x - 6) is a finite-dimensional vector space,
// over Z it is Z[1/6]: the complement depends on the coefficient ring.
TEST(SigmaCyclic, CoefficientRingDependence) {
  const auto overQ = compute_sigma(ModulePresentation::cyclic(1, CoefficientDomain::rationals(), {P("x - 6", 1, CoefficientDomain::rationals())}));
  EXPECT_TRUE(overQ.proved_complement().empty_set());
  const auto zm = ModulePresentation::cyclic(1, CoefficientDomain::integers(), {P("x - 6")});
  const auto overZ = compute_sigma(zm);
  EXPECT_TRUE(same_sphere(overZ.proved_complement(), compute_sigma(six).proved_complement()));
  EXPECT_TRUE(overZ.exact());
  expect_sound(overZ, zm);
}

TEST(SigmaCyclic, IntegerExamples) {
  const auto two = ModulePresentation::cyclic(1, CoefficientDomain::integers(), {P("2")});
  EXPECT_TRUE(same_sphere(compute_sigma(two).proved_complement(), SphericalSet::whole(1)));
  const auto line = ModulePresentation::cyclic(2, CoefficientDomain::integers(), {P("2*x - y", 2)});
  const auto r = compute_sigma(line);
  expect_sound(r, line);
  EXPECT_TRUE(r.witness_for(Direction{1, 1}));   // trivial valuation
  EXPECT_TRUE(r.witness_for(Direction{-1, 0}));  // 2-adic: chi1 - chi2 = -1 coned
  const auto multi = ModulePresentation::cyclic(1, CoefficientDomain::integers(), {P("x - 6"), P("2")});
  EXPECT_THROW(compute_sigma(multi), UnsupportedError);
}

TEST(SigmaDirectSum, Examples) {
  const auto inv = ModulePresentation::scalar({Rational(1, 6)});
  const auto sum = ModulePresentation::direct_sum({six, inv});
  const auto r = compute_sigma(sum);
  EXPECT_TRUE(same_sphere(r.proved_complement(), SphericalSet::whole(1)));
  EXPECT_TRUE(r.proved_sigma().empty_set());
  const auto one = compute_sigma(ModulePresentation::scalar({Rational(1)}));
  const auto s6 = compute_sigma(six);
  const auto id = sigma_direct_sum(one, s6);
  EXPECT_TRUE(same_sphere(id.proved_sigma(), s6.proved_sigma()));
  EXPECT_TRUE(same_sphere(id.proved_complement(), s6.proved_complement()));
  const auto twice = sigma_direct_sum(s6, s6);
  EXPECT_TRUE(same_sphere(twice.proved_sigma(), s6.proved_sigma()));
  EXPECT_TRUE(same_sphere(twice.proved_complement(), s6.proved_complement()));
  expect_sound(twice, ModulePresentation::direct_sum({six, six}));
}

TEST(Metabelian, Examples) {
  const auto s6 = compute_sigma(six);
  EXPECT_EQ(metabelian_fp(s6), Decision::True);
  EXPECT_EQ(metabelian_fp_infinity(s6), Decision::True);
  const auto lamp = compute_sigma(ModulePresentation::cyclic(1, CoefficientDomain::prime_field(2), {}));
  EXPECT_EQ(metabelian_fp(lamp), Decision::False);
  EXPECT_EQ(metabelian_fp_infinity(lamp), Decision::False);
  const auto one = compute_sigma(ModulePresentation::scalar({Rational(1)}));
  EXPECT_EQ(metabelian_fp(one), Decision::True);
  const auto both = compute_sigma(ModulePresentation::direct_sum({six, ModulePresentation::scalar({Rational(1, 6)})}));
  EXPECT_EQ(metabelian_fp_infinity(both), Decision::False);
  EXPECT_EQ(metabelian_fp(both), Decision::False);
  // Z^2 acting by (2, 3): complement {e1, e2}, finitely presented and FP_inf.
  const auto r23 = compute_sigma(ModulePresentation::scalar({Rational(2), Rational(3)}));
  EXPECT_EQ(metabelian_fp(r23), Decision::True);
  EXPECT_EQ(metabelian_fp_infinity(r23), Decision::True);
  // An undecided region that could contain an antipodal pair.
  SigmaResult partial;
  partial.rank = 1;
  partial.undecided = Fan(1, {Polyhedron::whole(1)});
  EXPECT_EQ(metabelian_fp(partial), Decision::Undecided);
  EXPECT_EQ(metabelian_fp_infinity(partial), Decision::Undecided);
}

TEST(Fpm, Examples) {
  EXPECT_EQ(fpm_test({Direction{1, 0}, Direction{0, 1}}, 2).value, Decision::True);
  const auto anti = fpm_test({Direction{1, 0}, Direction{-1, 0}}, 2);
  EXPECT_EQ(anti.value, Decision::False);
  EXPECT_EQ(anti.failing_subset.size(), 2u);
  EXPECT_EQ(fpm_test(std::vector<Direction>{}, 5).value, Decision::True);
  const std::vector<Direction> tri{Direction{1, 0}, Direction{0, 1}, Direction{-1, -1}};
  EXPECT_EQ(fpm_test(tri, 2).value, Decision::True);
  const auto three = fpm_test(tri, 3);
  EXPECT_EQ(three.value, Decision::False);
  EXPECT_TRUE(three.conjectural);
  EXPECT_FALSE(fpm_test(tri, 0).conjectural);
  std::vector<Direction> many;
  for (long i = 1; i <= 13; ++i) many.push_back(Direction{1, i});
  EXPECT_THROW(fpm_test(many, 2), ScaleGuardError);
}

// Matrix certificates built from valid 1x1 certificates and annihilating,
// chi-positive perturbations: their determinants are certificates.
TEST(DeterminantReduction, RandomTwoByTwo) {
  std::mt19937_64 rng(21);
  int checked = 0;
  const Rational rhos[] = {6, 10, Rational(1, 6), Rational(1, 10), 12};
  for (int t = 0; t < 30; ++t) {
    const Rational rho = rhos[t % 5];
    const auto mod = ModulePresentation::scalar({rho});
    const auto r = compute_sigma(mod);
    ASSERT_FALSE(r.sigma.empty());
    const auto& cell = r.sigma[uniform(rng, 0, static_cast<long>(r.sigma.size()) - 1)];
    const Character chi(*cell.cone.interior_point());
    // b x - a annihilates, shifted so every monomial has positive chi-value.
    LaurentPoly ann(1, CoefficientDomain::integers());
    ann.add_term(Monomial{1}, Rational(rho.get_den()));
    ann.add_term(Monomial{0}, Rational(-rho.get_num()));
    const std::int64_t s = sgn(chi.values[0]) > 0 ? 1 : -2;
    const auto mu = [&]() { return ann.shifted(Monomial{s}).scaled(uniform(rng, -3, 3)); };
    const LaurentMatrix theta{{cell.certificate + mu(), mu()}, {mu(), cell.certificate * cell.certificate + mu()}};
    const auto two = ModulePresentation::direct_sum({mod, mod});
    ASSERT_TRUE(matrix_certificate_valid(theta, 2, chi, two));
    EXPECT_TRUE(certificate_valid(determinant_reduction(theta), chi, mod));
    ++checked;
  }
  EXPECT_EQ(checked, 30);
}
