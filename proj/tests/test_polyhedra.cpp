#include <gtest/gtest.h>

#include <random>

#include "sigmatrop/polyhedra.hpp"
#include "support.hpp"

using namespace sigmatrop;
using sigmatrop::testing::rv;

namespace {

Polyhedron cell(std::size_t n, std::initializer_list<std::tuple<RVector, Relation, long>> cs) {
  Polyhedron p(n);
  for (const auto& [a, r, b] : cs) p.add(a, r, Rational(b));
  return p;
}

Fan tropical_line() {
  Fan f(2);
  f.add(Polyhedron::closed_ray(rv({-1, -1})));
  f.add(Polyhedron::closed_ray(rv({1, 0})));
  f.add(Polyhedron::closed_ray(rv({0, 1})));
  return f;
}

}  // namespace

TEST(Cone, Membership) {
  EXPECT_TRUE(cell(2, {{rv({1, 0}), Relation::Geq, 0}}).contains(rv({1, 5})));
  EXPECT_FALSE(cell(2, {{rv({1, 0}), Relation::Gt, 0}}).contains(rv({0, 1})));
  EXPECT_TRUE(cell(2, {{rv({1, -1}), Relation::Eq, 0}}).contains(rv({2, 2})));
  EXPECT_THROW(cell(2, {}).contains(rv({1})), DimensionError);
}

TEST(Cone, EmptinessAndDimension) {
  EXPECT_TRUE(cell(1, {{rv({1}), Relation::Gt, 0}, {rv({-1}), Relation::Gt, 0}}).is_empty());
  EXPECT_FALSE(cell(1, {{rv({1}), Relation::Geq, 0}, {rv({-1}), Relation::Geq, 0}}).is_empty());
  EXPECT_EQ(cell(1, {{rv({1}), Relation::Geq, 0}, {rv({-1}), Relation::Geq, 0}}).dimension(), 0);
  EXPECT_EQ(cell(2, {{rv({1, 0}), Relation::Gt, 0}}).dimension(), 2);
  EXPECT_EQ(Polyhedron::open_ray(rv({1, 1})).dimension(), 1);
  EXPECT_EQ(cell(1, {{rv({1}), Relation::Gt, 0}, {rv({-1}), Relation::Gt, 0}}).dimension(), -1);
}

TEST(Rays, Examples) {
  EXPECT_EQ(rays(cell(2, {{rv({1, 0}), Relation::Geq, 0}, {rv({0, 1}), Relation::Geq, 0}})),
            (std::vector<Direction>{Direction({0, 1}), Direction({1, 0})}));
  EXPECT_EQ(rays(cell(2, {{rv({1, -1}), Relation::Eq, 0}, {rv({-1, 0}), Relation::Geq, 0}})),
            (std::vector<Direction>{Direction({-1, -1})}));
  auto g = cone_generators(Polyhedron::whole(2));
  EXPECT_EQ(g.lineality.size(), 2u);
  EXPECT_EQ(g.all(), (std::vector<Direction>{Direction({-1, 0}), Direction({0, -1}), Direction({0, 1}), Direction({1, 0})}));
  EXPECT_THROW(rays(Polyhedron::whole(7)), std::invalid_argument);
}

TEST(LocalCone, AtOrigin) {
  Fan pt(1, {Polyhedron::point(rv({1}))});
  EXPECT_TRUE(local_cone_at_origin(pt).cells.empty());
  Fan ray(1, {cell(1, {{rv({1}), Relation::Geq, 0}})});
  EXPECT_TRUE(same_set(local_cone_at_origin(ray), ray));
  Fan seg(2, {cell(2, {{rv({0, 1}), Relation::Eq, 0}, {rv({1, 0}), Relation::Geq, 1}, {rv({-1, 0}), Relation::Geq, -2}})});
  EXPECT_TRUE(local_cone_at_origin(seg).cells.empty());
}

TEST(LocalCone, AtInfinity) {
  Fan pt(1, {Polyhedron::point(rv({1}))});
  EXPECT_TRUE(same_set(local_cone_at_infinity(pt), Fan(1, {Polyhedron::point(rv({0}))})));
  Fan half(1, {cell(1, {{rv({1}), Relation::Geq, 1}})});
  EXPECT_TRUE(same_set(local_cone_at_infinity(half), Fan(1, {cell(1, {{rv({1}), Relation::Geq, 0}})})));
  Fan line(2, {cell(2, {{rv({0, 1}), Relation::Eq, 1}})});
  EXPECT_TRUE(same_set(local_cone_at_infinity(line), Fan(2, {cell(2, {{rv({0, 1}), Relation::Eq, 0}})})));
  EXPECT_TRUE(same_set(local_cone_at_infinity(local_cone_at_infinity(line)), local_cone_at_infinity(line)));
}

TEST(Hemisphere, Examples) {
  std::vector<Direction> a{Direction({1, 0}), Direction({0, 1})};
  auto r = in_open_hemisphere(a);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(*r.witness, rv({1, 1}));
  EXPECT_TRUE(verify_hemisphere(a, r));
  std::vector<Direction> b{Direction({1, 0}), Direction({-1, 0})};
  r = in_open_hemisphere(b);
  ASSERT_TRUE(r.combination);
  EXPECT_EQ(*r.combination, (RVector{Rational(1, 2), Rational(1, 2)}));
  std::vector<Direction> c{Direction({1, 0}), Direction({0, 1}), Direction({-1, -1})};
  r = in_open_hemisphere(c);
  ASSERT_TRUE(r.combination);
  EXPECT_EQ(*r.combination, (RVector{Rational(1, 3), Rational(1, 3), Rational(1, 3)}));
  EXPECT_TRUE(verify_hemisphere(c, r));
}

TEST(Hemisphere, RandomCertificatesVerify) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 2;
    std::vector<Direction> dirs;
    const std::size_t k = 1 + rng() % 5;
    while (dirs.size() < k) {
      ZVector v(n);
      for (auto& x : v) x = static_cast<long>(rng() % 7) - 3;
      if (std::any_of(v.begin(), v.end(), [](const Integer& z) { return z != 0; })) dirs.emplace_back(v);
    }
    auto r = in_open_hemisphere(dirs);
    EXPECT_TRUE(verify_hemisphere(dirs, r));
  }
}

TEST(Antipodal, Covers) {
  auto s = SphericalSet::points(2, {Direction({1, 0}), Direction({0, 1})}).complement();
  EXPECT_TRUE(covers_with_antipodal(s));
  EXPECT_FALSE(covers_with_antipodal(SphericalSet(Fan(1))));
  EXPECT_TRUE(covers_with_antipodal(SphericalSet::whole(3)));
  auto t = SphericalSet::points(2, {Direction({1, 0}), Direction({-1, 0})}).complement();
  EXPECT_FALSE(covers_with_antipodal(t));
}

TEST(Balance, Examples) {
  EXPECT_TRUE(balanceable_at(tropical_line(), rv({0, 0})));
  EXPECT_FALSE(balanceable_at(Fan(2, {Polyhedron::closed_ray(rv({1, 0}))}), rv({0, 0})));
  Fan line(2, {Polyhedron::closed_ray(rv({1, 0})), Polyhedron::closed_ray(rv({-1, 0}))});
  EXPECT_TRUE(balanceable_at(line, rv({0, 0})));
  EXPECT_TRUE(balanceable_at(tropical_line(), rv({3, 0})));
  EXPECT_THROW(balanceable_at(tropical_line(), rv({1, 1})), std::invalid_argument);
}

TEST(PureDimension, Examples) {
  EXPECT_EQ(pure_dimension(tropical_line()), 1);
  Fan mixed(2, {cell(2, {{rv({1, 0}), Relation::Geq, 0}, {rv({0, 1}), Relation::Geq, 0}}),
                Polyhedron::closed_ray(rv({-1, -1}))});
  EXPECT_EQ(pure_dimension(mixed), std::nullopt);
  EXPECT_EQ(pure_dimension(Fan(2, {Polyhedron::point(rv({0, 0}))})), 0);
  EXPECT_EQ(pure_dimension(Fan(2)), std::nullopt);
  Fan with_face(2, {cell(2, {{rv({1, 0}), Relation::Geq, 0}, {rv({0, 1}), Relation::Geq, 0}}),
                    Polyhedron::closed_ray(rv({1, 0}))});
  EXPECT_EQ(pure_dimension(with_face), 2);
}

TEST(Conify, AffineCells) {
  auto c = Polyhedron::point(rv({1})).conify();
  EXPECT_TRUE(c.contains(rv({5})));
  EXPECT_FALSE(c.contains(rv({0})));
  EXPECT_FALSE(c.contains(rv({-1})));
  // {t (x, x + 1) : t > 0} = {(a, b) : b - a > 0}.
  auto line = cell(2, {{rv({-1, 1}), Relation::Eq, 1}}).conify();
  EXPECT_TRUE(line.contains(rv({0, 1})));
  EXPECT_TRUE(line.contains(rv({-3, -1})));
  EXPECT_FALSE(line.contains(rv({1, 1})));
  EXPECT_FALSE(line.contains(rv({1, 0})));
}

TEST(Subtract, RandomPointsAgree) {
  std::mt19937_64 rng(5);
  Fan a(2, {cell(2, {{rv({1, 0}), Relation::Geq, -1}, {rv({0, 1}), Relation::Gt, 0}})});
  Fan b(2, {cell(2, {{rv({1, -1}), Relation::Eq, 0}}), cell(2, {{rv({1, 1}), Relation::Geq, 2}})});
  const Fan d = subtract(a, b);
  for (int i = 0; i < 2000; ++i) {
    RVector x = rv({static_cast<long>(rng() % 13) - 6, static_cast<long>(rng() % 13) - 6});
    EXPECT_EQ(d.contains(x), a.contains(x) && !b.contains(x));
  }
}

TEST(Fan, RadialProjectionIdempotentOnScaling) {
  auto s = SphericalSet::radial_projection(Fan(2, {cell(2, {{rv({-1, 1}), Relation::Eq, 1}})}));
  for (long k = 1; k < 5; ++k) {
    EXPECT_EQ(s.fan.contains(rv({0, k})), s.fan.contains(rv({0, 1})));
    EXPECT_EQ(s.fan.contains(rv({-2 * k, -k})), s.fan.contains(rv({-2, -1})));
  }
}
