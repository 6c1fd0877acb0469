#include "cytoric/chern.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cytoric;
using namespace testing_support;

namespace {

struct Setup {
  explicit Setup(const std::string &name)
      : pair(hull(load(name))), calc(pair, mpcp_triangulate(pair)) {}
  ReflexivePair<MTag> pair;
  ChernCalculator calc;
};

Setup &setup(const std::string &name) {
  static std::map<std::string, std::unique_ptr<Setup>> cache;
  auto &slot = cache[name];
  if (!slot) slot = std::make_unique<Setup>(name);
  return *slot;
}

std::size_t ray(const Fan &f, NPoint p) {
  const auto r = f.ray_index(p);
  EXPECT_NE(r, Fan::npos) << p;
  return r;
}

WeilDivisor random_divisor(const Fan &f, std::mt19937 &rng, int density) {
  std::uniform_int_distribution<int> coef(-3, 3), keep(0, density);
  auto d = WeilDivisor::zero(f);
  for (auto &c : d.coeffs)
    if (keep(rng) == 0) c = coef(rng);
  if (d.is_zero()) d.coeffs[0] = 1;
  return d;
}

/// Direct evaluation c2 . L = ((-K)^3 L - sum_i D_i^2 L (-K)) / 2 through the
/// full multilinear form.
Rational c2_direct(const IntersectionForm &form, const WeilDivisor &l) {
  const auto &f = form.fan();
  const auto k = WeilDivisor::anticanonical(f);
  Rational total = form(k, k, l, k);
  for (std::size_t i = 0; i < f.rays().size(); ++i) {
    const auto di = WeilDivisor::ray(f, i);
    total -= form(di, di, l, k);
  }
  return total / 2;
}

} // namespace

TEST(Intersection, ProjectiveSpace) {
  const auto &s = setup("quintic.poly");
  const auto &f = s.calc.fan();
  const auto e1 = ray(f, {1, 0, 0, 0}), e2 = ray(f, {0, 1, 0, 0}),
             e3 = ray(f, {0, 0, 1, 0}), e4 = ray(f, {0, 0, 0, 1});
  EXPECT_EQ(s.calc.form().monomial({e1, e2, e3, e4}), 1);
  // all D_i are linearly equivalent on P^4, so H^4 = 1
  EXPECT_EQ(s.calc.form().monomial({e1, e1, e1, e1}), 1);
  EXPECT_EQ(s.calc.form().monomial({e1, e1, e2, e3}), 1);
}

TEST(Intersection, ProductOfProjectiveLines) {
  const auto &s = setup("cube.poly");
  const auto &f = s.calc.fan();
  const auto e1 = ray(f, {1, 0, 0, 0}), e2 = ray(f, {0, 1, 0, 0}),
             e3 = ray(f, {0, 0, 1, 0}), m1 = ray(f, {-1, 0, 0, 0});
  EXPECT_EQ(s.calc.form().monomial({e1, e1, e2, e3}), 0);
  EXPECT_EQ(s.calc.form().monomial({e1, e2, e3, ray(f, {0, 0, 0, 1})}), 1);
  EXPECT_EQ(s.calc.form().monomial({e1, m1, e2, e3}), 0);
}

TEST(Intersection, ExampleHalfFromMultTwoCone) {
  const auto &s = setup("example_s3.poly");
  const auto &f = s.calc.fan();
  const auto e1 = ray(f, {1, 0, 0, 0}), e2 = ray(f, {0, 1, 0, 0}),
             me3 = ray(f, {0, 0, -1, 0}), v = ray(f, {1, 1, 1, -2});
  EXPECT_EQ(s.calc.form().monomial({e1, e2, me3, v}), Rational(1, 2));
}

TEST(Intersection, DistinctRaysOffTheFanGiveZero) {
  const auto &s = setup("cube.poly");
  const auto &f = s.calc.fan();
  EXPECT_EQ(s.calc.form().monomial({ray(f, {1, 0, 0, 0}),
                                    ray(f, {-1, 0, 0, 0}),
                                    ray(f, {0, 1, 0, 0}),
                                    ray(f, {0, 0, 1, 0})}),
            0);
}

TEST(Intersection, SmoothConesGiveOne) {
  for (const auto &n : {"cube.poly", "quintic.poly"}) {
    const auto &s = setup(n);
    for (const auto &c : s.calc.fan().max_cones())
      EXPECT_EQ(s.calc.form().monomial(c), 1) << n;
  }
}

TEST(Intersection, RejectsNonSimplicialFan) {
  const ReflexivePair<MTag> pair(hull(load("example_s3.poly")));
  EXPECT_THROW(IntersectionForm form(face_fan(pair)), DomainError);
}

TEST(Intersection, SymmetryOnRandomQuadruples) {
  std::mt19937 rng(1234);
  std::size_t checked = 0;
  for (const auto &n : {"example_s3.poly", "cube.poly", "cross.poly"}) {
    const auto &s = setup(n);
    const auto &f = s.calc.fan();
    for (int t = 0; t < 40; ++t) {
      std::array<WeilDivisor, 4> d;
      for (auto &x : d) x = random_divisor(f, rng, 2);
      const Rational base = s.calc.form()(std::span<const WeilDivisor>(d));
      std::array<int, 4> perm{0, 1, 2, 3};
      std::shuffle(perm.begin(), perm.end(), rng);
      const std::array<WeilDivisor, 4> p{d[perm[0]], d[perm[1]], d[perm[2]],
                                         d[perm[3]]};
      EXPECT_EQ(s.calc.form()(std::span<const WeilDivisor>(p)), base) << n;
      ++checked;
    }
  }
  EXPECT_GE(checked, 100u);
}

TEST(Intersection, PrincipalDivisorsAnnihilate) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<long long> m(-3, 3);
  std::size_t checked = 0;
  for (const auto &n : {"example_s3.poly", "cube.poly", "quintic.poly"}) {
    const auto &s = setup(n);
    const auto &f = s.calc.fan();
    for (int t = 0; t < 40; ++t) {
      MPoint u{m(rng), m(rng), m(rng), m(rng)};
      if (u.is_zero()) u = MPoint{1, 0, 0, 0};
      const auto p = WeilDivisor::principal(f, u);
      EXPECT_EQ(s.calc.form()(p, random_divisor(f, rng, 2),
                              random_divisor(f, rng, 2),
                              random_divisor(f, rng, 2)),
                0)
          << n;
      ++checked;
    }
  }
  EXPECT_GE(checked, 100u);
}

TEST(Intersection, ContractionWithAnticanonicalMatchesFullForm) {
  const auto &s = setup("example_s3.poly");
  const auto &f = s.calc.fan();
  const auto k = WeilDivisor::anticanonical(f);
  for (std::size_t i = 0; i < f.rays().size(); ++i) {
    const auto di = WeilDivisor::ray(f, i);
    EXPECT_EQ(s.calc.form().times_anticanonical({i}, 3), s.calc.form()(di, k, k, k));
    EXPECT_EQ(s.calc.form().times_anticanonical({i, i, 0}, 1),
              s.calc.form()(di, di, WeilDivisor::ray(f, 0), k));
  }
}

TEST(C2, QuinticHyperplaneIsFifty) {
  // 10 H^2 . H . 5H with H^4 = 1
  const std::int64_t oracle = quintic_c2_coefficient() * 5;
  EXPECT_EQ(oracle, 50);
  const auto &s = setup("quintic.poly");
  const auto &f = s.calc.fan();
  EXPECT_EQ(s.calc.c2_dot(WeilDivisor::ray(f, ray(f, {1, 0, 0, 0}))), oracle);
}

TEST(C2, ProductOfLinesIsTwentyFour) {
  const std::int64_t oracle = p1_fourth_c2_dot_h1();
  EXPECT_EQ(oracle, 24);
  const auto &s = setup("cube.poly");
  const auto &f = s.calc.fan();
  EXPECT_EQ(s.calc.c2_dot(WeilDivisor::ray(f, ray(f, {1, 0, 0, 0}))), oracle);
}

TEST(C2, ZeroDivisorIsZero) {
  for (const auto &n : reflexive_4d()) {
    const auto &s = setup(n);
    EXPECT_EQ(s.calc.c2_dot(WeilDivisor::zero(s.calc.fan())), 0);
  }
}

TEST(C2, PerRayValuesMatchDirectEvaluation) {
  for (const auto &n : {"example_s3.poly", "cube.poly", "quintic.poly"}) {
    const auto &s = setup(n);
    const auto &f = s.calc.fan();
    for (std::size_t i = 0; i < f.rays().size(); ++i) {
      const auto d = WeilDivisor::ray(f, i);
      EXPECT_EQ(s.calc.c2_dot(d), c2_direct(s.calc.form(), d)) << n;
      EXPECT_EQ(s.calc.degree(d),
                s.calc.form()(d, WeilDivisor::anticanonical(f),
                              WeilDivisor::anticanonical(f),
                              WeilDivisor::anticanonical(f)));
    }
  }
}

TEST(C2, LinearOnRandomCombinations) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> num(-7, 7), den(1, 5);
  for (const auto &n : {"example_s3.poly", "cube.poly"}) {
    const auto &s = setup(n);
    const auto &f = s.calc.fan();
    for (int t = 0; t < 15; ++t) {
      const auto l1 = random_divisor(f, rng, 1), l2 = random_divisor(f, rng, 1);
      const Rational a(num(rng), den(rng)), b(num(rng), den(rng));
      const auto combo = a * l1 + b * l2;
      EXPECT_EQ(c2_direct(s.calc.form(), combo),
                a * c2_direct(s.calc.form(), l1) +
                    b * c2_direct(s.calc.form(), l2))
          << n;
      EXPECT_EQ(s.calc.c2_dot(combo), c2_direct(s.calc.form(), combo)) << n;
    }
  }
}

TEST(C2, PositiveOnCorpus) {
  for (const auto &n : reflexive_4d()) {
    const auto r = setup(n).calc.report();
    EXPECT_GT(r.c2_anticanonical, 0) << n;
    EXPECT_TRUE(r.positive()) << n;
  }
}

TEST(Curves, CubeAllSmooth) {
  const auto census = setup("cube.poly").calc.curve_census();
  EXPECT_EQ(census.curves.size(), 24u);
  for (const auto &c : census.curves) {
    EXPECT_EQ(c.cls, CurveClass::SmoothCurve);
    EXPECT_EQ(c.type_a, PointType::Vertex);
    EXPECT_EQ(c.type_b, PointType::Vertex);
  }
}

TEST(Curves, FacetInteriorEndpointsAreEmpty) {
  const auto census = setup("cross.poly").calc.curve_census();
  std::size_t with_facet_point = 0;
  for (const auto &c : census.curves)
    if (c.type_a == PointType::Interior3Face ||
        c.type_b == PointType::Interior3Face) {
      ++with_facet_point;
      EXPECT_EQ(c.cls, CurveClass::Empty);
    }
  EXPECT_GT(with_facet_point, 0u);
}

TEST(Curves, ExampleVertexEndpointsOnly) {
  const auto census = setup("example_s3.poly").calc.curve_census();
  ASSERT_FALSE(census.curves.empty());
  for (const auto &c : census.curves) {
    EXPECT_EQ(c.type_a, PointType::Vertex);
    EXPECT_EQ(c.type_b, PointType::Vertex);
    EXPECT_NE(c.cls, CurveClass::Empty);
  }
  for (const auto &c : census.coverage) EXPECT_TRUE(c.covered);
}
