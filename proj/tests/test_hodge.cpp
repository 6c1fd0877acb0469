#include "cytoric/hodge.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace cytoric;
using namespace testing_support;

namespace {

std::map<PointType, std::size_t> type_counts(const std::string &primal) {
  const ReflexivePair<MTag> pair(hull(load(primal)));
  std::map<PointType, std::size_t> out;
  for (const auto &cp : classify_boundary(pair.dual())) ++out[cp.type];
  return out;
}

} // namespace

TEST(Classify, CrossDualIsAllVertices) {
  // fan polytope of the cube is the cross-polytope
  auto c = type_counts("cube.poly");
  EXPECT_EQ(c[PointType::Vertex], 8u);
  EXPECT_EQ(c.size(), 1u);
}

TEST(Classify, CubeDualGridCounts) {
  auto c = type_counts("cross.poly");
  EXPECT_EQ(c[PointType::Interior3Face], 8u);
  EXPECT_EQ(c[PointType::Interior2Face], 24u);
  EXPECT_EQ(c[PointType::Interior1Face], 32u);
  EXPECT_EQ(c[PointType::Vertex], 16u);
}

TEST(Classify, ExampleDualIsEightVertices) {
  auto c = type_counts("example_s3.poly");
  EXPECT_EQ(c[PointType::Vertex], 8u);
  EXPECT_EQ(c.size(), 1u);
}

TEST(Classify, PartitionsBoundary) {
  for (const auto &n : reflexive_4d()) {
    const ReflexivePair<MTag> pair(hull(load(n)));
    const auto census = lattice_points(pair.dual());
    EXPECT_EQ(classify_boundary(pair.dual()).size(), census.boundary_count());
  }
}

TEST(Classify, RejectsWrongDimensionAndNonReflexive) {
  EXPECT_THROW((void)classify_boundary(hull(load("polygons/p01.poly"))),
               DomainError);
  EXPECT_THROW(
      (void)classify_boundary(hull(std::vector<MPoint>{
          {2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 2},
          {-2, -2, -2, -2}})),
      DomainError);
}

TEST(Hodge, ExampleH11) {
  const ReflexivePair<MTag> pair(hull(load("example_s3.poly")));
  const HodgeCalculator<MTag> calc(pair);
  const auto t = calc.h11_terms();
  EXPECT_EQ(t.lattice_points, 9u);
  EXPECT_EQ(t.facet_interiors, 0u);
  EXPECT_EQ(t.two_face_pairing, 0u);
  EXPECT_EQ(calc.h11(), 4);
}

TEST(Hodge, QuinticPair) {
  const ReflexivePair<MTag> pair(hull(load("quintic.poly")));
  EXPECT_EQ(h11(pair), 1);
  EXPECT_EQ(h12(pair), 101);
  EXPECT_EQ(euler(pair), -200);
  const auto t = HodgeCalculator<MTag>(pair).h12_terms();
  EXPECT_EQ(t.lattice_points, 126u);
  EXPECT_EQ(t.facet_interiors, 20u);
}

TEST(Hodge, CubePair) {
  const ReflexivePair<MTag> pair(hull(load("cube.poly")));
  EXPECT_EQ(h11(pair), 4);
  EXPECT_EQ(h12(pair), 68);
  EXPECT_EQ(euler(pair), -128);
}

TEST(Hodge, AgreesWithIndependentOracle) {
  for (const auto &n : reflexive_4d()) {
    const auto pts = load(n);
    const ReflexivePair<MTag> pair(hull(pts));
    EXPECT_EQ(h11(pair), h11_oracle(to_vecs(pair.primal().vertices()), 5))
        << n;
  }
}

TEST(Hodge, ExampleH12FromTheDualSide) {
  // h12 of the Example is h11 with the roles exchanged; the oracle runs on
  // the fan polytope's vertices
  const ReflexivePair<MTag> pair(hull(load("example_s3.poly")));
  std::vector<Vec> dual_vertices;
  for (const auto &v : pair.dual().vertices()) {
    Vec g;
    for (const auto &x : v.coords()) g.push_back(x.convert_to<std::int64_t>());
    dual_vertices.push_back(g);
  }
  EXPECT_EQ(h12(pair), h11_oracle(dual_vertices, 3));
}

TEST(Hodge, MirrorExchange) {
  for (const auto &[a, b] : {std::pair{"cube.poly", "cross.poly"},
                             std::pair{"quintic.poly", "quintic_mirror.poly"}}) {
    const ReflexivePair<MTag> pa(hull(load(a))), pb(hull(load(b)));
    EXPECT_EQ(h11(pa), h12(pb));
    EXPECT_EQ(h12(pa), h11(pb));
  }
}

TEST(Hodge, TermsAreNonNegativeAndEulerIdentity) {
  for (const auto &n : reflexive_4d()) {
    const ReflexivePair<MTag> pair(hull(load(n)));
    const auto r = HodgeCalculator<MTag>(pair).report();
    EXPECT_EQ(r.euler, 2 * (r.h11 - r.h12));
    EXPECT_GE(r.h11_terms.value(), 0);
    EXPECT_GE(r.h12_terms.value(), 0);
  }
}

TEST(Census, Example) {
  const ReflexivePair<MTag> pair(hull(load("example_s3.poly")));
  const auto c = HodgeCalculator<MTag>(pair).divisor_census();
  EXPECT_EQ(c.e_divisors.size(), 8u);
  EXPECT_TRUE(c.f_divisors.empty());
  EXPECT_EQ(c.h11(), 4);
}

TEST(Census, Quintic) {
  const ReflexivePair<MTag> pair(hull(load("quintic.poly")));
  const auto c = HodgeCalculator<MTag>(pair).divisor_census();
  EXPECT_EQ(c.e_divisors.size(), 5u);
  EXPECT_TRUE(c.f_divisors.empty());
  EXPECT_EQ(c.h11(), 1);
}

TEST(Census, CrossPolytope) {
  const ReflexivePair<MTag> pair(hull(load("cross.poly")));
  const auto c = HodgeCalculator<MTag>(pair).divisor_census();
  EXPECT_EQ(c.e_divisors.size(), 48u);
  EXPECT_EQ(c.f_divisors.size(), 24u);
  for (const auto &f : c.f_divisors) EXPECT_EQ(f.components, 1u);
  EXPECT_EQ(c.total_components(), 72u);
  EXPECT_EQ(c.h11(), 68);
}

TEST(Census, AgreesWithFormulaOnCorpus) {
  for (const auto &n : reflexive_4d()) {
    const ReflexivePair<MTag> pair(hull(load(n)));
    const HodgeCalculator<MTag> calc(pair);
    EXPECT_EQ(calc.divisor_census().h11(), calc.h11()) << n;
  }
}
