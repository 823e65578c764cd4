#include <gtest/gtest.h>

#include <random>

#include "checks.hpp"
#include "corpus.hpp"
#include "polyq/convert.hpp"

using namespace polyq;

TEST(VToH, Simplex) {
  HRep h = v_to_h(corpus::simplex(2).v);
  HRep expected(2, {{int_vector({-1, 0}), 0}, {int_vector({0, -1}), 0}, {int_vector({1, 1}), 1}});
  EXPECT_EQ(h, canonical(expected));
}

TEST(VToH, SinglePointGivesEquationPairs) {
  HRep h = v_to_h(VRep(2, {int_vector({2, 3})}));
  EXPECT_EQ(h.inequalities.size(), 4u);
  EXPECT_TRUE(check::same_set(h, HRep(2, {}, {{int_vector({1, 0}), 2}, {int_vector({0, 1}), 3}})));
}

TEST(VToH, ConeWithApex) {
  HRep h = v_to_h(VRep::cone(2, {int_vector({1, 0}), int_vector({1, 2})}));
  HRep expected(2, {{int_vector({0, -1}), 0}, {int_vector({-2, 1}), 0}});
  EXPECT_EQ(h, canonical(expected));
}

TEST(VToH, EmptyGivesCanonicalInfeasible) { EXPECT_EQ(v_to_h(VRep(3)), HRep::infeasible(3)); }

TEST(HToV, Examples) {
  VRep sq = h_to_v(corpus::cube(2).h);
  EXPECT_EQ(sq, canonical(corpus::cube(2).v));
  VRep ray = h_to_v(HRep(1, {{int_vector({-1}), 0}}));
  EXPECT_EQ(ray, VRep(1, {int_vector({0})}, {int_vector({1})}));
  EXPECT_TRUE(h_to_v(corpus::instances().back().h).empty());
}

TEST(HToV, LinealityRoundTrip) {
  HRep half(2, {{int_vector({1, 1}), 1}});
  VRep v = h_to_v(half);
  ASSERT_EQ(v.points.size(), 1u);
  EXPECT_TRUE(check::same_set(v, corpus::instances()[13].v));
  EXPECT_TRUE(check::same_set(v_to_h(v), half));
}

TEST(Homogenize, RowsAndDehomogenize) {
  HomogenizedCone c = homogenize(HRep(1, {{int_vector({1}), 1}}));
  EXPECT_EQ(c.cone_hrep, HRep(2, {{int_vector({1, -1}), 0}, {int_vector({0, -1}), 0}}));
  VRep v = dehomogenize({int_vector({2, 4, 2}), int_vector({1, 1, 0})}, 2);
  EXPECT_EQ(v.points, std::vector<RatVector>{int_vector({1, 2})});
  EXPECT_EQ(v.rays, std::vector<RatVector>{int_vector({1, 1})});
  EXPECT_THROW(dehomogenize({int_vector({1, -1})}, 1), ContractViolation);
}

TEST(ConeConversions, Examples) {
  EXPECT_EQ(cone_v_to_h({int_vector({1, 0}), int_vector({0, 1})}, 2), RatMatrix::from_ints({{-1, 0}, {0, -1}}));
  EXPECT_EQ(cone_h_to_v(RatMatrix::from_ints({{-1, 0}, {0, -1}})),
            (std::vector<RatVector>{int_vector({0, 1}), int_vector({1, 0})}));
  std::vector<RatVector> x{int_vector({1, 2}), int_vector({2, 1})};
  RatMatrix a = cone_v_to_h(x, 2);
  ASSERT_EQ(a.rows(), 2u);
  for (Index i = 0; i < 2; ++i) {
    int tight = 0;
    for (const RatVector& g : x) {
      EXPECT_LE(dot(a.row(i), g), 0);
      tight += dot(a.row(i), g) == 0;
    }
    EXPECT_EQ(tight, 1);
  }
  EXPECT_EQ(cone_h_to_v(a), x);
}

TEST(ConeConversions, EmptyGeneratorSetIsTheOrigin) {
  RatMatrix a = cone_v_to_h({}, 2);
  EXPECT_EQ(a.rows(), 4u);
  EXPECT_TRUE(cone_h_to_v(a).empty());
}

TEST(ConeConversions, BipolarRoundTrip) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<RatVector> x;
    for (int k = 0; k < 4; ++k) {
      RatVector g = oracle::random_matrix(rng, 1, 3, -2, 2).row_vector(0);
      if (!is_zero(g)) x.push_back(g);
    }
    std::vector<RatVector> back = cone_h_to_v(cone_v_to_h(x, 3));
    for (const RatVector& g : x) EXPECT_TRUE(check::conic_member(back, g));
    for (const RatVector& g : back) EXPECT_TRUE(check::conic_member(x, g));
  }
}

TEST(RoundTrip, CorpusBothDirections) {
  for (const corpus::Instance& inst : corpus::instances()) {
    VRep v = h_to_v(inst.h);
    EXPECT_TRUE(check::same_set(v, inst.v)) << inst.name;
    EXPECT_TRUE(check::same_set(v_to_h(inst.v), inst.h)) << inst.name;
    EXPECT_TRUE(check::same_set(h_to_v(v_to_h(inst.v)), inst.v)) << inst.name;
    EXPECT_TRUE(check::same_set(v_to_h(h_to_v(inst.h)), inst.h)) << inst.name;
  }
}

// For integral inputs, every output coefficient is a quotient of
// subdeterminants of the input matrix.
TEST(CoefficientSize, OutputsLieInDeltaSet) {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 15; ++trial) {
    const Index n = 2 + trial % 2;
    RatMatrix gens = oracle::random_matrix(rng, 3, n, -2, 2);
    std::vector<RatVector> x;
    for (Index i = 0; i < gens.rows(); ++i)
      if (!is_zero(gens.row(i))) x.push_back(gens.row_vector(i));
    if (x.empty()) continue;
    RatMatrix a = cone_v_to_h(x, n);
    RatMatrix input = RatMatrix::from_rows(x, n);
    std::set<Rational> allowed = delta_set(input, std::min(input.rows(), n));
    allowed.insert(0);
    for (Index i = 0; i < a.rows(); ++i) {
      // the rows are defined up to a positive scale; compare the normalized ratios
      auto lead = std::find_if(a.row(i).begin(), a.row(i).end(), [](const Rational& c) { return c != 0; });
      ASSERT_NE(lead, a.row(i).end());
      Rational first = abs(*lead);
      for (const Rational& c : a.row(i)) EXPECT_TRUE(allowed.count(c / first)) << c << " / " << first;
    }
  }
}
