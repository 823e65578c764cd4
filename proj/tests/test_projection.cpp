#include <gtest/gtest.h>

#include <random>

#include "checks.hpp"
#include "corpus.hpp"
#include "polyq/projection.hpp"

using namespace polyq;

namespace {

HRep square() { return corpus::cube(2).h; }

VRep drop_coordinate(const VRep& v, Index j) {
  VRep out(v.dim - 1);
  auto cut = [j](RatVector x) {
    x.erase(x.begin() + static_cast<std::ptrdiff_t>(j));
    return x;
  };
  for (const RatVector& p : v.points) out.points.push_back(cut(p));
  for (const RatVector& r : v.rays)
    if (RatVector c = cut(r); !is_zero(c)) out.rays.push_back(c);
  return out;
}

}  // namespace

TEST(EliminateLast, SquareToInterval) {
  EliminationResult r = eliminate_last(square());
  EXPECT_EQ(r.result.dim, 1u);
  EXPECT_TRUE(check::same_set(r.result, HRep(1, {{int_vector({1}), 1}, {int_vector({-1}), 0}})));
  EXPECT_EQ(r.result.inequalities.size(), 2u);
  EXPECT_TRUE(replay_trace(square(), r));
}

TEST(EliminateLast, PairCombination) {
  HRep h(2, {{int_vector({1, -1}), 0}, {int_vector({0, 1}), 3}});
  EliminationResult r = eliminate_last(h);
  ASSERT_EQ(r.result.inequalities.size(), 1u);
  EXPECT_EQ(r.result.inequalities[0], (Constraint{int_vector({1}), 3}));
  ASSERT_EQ(r.trace.inequalities.size(), 1u);
  EXPECT_EQ(r.trace.inequalities[0].parents, (std::vector<Index>{0, 1}));
  EXPECT_EQ(r.trace.inequalities[0].multipliers, int_vector({1, 1}));
}

TEST(EliminateLast, EverythingProjectsAway) {
  HRep h(1, {{int_vector({1}), 1}, {int_vector({-1}), 0}});
  EliminationResult r = eliminate_last(h);
  EXPECT_EQ(r.result.dim, 0u);
  EXPECT_TRUE(r.result.inequalities.empty());
  EXPECT_TRUE(r.result.equations.empty());
}

TEST(EliminateLast, EquationIsSubstituted) {
  // x1 + x2 = 2, x2 >= 0, x1 >= 0 projects to 0 <= x1 <= 2
  HRep h(2, {{int_vector({-1, 0}), 0}, {int_vector({0, -1}), 0}}, {{int_vector({1, 1}), 2}});
  EliminationResult r = eliminate_last(h);
  EXPECT_TRUE(check::same_set(r.result, HRep(1, {{int_vector({1}), 2}, {int_vector({-1}), 0}})));
  EXPECT_TRUE(replay_trace(h, r));
}

TEST(EliminateLast, InfeasibleInputGivesTracedContradiction) {
  HRep h(2, {{int_vector({0, 1}), 0}, {int_vector({0, -1}), -1}});
  EliminationResult r = eliminate_last(h);
  EXPECT_EQ(r.result, HRep::infeasible(1));
  EXPECT_TRUE(replay_trace(h, r));
}

TEST(EliminateLast, RandomSoundAndComplete) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = 2 + trial % 2;
    HRep h(n);
    for (Index i = 0; i < 5; ++i) {
      RatVector a(n);
      for (Rational& x : a) x = entry(rng);
      h.inequalities.push_back({a, Rational(entry(rng) + 3)});
    }
    EliminationResult r = eliminate_last(h);
    ASSERT_TRUE(replay_trace(h, r));
    // completeness: each lattice point of the projection in a box lifts
    oracle::for_each_box_point(n - 1, -2, 2, [&](const RatVector& x) {
      if (!r.result.satisfied_by(x)) return;
      HRep lift(1);
      for (const Constraint& c : h.inequalities) {
        Rational rest = 0;
        for (Index j = 0; j + 1 < n; ++j) rest += c.a[j] * x[j];
        lift.inequalities.push_back({RatVector{c.a[n - 1]}, Rational(c.b - rest)});
      }
      EXPECT_TRUE(feasible(lift).feasible());
    });
  }
}

TEST(EliminateCoords, CubeAndSimplex) {
  HRep cube3 = corpus::cube(3).h;
  EXPECT_TRUE(check::same_set(eliminate_coords(cube3, {2}), corpus::cube(2).h));
  EXPECT_TRUE(check::same_set(eliminate_coords(cube3, {1, 2}), corpus::cube(1).h));
  HRep simplex3 = corpus::simplex(3).h;
  HRep projected = eliminate_coords(simplex3, {2});
  EXPECT_EQ(projected.inequalities.size(), 3u);
  EXPECT_TRUE(check::same_set(projected, corpus::simplex(2).h));
  EXPECT_THROW(eliminate_coords(cube3, {3}), DimensionError);
}

TEST(EliminateCoords, RowCapReportsStep) {
  Limits tiny;
  tiny.max_rows = 3;
  try {
    eliminate_coords(corpus::cross_polytope(3).h, {2}, tiny);
    FAIL() << "expected a resource error";
  } catch (const ResourceError& e) {
    EXPECT_NE(std::string(e.what()).find("step 1"), std::string::npos);
  }
}

TEST(EliminateCoords, AgreesWithDroppedCoordinatesOnCorpus) {
  for (const corpus::Instance& inst : corpus::instances()) {
    if (!inst.bounded || inst.v.empty()) continue;
    for (Index j = 0; j < inst.h.dim; ++j) {
      HRep projected = eliminate_coords(inst.h, {j});
      EXPECT_TRUE(check::same_polytope(projected, drop_coordinate(inst.v, j))) << inst.name << " coord " << j;
    }
  }
}

TEST(PruneRedundant, Examples) {
  HRep a(1, {{int_vector({1}), 1}, {int_vector({1}), 2}});
  EXPECT_EQ(prune_redundant(a), HRep(1, {{int_vector({1}), 1}}));
  HRep b(1, {{int_vector({1}), 1}, {int_vector({1}), 1}});
  EXPECT_EQ(prune_redundant(b).inequalities.size(), 1u);
  HRep c(2, {{int_vector({1, 0}), 1}, {int_vector({0, 1}), 1}, {int_vector({1, 1}), 3}});
  EXPECT_EQ(prune_redundant(c), HRep(2, {{int_vector({1, 0}), 1}, {int_vector({0, 1}), 1}}));
  HRep d(1, {{int_vector({0}), 4}, {int_vector({2}), 2}, {int_vector({1}), 1}});
  EXPECT_EQ(prune_redundant(d), HRep(1, {{int_vector({2}), 2}}));
  EXPECT_EQ(prune_redundant(corpus::instances().back().h), HRep::infeasible(2));
}

TEST(PruneRedundant, KeepsSetAndIsStable) {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    HRep h(2);
    for (Index i = 0; i < 6; ++i)
      h.inequalities.push_back({RatVector{entry(rng), entry(rng)}, Rational(entry(rng) + 4)});
    HRep p = prune_redundant(h);
    EXPECT_TRUE(check::same_set(h, p));
    EXPECT_EQ(prune_redundant(p), p);
  }
}

TEST(ProjectionCone, SingleColumnExamples) {
  auto g = projection_cone_generators(RatMatrix::from_ints({{1}, {-1}, {0}}), 0);
  EXPECT_EQ(g, (std::vector<RatVector>{int_vector({0, 0, 1}), int_vector({1, 1, 0})}));
  auto zero = projection_cone_generators(RatMatrix(3, 1), 0);
  EXPECT_EQ(zero.size(), 3u);
  EXPECT_EQ(projection_cone_generators(RatMatrix::from_ints({{2}, {-1}}), 0),
            std::vector<RatVector>{int_vector({1, 2})});
}

TEST(ProjectionCone, GeneratorsLieInConeAndSpanIt) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    RatMatrix d = oracle::random_matrix(rng, 4, 3, -2, 2);
    const Index kept = 1;
    auto gens = projection_cone_generators(d, kept);
    for (const RatVector& g : gens) {
      EXPECT_TRUE(nonnegative(g));
      for (Index j = kept; j < 3; ++j) EXPECT_EQ(dot(g, d.column(j)), 0);
    }
    // lattice points of the cone in a box are conic combinations of the generators
    oracle::for_each_box_point(4, 0, 2, [&](const RatVector& l) {
      for (Index j = kept; j < 3; ++j)
        if (dot(l, d.column(j)) != 0) return;
      EXPECT_TRUE(check::conic_member(gens, l));
    });
  }
}

TEST(ProjectGeneral, IdentityAndCoordinateMaps) {
  HRep sq = square();
  ProjectionResult id = project_general(sq, RatMatrix::identity(2));
  EXPECT_TRUE(check::same_set(id.image, sq));
  ProjectionResult first = project_general(sq, RatMatrix::from_ints({{1, 0}}));
  EXPECT_TRUE(check::same_set(first.image, corpus::cube(1).h));
}

TEST(ProjectGeneral, SumOfCoordinates) {
  ProjectionResult r = project_general(square(), RatMatrix::from_ints({{1, 1}}));
  EXPECT_TRUE(check::same_set(r.image, HRep(1, {{int_vector({1}), 2}, {int_vector({-1}), 0}})));
}

TEST(ProjectGeneral, MultipliersSatisfyTheProjectionIdentity) {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 25; ++trial) {
    HRep q = corpus::cube(3).h;
    RatMatrix t = oracle::random_matrix(rng, 1 + trial % 3, 3, -2, 2);
    ProjectionResult r = project_general(q, t);
    RatMatrix d = q.matrix();
    for (Index i = 0; i < r.image.inequalities.size(); ++i) {
      const RatVector& l = r.ineq_multipliers[i];
      EXPECT_TRUE(nonnegative(l));
      EXPECT_EQ(left_multiply(l, d), left_multiply(r.image.inequalities[i].a, t));
      Rational b = 0;
      for (Index k = 0; k < l.size(); ++k) b += l[k] * q.inequalities[k].b;
      EXPECT_EQ(b, r.image.inequalities[i].b);
    }
    for (const RatVector& w : r.subspace) EXPECT_TRUE(is_zero(left_multiply(w, t)));
    // the image of every cube vertex satisfies the projected system
    for (const RatVector& p : corpus::cube(3).v.points) EXPECT_TRUE(r.image.satisfied_by(t * p));
    // and every basic point of the image system is the image of a cube point
    for (const RatVector& y : oracle::basic_feasible_points(r.image)) {
      HRep pre = q;
      for (Index i = 0; i < t.rows(); ++i) pre.equations.push_back({t.row_vector(i), y[i]});
      EXPECT_TRUE(feasible(pre).feasible());
    }
  }
}
