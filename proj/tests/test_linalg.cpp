#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "polyq/linalg.hpp"

using namespace polyq;

namespace {

void expect_canonical(const Rational& x) {
  EXPECT_GT(x.get_den(), 0);
  Integer g;
  mpz_gcd(g.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  EXPECT_EQ(g, 1) << x;
}

}  // namespace

TEST(Rational, ParseAcceptsSignedFractions) {
  EXPECT_EQ(parse_rational("-3/7"), make_rational(-3, 7));
  EXPECT_EQ(parse_rational("5"), Rational(5));
  EXPECT_EQ(parse_rational("+4/6"), make_rational(2, 3));
  EXPECT_EQ(parse_rational("0/5").get_den(), 1);
}

TEST(Rational, ParseRejectsFloatsAndGarbage) {
  for (const char* bad : {"1.5", "1e3", "", "-", "3/", "/3", "3/0", "3/-4", "0x10", "1/2/3", " 1"})
    EXPECT_THROW(parse_rational(bad), ParseError) << bad;
}

TEST(Rational, EveryConstructionPathIsReduced) {
  expect_canonical(make_rational(6, -4));
  expect_canonical(parse_rational("-12/18"));
  expect_canonical(make_rational(0, -7));
  Rational sum = make_rational(1, 6) + make_rational(1, 3);
  expect_canonical(sum);
  EXPECT_EQ(sum, make_rational(1, 2));
}

TEST(EncodingLength, ScalarVectorMatrixFormulas) {
  EXPECT_EQ(encoding_length(make_rational(1, 2)), 4);
  EXPECT_EQ(encoding_length(Rational(0)), 2);
  RatVector v = zeros(2);
  EXPECT_EQ(encoding_length(std::span<const Rational>(v)), 6);
  // <M> = mn + sum: 2x1 matrix of ones -> 2 + 2*3
  EXPECT_EQ(encoding_length(RatMatrix::from_ints({{1}, {1}})), 8);
  EXPECT_EQ(encoding_length(make_rational(-7, 3)), 1 + 3 + 2);
  EXPECT_EQ(encoding_length_max(RatMatrix::from_ints({{0, 5}, {1, 2}})), encoding_length(Rational(5)));
}

TEST(Determinant, SmallCases) {
  EXPECT_EQ(determinant(RatMatrix(0, 0)), 1);
  EXPECT_EQ(determinant(RatMatrix::identity(3)), 1);
  EXPECT_EQ(determinant(RatMatrix::from_ints({{1, 2}, {3, 4}})), -2);
  EXPECT_EQ(determinant(RatMatrix::from_ints({{0, 1}, {1, 0}})), -1);
  EXPECT_THROW(determinant(RatMatrix(2, 3)), DimensionError);
}

TEST(Determinant, AgreesWithLeibnizAndIsMultiplicative) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    Index n = 1 + trial % 4;
    RatMatrix a = oracle::random_matrix(rng, n, n, -4, 4, 3);
    RatMatrix b = oracle::random_matrix(rng, n, n, -4, 4, 3);
    Rational da = determinant(a);
    EXPECT_EQ(da, oracle::leibniz_det(a));
    EXPECT_EQ(determinant(a * b), da * determinant(b));
    if (n >= 2) {
      RatMatrix s = a;
      s.swap_rows(0, 1);
      EXPECT_EQ(determinant(s), -da);
    }
  }
}

TEST(Cramer, Examples) {
  EXPECT_EQ(cramer_solve(RatMatrix::identity(2), int_vector({5, -7})), int_vector({5, -7}));
  EXPECT_EQ(cramer_solve(RatMatrix::from_ints({{2, 0}, {0, 3}}), int_vector({1, 1})),
            (RatVector{make_rational(1, 2), make_rational(1, 3)}));
  RatMatrix a = RatMatrix::from_ints({{1, 1}, {1, -1}});
  RatVector x = cramer_solve(a, int_vector({1, 0}));
  EXPECT_EQ(a * x, int_vector({1, 0}));
  EXPECT_EQ(x, (RatVector{make_rational(1, 2), make_rational(1, 2)}));
}

TEST(Cramer, Errors) {
  EXPECT_THROW(cramer_solve(RatMatrix::from_ints({{1, 2}, {2, 4}}), int_vector({1, 1})), SingularMatrixError);
  EXPECT_THROW(cramer_solve(RatMatrix::identity(2), int_vector({1})), DimensionError);
  EXPECT_THROW(cramer_solve(RatMatrix(2, 3), int_vector({1, 1})), DimensionError);
}

TEST(Cramer, RandomSystemsSolvedExactly) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    Index n = 1 + trial % 4;
    RatMatrix a = oracle::random_matrix(rng, n, n, -5, 5, 4);
    RatVector b = oracle::random_matrix(rng, n, 1, -5, 5, 4).column(0);
    if (determinant(a) == 0) continue;
    RatVector x = cramer_solve(a, b);
    EXPECT_EQ(a * x, b);
    EXPECT_EQ(solve_regular(a, b), x);
  }
}

TEST(Kernel, Examples) {
  EXPECT_EQ(kernel_basis(RatMatrix::from_ints({{1, 1}})), std::vector<RatVector>{int_vector({1, -1})});
  EXPECT_TRUE(kernel_basis(RatMatrix::identity(2)).empty());
  RatMatrix m = RatMatrix::from_ints({{1, 2, 3}});
  auto basis = kernel_basis(m);
  ASSERT_EQ(basis.size(), 2u);
  for (const RatVector& v : basis) EXPECT_TRUE(is_zero(m * v));
  EXPECT_EQ(rank(RatMatrix::from_rows(basis)), 2u);
}

TEST(Kernel, RandomBasesAreCanonicalAndComplete) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Index m = 1 + trial % 4, n = 1 + (trial / 4) % 5;
    RatMatrix a = oracle::random_matrix(rng, m, n, -2, 2, 2);
    auto basis = kernel_basis(a);
    EXPECT_EQ(basis.size(), n - rank(a));
    for (const RatVector& v : basis) {
      EXPECT_TRUE(is_zero(a * v));
      EXPECT_TRUE(is_integral(v));
      EXPECT_EQ(primitive_scale(v), 1);
      auto first = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
      ASSERT_NE(first, v.end());
      EXPECT_GT(*first, 0);
    }
    if (!basis.empty()) {
      EXPECT_EQ(rank(RatMatrix::from_rows(basis)), basis.size());
    }
  }
}

TEST(Rank, AndAffineSolve) {
  EXPECT_EQ(rank(RatMatrix::identity(3)), 3u);
  EXPECT_EQ(rank(RatMatrix(2, 2)), 0u);
  auto sol = solve_affine(RatMatrix::from_ints({{1, 1}}), int_vector({2}));
  ASSERT_TRUE(sol);
  EXPECT_EQ(sol->point, int_vector({2, 0}));
  EXPECT_EQ(sol->kernel, std::vector<RatVector>{int_vector({1, -1})});
  EXPECT_FALSE(solve_affine(RatMatrix::from_ints({{1}, {1}}), int_vector({0, 1})));
}

TEST(Inverse, RoundTrip) {
  RatMatrix a = RatMatrix::from_ints({{2, 1, 0}, {0, 1, 3}, {1, 0, 1}});
  EXPECT_EQ(a * inverse(a), RatMatrix::identity(3));
  EXPECT_THROW(inverse(RatMatrix::from_ints({{1, 2}, {2, 4}})), SingularMatrixError);
}

TEST(DeltaSet, Examples) {
  EXPECT_EQ(delta_set(RatMatrix::from_ints({{1}}), 1), (std::set<Rational>{-1, 1}));
  std::set<Rational> two{1, -1, 2, -2, make_rational(1, 2), make_rational(-1, 2)};
  EXPECT_EQ(delta_set(RatMatrix::from_ints({{2}}), 1), two);
  auto d = delta_set(RatMatrix::from_ints({{1, 2}, {3, 4}}), 2);
  EXPECT_TRUE(d.count(-2));
  EXPECT_TRUE(d.count(make_rational(1, 2)));
  EXPECT_THROW(delta_set(RatMatrix::from_ints({{1, 2}}), 2), DimensionError);
  Limits tiny;
  tiny.max_subsets = 3;
  EXPECT_THROW(delta_set(RatMatrix::from_ints({{1, 2}, {3, 4}}), 2, tiny), ResourceError);
}

TEST(DeltaSet, MatchesLeibnizEnumeration) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    RatMatrix a = oracle::random_matrix(rng, 3, 3, -3, 3);
    std::set<Rational> dets{1, -1};
    for (Index k = 1; k <= 3; ++k)
      for_each_subset(3, k, [&](std::span<const Index> rs) {
        for_each_subset(3, k, [&](std::span<const Index> cs) {
          Rational d = oracle::leibniz_det(a.submatrix(rs, cs));
          dets.insert(d);
          dets.insert(-d);
          return true;
        });
        return true;
      });
    std::set<Rational> expected;
    for (const Rational& p : dets)
      for (const Rational& q : dets)
        if (q != 0) expected.insert(p / q);
    EXPECT_EQ(delta_set(a, 3), expected);
  }
}

// Desk-scale check of the encoding-length estimate with the constant fixed at 4.
TEST(DeltaSet, EncodingLengthBoundWithConstantFour) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    Index m = 1 + trial % 4, n = 1 + (trial / 4) % 4;
    RatMatrix a = oracle::random_matrix(rng, m, n, -3, 3, 3);
    long bound = 4 * static_cast<long>(n * n) * encoding_length_max(a);
    for (const Rational& alpha : delta_set(a, std::min(m, n))) EXPECT_LE(encoding_length(alpha), bound);
  }
}

TEST(Subsets, LexicographicEnumeration) {
  std::vector<std::vector<Index>> seen;
  for_each_subset(4, 2, [&](std::span<const Index> s) {
    seen.emplace_back(s.begin(), s.end());
    return true;
  });
  std::vector<std::vector<Index>> expected{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  EXPECT_EQ(seen, expected);
  int calls = 0;
  for_each_subset(3, 0, [&](std::span<const Index> s) {
    EXPECT_TRUE(s.empty());
    ++calls;
    return true;
  });
  EXPECT_EQ(calls, 1);
}

TEST(Primitive, ScalingPreservesDirection) {
  RatVector v{make_rational(-1, 2), make_rational(3, 4), 0};
  EXPECT_EQ(primitive(v), int_vector({-2, 3, 0}));
  EXPECT_EQ(canonical_direction(v), int_vector({2, -3, 0}));
  EXPECT_EQ(primitive(zeros(2)), zeros(2));
}
