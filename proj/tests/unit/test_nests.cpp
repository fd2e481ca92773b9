#include <gtest/gtest.h>

#include <random>

#include "pftest/generators.hpp"
#include "patternforge/errors.hpp"
#include "patternforge/families.hpp"
#include "patternforge/nests.hpp"

using namespace patternforge;

namespace {

RationalMatrix reflect(const RationalMatrix& a) {
  int n = a.order();
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = n - 1 - i;
  return a.permuted(perm);
}

}  // namespace

TEST(Nests, CanonicalPathMatrixExamples) {
  EXPECT_EQ(canonical_path_matrix(3, 1), RationalMatrix::from_rows({{-1, -1, 0}, {1, 0, -1}, {0, 1, 0}}));
  EXPECT_EQ(canonical_path_matrix(2, 1), RationalMatrix::from_rows({{-1, -1}, {1, 0}}));
  RationalMatrix p42 = canonical_path_matrix(4, 2);
  EXPECT_EQ(ZeroPattern::of(p42), path_pattern(4, 2));
  EXPECT_EQ(p42(1, 1), Rational(-1));
  EXPECT_THROW(canonical_path_matrix(3, 4), std::invalid_argument);
}

TEST(Nests, ExamplesFromLemmas) {
  RationalMatrix p43 = canonical_path_matrix(4, 3);
  EXPECT_TRUE(find_nest(p43).has_value());
  EXPECT_TRUE(is_properly_signed_nest(p43, NestOrdering{{3, 2, 1, 4}}));
  EXPECT_FALSE(find_nest(canonical_path_matrix(3, 2)).has_value());
  RationalMatrix neg = -RationalMatrix::identity(5);
  auto ord = find_nest(neg);
  ASSERT_TRUE(ord.has_value());
  EXPECT_EQ(ord->sequence, (std::vector<int>{1, 2, 3, 4, 5}));
}

TEST(Nests, RealizationsOfP32AreSingularProperty) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    RationalMatrix b = pftest::random_realization(rng, path_pattern(3, 2));
    EXPECT_EQ(determinant(b), 0);
    EXPECT_FALSE(find_nest(b).has_value());
  }
}

TEST(Nests, ParityLawUpToSix) {
  for (int n = 1; n <= 6; ++n)
    for (int alpha = 1; alpha <= n; ++alpha) {
      bool expected = n % 2 == 0 || alpha % 2 == 1;
      auto ord = find_nest(canonical_path_matrix(n, alpha));
      EXPECT_EQ(ord.has_value(), expected) << n << "," << alpha;
      if (ord) EXPECT_TRUE(is_properly_signed_nest(canonical_path_matrix(n, alpha), *ord));
    }
}

TEST(Nests, DescendingPrefixOrderingForOddAlpha) {
  for (int n = 1; n <= 8; ++n)
    for (int alpha = 1; alpha <= n; alpha += 2)
      EXPECT_TRUE(is_properly_signed_nest(canonical_path_matrix(n, alpha), descending_prefix_ordering(n, alpha)))
          << n << "," << alpha;
  EXPECT_EQ(descending_prefix_ordering(5, 3).sequence, (std::vector<int>{3, 2, 1, 4, 5}));
}

TEST(Nests, ReflectionRelatesEvenAlphaToTranspose) {
  // R P_{n,alpha'} R is the transpose of P_{n,alpha} for alpha' = n - alpha + 1.
  for (int n = 2; n <= 8; ++n)
    for (int alpha = 1; alpha <= n; ++alpha)
      EXPECT_EQ(reflect(canonical_path_matrix(n, n - alpha + 1)), canonical_path_matrix(n, alpha).transpose());
}

TEST(Nests, SignsInvariantUnderPositiveDiagonalCongruenceProperty) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    int n = pftest::uniform_int(rng, 1, 6);
    RationalMatrix b = pftest::random_matrix(rng, n, 70);
    auto d = pftest::random_positive_diagonal(rng, n);
    RationalMatrix dbd = b;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dbd(i, j) *= d[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(j)];
    std::vector<int> seq(static_cast<std::size_t>(n));
    auto perm = pftest::random_permutation(rng, n);
    for (int i = 0; i < n; ++i) seq[static_cast<std::size_t>(i)] = perm[static_cast<std::size_t>(i)] + 1;
    EXPECT_EQ(nest_signs(b, NestOrdering{seq}), nest_signs(dbd, NestOrdering{seq}));
  }
}

TEST(Nests, DeterminantRecursionsUpToTen) {
  for (int n = 4; n <= 10; n += 2)
    EXPECT_EQ(determinant(canonical_path_matrix(n, n - 1)), determinant(canonical_path_matrix(n - 2, n - 3))) << n;
  for (int n = 4; n <= 10; ++n)
    for (int alpha = 2; alpha < n - 1; ++alpha)
      EXPECT_EQ(determinant(canonical_path_matrix(n, alpha)), determinant(canonical_path_matrix(n - 2, alpha)))
          << n << "," << alpha;
}

TEST(Nests, ExhaustiveSearchBudget) {
  EXPECT_THROW(find_nest(canonical_path_matrix(9, 1)), BudgetError);
  auto greedy = find_nest_greedy(canonical_path_matrix(9, 1));
  if (greedy) EXPECT_TRUE(is_properly_signed_nest(canonical_path_matrix(9, 1), *greedy));
}

TEST(Nests, NestImpliesInertiaCheck) {
  for (auto [n, alpha] : {std::pair{4, 1}, std::pair{5, 3}}) {
    RationalMatrix b = canonical_path_matrix(n, alpha);
    auto ord = find_nest(b);
    ASSERT_TRUE(ord.has_value());
    NestReport r = nest_implies_inertia_check(b, *ord);
    EXPECT_TRUE(r.verdict) << n << "," << alpha;
    ASSERT_TRUE(r.stable.has_value());
    ASSERT_TRUE(r.unstable.has_value());
    EXPECT_EQ(r.stable->refined_inertia, (RefinedInertia{0, n, 0, 0}));
    EXPECT_EQ(r.unstable->refined_inertia, (RefinedInertia{n, 0, 0, 0}));
  }
  EXPECT_THROW(nest_implies_inertia_check(canonical_path_matrix(3, 2), NestOrdering{{1, 2, 3}}),
               std::invalid_argument);
}

TEST(Nests, ScalingWitnessIsStable) {
  RationalMatrix b = canonical_path_matrix(4, 1);
  auto ord = find_nest(b);
  ASSERT_TRUE(ord.has_value());
  auto db = nest_scaling_witness(b, *ord);
  ASSERT_TRUE(db.has_value());
  EXPECT_EQ(exact_refined_inertia(char_poly(*db)), (RefinedInertia{0, 4, 0, 0}));
}

TEST(Nests, PatternAllowsNest) {
  EXPECT_TRUE(pattern_allows_nest(path_pattern(4, 2)).ordering.has_value());
  auto none = pattern_allows_nest(path_pattern(3, 2), 50);
  EXPECT_FALSE(none.ordering.has_value());
  EXPECT_EQ(none.samples_tried, 50);
}
