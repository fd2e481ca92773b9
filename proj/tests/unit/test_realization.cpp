#include <gtest/gtest.h>

#include <random>

#include "pftest/generators.hpp"
#include "patternforge/families.hpp"
#include "patternforge/obstructions.hpp"
#include "patternforge/realization.hpp"

using namespace patternforge;

TEST(Realization, TargetPolynomialHasRequestedInertiaProperty) {
  for (int n = 1; n <= 6; ++n)
    for (const auto& ri : all_refined_inertias(n))
      for (std::uint64_t seed : {0ull, 1ull, 7ull, 123ull}) {
        TargetSpectrum t = target_poly_for(ri, seed);
        EXPECT_EQ(t.refined_inertia, ri);
        CharPoly c = t.charpoly();
        EXPECT_EQ(c.order(), n);
        EXPECT_EQ(exact_refined_inertia(c), ri) << ri.to_string() << " seed " << seed;
      }
  EXPECT_THROW(target_poly_for({0, 0, 0, 3}), std::invalid_argument);
}

TEST(Realization, AnConstructionRealizesEveryInertia) {
  for (int n = 3; n <= 6; ++n) {
    ZeroPattern a = an_pattern(n);
    for (const auto& in : all_inertias(n)) {
      RationalMatrix w = an_family_witness(n, in);
      EXPECT_TRUE(a.admits(w));
      EXPECT_EQ(exact_refined_inertia(char_poly(w)).inertia(), in) << n << " " << in.to_string();
    }
  }
}

TEST(Realization, RealizeCharpolyIsExact) {
  ZeroPattern c4 = companion_pattern(4);
  CharPoly target = target_poly_for({1, 1, 0, 2}, 3).charpoly();
  auto w = realize_charpoly(c4, target);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(w->exact);
  EXPECT_EQ(char_poly(w->matrix), target);
  EXPECT_TRUE(verify_witness(*w));
}

TEST(Realization, PathPatternAllRefinedInertias) {
  for (int alpha : {1, 2}) {
    ZeroPattern p = path_pattern(4, alpha);
    for (const auto& ri : all_refined_inertias(4)) {
      auto w = realize_refined_inertia(p, ri);
      ASSERT_TRUE(w.has_value()) << alpha << " " << ri.to_string();
      EXPECT_TRUE(verify_witness(*w));
      EXPECT_EQ(w->refined_inertia, ri);
      EXPECT_TRUE(p.admits(w->matrix));
    }
  }
}

TEST(Realization, TamperedWitnessFailsVerification) {
  auto w = realize_refined_inertia(companion_pattern(3), {0, 3, 0, 0});
  ASSERT_TRUE(w.has_value());
  RealizationWitness bad = *w;
  bad.matrix(2, 2) = 5;  // off the support of C3
  EXPECT_FALSE(verify_witness(bad));
  RealizationWitness wrong = *w;
  wrong.matrix(0, 0) += 1;
  EXPECT_FALSE(verify_witness(wrong));
}

TEST(Realization, SuperpatternWitnessReplayProperty) {
  // A witness for a pattern is a witness for every superpattern, and a
  // relabeled witness serves the relabeled pattern.
  std::mt19937_64 rng(10);
  std::vector<ZeroPattern> bases = {an_pattern(3), companion_pattern(3), path_pattern(4, 1), t_pattern(4)};
  for (const auto& base : bases) {
    int n = base.order();
    for (const auto& ri : all_refined_inertias(n)) {
      if (any_refutes(run_all_obstructions(base), ri)) continue;
      auto w = realize_refined_inertia(base, ri);
      if (!w) continue;
      ZeroPattern sup = base;
      for (int extra = 0; extra < 2; ++extra)
        sup.set(pftest::uniform_int(rng, 1, n), pftest::uniform_int(rng, 1, n));
      RealizationWitness replay = *w;
      replay.pattern = sup;
      EXPECT_TRUE(verify_witness(replay));
      Symmetry s{pftest::random_permutation(rng, n), pftest::uniform_int(rng, 0, 1) == 1};
      RealizationWitness moved = *w;
      moved.pattern = s.apply(base);
      moved.matrix = s.apply(w->matrix);
      EXPECT_TRUE(verify_witness(moved));
      EXPECT_EQ(exact_refined_inertia(char_poly(moved.matrix)), ri);
    }
  }
}

TEST(Realization, SurveyReversalSymmetryProperty) {
  std::vector<ZeroPattern> patterns = {an_pattern(3), companion_pattern(3), path_pattern(3, 1), an_pattern(4),
                                       path_pattern(4, 2)};
  for (const auto& p : patterns) {
    SurveyResult s = survey(p);
    for (const auto& [ri, w] : s.witnesses) {
      EXPECT_EQ(s.realized(ri), s.realized(ri.reversal())) << format_pattern(p) << ri.to_string();
      if (w) {
        EXPECT_TRUE(verify_witness(*w));
        EXPECT_EQ(exact_refined_inertia(char_poly(w->matrix)), ri);
      }
    }
    for (const auto& ri : s.refuted) EXPECT_TRUE(any_refutes(run_all_obstructions(p), ri));
  }
}

TEST(Realization, SurveyOfAnRealizesAllInertias) {
  for (int n = 3; n <= 5; ++n) {
    SurveyResult s = survey(an_pattern(n));
    EXPECT_TRUE(s.all_inertias_realized(n)) << n;
    EXPECT_FALSE(s.all_refined_realized(n)) << n;
  }
}

TEST(Realization, FindEmbedding) {
  ZeroPattern p = path_pattern(4, 1);
  p.set(4, 4);
  EXPECT_TRUE(find_embedding(path_pattern(4, 1), p).has_value());
  EXPECT_FALSE(find_embedding(companion_pattern(4), path_pattern(4, 1)).has_value());
}
