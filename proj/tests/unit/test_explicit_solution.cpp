#include <gtest/gtest.h>

#include <random>

#include "pftest/generators.hpp"
#include "patternforge/explicit_solution.hpp"
#include "patternforge/families.hpp"
#include "patternforge/realization.hpp"

using namespace patternforge;

namespace {

RationalMatrix round_matrix(const std::vector<std::vector<long double>>& m) {
  // Exact images of the floating entries: coefficients match the target only
  // approximately, so the comparison below is numeric.
  RationalMatrix a(static_cast<int>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) a(static_cast<int>(i), static_cast<int>(j)) = exact_from_long_double(m[i][j]);
  return a;
}

}  // namespace

TEST(ExplicitSolution, FigureYIsSolvedAndVerified) {
  for (const char* name : {"Y-1", "Y-2"}) {
    ZeroPattern y = pattern_from_name(name);
    auto c = triangular_solution(y);
    ASSERT_TRUE(c.has_value()) << name;
    EXPECT_TRUE(verify_solution_certificate(*c));
    ASSERT_FALSE(c->steps.empty());
    for (std::size_t i = 0; i + 1 < c->steps.size(); ++i) EXPECT_EQ(c->steps[i].degree, 1);
    EXPECT_EQ(c->steps.back().degree % 2, 1);
    EXPECT_EQ(static_cast<int>(c->unit_entries.size()), y.order() - 1);
  }
}

TEST(ExplicitSolution, CompanionIsSolved) {
  auto c = triangular_solution(companion_pattern(4));
  ASSERT_TRUE(c.has_value());
  EXPECT_TRUE(verify_solution_certificate(*c));
}

TEST(ExplicitSolution, NumericSolveMatchesRandomTargetsProperty) {
  ZeroPattern y = pattern_from_name("Y-1");
  auto c = triangular_solution(y);
  ASSERT_TRUE(c.has_value());
  std::mt19937_64 rng(13);
  const int n = y.order();
  for (int trial = 0; trial < 40; ++trial) {
    CharPoly target;
    for (int k = 0; k < n; ++k) target.e.push_back(pftest::small_rational(rng));
    auto m = solve_with_certificate(*c, target);
    ASSERT_TRUE(m.has_value()) << target.to_string();
    RationalMatrix a = round_matrix(*m);
    EXPECT_TRUE(y.admits(a));
    CharPoly got = char_poly(a);
    for (int k = 0; k < n; ++k)
      EXPECT_NEAR(got.e[static_cast<std::size_t>(k)].get_d(), target.e[static_cast<std::size_t>(k)].get_d(), 1e-6)
          << "trial " << trial << " E" << k + 1;
  }
}

TEST(ExplicitSolution, TamperedCertificateFails) {
  auto c = triangular_solution(pattern_from_name("Y-1"));
  ASSERT_TRUE(c.has_value());
  SolutionCertificate swapped = *c;
  std::swap(swapped.steps.front().equation, swapped.steps.back().equation);
  EXPECT_FALSE(verify_solution_certificate(swapped));
  SolutionCertificate extra_unit = *c;
  for (const auto& arc : c->pattern.support()) {
    bool used = false;
    for (const auto& u : c->unit_entries) used = used || u == arc;
    for (const auto& z : c->zero_entries) used = used || z == arc;
    if (!used) {
      extra_unit.unit_entries.push_back(arc);
      break;
    }
  }
  EXPECT_FALSE(verify_solution_certificate(extra_unit));
  SolutionCertificate foreign = *c;
  foreign.pattern = path_pattern(4, 1);
  EXPECT_FALSE(verify_solution_certificate(foreign));
}

TEST(ExplicitSolution, NoneForNonSapPatterns) {
  EXPECT_FALSE(triangular_solution(path_pattern(4, 1)).has_value());
  EXPECT_FALSE(triangular_solution(an_pattern(4)).has_value());
  EXPECT_THROW(triangular_solution(companion_pattern(7)), std::invalid_argument);
}
