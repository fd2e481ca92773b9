#include <gtest/gtest.h>

#include <cmath>

#include <random>

#include "pftest/generators.hpp"
#include "patternforge/spectra.hpp"

using namespace patternforge;

namespace {

// E_k as the sum of k x k principal minors: the oracle for the cycle formula.
Rational minor_sum(const RationalMatrix& a, int k) {
  Rational s = 0;
  int n = a.order();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
    if (__builtin_popcount(mask) == k) s += principal_minor(a, mask);
  return s;
}

CharPoly from_roots(const std::vector<Rational>& real, const std::vector<Rational>& imag_sq) {
  Polynomial p = Polynomial::constant(1);
  for (const auto& r : real) p = p * Polynomial::linear_root(r);
  for (const auto& q : imag_sq) p = p * Polynomial(std::vector<Rational>{q, 0, 1});
  return CharPoly::from_polynomial(p);
}

}  // namespace

TEST(Spectra, CycleFormulaMatchesPrincipalMinorsProperty) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    int n = pftest::uniform_int(rng, 1, 5);
    ZeroPattern p = pftest::random_pattern(rng, n, 55);
    RationalMatrix a = pftest::random_realization(rng, p);
    CharPoly c = char_poly(a);
    auto sym = symbolic_coefficients(p);
    ASSERT_EQ(static_cast<int>(sym.size()), n);
    for (int k = 1; k <= n; ++k) {
      Rational oracle = minor_sum(a, k);
      EXPECT_EQ(c.e[static_cast<std::size_t>(k - 1)], oracle) << "trial " << trial << " k " << k;
      EXPECT_EQ(evaluate_support_poly(sym[static_cast<std::size_t>(k - 1)], a), oracle);
    }
  }
}

TEST(Spectra, CoefficientConvention) {
  // x^2 - 3x + 2 for diag(1, 2): E1 = 3, E2 = 2.
  RationalMatrix a = RationalMatrix::from_rows({{1, 0}, {0, 2}});
  CharPoly c = char_poly(a);
  EXPECT_EQ(c.e, (std::vector<Rational>{3, 2}));
  EXPECT_EQ(c.polynomial().coeffs(), (std::vector<Rational>{2, -3, 1}));
}

TEST(Spectra, ExactRefinedInertiaOracles) {
  EXPECT_EQ(exact_refined_inertia(from_roots({1, -2, 0}, {})), (RefinedInertia{1, 1, 1, 0}));
  EXPECT_EQ(exact_refined_inertia(from_roots({0, 0}, {4})), (RefinedInertia{0, 0, 2, 2}));
  EXPECT_EQ(exact_refined_inertia(from_roots({-1}, {1, 9})), (RefinedInertia{0, 1, 0, 4}));
  // x^2 - 2x + 5: roots 1 +- 2i.
  EXPECT_EQ(exact_refined_inertia(CharPoly{{2, 5}}), (RefinedInertia{2, 0, 0, 0}));
  // (x^2 + 2x + 5)^2 and a repeated real root.
  EXPECT_EQ(exact_refined_inertia(CharPoly{{-4, 14, -20, 25}}), (RefinedInertia{0, 4, 0, 0}));
  EXPECT_EQ(exact_refined_inertia(from_roots({3, 3, -1}, {})), (RefinedInertia{2, 1, 0, 0}));
  // Repeated imaginary pair.
  EXPECT_EQ(exact_refined_inertia(from_roots({}, {1, 1})), (RefinedInertia{0, 0, 0, 4}));
}

TEST(Spectra, NumericAgreesWithExactProperty) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    int n = pftest::uniform_int(rng, 1, 5);
    RationalMatrix a = pftest::random_matrix(rng, n);
    RefinedInertia exact = exact_refined_inertia(char_poly(a));
    NumericInertia num = refined_inertia_of(a);
    if (!num.fragile) EXPECT_EQ(num.value, exact) << format_matrix(a);
  }
}

TEST(Spectra, NegationReversesRefinedInertiaProperty) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    int n = pftest::uniform_int(rng, 1, 5);
    RationalMatrix a = pftest::random_matrix(rng, n);
    EXPECT_EQ(exact_refined_inertia(char_poly(-a)), exact_refined_inertia(char_poly(a)).reversal());
  }
}

TEST(Spectra, InertiaCounts) {
  EXPECT_EQ(all_refined_inertias(3).size(), 13u);
  EXPECT_EQ(all_refined_inertias(4).size(), 22u);
  EXPECT_EQ(all_inertias(3).size(), 10u);
  EXPECT_EQ(all_inertias(4).size(), 15u);
  for (const auto& ri : all_refined_inertias(5)) {
    EXPECT_EQ(ri.order(), 5);
    EXPECT_EQ(ri.imag % 2, 0);
  }
}

TEST(Spectra, ParseRefinedInertia) {
  EXPECT_EQ(parse_refined_inertia("1,0,0,2"), (RefinedInertia{1, 0, 0, 2}));
  EXPECT_FALSE(parse_refined_inertia("1,0,0").has_value());
  EXPECT_FALSE(parse_refined_inertia("0,0,0,1").has_value());
}

TEST(Spectra, RootInclusion) {
  auto rs = roots(from_roots({1, -3}, {4}));
  ASSERT_EQ(rs.size(), 4u);
  int imaginary = 0;
  for (const auto& r : rs)
    if (std::fabs(static_cast<double>(r.re)) < 1e-9 && std::fabs(std::fabs(static_cast<double>(r.im)) - 2) < 1e-9)
      ++imaginary;
  EXPECT_EQ(imaginary, 2);
}
