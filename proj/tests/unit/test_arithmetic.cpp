#include <gtest/gtest.h>

#include <random>

#include "pftest/generators.hpp"
#include "patternforge/errors.hpp"
#include "patternforge/matrix.hpp"
#include "patternforge/polynomial.hpp"
#include "patternforge/quadratic.hpp"
#include "patternforge/rational.hpp"

using namespace patternforge;

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(parse_rational("11/2"), Rational(11, 2));
  EXPECT_EQ(parse_rational("-4/6"), Rational(-2, 3));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(to_string(parse_rational("-6/4")), "-3/2");
  EXPECT_EQ(to_string(parse_rational("8/4")), "2");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
}

TEST(Rational, RoundTripProperty) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    Rational r = pftest::small_rational(rng) * pftest::small_rational(rng) + pftest::small_rational(rng);
    EXPECT_EQ(parse_rational(to_string(r)), r);
  }
}

TEST(Rational, Rationalize) {
  EXPECT_EQ(rationalize(0.333333333333L, 100), Rational(1, 3));
  EXPECT_EQ(rationalize(-2.5L, 10), Rational(-5, 2));
  EXPECT_EQ(exact_from_double(0.75), Rational(3, 4));
}

TEST(Polynomial, ArithmeticAndDivision) {
  Polynomial p = Polynomial::linear_root(1) * Polynomial::linear_root(-2);  // x^2 + x - 2
  EXPECT_EQ(p.coeffs(), (std::vector<Rational>{-2, 1, 1}));
  auto [q, r] = p.divmod(Polynomial::linear_root(1));
  EXPECT_EQ(q, Polynomial::linear_root(-2));
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(p.evaluate(3), Rational(10));
  EXPECT_EQ(p.derivative().coeffs(), (std::vector<Rational>{1, 2}));
  EXPECT_EQ(p.reflected().coeffs(), (std::vector<Rational>{-2, -1, 1}));
}

TEST(Polynomial, GcdAndSquarefree) {
  Polynomial a = Polynomial::linear_root(1) * Polynomial::linear_root(1) * Polynomial::linear_root(3);
  Polynomial b = Polynomial::linear_root(1) * Polynomial::linear_root(5);
  EXPECT_EQ(gcd(a, b).monic(), Polynomial::linear_root(1));
  Rational degree_sum = 0;
  for (const auto& f : squarefree_decomposition(a)) degree_sum += f.degree();
  EXPECT_GE(degree_sum, 2);
}

TEST(Polynomial, SturmCountsRealRoots) {
  // (x - 1)(x + 2)(x^2 + 1): two real roots.
  Polynomial p = Polynomial::linear_root(1) * Polynomial::linear_root(-2) *
                 Polynomial(std::vector<Rational>{1, 0, 1});
  EXPECT_EQ(count_real_roots(p, nullptr, nullptr), 2);
  Rational zero = 0;
  EXPECT_EQ(count_real_roots(p, &zero, nullptr), 1);
  EXPECT_EQ(count_real_roots(p, nullptr, &zero), 1);
}

TEST(Matrix, DeterminantAgreesWithExpansionProperty) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    int n = pftest::uniform_int(rng, 1, 4);
    RationalMatrix a = pftest::random_matrix(rng, n);
    RationalMatrix b = pftest::random_matrix(rng, n);
    EXPECT_EQ(determinant(a * b), determinant(a) * determinant(b));
    EXPECT_EQ(determinant(a.transpose()), determinant(a));
    EXPECT_EQ(principal_minor(a, (1u << n) - 1), determinant(a));
  }
}

TEST(Matrix, RankAndParse) {
  std::vector<std::vector<Rational>> rows = {{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
  EXPECT_EQ(exact_rank(rows), 2u);
  RationalMatrix a = parse_matrix("1 1/2 # comment\n0 -3\n");
  EXPECT_EQ(a(0, 1), Rational(1, 2));
  EXPECT_EQ(a(1, 1), Rational(-3));
  EXPECT_EQ(parse_matrix(format_matrix(a)), a);
  EXPECT_THROW(parse_matrix("1 2\n3\n"), std::invalid_argument);
}

TEST(Quadratic, FieldArithmetic) {
  QuadraticNumber s(0, 1, 2);  // sqrt 2
  EXPECT_EQ(s * s, QuadraticNumber(2));
  QuadraticNumber x(1, 1, 2);
  QuadraticNumber inv = QuadraticNumber(1) / x;  // sqrt2 - 1
  EXPECT_EQ(inv, QuadraticNumber(-1, 1, 2));
  EXPECT_EQ(x.sign(), 1);
  EXPECT_EQ(QuadraticNumber(1, -1, 2).sign(), -1);
  EXPECT_EQ(parse_quadratic(to_string(QuadraticNumber(Rational(1, 2), Rational(-3, 4), 5))),
            QuadraticNumber(Rational(1, 2), Rational(-3, 4), 5));
  EXPECT_THROW(parse_quadratic("1+sqrt("), ParseError);
}

TEST(Quadratic, RankOverField) {
  QuadraticNumber s(0, 1, 5);
  std::vector<std::vector<QuadraticNumber>> rows = {{1, s}, {s, 5}};
  EXPECT_EQ(quadratic_rank(rows), 1u);
  rows[1][1] = 4;
  EXPECT_EQ(quadratic_rank(rows), 2u);
}
