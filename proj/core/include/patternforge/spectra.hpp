#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "patternforge/matrix.hpp"
#include "patternforge/pattern.hpp"
#include "patternforge/polynomial.hpp"

namespace patternforge {

/// Monic characteristic polynomial stored as E_1..E_n where
/// p(x) = x^n - E_1 x^{n-1} + E_2 x^{n-2} - ... + (-1)^n E_n.
struct CharPoly {
  std::vector<Rational> e;

  int order() const { return static_cast<int>(e.size()); }
  Polynomial polynomial() const;
  static CharPoly from_polynomial(const Polynomial& monic);
  std::string to_string() const;
  bool operator==(const CharPoly& rhs) const { return e == rhs.e; }
  bool operator!=(const CharPoly& rhs) const { return e != rhs.e; }
};

/// Exact coefficients via the Faddeev-LeVerrier recurrence.
CharPoly char_poly(const RationalMatrix& a);

/// E_k as a multilinear polynomial in the free entries of a pattern. Variable v
/// is the v-th support position in row-major order; a term is a bitmask over
/// variables (so at most 64 support positions).
struct SupportPolynomial {
  ZeroPattern pattern;
  std::vector<Arc> variables;
  std::map<std::uint64_t, long> terms;

  std::string to_string() const;
};

SupportPolynomial symbolic_coefficient(const ZeroPattern& p, int k);
/// All of E_1..E_n at once (shares the cycle enumeration).
std::vector<SupportPolynomial> symbolic_coefficients(const ZeroPattern& p);
Rational evaluate_support_poly(const SupportPolynomial& q, const RationalMatrix& a);

struct Inertia {
  int plus = 0, minus = 0, zero = 0;
  auto operator<=>(const Inertia&) const = default;
  int order() const { return plus + minus + zero; }
  Inertia reversal() const { return {minus, plus, zero}; }
  std::string to_string() const;
};

struct RefinedInertia {
  int plus = 0, minus = 0, zero = 0, imag = 0;
  auto operator<=>(const RefinedInertia&) const = default;
  int order() const { return plus + minus + zero + imag; }
  RefinedInertia reversal() const { return {minus, plus, zero, imag}; }
  Inertia inertia() const { return {plus, minus, zero + imag}; }
  std::string to_string() const;
};

/// Every refined inertia of order n with even n_imag, in lexicographic order.
std::vector<RefinedInertia> all_refined_inertias(int n);
std::vector<Inertia> all_inertias(int n);
std::optional<RefinedInertia> parse_refined_inertia(const std::string& text);

struct RootEstimate {
  long double re = 0, im = 0;
  long double radius = 0;  // inclusion radius around (re, im)
};

/// All n roots (with multiplicity) of the polynomial. Exact zero roots and
/// repeated factors are separated exactly before numeric iteration.
std::vector<RootEstimate> roots(const CharPoly& c);

struct NumericInertia {
  RefinedInertia value;
  bool fragile = false;
  long double eps = 0;
  std::vector<RootEstimate> roots;
};

/// Tolerance-based classification of each root. When eps is absent the
/// default 1e-9 * (1 + max|entry|) is used.
NumericInertia refined_inertia_of(const RationalMatrix& a, std::optional<long double> eps = {});

/// Exact refined inertia of the polynomial: zero roots from trailing
/// coefficients, imaginary pairs from gcd(q(x), q(-x)) and Sturm counts, the
/// half-plane split from a Cauchy index.
RefinedInertia exact_refined_inertia(const CharPoly& c);

}  // namespace patternforge
