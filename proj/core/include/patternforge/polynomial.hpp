#pragma once

#include <string>
#include <utility>
#include <vector>

#include "patternforge/rational.hpp"

namespace patternforge {

/// Dense univariate polynomial over Q. coeffs()[i] multiplies x^i; the
/// representation is kept trimmed so the zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> low_to_high);
  static Polynomial constant(const Rational& c);
  static Polynomial monomial(int degree, const Rational& c = 1);
  /// x - r
  static Polynomial linear_root(const Rational& r);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const;
  Rational leading() const;

  Polynomial operator+(const Polynomial& rhs) const;
  Polynomial operator-(const Polynomial& rhs) const;
  Polynomial operator*(const Polynomial& rhs) const;
  Polynomial operator-() const;
  bool operator==(const Polynomial& rhs) const { return c_ == rhs.c_; }
  bool operator!=(const Polynomial& rhs) const { return c_ != rhs.c_; }

  /// Euclidean division; throws on a zero divisor.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;
  Polynomial derivative() const;
  Polynomial monic() const;
  /// p(-x)
  Polynomial reflected() const;
  Rational evaluate(const Rational& x) const;
  int sign_at(const Rational& x) const;
  /// Sign as x -> +inf (plus_infinity) or -inf.
  int sign_at_infinity(bool plus_infinity) const;
  /// Number of factors of x dividing the polynomial.
  int trailing_zero_order() const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Yun square-free decomposition: returns s_1, s_2, ... with p = lc * prod s_i^i.
std::vector<Polynomial> squarefree_decomposition(const Polynomial& p);

/// Signed remainder (Sturm) sequence of (a, b).
std::vector<Polynomial> sturm_sequence(const Polynomial& a, const Polynomial& b);

/// Number of distinct real roots of a square-free p in the half-open interval
/// (lo, hi]. Use nullptr-like flags for infinite ends.
int count_real_roots(const Polynomial& p, const Rational* lo, const Rational* hi);

/// Cauchy index of b/a over the whole real line (V(-inf) - V(+inf)).
int cauchy_index(const Polynomial& b, const Polynomial& a);

}  // namespace patternforge
