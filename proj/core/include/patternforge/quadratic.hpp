#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "patternforge/matrix.hpp"
#include "patternforge/rational.hpp"

namespace patternforge {

/// Exact element a + b*sqrt(d) of a real quadratic field, d > 1 squarefree.
/// Elements with b = 0 are rationals and combine with any field; combining two
/// irrational elements of different fields throws std::domain_error.
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(const Rational& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadraticNumber(int a) : a_(a) {}              // NOLINT(google-explicit-constructor)
  QuadraticNumber(const Rational& a, const Rational& b, int d);

  const Rational& rational_part() const { return a_; }
  const Rational& radical_part() const { return b_; }
  /// 1 for rationals.
  int radicand() const { return patternforge::sign(b_) == 0 ? 1 : d_; }
  bool is_rational() const { return patternforge::sign(b_) == 0; }
  bool is_zero() const { return patternforge::sign(a_) == 0 && patternforge::sign(b_) == 0; }
  int sign() const;
  long double to_long_double() const;

  QuadraticNumber operator-() const;
  QuadraticNumber& operator+=(const QuadraticNumber& rhs);
  QuadraticNumber& operator-=(const QuadraticNumber& rhs);
  QuadraticNumber& operator*=(const QuadraticNumber& rhs);
  QuadraticNumber& operator/=(const QuadraticNumber& rhs);
  friend QuadraticNumber operator+(QuadraticNumber l, const QuadraticNumber& r) { return l += r; }
  friend QuadraticNumber operator-(QuadraticNumber l, const QuadraticNumber& r) { return l -= r; }
  friend QuadraticNumber operator*(QuadraticNumber l, const QuadraticNumber& r) { return l *= r; }
  friend QuadraticNumber operator/(QuadraticNumber l, const QuadraticNumber& r) { return l /= r; }
  bool operator==(const QuadraticNumber& rhs) const;
  bool operator!=(const QuadraticNumber& rhs) const { return !(*this == rhs); }

 private:
  int common_radicand(const QuadraticNumber& rhs) const;
  Rational a_ = 0, b_ = 0;
  int d_ = 1;
};

/// "a", "a+b*sqrt(d)", "a-sqrt(d)", "b*sqrt(d)" with rational a, b.
std::string to_string(const QuadraticNumber& x);
/// Inverse of to_string; also accepts plain rationals. Throws ParseError.
QuadraticNumber parse_quadratic(std::string_view text);

bool is_squarefree(int d);

/// Square matrix over one real quadratic field.
class QuadMatrix {
 public:
  QuadMatrix() = default;
  explicit QuadMatrix(int n) : n_(n), v_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {}
  explicit QuadMatrix(const RationalMatrix& a);

  int order() const { return n_; }
  QuadraticNumber& operator()(int r, int c) { return v_[static_cast<std::size_t>(r * n_ + c)]; }
  const QuadraticNumber& operator()(int r, int c) const { return v_[static_cast<std::size_t>(r * n_ + c)]; }
  QuadMatrix operator*(const QuadMatrix& rhs) const;
  bool is_zero() const;
  /// 1 when every entry is rational.
  int radicand() const;
  bool is_rational() const { return radicand() == 1; }
  /// Throws std::domain_error unless every entry is rational.
  RationalMatrix to_rational() const;
  bool operator==(const QuadMatrix& rhs) const { return n_ == rhs.n_ && v_ == rhs.v_; }

 private:
  int n_ = 0;
  std::vector<QuadraticNumber> v_;
};

/// Exact rank by Gaussian elimination over the field of the entries.
std::size_t quadratic_rank(std::vector<std::vector<QuadraticNumber>> rows);

}  // namespace patternforge
