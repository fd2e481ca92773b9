#include "patternforge/quadratic.hpp"

#include <cmath>
#include <regex>
#include <stdexcept>

#include "patternforge/errors.hpp"

namespace patternforge {

bool is_squarefree(int d) {
  if (d < 2) return false;
  for (int f = 2; f * f <= d; ++f)
    if (d % (f * f) == 0) return false;
  return true;
}

QuadraticNumber::QuadraticNumber(const Rational& a, const Rational& b, int d) : a_(a), b_(b), d_(d) {
  if (patternforge::sign(b_) != 0 && !is_squarefree(d)) throw std::invalid_argument("radicand must be squarefree and > 1");
  if (patternforge::sign(b_) == 0) d_ = 1;
}

int QuadraticNumber::common_radicand(const QuadraticNumber& rhs) const {
  if (is_rational()) return rhs.radicand();
  if (rhs.is_rational() || rhs.d_ == d_) return d_;
  throw std::domain_error("mixing elements of different quadratic fields");
}

int QuadraticNumber::sign() const {
  const int sa = patternforge::sign(a_), sb = patternforge::sign(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with b^2 d.
  const Rational a2 = a_ * a_, b2d = b_ * b_ * d_;
  return a2 > b2d ? sa : sb;
}

long double QuadraticNumber::to_long_double() const {
  return static_cast<long double>(a_.get_d()) +
         static_cast<long double>(b_.get_d()) * std::sqrt(static_cast<long double>(d_));
}

QuadraticNumber QuadraticNumber::operator-() const {
  QuadraticNumber r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

QuadraticNumber& QuadraticNumber::operator+=(const QuadraticNumber& rhs) {
  d_ = common_radicand(rhs);
  a_ += rhs.a_;
  b_ += rhs.b_;
  if (patternforge::sign(b_) == 0) d_ = 1;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator-=(const QuadraticNumber& rhs) { return *this += -rhs; }

QuadraticNumber& QuadraticNumber::operator*=(const QuadraticNumber& rhs) {
  const int d = common_radicand(rhs);
  const Rational a = a_ * rhs.a_ + b_ * rhs.b_ * d;
  const Rational b = a_ * rhs.b_ + b_ * rhs.a_;
  a_ = a;
  b_ = b;
  d_ = patternforge::sign(b_) == 0 ? 1 : d;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator/=(const QuadraticNumber& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero");
  const int d = rhs.radicand();
  const Rational norm = rhs.a_ * rhs.a_ - rhs.b_ * rhs.b_ * d;
  QuadraticNumber conj = rhs;
  conj.b_ = -conj.b_;
  *this *= conj;
  a_ /= norm;
  b_ /= norm;
  return *this;
}

bool QuadraticNumber::operator==(const QuadraticNumber& rhs) const {
  return a_ == rhs.a_ && b_ == rhs.b_ && radicand() == rhs.radicand();
}

std::string to_string(const QuadraticNumber& x) {
  if (x.is_rational()) return to_string(x.rational_part());
  std::string out;
  const Rational& a = x.rational_part();
  Rational b = x.radical_part();
  if (sign(a) != 0) {
    out = to_string(a);
    out += sign(b) < 0 ? "-" : "+";
    b = abs(b);
  } else if (sign(b) < 0) {
    out = "-";
    b = abs(b);
  }
  if (b != 1) out += to_string(b) + "*";
  out += "sqrt(" + std::to_string(x.radicand()) + ")";
  return out;
}

QuadraticNumber parse_quadratic(std::string_view text) {
  static const std::regex form(R"(^\s*([+-]?\d+(?:/\d+)?)?\s*(?:([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?sqrt\(\s*(\d+)\s*\))?\s*$)");
  const std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, form) || (!m[1].matched && !m[4].matched))
    throw ParseError("not a quadratic number: " + s);
  Rational a = m[1].matched ? parse_rational(m[1].str()) : Rational(0);
  if (!m[4].matched) return QuadraticNumber(a);
  if (m[1].matched && !m[2].matched) throw ParseError("missing sign before sqrt: " + s);
  Rational b = m[3].matched ? parse_rational(m[3].str()) : Rational(1);
  if (m[2].matched && m[2].str() == "-") b = -b;
  const int d = std::stoi(m[4].str());
  if (!is_squarefree(d)) throw ParseError("radicand must be squarefree and > 1: " + s);
  return QuadraticNumber(a, b, d);
}

QuadMatrix::QuadMatrix(const RationalMatrix& a) : QuadMatrix(a.order()) {
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) (*this)(r, c) = a(r, c);
}

QuadMatrix QuadMatrix::operator*(const QuadMatrix& rhs) const {
  QuadMatrix out(n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const QuadraticNumber& x = (*this)(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < n_; ++j)
        if (!rhs(k, j).is_zero()) out(i, j) += x * rhs(k, j);
    }
  return out;
}

bool QuadMatrix::is_zero() const {
  for (const auto& x : v_)
    if (!x.is_zero()) return false;
  return true;
}

int QuadMatrix::radicand() const {
  int d = 1;
  for (const auto& x : v_) {
    if (x.is_rational()) continue;
    if (d != 1 && d != x.radicand()) throw std::domain_error("entries from different quadratic fields");
    d = x.radicand();
  }
  return d;
}

RationalMatrix QuadMatrix::to_rational() const {
  RationalMatrix out(n_);
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) {
      if (!(*this)(r, c).is_rational()) throw std::domain_error("matrix has irrational entries");
      out(r, c) = (*this)(r, c).rational_part();
    }
  return out;
}

std::size_t quadratic_rank(std::vector<std::vector<QuadraticNumber>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const QuadraticNumber inv = QuadraticNumber(1) / rows[rank][c];
    for (std::size_t j = c; j < cols; ++j) rows[rank][j] *= inv;
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c].is_zero()) continue;
      const QuadraticNumber f = rows[r][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!rows[rank][j].is_zero()) rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace patternforge
