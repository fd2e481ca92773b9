#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "patternforge/rational.hpp"

namespace patternforge {

/// Dense square matrix of exact rationals. Element access is 0-based.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(int n);

  static RationalMatrix identity(int n);
  static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

  int order() const { return n_; }
  Rational& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * n_ + j)]; }
  const Rational& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i * n_ + j)];
  }

  RationalMatrix operator*(const RationalMatrix& rhs) const;
  RationalMatrix operator+(const RationalMatrix& rhs) const;
  RationalMatrix operator-(const RationalMatrix& rhs) const;
  RationalMatrix operator-() const;
  RationalMatrix scaled(const Rational& s) const;
  bool operator==(const RationalMatrix& rhs) const;
  bool operator!=(const RationalMatrix& rhs) const { return !(*this == rhs); }

  RationalMatrix transpose() const;
  /// Relabels indices: result(perm[i], perm[j]) = (*this)(i, j).
  RationalMatrix permuted(const std::vector<int>& perm) const;
  /// Principal submatrix on the given (sorted or not) 0-based indices.
  RationalMatrix principal(const std::vector<int>& indices) const;

  bool is_zero() const;
  Rational trace() const;
  Rational max_abs() const;

 private:
  int n_ = 0;
  std::vector<Rational> data_;
};

Rational determinant(const RationalMatrix& a);
/// Determinant of the principal submatrix selected by a 0-based index bitmask.
Rational principal_minor(const RationalMatrix& a, std::uint32_t mask);

/// Exact rank of a rectangular rational matrix (rows may have any common width).
/// Rows are cleared to integers and reduced with fraction-free elimination.
std::size_t exact_rank(const std::vector<std::vector<Rational>>& rows);

/// n lines of n rationals separated by whitespace; '#' starts a comment.
RationalMatrix parse_matrix(std::string_view text);
std::string format_matrix(const RationalMatrix& a);

}  // namespace patternforge
