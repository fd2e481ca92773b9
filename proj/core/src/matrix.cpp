#include "patternforge/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace patternforge {

RationalMatrix::RationalMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n * n)) {
  if (n < 0) throw std::invalid_argument("negative matrix order");
}

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  int n = static_cast<int>(rows.size());
  RationalMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n) {
      throw std::invalid_argument("matrix rows must form a square");
    }
    for (int j = 0; j < n; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const {
  if (rhs.n_ != n_) throw std::invalid_argument("order mismatch in product");
  RationalMatrix out(n_);
  for (int i = 0; i < n_; ++i) {
    for (int k = 0; k < n_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (int j = 0; j < n_; ++j) {
        if (rhs(k, j) != 0) out(i, j) += a * rhs(k, j);
      }
    }
  }
  return out;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& rhs) const {
  if (rhs.n_ != n_) throw std::invalid_argument("order mismatch in sum");
  RationalMatrix out(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
  return out;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& rhs) const {
  if (rhs.n_ != n_) throw std::invalid_argument("order mismatch in difference");
  RationalMatrix out(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
  return out;
}

RationalMatrix RationalMatrix::operator-() const {
  RationalMatrix out(*this);
  for (auto& v : out.data_) v = -v;
  return out;
}

RationalMatrix RationalMatrix::scaled(const Rational& s) const {
  RationalMatrix out(*this);
  for (auto& v : out.data_) v *= s;
  return out;
}

bool RationalMatrix::operator==(const RationalMatrix& rhs) const {
  return n_ == rhs.n_ && data_ == rhs.data_;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix out(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

RationalMatrix RationalMatrix::permuted(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != n_) throw std::invalid_argument("permutation size mismatch");
  RationalMatrix out(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      out(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) = (*this)(i, j);
  return out;
}

RationalMatrix RationalMatrix::principal(const std::vector<int>& indices) const {
  int k = static_cast<int>(indices.size());
  RationalMatrix out(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      out(i, j) = (*this)(indices[static_cast<std::size_t>(i)], indices[static_cast<std::size_t>(j)]);
  return out;
}

bool RationalMatrix::is_zero() const {
  for (const auto& v : data_)
    if (v != 0) return false;
  return true;
}

Rational RationalMatrix::trace() const {
  Rational t = 0;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

Rational RationalMatrix::max_abs() const {
  Rational m = 0;
  for (const auto& v : data_) {
    Rational a = abs(v);
    if (a > m) m = a;
  }
  return m;
}

Rational determinant(const RationalMatrix& a) {
  int n = a.order();
  if (n == 0) return 1;
  RationalMatrix m(a);
  Rational det = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (m(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return 0;
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
      det = -det;
    }
    const Rational p = m(col, col);
    det *= p;
    for (int r = col + 1; r < n; ++r) {
      if (m(r, col) == 0) continue;
      Rational f = m(r, col) / p;
      for (int j = col; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return det;
}

Rational principal_minor(const RationalMatrix& a, std::uint32_t mask) {
  std::vector<int> idx;
  for (int i = 0; i < a.order(); ++i)
    if (mask & (1u << i)) idx.push_back(i);
  return determinant(a.principal(idx));
}

std::size_t exact_rank(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::vector<std::vector<Integer>> m;
  m.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.size() != cols) throw std::invalid_argument("ragged rows in rank computation");
    Integer l = 1;
    for (const auto& v : row) {
      if (v != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    }
    std::vector<Integer> ints(cols);
    bool nonzero = false;
    for (std::size_t j = 0; j < cols; ++j) {
      if (row[j] == 0) continue;
      ints[j] = row[j].get_num() * (l / row[j].get_den());
      nonzero = true;
    }
    if (nonzero) m.push_back(std::move(ints));
  }

  // Bareiss elimination; every division below is exact.
  std::size_t rank = 0;
  Integer prev = 1;
  for (std::size_t col = 0; col < cols && rank < m.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    const Integer p = m[rank][col];
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      const Integer f = m[r][col];
      for (std::size_t j = col; j < cols; ++j) {
        Integer v = p * m[r][j] - f * m[rank][j];
        mpz_divexact(m[r][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = p;
    ++rank;
  }
  return rank;
}

RationalMatrix parse_matrix(std::string_view text) {
  std::vector<std::vector<Rational>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<Rational> row;
    std::string token;
    while (fields >> token) {
      try {
        row.push_back(parse_rational(token));
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("empty matrix input");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw std::invalid_argument("matrix row " + std::to_string(i + 1) + " has " +
                                  std::to_string(rows[i].size()) + " entries, expected " +
                                  std::to_string(rows.size()));
    }
  }
  return RationalMatrix::from_rows(rows);
}

std::string format_matrix(const RationalMatrix& a) {
  std::string out;
  for (int i = 0; i < a.order(); ++i) {
    for (int j = 0; j < a.order(); ++j) {
      if (j) out += ' ';
      out += to_string(a(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace patternforge
