#include "patternforge/polynomial.hpp"

#include <stdexcept>

namespace patternforge {

Polynomial::Polynomial(std::vector<Rational> low_to_high) : c_(std::move(low_to_high)) { trim(); }

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(int degree, const Rational& c) {
  std::vector<Rational> v(static_cast<std::size_t>(degree + 1));
  v.back() = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::linear_root(const Rational& r) { return Polynomial({-r, Rational(1)}); }

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Polynomial::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[static_cast<std::size_t>(i)];
}

Rational Polynomial::leading() const { return c_.empty() ? Rational(0) : c_.back(); }

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
  std::vector<Rational> v(std::max(c_.size(), rhs.c_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i < c_.size()) v[i] += c_[i];
    if (i < rhs.c_.size()) v[i] += rhs.c_[i];
  }
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const { return *this + (-rhs); }

Polynomial Polynomial::operator-() const {
  std::vector<Rational> v(c_);
  for (auto& x : v) x = -x;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  if (is_zero() || rhs.is_zero()) return {};
  std::vector<Rational> v(c_.size() + rhs.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.c_.size(); ++j) v[i + j] += c_[i] * rhs.c_[j];
  }
  return Polynomial(std::move(v));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw std::invalid_argument("polynomial division by zero");
  std::vector<Rational> rem(c_);
  int dd = divisor.degree();
  int nd = degree();
  if (nd < dd) return {Polynomial(), *this};
  std::vector<Rational> quot(static_cast<std::size_t>(nd - dd + 1));
  const Rational& lead = divisor.c_.back();
  for (int k = nd - dd; k >= 0; --k) {
    Rational q = rem[static_cast<std::size_t>(k + dd)] / lead;
    quot[static_cast<std::size_t>(k)] = q;
    if (q == 0) continue;
    for (int j = 0; j <= dd; ++j) {
      rem[static_cast<std::size_t>(k + j)] -= q * divisor.c_[static_cast<std::size_t>(j)];
    }
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<long>(i);
  return Polynomial(std::move(v));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  std::vector<Rational> v(c_);
  Rational lead = c_.back();
  for (auto& x : v) x /= lead;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::reflected() const {
  std::vector<Rational> v(c_);
  for (std::size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
  return Polynomial(std::move(v));
}

Rational Polynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int Polynomial::sign_at(const Rational& x) const { return sgn(evaluate(x)); }

int Polynomial::sign_at_infinity(bool plus_infinity) const {
  if (is_zero()) return 0;
  int s = sgn(c_.back());
  if (!plus_infinity && degree() % 2 == 1) s = -s;
  return s;
}

int Polynomial::trailing_zero_order() const {
  int k = 0;
  while (k < static_cast<int>(c_.size()) && c_[static_cast<std::size_t>(k)] == 0) ++k;
  return k;
}

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = c_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += (c < 0) ? " - " : " + ";
    }
    bool unit = (mag == 1);
    if (!unit || i == 0) out += patternforge::to_string(mag);
    if (i >= 1) out += var;
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = x.divmod(y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

std::vector<Polynomial> squarefree_decomposition(const Polynomial& p) {
  std::vector<Polynomial> out;
  if (p.degree() <= 0) return out;
  Polynomial f = p.monic();
  Polynomial fp = f.derivative();
  Polynomial a = gcd(f, fp);
  Polynomial b = f.divmod(a).first;
  Polynomial c = fp.divmod(a).first;
  Polynomial d = c - b.derivative();
  while (b.degree() > 0) {
    Polynomial g = gcd(b, d);
    out.push_back(g);
    b = b.divmod(g).first;
    c = d.divmod(g).first;
    d = c - b.derivative();
  }
  return out;
}

std::vector<Polynomial> sturm_sequence(const Polynomial& a, const Polynomial& b) {
  std::vector<Polynomial> seq;
  if (a.is_zero()) return seq;
  seq.push_back(a);
  if (b.is_zero()) return seq;
  seq.push_back(b);
  while (true) {
    const Polynomial& prev = seq[seq.size() - 2];
    const Polynomial& cur = seq.back();
    Polynomial r = prev.divmod(cur).second;
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  return seq;
}

namespace {

int variations(const std::vector<int>& signs) {
  int count = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

int variations_at(const std::vector<Polynomial>& seq, const Rational* x, bool plus_infinity) {
  std::vector<int> signs;
  signs.reserve(seq.size());
  for (const auto& p : seq) signs.push_back(x ? p.sign_at(*x) : p.sign_at_infinity(plus_infinity));
  return variations(signs);
}

}  // namespace

int count_real_roots(const Polynomial& p, const Rational* lo, const Rational* hi) {
  if (p.degree() <= 0) return 0;
  auto seq = sturm_sequence(p, p.derivative());
  return variations_at(seq, lo, false) - variations_at(seq, hi, true);
}

int cauchy_index(const Polynomial& b, const Polynomial& a) {
  if (a.is_zero()) throw std::invalid_argument("Cauchy index with zero denominator");
  Polynomial r = b.divmod(a).second;
  auto seq = sturm_sequence(a, r);
  return variations_at(seq, nullptr, false) - variations_at(seq, nullptr, true);
}

}  // namespace patternforge
