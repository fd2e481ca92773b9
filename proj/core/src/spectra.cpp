#include "patternforge/spectra.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <regex>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/multiprecision/mpfr.hpp>

namespace patternforge {

Polynomial CharPoly::polynomial() const {
  const int n = order();
  std::vector<Rational> c(static_cast<std::size_t>(n + 1));
  c[static_cast<std::size_t>(n)] = 1;
  for (int k = 1; k <= n; ++k) {
    const Rational& ek = e[static_cast<std::size_t>(k - 1)];
    c[static_cast<std::size_t>(n - k)] = (k % 2 == 0) ? ek : Rational(-ek);
  }
  return Polynomial(std::move(c));
}

CharPoly CharPoly::from_polynomial(const Polynomial& monic) {
  if (monic.is_zero() || monic.leading() != 1) throw std::invalid_argument("polynomial must be monic");
  const int n = monic.degree();
  CharPoly cp;
  cp.e.resize(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    Rational c = monic.coeff(n - k);
    cp.e[static_cast<std::size_t>(k - 1)] = (k % 2 == 0) ? c : Rational(-c);
  }
  return cp;
}

std::string CharPoly::to_string() const { return polynomial().to_string(); }

CharPoly char_poly(const RationalMatrix& a) {
  const int n = a.order();
  CharPoly cp;
  cp.e.resize(static_cast<std::size_t>(n));
  // c_{n-k} = -tr(A M_k) / k with M_k = A M_{k-1} + c_{n-k+1} I and E_k = (-1)^k c_{n-k}.
  RationalMatrix m(n);
  Rational prev = 1;
  for (int k = 1; k <= n; ++k) {
    m = a * m;
    for (int i = 0; i < n; ++i) m(i, i) += prev;
    RationalMatrix am = a * m;
    Rational c = -am.trace() / k;
    cp.e[static_cast<std::size_t>(k - 1)] = (k % 2 == 0) ? c : Rational(-c);
    prev = c;
  }
  return cp;
}

namespace {

std::string variable_name(const Arc& a) {
  if (a.row <= 9 && a.col <= 9) return "t" + std::to_string(a.row) + std::to_string(a.col);
  return "t" + std::to_string(a.row) + "_" + std::to_string(a.col);
}

}  // namespace

std::string SupportPolynomial::to_string() const {
  if (terms.empty()) return "0";
  std::string out;
  // Print in descending variable-index order of the first variable so that
  // lower indices come first.
  std::vector<std::pair<std::uint64_t, long>> ordered(terms.begin(), terms.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
    std::uint64_t a = x.first, b = y.first;
    while (a && b) {
      int ia = std::countr_zero(a), ib = std::countr_zero(b);
      if (ia != ib) return ia < ib;
      a &= a - 1;
      b &= b - 1;
    }
    return a == 0 && b != 0;
  });
  for (const auto& [mask, coef] : ordered) {
    if (coef == 0) continue;
    long mag = coef < 0 ? -coef : coef;
    if (out.empty())
      out += coef < 0 ? "-" : "";
    else
      out += coef < 0 ? " - " : " + ";
    std::string mono;
    for (std::uint64_t m = mask; m; m &= m - 1) {
      if (!mono.empty()) mono += "*";
      mono += variable_name(variables[static_cast<std::size_t>(std::countr_zero(m))]);
    }
    if (mag != 1 || mono.empty()) out += std::to_string(mag) + (mono.empty() ? "" : "*");
    out += mono;
  }
  return out.empty() ? "0" : out;
}

std::vector<SupportPolynomial> symbolic_coefficients(const ZeroPattern& p) {
  const int n = p.order();
  auto vars = p.support();
  if (vars.size() > 64) throw std::invalid_argument("support polynomials need at most 64 free entries");
  std::vector<std::vector<int>> index(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
  for (std::size_t v = 0; v < vars.size(); ++v) {
    index[static_cast<std::size_t>(vars[v].row - 1)][static_cast<std::size_t>(vars[v].col - 1)] = static_cast<int>(v);
  }
  std::vector<SupportPolynomial> out(static_cast<std::size_t>(n));
  for (auto& q : out) {
    q.pattern = p;
    q.variables = vars;
  }
  const auto cycles = simple_cycles(p);
  std::vector<std::uint64_t> cycle_mask;
  for (const auto& c : cycles) {
    std::uint64_t m = 0;
    for (const auto& a : c.arcs())
      m |= std::uint64_t{1} << index[static_cast<std::size_t>(a.row - 1)][static_cast<std::size_t>(a.col - 1)];
    cycle_mask.push_back(m);
  }
  auto rec = [&](auto&& self, std::size_t start, std::uint32_t used, int len, int count,
                 std::uint64_t mono) -> void {
    if (len > 0) {
      int sign = ((len - count) % 2 == 0) ? 1 : -1;
      out[static_cast<std::size_t>(len - 1)].terms[mono] += sign;
    }
    for (std::size_t i = start; i < cycles.size(); ++i) {
      std::uint32_t vm = cycles[i].vertex_mask();
      if (vm & used) continue;
      self(self, i + 1, used | vm, len + cycles[i].length(), count + 1, mono | cycle_mask[i]);
    }
  };
  rec(rec, 0, 0u, 0, 0, 0);
  for (auto& q : out) {
    for (auto it = q.terms.begin(); it != q.terms.end();) {
      it = (it->second == 0) ? q.terms.erase(it) : std::next(it);
    }
  }
  return out;
}

SupportPolynomial symbolic_coefficient(const ZeroPattern& p, int k) {
  if (k < 1 || k > p.order()) {
    throw std::invalid_argument("coefficient index " + std::to_string(k) + " outside [1, " +
                                std::to_string(p.order()) + "]");
  }
  return symbolic_coefficients(p)[static_cast<std::size_t>(k - 1)];
}

Rational evaluate_support_poly(const SupportPolynomial& q, const RationalMatrix& a) {
  if (a.order() != q.pattern.order()) throw std::invalid_argument("matrix order does not match pattern");
  if (!q.pattern.admits(a)) throw std::invalid_argument("matrix has a nonzero entry off the pattern support");
  Rational total = 0;
  for (const auto& [mask, coef] : q.terms) {
    Rational prod = coef;
    for (std::uint64_t m = mask; m && prod != 0; m &= m - 1) {
      const Arc& v = q.variables[static_cast<std::size_t>(std::countr_zero(m))];
      prod *= a(v.row - 1, v.col - 1);
    }
    total += prod;
  }
  return total;
}

std::string Inertia::to_string() const {
  return "(" + std::to_string(plus) + "," + std::to_string(minus) + "," + std::to_string(zero) + ")";
}

std::string RefinedInertia::to_string() const {
  return "(" + std::to_string(plus) + "," + std::to_string(minus) + "," + std::to_string(zero) + "," +
         std::to_string(imag) + ")";
}

std::vector<RefinedInertia> all_refined_inertias(int n) {
  std::vector<RefinedInertia> out;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; a + b <= n; ++b)
      for (int c = 0; a + b + c <= n; ++c) {
        int d = n - a - b - c;
        if (d % 2 == 0) out.push_back({a, b, c, d});
      }
  std::sort(out.begin(), out.end(), [](const RefinedInertia& x, const RefinedInertia& y) {
    return std::tie(y.plus, y.minus, y.zero, y.imag) < std::tie(x.plus, x.minus, x.zero, x.imag);
  });
  return out;
}

std::vector<Inertia> all_inertias(int n) {
  std::vector<Inertia> out;
  for (int a = n; a >= 0; --a)
    for (int b = n - a; b >= 0; --b) out.push_back({a, b, n - a - b});
  return out;
}

std::optional<RefinedInertia> parse_refined_inertia(const std::string& text) {
  static const std::regex re(R"(^\s*\(?\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) return std::nullopt;
  RefinedInertia ri{std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3]), std::stoi(m[4])};
  if (ri.imag % 2 != 0) return std::nullopt;
  return ri;
}

namespace {

namespace mp = boost::multiprecision;
using Real = mp::number<mp::mpfr_float_backend<40>, mp::et_off>;

struct Cx {
  Real re, im;
};

Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
Cx operator*(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
Cx operator/(const Cx& a, const Cx& b) {
  Real d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
Real cabs(const Cx& a) { return mp::sqrt(a.re * a.re + a.im * a.im); }

Real to_real(const Rational& q) {
  Real num(q.get_num().get_str()), den(q.get_den().get_str());
  return num / den;
}

struct PolyEval {
  Cx value, derivative;
};

PolyEval horner(const std::vector<Real>& c, const Cx& z) {
  Cx p{c.back(), Real(0)}, dp{Real(0), Real(0)};
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    dp = dp * z + p;
    p = p * z + Cx{c[i], Real(0)};
  }
  return {p, dp};
}

// Roots of a square-free polynomial with nonzero constant term.
std::vector<RootEstimate> squarefree_roots(const Polynomial& f) {
  const int d = f.degree();
  std::vector<RootEstimate> out;
  if (d <= 0) return out;
  std::vector<Real> c;
  for (const auto& q : f.coeffs()) c.push_back(to_real(q));
  const Real lead = c.back();
  if (d == 1) {
    RootEstimate r;
    Rational root = -f.coeff(0) / f.coeff(1);
    r.re = static_cast<long double>(root.get_d());
    r.radius = 0;
    out.push_back(r);
    return out;
  }
  Real bound = 0;
  for (int i = 0; i < d; ++i) {
    Real r = mp::abs(c[static_cast<std::size_t>(i)] / lead);
    if (r > bound) bound = r;
  }
  bound += 1;
  const Real pi = mp::acos(Real(-1));
  std::vector<Cx> z(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    Real ang = 2 * pi * k / d + Real(0.4);
    Real rad = bound * Real(0.5 + 0.5 * (k % 3) / 3.0);
    z[static_cast<std::size_t>(k)] = {rad * mp::cos(ang), rad * mp::sin(ang)};
  }
  const Real tol = mp::pow(Real(2), -118);
  bool converged = false;
  for (int iter = 0; iter < 2000 && !converged; ++iter) {
    converged = true;
    for (int i = 0; i < d; ++i) {
      auto& zi = z[static_cast<std::size_t>(i)];
      PolyEval pe = horner(c, zi);
      if (cabs(pe.value) == 0) continue;
      Cx ratio = pe.value / pe.derivative;
      Cx sum{Real(0), Real(0)};
      for (int j = 0; j < d; ++j) {
        if (j == i) continue;
        sum = sum + Cx{Real(1), Real(0)} / (zi - z[static_cast<std::size_t>(j)]);
      }
      Cx corr = ratio / (Cx{Real(1), Real(0)} - ratio * sum);
      zi = zi - corr;
      if (cabs(corr) > tol * (1 + cabs(zi))) converged = false;
    }
  }
  if (!converged) {
    // Companion eigenvalues as a last resort; radii still come from the
    // residual bound below.
    Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> comp =
        Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>::Zero(d, d);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1;
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -static_cast<long double>(c[static_cast<std::size_t>(i)] / lead);
    Eigen::EigenSolver<decltype(comp)> es(comp, false);
    for (int i = 0; i < d; ++i) {
      auto ev = es.eigenvalues()[i];
      z[static_cast<std::size_t>(i)] = {Real(static_cast<double>(ev.real())), Real(static_cast<double>(ev.imag()))};
    }
  }
  for (int i = 0; i < d; ++i) {
    const auto& zi = z[static_cast<std::size_t>(i)];
    Cx prod{lead, Real(0)};
    for (int j = 0; j < d; ++j)
      if (j != i) prod = prod * (zi - z[static_cast<std::size_t>(j)]);
    Real radius = Real(d) * cabs(horner(c, zi).value) / cabs(prod);
    RootEstimate r;
    r.re = static_cast<long double>(zi.re);
    r.im = static_cast<long double>(zi.im);
    r.radius = static_cast<long double>(radius);
    // Long double rounding of the reported centre.
    r.radius += 4 * std::numeric_limits<long double>::epsilon() * (std::fabs(r.re) + std::fabs(r.im));
    out.push_back(r);
  }
  return out;
}

}  // namespace

std::vector<RootEstimate> roots(const CharPoly& cp) {
  std::vector<RootEstimate> out;
  Polynomial q = cp.polynomial();
  const int z = q.trailing_zero_order();
  for (int i = 0; i < z; ++i) out.push_back({});
  std::vector<Rational> shifted(q.coeffs().begin() + z, q.coeffs().end());
  Polynomial q0(std::move(shifted));
  auto parts = squarefree_decomposition(q0);
  for (std::size_t j = 0; j < parts.size(); ++j) {
    auto rs = squarefree_roots(parts[j]);
    for (std::size_t m = 0; m <= j; ++m) out.insert(out.end(), rs.begin(), rs.end());
  }
  std::sort(out.begin(), out.end(), [](const RootEstimate& a, const RootEstimate& b) {
    if (a.re != b.re) return a.re > b.re;
    return a.im > b.im;
  });
  return out;
}

NumericInertia refined_inertia_of(const RationalMatrix& a, std::optional<long double> eps) {
  NumericInertia res;
  res.eps = eps ? *eps : 1e-9L * (1.0L + static_cast<long double>(a.max_abs().get_d()));
  if (res.eps <= 0) throw std::invalid_argument("eps must be positive");
  res.roots = roots(char_poly(a));
  for (const auto& r : res.roots) {
    long double mag = std::hypot(r.re, r.im);
    long double margin = 10 * r.radius;
    if (mag < res.eps) {
      ++res.value.zero;
      if (res.eps - mag <= margin) res.fragile = true;
      continue;
    }
    if (mag - res.eps <= margin) res.fragile = true;
    if (std::fabs(r.re) < res.eps) {
      ++res.value.imag;
      if (res.eps - std::fabs(r.re) <= margin) res.fragile = true;
    } else {
      if (std::fabs(r.re) - res.eps <= margin) res.fragile = true;
      if (r.re > 0)
        ++res.value.plus;
      else
        ++res.value.minus;
    }
  }
  if (res.value.imag % 2 != 0) res.fragile = true;
  return res;
}

RefinedInertia exact_refined_inertia(const CharPoly& cp) {
  RefinedInertia ri;
  Polynomial q = cp.polynomial();
  ri.zero = q.trailing_zero_order();
  Polynomial q0(std::vector<Rational>(q.coeffs().begin() + ri.zero, q.coeffs().end()));
  if (q0.degree() <= 0) return ri;

  // Roots r with -r also a root: imaginary pairs and symmetric pairs.
  Polynomial g = gcd(q0, q0.reflected());
  if (g.degree() > 0) {
    std::vector<Rational> hc;
    for (int i = 0; i <= g.degree(); i += 2) hc.push_back(g.coeff(i));
    for (int i = 1; i <= g.degree(); i += 2) {
      if (g.coeff(i) != 0) throw std::logic_error("symmetric factor is not even");
    }
    Polynomial h(std::move(hc));
    int imaginary = 0;
    const Rational zero = 0;
    auto parts = squarefree_decomposition(h);
    for (std::size_t j = 0; j < parts.size(); ++j) {
      imaginary += static_cast<int>(j + 1) * count_real_roots(parts[j], nullptr, &zero);
    }
    ri.imag = 2 * imaginary;
    int paired = (g.degree() - ri.imag) / 2;
    ri.plus += paired;
    ri.minus += paired;
  }

  Polynomial q1 = q0.divmod(g.degree() > 0 ? g : Polynomial::constant(1)).first;
  const int d = q1.degree();
  if (d <= 0) return ri;
  // q1(iy) = A(y) + i B(y); n_- - n_+ is the winding of q1 along the imaginary axis.
  std::vector<Rational> ac(static_cast<std::size_t>(d + 1)), bc(static_cast<std::size_t>(d + 1));
  for (int k = 0; k <= d; ++k) {
    const Rational& c = q1.coeffs()[static_cast<std::size_t>(k)];
    switch (k % 4) {
      case 0: ac[static_cast<std::size_t>(k)] = c; break;
      case 1: bc[static_cast<std::size_t>(k)] = c; break;
      case 2: ac[static_cast<std::size_t>(k)] = -c; break;
      default: bc[static_cast<std::size_t>(k)] = -c; break;
    }
  }
  Polynomial A(std::move(ac)), B(std::move(bc));
  int diff = (A.degree() > B.degree()) ? -cauchy_index(B, A) : cauchy_index(A, B);
  if ((d + diff) % 2 != 0 || std::abs(diff) > d) throw std::logic_error("inconsistent half-plane count");
  ri.minus += (d + diff) / 2;
  ri.plus += (d - diff) / 2;
  return ri;
}

}  // namespace patternforge
