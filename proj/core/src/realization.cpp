#include "patternforge/realization.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <stdexcept>

#include "patternforge/families.hpp"
#include "patternforge/solver.hpp"

namespace patternforge {

// ---------------------------------------------------------------------------
// Target spectra

Polynomial SpectralFactor::polynomial() const {
  switch (kind) {
    case Kind::Real: return Polynomial::linear_root(a);
    case Kind::Zero: return Polynomial::monomial(1);
    case Kind::Imaginary: return Polynomial({a, 0, 1});
    case Kind::Complex: return Polynomial({a * a + b, -2 * a, 1});
  }
  return {};
}

std::string SpectralFactor::to_string() const {
  return "(" + polynomial().to_string() + ")";
}

CharPoly TargetSpectrum::charpoly() const {
  Polynomial p = Polynomial::constant(1);
  for (const auto& f : factors) p = p * f.polynomial();
  return CharPoly::from_polynomial(p);
}

std::string TargetSpectrum::to_string() const {
  std::string s;
  for (const auto& f : factors) s += f.to_string();
  return s.empty() ? "1" : s;
}

namespace {

using Kind = SpectralFactor::Kind;

SpectralFactor real_factor(const Rational& r) { return {Kind::Real, r, 0}; }
SpectralFactor zero_factor() { return {Kind::Zero, 0, 0}; }
SpectralFactor imaginary_factor(const Rational& w) { return {Kind::Imaginary, w, 0}; }
SpectralFactor complex_factor(const Rational& re, const Rational& im_sq) { return {Kind::Complex, re, im_sq}; }

std::uint64_t inertia_key(const RefinedInertia& ri) {
  return (static_cast<std::uint64_t>(ri.plus) << 24) | (static_cast<std::uint64_t>(ri.minus) << 16) |
         (static_cast<std::uint64_t>(ri.zero) << 8) | static_cast<std::uint64_t>(ri.imag);
}

std::vector<std::complex<double>> factor_roots(const SpectralFactor& f) {
  const double a = f.a.get_d(), b = f.b.get_d();
  switch (f.kind) {
    case Kind::Real: return {{a, 0}};
    case Kind::Zero: return {{0, 0}};
    case Kind::Imaginary: return {{0, std::sqrt(a)}, {0, -std::sqrt(a)}};
    case Kind::Complex: return {{a, std::sqrt(b)}, {a, -std::sqrt(b)}};
  }
  return {};
}

}  // namespace

TargetSpectrum target_poly_for(const RefinedInertia& ri, std::uint64_t seed) {
  if (ri.imag % 2 != 0) throw std::invalid_argument("refined inertia needs an even number of imaginary eigenvalues");
  if (ri.plus < 0 || ri.minus < 0 || ri.zero < 0 || ri.imag < 0) throw std::invalid_argument("negative inertia entry");
  TargetSpectrum t;
  t.refined_inertia = ri;
  if (seed == 0) {
    for (int side : {1, -1}) {
      const int count = side > 0 ? ri.plus : ri.minus;
      for (int k = 1; k <= count / 2; ++k) t.factors.push_back(complex_factor(side, k * k));
      if (count % 2) t.factors.push_back(real_factor(side));
    }
    for (int k = 1; k <= ri.imag / 2; ++k) t.factors.push_back(imaginary_factor(k * k));
    for (int k = 0; k < ri.zero; ++k) t.factors.push_back(zero_factor());
    return t;
  }

  std::mt19937_64 rng(mix_seed(seed, inertia_key(ri)));
  std::uniform_int_distribution<int> quarter(2, 16);  // values k/4 in [1/2, 4]
  std::uniform_int_distribution<int> part(2, 11);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    t.factors.clear();
    for (int side : {1, -1}) {
      const int count = side > 0 ? ri.plus : ri.minus;
      const int pairs = std::uniform_int_distribution<int>(0, count / 2)(rng);
      for (int k = 0; k < pairs; ++k) {
        Rational re = Rational(side * part(rng)) / 4, im = Rational(part(rng)) / 4;
        t.factors.push_back(complex_factor(re, im * im));
      }
      for (int k = 0; k < count - 2 * pairs; ++k) t.factors.push_back(real_factor(Rational(side * quarter(rng)) / 4));
    }
    for (int k = 0; k < ri.imag / 2; ++k) {
      Rational w = Rational(quarter(rng)) / 4;
      t.factors.push_back(imaginary_factor(w * w));
    }
    for (int k = 0; k < ri.zero; ++k) t.factors.push_back(zero_factor());

    std::vector<std::complex<double>> all;
    bool ok = true;
    for (const auto& f : t.factors) {
      for (auto z : factor_roots(f)) {
        if (f.kind != Kind::Zero && std::abs(z) > 4.0 + 1e-12) ok = false;
        all.push_back(z);
      }
    }
    for (std::size_t i = 0; ok && i < all.size(); ++i)
      for (std::size_t j = i + 1; ok && j < all.size(); ++j)
        if (!(all[i] == 0.0 && all[j] == 0.0) && std::abs(all[i] - all[j]) < 0.25) ok = false;
    if (ok) return t;
  }
  return target_poly_for(ri, 0);
}

// ---------------------------------------------------------------------------
// Verification and small helpers

bool verify_witness(const RealizationWitness& w) {
  if (w.matrix.order() != w.pattern.order() || !w.pattern.admits(w.matrix)) return false;
  if (char_poly(w.matrix) != w.charpoly) return false;
  if (w.target && w.target->charpoly() != w.charpoly) return false;
  return exact_refined_inertia(w.charpoly) == w.refined_inertia;
}

namespace {

RealizationWitness make_witness(const ZeroPattern& p, const RationalMatrix& a, std::string method,
                                std::optional<TargetSpectrum> target = std::nullopt) {
  RealizationWitness w;
  w.pattern = p;
  w.matrix = a;
  w.charpoly = char_poly(a);
  w.target = std::move(target);
  w.refined_inertia = exact_refined_inertia(w.charpoly);
  w.method = std::move(method);
  return w;
}

bool subset_of(const ZeroPattern& a, const ZeroPattern& b) {
  for (int r = 0; r < a.order(); ++r)
    if ((a.row_mask(r) & ~b.row_mask(r)) != 0) return false;
  return true;
}

}  // namespace

std::optional<Symmetry> find_embedding(const ZeroPattern& family, const ZeroPattern& p) {
  const int n = p.order();
  if (family.order() != n || n > 8 || family.nnz() > p.nnz()) return std::nullopt;
  if (family.loop_count() > p.loop_count()) return std::nullopt;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  const ZeroPattern t = family.transpose();
  do {
    if (subset_of(family.permuted(perm), p)) return Symmetry{perm, false};
    if (subset_of(t.permuted(perm), p)) return Symmetry{perm, true};
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

namespace {

RationalMatrix companion_matrix(const CharPoly& c) {
  const int n = c.order();
  RationalMatrix a(n);
  for (int k = 0; k < n; ++k) a(k, 0) = (k % 2 == 0) ? c.e[static_cast<std::size_t>(k)] : -c.e[static_cast<std::size_t>(k)];
  for (int k = 0; k + 1 < n; ++k) a(k, k + 1) = 1;
  return a;
}

std::optional<RationalMatrix> companion_embedding(const ZeroPattern& p, const CharPoly& c) {
  if (p.order() < 1) return std::nullopt;
  auto s = find_embedding(companion_pattern(p.order()), p);
  if (!s) return std::nullopt;
  return s->apply(companion_matrix(c));
}

std::optional<RationalMatrix> an_embedding(const ZeroPattern& p, const RefinedInertia& ri) {
  const int n = p.order();
  if (n < 3 || ri.imag != 0) return std::nullopt;
  auto s = find_embedding(an_pattern(n), p);
  if (!s) return std::nullopt;
  return s->apply(an_family_witness(n, ri.inertia()));
}

}  // namespace

// ---------------------------------------------------------------------------
// Loops on a Hamilton cycle

RationalMatrix an_family_witness(int n, const Inertia& target) {
  if (n < 3) throw std::invalid_argument("the Hamilton-cycle construction needs order at least 3");
  if (target.plus < 0 || target.minus < 0 || target.zero < 0 || target.order() != n)
    throw std::invalid_argument("target inertia must sum to the order");

  // Diagonal entries: distinct positives 1, 2, ..., distinct negatives -1, -2, ..., extra zeros.
  int plus = target.plus, minus = target.minus, zeros = target.zero;
  bool shift_up = false, shift = false;
  if (zeros >= 1) {
    --zeros;  // the structural zero eigenvalue of the (n,n) position
  } else {
    shift = true;
    shift_up = plus > 0;
    if (shift_up)
      --plus;
    else
      --minus;
  }
  std::vector<Rational> d;
  for (int k = 1; k <= plus; ++k) d.push_back(k);
  for (int k = 1; k <= minus; ++k) d.push_back(-k);
  for (int k = 0; k < zeros; ++k) d.push_back(0);

  RationalMatrix a(n);
  for (int k = 0; k + 1 < n; ++k) {
    a(k, k) = d[static_cast<std::size_t>(k)];
    a(k, k + 1) = 1;
  }
  if (!shift) return a;

  // f(x) = x * prod(x - d_i); the (n,1) entry c moves the constant term by +-c.
  // Any |c| below every critical value keeps the real roots real and simple,
  // and the root at zero moves to the side fixed by the sign of c.
  Polynomial f = Polynomial::monomial(1);
  for (const auto& di : d) f = f * Polynomial::linear_root(di);
  const Polynomial df = f.derivative();
  long double bound = std::numeric_limits<long double>::infinity();
  if (df.degree() >= 1) {
    for (const auto& z : roots(CharPoly::from_polynomial(df.monic()))) {
      // f at a real critical point (critical points of a real-rooted f are real).
      long double x = z.re, v = 0;
      for (int i = f.degree(); i >= 0; --i) v = v * x + f.coeff(i).get_d();
      bound = std::min(bound, std::fabs(v));
    }
  }
  Rational eps(1);
  while (eps.get_d() > bound / 2) eps /= 2;
  RefinedInertia want{target.plus, target.minus, 0, 0};
  for (int halvings = 0; halvings < 80; ++halvings, eps /= 2) {
    for (int s : {1, -1}) {
      a(n - 1, 0) = s * eps;
      if (exact_refined_inertia(char_poly(a)) == want) return a;
    }
  }
  throw std::logic_error("no admissible shift found for the Hamilton-cycle construction");
}

// ---------------------------------------------------------------------------
// Numeric search

namespace {

struct StartLayout {
  std::vector<std::optional<Rational>> fixed;
  std::vector<int> active;
  std::vector<long double> x;
};

StartLayout make_start(const CoefficientModel& model, int start, std::mt19937_64& rng) {
  const int m = model.variable_count(), n = model.order();
  StartLayout s;
  s.fixed.assign(static_cast<std::size_t>(m), std::nullopt);
  const auto& vars = model.variables();

  // Odd starts force a random set of entries to zero; some witnesses need it.
  if (start % 2 == 1 && m > n) {
    const int z = std::uniform_int_distribution<int>(1, m - n)(rng);
    std::vector<int> idx(static_cast<std::size_t>(m));
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    for (int i = 0; i < z; ++i) s.fixed[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] = Rational(0);
  }
  // Diagonal similarity lets a spanning forest of nonzero arcs be fixed to 1.
  if (start % 4 != 3) {
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
      while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      return v;
    };
    std::vector<int> idx(static_cast<std::size_t>(m));
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    for (int v : idx) {
      const Arc& arc = vars[static_cast<std::size_t>(v)];
      if (arc.row == arc.col || s.fixed[static_cast<std::size_t>(v)]) continue;
      int a = find(arc.row - 1), b = find(arc.col - 1);
      if (a == b) continue;
      parent[static_cast<std::size_t>(a)] = b;
      s.fixed[static_cast<std::size_t>(v)] = Rational(1);
    }
  }
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  s.x.resize(static_cast<std::size_t>(m));
  for (int v = 0; v < m; ++v) {
    if (s.fixed[static_cast<std::size_t>(v)]) {
      s.x[static_cast<std::size_t>(v)] = s.fixed[static_cast<std::size_t>(v)]->get_d();
      continue;
    }
    double val;
    do val = u(rng);
    while (std::fabs(val) < 0.1);
    s.x[static_cast<std::size_t>(v)] = val;
    s.active.push_back(v);
  }
  return s;
}

// Refined inertias with no zero or imaginary eigenvalues are open conditions:
// every matrix close enough to a numeric solution has the same refined
// inertia, so rounding the free entries yields an exact witness even when the
// solution itself is irrational.
bool is_open(const RefinedInertia& ri) { return ri.zero == 0 && ri.imag == 0; }

std::optional<RationalMatrix> round_to_inertia(const CoefficientModel& model, const std::vector<long double>& x,
                                               const std::vector<std::optional<Rational>>& fixed,
                                               const RefinedInertia& ri) {
  static const std::uint64_t dens[] = {1, 2, 4, 8, 16, 64, 256, 1024, 10000, 1000000};
  std::vector<Rational> values(x.size());
  for (auto d : dens) {
    for (std::size_t v = 0; v < x.size(); ++v) values[v] = fixed[v] ? *fixed[v] : rationalize(x[v], d);
    RationalMatrix a = model.to_matrix(values);
    if (exact_refined_inertia(char_poly(a)) == ri) return a;
  }
  return std::nullopt;
}

std::optional<RationalMatrix> numeric_search(const CoefficientModel& model, const CharPoly& target, int starts,
                                             std::uint64_t seed, int first_start = 0,
                                             std::optional<RefinedInertia> open_ri = std::nullopt) {
  const FixedTarget ft(target);
  for (int s = first_start; s < first_start + starts; ++s) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(s)));
    StartLayout layout = make_start(model, s, rng);
    SolveState state;
    state.x = layout.x;
    state.active = layout.active;
    if (!gauss_newton(model, ft, state)) continue;
    if (auto a = exactify(model, target, state.x, layout.fixed, rng, 3)) return a;
    if (open_ri)
      if (auto a = round_to_inertia(model, state.x, layout.fixed, *open_ri)) return a;
  }
  return std::nullopt;
}

// Target whose roots move with the solution. Parameters are logarithms of
// root data so every free root keeps its half-plane.
struct FlexFactor {
  Kind kind;
  int side;  // +1 right half-plane, -1 left (unused for Imaginary and Zero)
  std::optional<Rational> a, b;  // exact values once rounded
};

class FlexibleTarget : public TargetModel {
 public:
  FlexibleTarget(std::vector<FlexFactor> factors, int n) : factors_(std::move(factors)), n_(n) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const auto& f = factors_[i];
      if (f.kind == Kind::Zero) continue;
      if (!f.a) slots_.push_back({i, 0});
      if (f.kind == Kind::Complex && !f.b) slots_.push_back({i, 1});
    }
  }

  int parameter_count() const override { return static_cast<int>(slots_.size()); }

  /// Factor data (a, b) in natural units for the current theta.
  void values(const std::vector<long double>& theta, std::vector<long double>& a, std::vector<long double>& b) const {
    a.assign(factors_.size(), 0.0L);
    b.assign(factors_.size(), 0.0L);
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (factors_[i].a) a[i] = factors_[i].a->get_d();
      if (factors_[i].b) b[i] = factors_[i].b->get_d();
    }
    for (std::size_t j = 0; j < slots_.size(); ++j) {
      const auto& [i, which] = slots_[j];
      const auto& f = factors_[i];
      const long double ev = std::exp(theta[j]);
      if (which == 1)
        b[i] = ev;
      else if (f.kind == Kind::Imaginary)
        a[i] = ev;
      else
        a[i] = f.side * ev;
    }
  }

  void evaluate(const std::vector<long double>& theta, std::vector<long double>& e,
                std::vector<std::vector<long double>>* de) const override {
    std::vector<long double> a, b;
    values(theta, a, b);
    std::vector<std::vector<long double>> polys(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) polys[i] = factor_coeffs(factors_[i].kind, a[i], b[i]);
    e = to_e(product(polys, factors_.size()));
    if (!de) return;
    de->assign(static_cast<std::size_t>(n_), std::vector<long double>(slots_.size(), 0.0L));
    for (std::size_t j = 0; j < slots_.size(); ++j) {
      const auto& [i, which] = slots_[j];
      const auto& f = factors_[i];
      // d(factor)/d(theta_j) with theta the logarithm of |a| or b.
      std::vector<long double> dp;
      if (f.kind == Kind::Real) {
        dp = {-a[i], 0};
      } else if (f.kind == Kind::Imaginary) {
        dp = {a[i], 0, 0};
      } else if (which == 0) {
        dp = {2 * a[i] * a[i], -2 * a[i], 0};
      } else {
        dp = {b[i], 0, 0};
      }
      auto saved = polys[i];
      polys[i] = dp;
      auto col = to_e_raw(product(polys, factors_.size()));
      polys[i] = saved;
      for (int k = 0; k < n_; ++k) (*de)[static_cast<std::size_t>(k)][j] = col[static_cast<std::size_t>(k)];
    }
  }

  std::vector<FlexFactor> factors_;

 private:
  static std::vector<long double> factor_coeffs(Kind kind, long double a, long double b) {
    switch (kind) {
      case Kind::Real: return {-a, 1};
      case Kind::Zero: return {0, 1};
      case Kind::Imaginary: return {a, 0, 1};
      case Kind::Complex: return {a * a + b, -2 * a, 1};
    }
    return {1};
  }
  static std::vector<long double> product(const std::vector<std::vector<long double>>& polys, std::size_t count) {
    std::vector<long double> acc{1};
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<long double> next(acc.size() + polys[i].size() - 1, 0.0L);
      for (std::size_t x = 0; x < acc.size(); ++x)
        for (std::size_t y = 0; y < polys[i].size(); ++y) next[x + y] += acc[x] * polys[i][y];
      acc = std::move(next);
    }
    return acc;
  }
  // Coefficient of x^{n-k} is (-1)^k E_k.
  std::vector<long double> to_e(const std::vector<long double>& c) const { return to_e_raw(c); }
  std::vector<long double> to_e_raw(const std::vector<long double>& c) const {
    std::vector<long double> e(static_cast<std::size_t>(n_), 0.0L);
    for (int k = 1; k <= n_; ++k) {
      const std::size_t idx = static_cast<std::size_t>(n_ - k);
      const long double v = idx < c.size() ? c[idx] : 0.0L;
      e[static_cast<std::size_t>(k - 1)] = (k % 2 == 0) ? v : -v;
    }
    return e;
  }

  std::vector<std::pair<std::size_t, int>> slots_;
  int n_;
};

std::vector<std::vector<FlexFactor>> flexible_layouts(const RefinedInertia& ri) {
  std::vector<std::vector<FlexFactor>> out;
  std::vector<std::pair<int, int>> pairings = {{0, 0}, {ri.plus / 2, ri.minus / 2}, {ri.plus / 2, 0}, {0, ri.minus / 2}};
  std::sort(pairings.begin(), pairings.end());
  pairings.erase(std::unique(pairings.begin(), pairings.end()), pairings.end());
  for (auto [pp, pm] : pairings) {
    std::vector<FlexFactor> fs;
    for (int side : {1, -1}) {
      const int count = side > 0 ? ri.plus : ri.minus;
      const int pairs = side > 0 ? pp : pm;
      for (int k = 0; k < pairs; ++k) fs.push_back({Kind::Complex, side, {}, {}});
      for (int k = 0; k < count - 2 * pairs; ++k) fs.push_back({Kind::Real, side, {}, {}});
    }
    for (int k = 0; k < ri.imag / 2; ++k) fs.push_back({Kind::Imaginary, 1, {}, {}});
    for (int k = 0; k < ri.zero; ++k) fs.push_back({Kind::Zero, 1, Rational(0), Rational(0)});
    out.push_back(std::move(fs));
  }
  return out;
}

std::vector<Rational> positive_candidates(long double v) {
  std::vector<Rational> out;
  static const std::uint64_t dens[] = {1, 2, 4, 10, 100, 10000, 1000000};
  for (auto d : dens) {
    Rational r = rationalize(v, d);
    if (r <= 0) continue;
    if (std::fabs(r.get_d() - static_cast<double>(v)) > 0.25 * (1 + std::fabs(static_cast<double>(v)))) continue;
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  }
  return out;
}

// Spends the remaining degrees of freedom on matrix entries instead of on the
// spectrum: entries are rounded one at a time (re-solving after each), then
// the coefficients are rationalized and the last entries solved exactly. The
// roots of the result may be irrational; its refined inertia is checked
// exactly by the caller.
std::optional<RationalMatrix> round_entries_first(const CoefficientModel& model, const FlexibleTarget& flex,
                                                  SolveState state, std::vector<std::optional<Rational>> fixed,
                                                  std::mt19937_64& rng) {
  const int n = model.order();
  int dof = static_cast<int>(state.active.size() + state.theta.size()) - n;
  std::shuffle(state.active.begin(), state.active.end(), rng);
  SolveSettings settings;
  settings.max_iterations = 60;
  while (dof > 0 && !state.active.empty()) {
    const int v = state.active.back();
    bool placed = false;
    for (std::uint64_t d : {1ULL, 2ULL, 4ULL, 3ULL, 8ULL}) {
      SolveState trial = state;
      trial.active.pop_back();
      const Rational r = rationalize(state.x[static_cast<std::size_t>(v)], d);
      trial.x[static_cast<std::size_t>(v)] = r.get_d();
      if (!gauss_newton(model, flex, trial, settings)) continue;
      fixed[static_cast<std::size_t>(v)] = r;
      state = std::move(trial);
      placed = true;
      break;
    }
    if (!placed) return std::nullopt;
    --dof;
  }
  std::vector<long double> e;
  model.evaluate(state.x, e);
  for (std::uint64_t d : {1ULL, 4ULL, 16ULL, 36ULL, 144ULL}) {
    CharPoly target;
    for (long double v : e) target.e.push_back(rationalize(v, d));
    if (auto a = exactify(model, target, state.x, fixed, rng, 2)) return a;
  }
  return std::nullopt;
}

std::optional<std::pair<RationalMatrix, TargetSpectrum>> flexible_search(const CoefficientModel& model,
                                                                         const RefinedInertia& ri, int starts,
                                                                         std::uint64_t seed) {
  const int n = model.order();
  const auto layouts = flexible_layouts(ri);
  for (int s = 0; s < starts; ++s) {
    const auto& layout = layouts[static_cast<std::size_t>(s) % layouts.size()];
    std::mt19937_64 rng(mix_seed(seed ^ 0xf1e8ULL, static_cast<std::uint64_t>(s)));
    StartLayout start = make_start(model, s / static_cast<int>(layouts.size()), rng);
    FlexibleTarget flex(layout, n);
    SolveState state;
    state.x = start.x;
    state.active = start.active;
    std::uniform_real_distribution<double> logu(std::log(0.5), std::log(3.0));
    state.theta.resize(static_cast<std::size_t>(flex.parameter_count()));
    for (auto& t : state.theta) t = logu(rng);
    if (!gauss_newton(model, flex, state)) continue;
    if (is_open(ri)) {
      if (auto a = round_to_inertia(model, state.x, start.fixed, ri)) return std::make_pair(*a, TargetSpectrum{{}, ri});
    } else if (auto a = round_entries_first(model, flex, state, start.fixed, rng)) {
      if (exact_refined_inertia(char_poly(*a)) == ri) return std::make_pair(*a, TargetSpectrum{{}, ri});
    }

    // Fix the spectrum one parameter at a time, re-solving after each choice.
    std::vector<FlexFactor> factors = layout;
    bool ok = true;
    while (ok) {
      FlexibleTarget cur(factors, n);
      if (cur.parameter_count() == 0) break;
      std::vector<long double> a, b;
      cur.values(state.theta, a, b);
      // First open slot.
      std::size_t fi = 0;
      int which = 0;
      for (; fi < factors.size(); ++fi) {
        if (factors[fi].kind == Kind::Zero) continue;
        if (!factors[fi].a) { which = 0; break; }
        if (factors[fi].kind == Kind::Complex && !factors[fi].b) { which = 1; break; }
      }
      const long double value = which == 1 ? b[fi] : std::fabs(a[fi]);
      bool placed = false;
      for (const auto& cand : positive_candidates(value)) {
        auto trial = factors;
        if (which == 1)
          trial[fi].b = cand;
        else
          trial[fi].a = (trial[fi].kind == Kind::Imaginary ? 1 : trial[fi].side) * cand;
        FlexibleTarget next(trial, n);
        // Carry theta over, dropping the slot just fixed.
        std::vector<long double> theta;
        {
          std::size_t j = 0;
          for (std::size_t i = 0; i < factors.size(); ++i) {
            if (factors[i].kind == Kind::Zero) continue;
            if (!factors[i].a) {
              if (!(i == fi && which == 0)) theta.push_back(state.theta[j]);
              ++j;
            }
            if (factors[i].kind == Kind::Complex && !factors[i].b) {
              if (!(i == fi && which == 1)) theta.push_back(state.theta[j]);
              ++j;
            }
          }
        }
        SolveState polished = state;
        polished.theta = theta;
        polished.active.clear();
        for (int v = 0; v < model.variable_count(); ++v)
          if (!start.fixed[static_cast<std::size_t>(v)]) polished.active.push_back(v);
        SolveSettings settings;
        settings.max_iterations = 60;
        if (gauss_newton(model, next, polished, settings)) {
          factors = std::move(trial);
          state = std::move(polished);
          placed = true;
          break;
        }
      }
      ok = placed;
    }
    if (!ok) continue;

    TargetSpectrum spectrum;
    spectrum.refined_inertia = ri;
    for (const auto& f : factors) spectrum.factors.push_back({f.kind, f.a.value_or(0), f.b.value_or(0)});
    const CharPoly target = spectrum.charpoly();
    if (auto m = exactify(model, target, state.x, start.fixed, rng, 3)) return std::make_pair(*m, spectrum);
  }
  return std::nullopt;
}

RationalMatrix path_base(int alpha, const RefinedInertia& ri, bool& ok) {
  // Order 1: the loop itself.
  (void)alpha;
  RationalMatrix a(1);
  ok = true;
  if (ri.plus == 1)
    a(0, 0) = 1;
  else if (ri.minus == 1)
    a(0, 0) = -1;
  else if (ri.zero == 1)
    a(0, 0) = 0;
  else
    ok = false;
  return a;
}

bool fits(const RefinedInertia& block, const RefinedInertia& ri) {
  return block.plus <= ri.plus && block.minus <= ri.minus && block.zero <= ri.zero && block.imag <= ri.imag;
}

RefinedInertia minus_ri(const RefinedInertia& a, const RefinedInertia& b) {
  return {a.plus - b.plus, a.minus - b.minus, a.zero - b.zero, a.imag - b.imag};
}

}  // namespace

// ---------------------------------------------------------------------------
// Path patterns from 2x2 blocks

namespace {

std::optional<RationalMatrix> path_blocks(int n, int alpha, const RefinedInertia& ri, const RealizeOptions& opts,
                                          bool top) {
  if (alpha < 1 || alpha > n || ri.order() != n) return std::nullopt;
  if (n == 1) {
    bool ok = false;
    auto a = path_base(alpha, ri, ok);
    if (ok) return a;
    return std::nullopt;
  }
  struct Block {
    RefinedInertia ri;
    Rational m01, m10;
  };
  static const Block blocks[] = {
      {{1, 1, 0, 0}, 1, 1},
      {{0, 0, 0, 2}, -1, 1},
      {{0, 0, 2, 0}, 0, 0},
  };
  for (const auto& blk : blocks) {
    if (!fits(blk.ri, ri)) continue;
    const RefinedInertia rest = minus_ri(ri, blk.ri);
    // Block on vertices {1, 2}; the remaining path keeps the loop.
    if (alpha >= 3) {
      if (auto sub = path_blocks(n - 2, alpha - 2, rest, opts, false)) {
        RationalMatrix a(n);
        a(0, 1) = blk.m01;
        a(1, 0) = blk.m10;
        for (int i = 0; i < n - 2; ++i)
          for (int j = 0; j < n - 2; ++j) a(i + 2, j + 2) = (*sub)(i, j);
        return a;
      }
    }
    // Block on vertices {n-1, n}.
    if (alpha <= n - 2) {
      if (auto sub = path_blocks(n - 2, alpha, rest, opts, false)) {
        RationalMatrix a(n);
        for (int i = 0; i < n - 2; ++i)
          for (int j = 0; j < n - 2; ++j) a(i, j) = (*sub)(i, j);
        a(n - 2, n - 1) = blk.m01;
        a(n - 1, n - 2) = blk.m10;
        return a;
      }
    }
  }
  // No block peels off: a short search on the remaining small path. The
  // caller runs the full search on the whole pattern anyway.
  if (top) return std::nullopt;
  RealizeOptions inner = opts;
  inner.use_constructions = false;
  inner.starts = std::min(opts.starts, 16);
  inner.target_seeds = 1;
  inner.flexible_targets = false;
  if (auto w = realize_refined_inertia(path_pattern(n, alpha), ri, inner)) return w->matrix;
  return std::nullopt;
}

}  // namespace

std::optional<RationalMatrix> path_block_witness(int n, int alpha, const RefinedInertia& ri, const RealizeOptions& opts) {
  return path_blocks(n, alpha, ri, opts, true);
}

// ---------------------------------------------------------------------------
// Public entry points

std::optional<RealizationWitness> realize_charpoly(const ZeroPattern& p, const CharPoly& target,
                                                   const RealizeOptions& opts) {
  if (target.order() != p.order()) throw std::invalid_argument("target degree differs from the pattern order");
  if (opts.use_constructions) {
    if (auto a = companion_embedding(p, target)) return make_witness(p, *a, "construction");
  }
  CoefficientModel model(p);
  if (auto a = numeric_search(model, target, opts.starts, opts.seed, opts.first_start))
    return make_witness(p, *a, "newton");
  return std::nullopt;
}

std::optional<RealizationWitness> realize_refined_inertia(const ZeroPattern& p, const RefinedInertia& ri,
                                                          const RealizeOptions& opts) {
  const int n = p.order();
  if (ri.order() != n) throw std::invalid_argument("refined inertia does not sum to the pattern order");
  if (ri.imag % 2 != 0) throw std::invalid_argument("refined inertia needs an even number of imaginary eigenvalues");

  auto accept = [&](const RationalMatrix& a, const char* method, std::optional<TargetSpectrum> t)
      -> std::optional<RealizationWitness> {
    RealizationWitness w = make_witness(p, a, method, std::move(t));
    if (w.refined_inertia == ri && verify_witness(w)) return w;
    return std::nullopt;
  };

  const TargetSpectrum reference = target_poly_for(ri, 0);
  if (opts.use_constructions && n <= 8) {
    if (auto a = companion_embedding(p, reference.charpoly()))
      if (auto w = accept(*a, "construction", reference)) return w;
    if (auto a = an_embedding(p, ri))
      if (auto w = accept(*a, "construction", std::nullopt)) return w;
    for (int alpha = 1; alpha <= n; ++alpha) {
      auto s = find_embedding(path_pattern(n, alpha), p);
      if (!s) continue;
      if (auto a = path_block_witness(n, alpha, ri, opts))
        if (auto w = accept(s->apply(*a), "construction", std::nullopt)) return w;
    }
  }

  CoefficientModel model(p);
  for (int t = 0; t < std::max(1, opts.target_seeds); ++t) {
    const TargetSpectrum target = t == 0 ? reference : target_poly_for(ri, mix_seed(opts.seed, static_cast<std::uint64_t>(t)));
    if (t > 0 && target.charpoly() == reference.charpoly()) continue;
    const auto open = is_open(ri) ? std::optional<RefinedInertia>(ri) : std::nullopt;
    if (auto a = numeric_search(model, target.charpoly(), opts.starts, mix_seed(opts.seed + 17, static_cast<std::uint64_t>(t)),
                                opts.first_start, open)) {
      // A rounded solution realizes the refined inertia but not the target itself.
      const bool hit = char_poly(*a) == target.charpoly();
      if (auto w = accept(*a, hit ? "newton" : "rounded", hit ? std::optional<TargetSpectrum>(target) : std::nullopt)) return w;
    }
  }
  if (opts.flexible_targets) {
    if (auto found = flexible_search(model, ri, opts.starts, opts.seed)) {
      const bool hit = !found->second.factors.empty();
      if (auto w = accept(found->first, hit ? "newton" : "rounded", hit ? std::optional<TargetSpectrum>(found->second) : std::nullopt))
        return w;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Survey

bool SurveyResult::realized(const RefinedInertia& ri) const {
  auto it = witnesses.find(ri);
  return it != witnesses.end() && it->second.has_value();
}

bool SurveyResult::all_inertias_realized(int n) const {
  for (const auto& in : all_inertias(n)) {
    bool hit = false;
    for (const auto& [ri, w] : witnesses)
      if (w && ri.inertia() == in) hit = true;
    if (!hit) return false;
  }
  return true;
}

bool SurveyResult::all_refined_realized(int n) const {
  for (const auto& ri : all_refined_inertias(n))
    if (!realized(ri)) return false;
  return true;
}

namespace {

RealizationWitness negated(const RealizationWitness& w) {
  RealizationWitness out = w;
  out.matrix = -w.matrix;
  out.charpoly = char_poly(out.matrix);
  out.refined_inertia = w.refined_inertia.reversal();
  out.method = "negation";
  if (w.target) {
    TargetSpectrum t = *w.target;
    t.refined_inertia = t.refined_inertia.reversal();
    for (auto& f : t.factors)
      if (f.kind == Kind::Real || f.kind == Kind::Complex) f.a = -f.a;
    out.target = t;
  }
  return out;
}

}  // namespace

SurveyResult survey(const ZeroPattern& p, const SurveyOptions& opts) {
  const int n = p.order();
  const auto targets = opts.targets.empty() ? all_refined_inertias(n) : opts.targets;
  const auto obstructions = run_all_obstructions(p);
  SurveyResult result;
  bool stopped = false;
  for (const auto& ri : targets) {
    // Already settled through its reversal.
    if (result.witnesses.count(ri)) continue;
    if (opts.skip_refuted && any_refutes(obstructions, ri)) {
      result.refuted.push_back(ri);
      result.witnesses[ri] = std::nullopt;
      continue;
    }
    if (stopped) {
      result.unattempted.push_back(ri);
      continue;
    }
    std::optional<RealizationWitness> w = realize_refined_inertia(p, ri, opts.realize);
    const RefinedInertia rev = ri.reversal();
    if (!w && rev != ri && !(opts.skip_refuted && any_refutes(obstructions, rev))) {
      if (auto wr = realize_refined_inertia(p, rev, opts.realize)) w = negated(*wr);
    }
    if (w) {
      if (!result.witnesses.count(rev) && rev != ri) result.witnesses[rev] = negated(*w);
      result.witnesses[ri] = std::move(w);
    } else {
      result.witnesses[ri] = std::nullopt;
      if (rev != ri && !result.witnesses.count(rev)) result.witnesses[rev] = std::nullopt;
      if (opts.stop_on_failure) stopped = true;
    }
  }
  return result;
}

}  // namespace patternforge
