#include "patternforge/nilpotent_nc.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "patternforge/families.hpp"
#include "patternforge/realization.hpp"
#include "patternforge/solver.hpp"

namespace patternforge {

std::string to_string(NcVerdict v) {
  switch (v) {
    case NcVerdict::SapCertified: return "SAP_certified";
    case NcVerdict::TestFailed: return "test_failed";
    case NcVerdict::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

NcVerdict parse_nc_verdict(const std::string& text) {
  if (text == "SAP_certified") return NcVerdict::SapCertified;
  if (text == "test_failed") return NcVerdict::TestFailed;
  if (text == "indeterminate") return NcVerdict::Indeterminate;
  throw std::invalid_argument("unknown NC verdict: " + text);
}

int nilpotent_index(const QuadMatrix& a) {
  const int n = a.order();
  QuadMatrix power = a;
  for (int k = 1; k <= std::max(n, 1); ++k) {
    if (power.is_zero()) return k;
    power = power * a;
  }
  throw std::invalid_argument("matrix is not nilpotent");
}

int nilpotent_index(const RationalMatrix& a) { return nilpotent_index(QuadMatrix(a)); }

std::optional<RationalMatrix> find_nilpotent(const ZeroPattern& p, const NilpotentOptions& opts) {
  CharPoly target;
  target.e.assign(static_cast<std::size_t>(p.order()), Rational(0));
  RealizeOptions ro;
  ro.starts = opts.attempts;
  ro.seed = opts.seed;
  auto w = realize_charpoly(p, target, ro);
  if (!w) return std::nullopt;
  return w->matrix;
}

NcCertificate nc_test(const ZeroPattern& p, const QuadMatrix& a) {
  const int n = p.order();
  if (a.order() != n) throw std::invalid_argument("matrix order differs from the pattern order");
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (!a(r, c).is_zero() && !p.has(r + 1, c + 1)) throw std::invalid_argument("matrix does not conform to the pattern");
  a.radicand();  // throws on mixed fields
  NcCertificate cert;
  cert.pattern = p;
  cert.nilpotent = a;
  cert.index = nilpotent_index(a);
  // Unknown B(i,j) sits at column i*n + j.
  const std::size_t m = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  std::vector<std::vector<QuadraticNumber>> rows;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // (AB - BA)(i,j) = sum_k A(i,k) B(k,j) - B(i,k) A(k,j)
      std::vector<QuadraticNumber> row(m);
      bool any = false;
      for (int k = 0; k < n; ++k) {
        if (!a(i, k).is_zero()) {
          row[static_cast<std::size_t>(k * n + j)] += a(i, k);
          any = true;
        }
        if (!a(k, j).is_zero()) {
          row[static_cast<std::size_t>(i * n + k)] -= a(k, j);
          any = true;
        }
      }
      if (any) rows.push_back(std::move(row));
    }
  }
  for (const auto& arc : p.support()) {
    std::vector<QuadraticNumber> row(m);
    row[static_cast<std::size_t>((arc.col - 1) * n + (arc.row - 1))] = 1;
    rows.push_back(std::move(row));
  }
  cert.centralizer_rank_deficiency = static_cast<int>(m - quadratic_rank(std::move(rows)));
  if (cert.index < n)
    cert.verdict = NcVerdict::Indeterminate;
  else
    cert.verdict = cert.centralizer_rank_deficiency == 0 ? NcVerdict::SapCertified : NcVerdict::TestFailed;
  return cert;
}

NcCertificate nc_test(const ZeroPattern& p, const RationalMatrix& a) { return nc_test(p, QuadMatrix(a)); }

bool verify_certificate(const NcCertificate& c) {
  try {
    const NcCertificate again = nc_test(c.pattern, c.nilpotent);
    return again.index == c.index && again.centralizer_rank_deficiency == c.centralizer_rank_deficiency &&
           again.verdict == c.verdict;
  } catch (const std::exception&) {
    return false;
  }
}

QuadMatrix bordered_nilpotent(const QuadMatrix& m) {
  const int k = m.order();
  QuadMatrix out(k + 1);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) out(i, j) = m(i, j);
  if (k > 0) out(k - 1, k) = 1;
  return out;
}

std::optional<QuadraticNumber> recognize_quadratic(long double value, int d, int max_denominator, long double tol) {
  if (!is_squarefree(d)) throw std::invalid_argument("radicand must be squarefree and > 1");
  const long double root = std::sqrt(static_cast<long double>(d));
  for (int q = 1; q <= max_denominator; ++q) {
    const long double target = value * q;
    const long double rational_part = std::round(target);
    if (std::fabs(rational_part - target) < tol * q)
      return QuadraticNumber(Rational(static_cast<long>(rational_part)) / q);
    const long bound = static_cast<long>((std::fabs(target) + 4.0L * q) / root) + 1;
    for (long b = 1; b <= bound; ++b) {
      for (long sb : {b, -b}) {
        const long double rest = target - static_cast<long double>(sb) * root;
        const long double a = std::round(rest);
        if (std::fabs(a - rest) < tol * q)
          return QuadraticNumber(Rational(static_cast<long>(a)) / q, Rational(sb) / q, d);
      }
    }
  }
  return std::nullopt;
}

namespace {

bool better(const NcCertificate& a, const std::optional<NcCertificate>& best) {
  if (!best) return true;
  if (a.index != best->index) return a.index > best->index;
  return a.centralizer_rank_deficiency < best->centralizer_rank_deficiency;
}

std::vector<std::vector<int>> hamilton_paths(const ZeroPattern& p, std::size_t limit) {
  const int n = p.order();
  std::vector<std::vector<int>> out;
  std::vector<int> path;
  std::uint32_t used = 0;
  auto dfs = [&](auto&& self) -> void {
    if (out.size() >= limit) return;
    if (static_cast<int>(path.size()) == n) {
      out.push_back(path);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if ((used >> v) & 1u) continue;
      if (!path.empty() && !p.has(path.back() + 1, v + 1)) continue;
      path.push_back(v);
      used |= 1u << v;
      self(self);
      used &= ~(1u << v);
      path.pop_back();
    }
  };
  dfs(dfs);
  return out;
}

// A nilpotent for the path with loops at 1 and n-1 bordered by a pendant vertex.
std::optional<QuadMatrix> bordered_candidate(const ZeroPattern& p, const NilpotentOptions& opts) {
  const int n = p.order();
  if (n < 3 || n > 8) return std::nullopt;
  const ZeroPattern w = w_pattern(n);
  if (w.nnz() != p.nnz()) return std::nullopt;
  auto s = find_embedding(w, p);
  if (!s) return std::nullopt;
  NilpotentOptions inner = opts;
  inner.seed = mix_seed(opts.seed, 0x7E11);
  auto m = certify_sap(t_pattern(n - 1), inner);
  if (!m || m->verdict != NcVerdict::SapCertified) return std::nullopt;
  const QuadMatrix b = bordered_nilpotent(m->nilpotent);
  // Relabel: entry (i,j) of b moves to (perm[i], perm[j]), transposed first if needed.
  QuadMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int r = s->perm[static_cast<std::size_t>(i)], c = s->perm[static_cast<std::size_t>(j)];
      if (s->transpose)
        out(c, r) = b(i, j);
      else
        out(r, c) = b(i, j);
    }
  return out;
}

// Union-find over vertices to pick arcs forming a forest of the underlying graph.
int find_root(std::vector<int>& parent, int v) {
  while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
  return v;
}

// Fix a random spanning forest of non-loop arcs to 1 (diagonal similarity) and one
// more entry to 1 (scaling); fix further entries to small rationals until the
// remaining system is square, solve it, and recognize the solution in Q(sqrt d).
std::optional<QuadMatrix> algebraic_candidate(const CoefficientModel& model, std::mt19937_64& rng) {
  const int n = model.order();
  const int m = model.variable_count();
  if (m < n) return std::nullopt;
  const auto& vars = model.variables();
  std::vector<std::optional<Rational>> fixed(static_cast<std::size_t>(m));
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  for (int v : order) {
    const Arc& a = vars[static_cast<std::size_t>(v)];
    if (a.row == a.col) continue;
    const int x = find_root(parent, a.row - 1), y = find_root(parent, a.col - 1);
    if (x == y) continue;
    parent[static_cast<std::size_t>(x)] = y;
    fixed[static_cast<std::size_t>(v)] = Rational(1);
  }
  std::vector<int> free;
  for (int v : order)
    if (!fixed[static_cast<std::size_t>(v)]) free.push_back(v);
  if (free.empty()) return std::nullopt;
  fixed[static_cast<std::size_t>(free.back())] = Rational(1);
  free.pop_back();
  static const int small[] = {1, -1, 2, -2};
  std::uniform_int_distribution<int> pick(0, 3), halve(0, 1);
  while (static_cast<int>(free.size()) > n) {
    Rational r(small[pick(rng)]);
    if (halve(rng)) r /= 2;
    fixed[static_cast<std::size_t>(free.back())] = r;
    free.pop_back();
  }
  if (static_cast<int>(free.size()) != n) return std::nullopt;
  std::sort(free.begin(), free.end());

  std::uniform_real_distribution<double> init(-2.0, 2.0);
  std::vector<long double> x(static_cast<std::size_t>(m));
  for (int v = 0; v < m; ++v) x[static_cast<std::size_t>(v)] = fixed[static_cast<std::size_t>(v)] ? fixed[static_cast<std::size_t>(v)]->get_d() : init(rng);
  CharPoly target;
  target.e.assign(static_cast<std::size_t>(n), Rational(0));
  const FixedTarget ft(target);
  SolveState state;
  state.x = x;
  state.active = free;
  if (!gauss_newton(model, ft, state)) return std::nullopt;
  x = state.x;
  // Plain Newton polish on the square system.
  using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  std::vector<long double> e;
  std::vector<std::vector<long double>> jac;
  for (int it = 0; it < 8; ++it) {
    model.evaluate(x, e);
    model.jacobian(x, free, jac);
    Mat j(n, n);
    Vec f(n);
    for (int k = 0; k < n; ++k) {
      f(k) = e[static_cast<std::size_t>(k)];
      for (int c = 0; c < n; ++c) j(k, c) = jac[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)];
    }
    Eigen::FullPivLU<Mat> lu(j);
    if (lu.rank() < n) return std::nullopt;
    const Vec step = lu.solve(f);
    for (int c = 0; c < n; ++c) x[static_cast<std::size_t>(free[static_cast<std::size_t>(c)])] -= step(c);
  }
  model.evaluate(x, e);
  for (long double v : e)
    if (std::fabs(v) > 1e-14L) return std::nullopt;
  for (int d = 2; d <= 30; ++d) {
    if (!is_squarefree(d)) continue;
    QuadMatrix a(n);
    bool ok = true;
    for (int v = 0; v < m && ok; ++v) {
      const Arc& arc = vars[static_cast<std::size_t>(v)];
      if (fixed[static_cast<std::size_t>(v)]) {
        a(arc.row - 1, arc.col - 1) = *fixed[static_cast<std::size_t>(v)];
        continue;
      }
      auto q = recognize_quadratic(x[static_cast<std::size_t>(v)], d);
      if (!q) ok = false;
      else a(arc.row - 1, arc.col - 1) = *q;
    }
    if (!ok) continue;
    QuadMatrix power = a;
    for (int k = 1; k < n; ++k) power = power * a;
    if (power.is_zero()) return a;
  }
  return std::nullopt;
}

}  // namespace

std::optional<NcCertificate> certify_sap(const ZeroPattern& p, const NilpotentOptions& opts) {
  const int n = p.order();
  std::optional<NcCertificate> best;
  auto consider = [&](const QuadMatrix& a, const char* source) {
    NcCertificate c = nc_test(p, a);
    c.source = source;
    const bool done = c.verdict == NcVerdict::SapCertified;
    if (better(c, best)) best = std::move(c);
    return done;
  };
  for (const auto& path : hamilton_paths(p, 64)) {
    QuadMatrix a(n);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) a(path[i], path[i + 1]) = 1;
    if (consider(a, "hamilton-path")) return best;
  }
  if (auto a = bordered_candidate(p, opts)) {
    if (consider(*a, "bordered")) return best;
  }
  CharPoly target;
  target.e.assign(static_cast<std::size_t>(n), Rational(0));
  RealizeOptions ro;
  ro.starts = 1;
  ro.seed = opts.seed;
  ro.use_constructions = false;
  for (int t = 0; t < opts.attempts; ++t) {
    ro.first_start = t;
    auto w = realize_charpoly(p, target, ro);
    if (w && consider(QuadMatrix(w->matrix), "newton")) return best;
  }
  const CoefficientModel model(p);
  for (int t = 0; t < opts.algebraic_attempts; ++t) {
    std::mt19937_64 rng(mix_seed(opts.seed ^ 0xA16EB7A1CULL, static_cast<std::uint64_t>(t)));
    if (auto a = algebraic_candidate(model, rng)) {
      if (consider(*a, "algebraic")) return best;
    }
  }
  return best;
}

}  // namespace patternforge
