#include "patternforge/solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

#include <Eigen/Dense>

namespace patternforge {

namespace {

using MatLD = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using VecLD = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

long double to_ld(const Rational& q) {
  // mpq -> double loses little; refine with the remainder for long double accuracy.
  double hi = q.get_d();
  Rational rest = q - exact_from_double(hi);
  return static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CoefficientModel::CoefficientModel(const ZeroPattern& p) : pattern_(p), vars_(p.support()) {
  const int n = p.order();
  index_.assign(static_cast<std::size_t>(n * n), -1);
  for (std::size_t v = 0; v < vars_.size(); ++v) {
    index_[static_cast<std::size_t>((vars_[v].row - 1) * n + vars_[v].col - 1)] = static_cast<int>(v);
  }
  auto polys = symbolic_coefficients(p);
  eqs_.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    for (const auto& [mask, coef] : polys[static_cast<std::size_t>(k)].terms) {
      Term t;
      t.coef = coef;
      for (std::uint64_t m = mask; m; m &= m - 1) t.vars.push_back(std::countr_zero(m));
      eqs_[static_cast<std::size_t>(k)].push_back(std::move(t));
    }
  }
}

int CoefficientModel::variable_index(int row0, int col0) const {
  return index_[static_cast<std::size_t>(row0 * order() + col0)];
}

void CoefficientModel::evaluate(const std::vector<long double>& x, std::vector<long double>& e) const {
  e.assign(eqs_.size(), 0.0L);
  for (std::size_t k = 0; k < eqs_.size(); ++k) {
    long double s = 0;
    for (const auto& t : eqs_[k]) {
      long double prod = static_cast<long double>(t.coef);
      for (int v : t.vars) prod *= x[static_cast<std::size_t>(v)];
      s += prod;
    }
    e[k] = s;
  }
}

void CoefficientModel::jacobian(const std::vector<long double>& x, const std::vector<int>& cols,
                                std::vector<std::vector<long double>>& jac) const {
  std::vector<int> position(vars_.size(), -1);
  for (std::size_t c = 0; c < cols.size(); ++c) position[static_cast<std::size_t>(cols[c])] = static_cast<int>(c);
  jac.assign(eqs_.size(), std::vector<long double>(cols.size(), 0.0L));
  std::vector<long double> prefix, suffix;
  for (std::size_t k = 0; k < eqs_.size(); ++k) {
    for (const auto& t : eqs_[k]) {
      const std::size_t d = t.vars.size();
      prefix.assign(d + 1, 1.0L);
      suffix.assign(d + 1, 1.0L);
      for (std::size_t i = 0; i < d; ++i) prefix[i + 1] = prefix[i] * x[static_cast<std::size_t>(t.vars[i])];
      for (std::size_t i = d; i-- > 0;) suffix[i] = suffix[i + 1] * x[static_cast<std::size_t>(t.vars[i])];
      for (std::size_t i = 0; i < d; ++i) {
        int pos = position[static_cast<std::size_t>(t.vars[i])];
        if (pos < 0) continue;
        jac[k][static_cast<std::size_t>(pos)] += static_cast<long double>(t.coef) * prefix[i] * suffix[i + 1];
      }
    }
  }
}

RationalMatrix CoefficientModel::to_matrix(const std::vector<Rational>& values) const {
  RationalMatrix a(order());
  for (std::size_t v = 0; v < vars_.size(); ++v) a(vars_[v].row - 1, vars_[v].col - 1) = values[v];
  return a;
}

std::vector<long double> CoefficientModel::from_matrix(const RationalMatrix& a) const {
  std::vector<long double> x(vars_.size());
  for (std::size_t v = 0; v < vars_.size(); ++v) x[v] = to_ld(a(vars_[v].row - 1, vars_[v].col - 1));
  return x;
}

FixedTarget::FixedTarget(const CharPoly& c) {
  for (const auto& q : c.e) e_.push_back(to_ld(q));
}

void FixedTarget::evaluate(const std::vector<long double>&, std::vector<long double>& e,
                           std::vector<std::vector<long double>>* de) const {
  e = e_;
  if (de) de->assign(e_.size(), {});
}

namespace {

struct Evaluation {
  std::vector<long double> f;  // weighted residuals
  std::vector<long double> weight;
  long double max_abs = 0;
  long double norm2 = 0;
};

Evaluation evaluate_residual(const CoefficientModel& model, const TargetModel& target,
                             const std::vector<long double>& x, const std::vector<long double>& theta,
                             std::vector<long double>* e_target = nullptr,
                             std::vector<std::vector<long double>>* de = nullptr) {
  Evaluation ev;
  std::vector<long double> e, et;
  model.evaluate(x, e);
  target.evaluate(theta, et, de);
  ev.f.resize(e.size());
  ev.weight.resize(e.size());
  for (std::size_t k = 0; k < e.size(); ++k) {
    ev.weight[k] = 1.0L / (1.0L + std::fabs(et[k]));
    ev.f[k] = (e[k] - et[k]) * ev.weight[k];
    ev.max_abs = std::max(ev.max_abs, std::fabs(ev.f[k]));
    ev.norm2 += ev.f[k] * ev.f[k];
  }
  if (!std::isfinite(ev.norm2)) ev.max_abs = ev.norm2 = std::numeric_limits<long double>::infinity();
  if (e_target) *e_target = std::move(et);
  return ev;
}

}  // namespace

long double residual_of(const CoefficientModel& model, const TargetModel& target, const SolveState& state) {
  return evaluate_residual(model, target, state.x, state.theta).max_abs;
}

bool gauss_newton(const CoefficientModel& model, const TargetModel& target, SolveState& state,
                  const SolveSettings& settings) {
  const int n = model.order();
  const int pa = static_cast<int>(state.active.size());
  const int pt = target.parameter_count();
  if (static_cast<int>(state.theta.size()) != pt) state.theta.assign(static_cast<std::size_t>(pt), 0.0L);
  const int p = pa + pt;

  std::vector<std::vector<long double>> jx, de;
  Evaluation cur = evaluate_residual(model, target, state.x, state.theta, nullptr, &de);
  state.residual = cur.max_abs;
  if (cur.max_abs < settings.tolerance) return true;
  if (p == 0) return false;

  long double mu = 1e-6L;
  int stall = 0;
  long double best_seen = cur.norm2;
  for (int iter = 0; iter < settings.max_iterations; ++iter) {
    model.jacobian(state.x, state.active, jx);
    MatLD J(n, p);
    for (int k = 0; k < n; ++k) {
      const long double w = cur.weight[static_cast<std::size_t>(k)];
      for (int j = 0; j < pa; ++j) J(k, j) = w * jx[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      for (int j = 0; j < pt; ++j) J(k, pa + j) = -w * de[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
    }
    VecLD F(n);
    for (int k = 0; k < n; ++k) F(k) = cur.f[static_cast<std::size_t>(k)];
    const MatLD JJt = J * J.transpose();
    const long double scale = std::max(JJt.diagonal().maxCoeff(), 1e-30L);

    bool accepted = false;
    for (int tries = 0; tries < 12; ++tries) {
      MatLD A = JJt;
      A.diagonal().array() += mu * scale;
      VecLD y = A.ldlt().solve(F);
      VecLD delta = -(J.transpose() * y);
      if (!delta.allFinite()) {
        mu *= 10;
        continue;
      }
      std::vector<long double> x_new = state.x, theta_new = state.theta;
      for (int j = 0; j < pa; ++j) x_new[static_cast<std::size_t>(state.active[static_cast<std::size_t>(j)])] += delta(j);
      for (int j = 0; j < pt; ++j) theta_new[static_cast<std::size_t>(j)] += delta(pa + j);
      std::vector<std::vector<long double>> de_new;
      Evaluation trial = evaluate_residual(model, target, x_new, theta_new, nullptr, &de_new);
      if (trial.norm2 < cur.norm2) {
        state.x = std::move(x_new);
        state.theta = std::move(theta_new);
        cur = std::move(trial);
        de = std::move(de_new);
        mu = std::max(mu * 0.1L, 1e-24L);
        accepted = true;
        break;
      }
      mu *= 10;
    }
    state.residual = cur.max_abs;
    if (cur.max_abs < settings.tolerance) return true;
    if (!accepted || mu > 1e12L) return false;
    for (long double v : state.x)
      if (std::fabs(v) > 1e9L) return false;
    if (cur.norm2 < 0.5L * best_seen) {
      best_seen = cur.norm2;
      stall = 0;
    } else if (++stall > 25) {
      return false;
    }
  }
  return state.residual < settings.tolerance;
}

long double jacobian_conditioning(const CoefficientModel& model, const std::vector<long double>& x) {
  std::vector<int> cols(static_cast<std::size_t>(model.variable_count()));
  for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = static_cast<int>(i);
  std::vector<std::vector<long double>> jx;
  model.jacobian(x, cols, jx);
  const int n = model.order();
  if (cols.empty() || n == 0) return 0;
  MatLD J(n, static_cast<int>(cols.size()));
  for (int k = 0; k < n; ++k)
    for (std::size_t j = 0; j < cols.size(); ++j) J(k, static_cast<int>(j)) = jx[static_cast<std::size_t>(k)][j];
  Eigen::JacobiSVD<MatLD> svd(J);
  const auto& s = svd.singularValues();
  if (s.size() < n || s(0) == 0) return 0;
  return s(n - 1) / s(0);
}

namespace {

std::vector<Rational> rounding_candidates(long double value) {
  std::vector<Rational> out;
  if (std::fabs(value) < 1e-7L) out.push_back(Rational(0));
  static const std::uint64_t denominators[] = {1, 2, 3, 4, 5, 8, 10, 16, 100, 1000, 10000, 1000000};
  for (auto d : denominators) {
    Rational r = rationalize(value, d);
    if (r == 0 && std::fabs(value) >= 1e-7L) continue;
    if (std::fabs(static_cast<long double>(r.get_d()) - value) > 0.3L * (1 + std::fabs(value))) continue;
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  }
  return out;
}

using Reduced = std::map<std::uint64_t, Rational>;

// Gaussian elimination on affine equations sum_v a_v x_v + c = 0.
bool solve_affine(const std::vector<Reduced>& eqs, std::vector<std::optional<Rational>>& val,
                  const std::vector<long double>& x) {
  std::vector<int> unknowns;
  for (const auto& eq : eqs)
    for (const auto& [mask, c] : eq)
      if (mask) {
        int v = std::countr_zero(mask);
        if (std::find(unknowns.begin(), unknowns.end(), v) == unknowns.end()) unknowns.push_back(v);
      }
  std::sort(unknowns.begin(), unknowns.end());
  const std::size_t u = unknowns.size();
  std::vector<std::vector<Rational>> rows;
  for (const auto& eq : eqs) {
    if (eq.empty()) continue;
    std::vector<Rational> row(u + 1);
    for (const auto& [mask, c] : eq) {
      if (!mask) {
        row[u] = -c;
        continue;
      }
      int v = std::countr_zero(mask);
      auto pos = static_cast<std::size_t>(std::find(unknowns.begin(), unknowns.end(), v) - unknowns.begin());
      row[pos] = c;
    }
    rows.push_back(std::move(row));
  }
  // Reduced row echelon form.
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t col = 0; col < u && r < rows.size(); ++col) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    Rational inv = 1 / rows[r][col];
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      Rational f = rows[i][col];
      for (std::size_t j = col; j <= u; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivot_col.push_back(static_cast<int>(col));
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i)
    if (rows[i][u] != 0) return false;
  std::vector<bool> is_pivot(u, false);
  for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Rational> sol(u);
  for (std::size_t j = 0; j < u; ++j) {
    if (!is_pivot[j]) {
      long double xv = x[static_cast<std::size_t>(unknowns[j])];
      sol[j] = rationalize(xv, 1000);
    }
  }
  for (std::size_t i = 0; i < r; ++i) {
    auto c = static_cast<std::size_t>(pivot_col[i]);
    Rational s = rows[i][u];
    for (std::size_t j = c + 1; j < u; ++j)
      if (!is_pivot[j]) s -= rows[i][j] * sol[j];
    sol[c] = s;
  }
  for (std::size_t j = 0; j < u; ++j) val[static_cast<std::size_t>(unknowns[j])] = sol[j];
  return true;
}

}  // namespace

std::optional<RationalMatrix> exactify(const CoefficientModel& model, const CharPoly& target,
                                       const std::vector<long double>& numeric,
                                       const std::vector<std::optional<Rational>>& fixed,
                                       std::mt19937_64& rng, int attempts) {
  const int n = model.order();
  const int m = model.variable_count();
  const FixedTarget ft(target);
  const auto& eqs = model.equations();

  for (int attempt = 0; attempt < attempts; ++attempt) {
    std::vector<std::optional<Rational>> val = fixed;
    val.resize(static_cast<std::size_t>(m));
    std::vector<long double> x = numeric;
    for (int v = 0; v < m; ++v)
      if (val[static_cast<std::size_t>(v)]) x[static_cast<std::size_t>(v)] = to_ld(*val[static_cast<std::size_t>(v)]);
    bool failed = false;

    for (int guard = 0; guard < 4 * m + 8 && !failed; ++guard) {
      std::vector<Reduced> red(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) {
        Reduced& r = red[static_cast<std::size_t>(k)];
        for (const auto& t : eqs[static_cast<std::size_t>(k)]) {
          Rational prod = t.coef;
          std::uint64_t mask = 0;
          for (int v : t.vars) {
            const auto& known = val[static_cast<std::size_t>(v)];
            if (known) {
              if (*known == 0) {
                prod = 0;
                break;
              }
              prod *= *known;
            } else {
              mask |= std::uint64_t{1} << v;
            }
          }
          if (prod != 0) r[mask] += prod;
        }
        r[0] -= target.e[static_cast<std::size_t>(k)];
        for (auto it = r.begin(); it != r.end();) it = (it->second == 0) ? r.erase(it) : std::next(it);
      }

      std::uint64_t appearing = 0;
      bool all_affine = true;
      for (const auto& r : red) {
        bool has_var = false;
        for (const auto& [mask, c] : r) {
          appearing |= mask;
          if (mask) has_var = true;
          if (std::popcount(mask) > 1) all_affine = false;
        }
        if (!has_var && !r.empty()) failed = true;  // nonzero constant equation
      }
      if (failed) break;

      std::vector<int> undetermined;
      for (int v = 0; v < m; ++v)
        if (!val[static_cast<std::size_t>(v)]) undetermined.push_back(v);
      if (undetermined.empty()) break;

      // Entries that no longer influence any coefficient.
      bool assigned_free = false;
      for (int v : undetermined) {
        if (!((appearing >> v) & 1u)) {
          Rational r = rationalize(x[static_cast<std::size_t>(v)], 100);
          val[static_cast<std::size_t>(v)] = r;
          x[static_cast<std::size_t>(v)] = to_ld(r);
          assigned_free = true;
        }
      }
      if (assigned_free) continue;

      // An equation in a single unknown is affine in it.
      bool solved_one = false;
      for (const auto& r : red) {
        std::uint64_t vars = 0;
        for (const auto& [mask, c] : r) vars |= mask;
        if (std::popcount(vars) != 1) continue;
        int v = std::countr_zero(vars);
        Rational a = r.count(vars) ? r.at(vars) : Rational(0);
        Rational b = r.count(0) ? r.at(0) : Rational(0);
        if (a == 0) continue;
        Rational sol = -b / a;
        val[static_cast<std::size_t>(v)] = sol;
        x[static_cast<std::size_t>(v)] = to_ld(sol);
        solved_one = true;
        break;
      }
      if (solved_one) continue;

      if (all_affine) {
        if (!solve_affine(red, val, x)) failed = true;
        for (int v = 0; v < m; ++v)
          if (val[static_cast<std::size_t>(v)]) x[static_cast<std::size_t>(v)] = to_ld(*val[static_cast<std::size_t>(v)]);
        continue;
      }

      // Round one entry that occurs in a nonlinear term, then re-solve the rest numerically.
      std::vector<int> weight(static_cast<std::size_t>(m), 0);
      for (const auto& r : red)
        for (const auto& [mask, c] : r) {
          int deg = std::popcount(mask);
          if (deg < 2) continue;
          for (std::uint64_t mm = mask; mm; mm &= mm - 1) {
            auto v = static_cast<std::size_t>(std::countr_zero(mm));
            weight[v] = std::max(weight[v], deg * deg);
          }
        }
      std::vector<int> pool;
      std::vector<double> w;
      for (int v : undetermined)
        if (weight[static_cast<std::size_t>(v)] > 0) {
          pool.push_back(v);
          w.push_back(weight[static_cast<std::size_t>(v)]);
        }
      if (pool.empty()) {
        failed = true;
        break;
      }
      std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
      int v = pool[pick(rng)];
      bool placed = false;
      for (const auto& cand : rounding_candidates(x[static_cast<std::size_t>(v)])) {
        SolveState st;
        st.x = x;
        st.x[static_cast<std::size_t>(v)] = to_ld(cand);
        for (int u : undetermined)
          if (u != v) st.active.push_back(u);
        SolveSettings settings;
        settings.max_iterations = 60;
        if (gauss_newton(model, ft, st, settings)) {
          val[static_cast<std::size_t>(v)] = cand;
          x = std::move(st.x);
          placed = true;
          break;
        }
      }
      if (!placed) failed = true;
    }
    if (failed) continue;
    bool complete = std::all_of(val.begin(), val.end(), [](const auto& o) { return o.has_value(); });
    if (!complete) continue;
    std::vector<Rational> values;
    for (const auto& o : val) values.push_back(*o);
    RationalMatrix a = model.to_matrix(values);
    if (char_poly(a) == target) return a;
  }
  return std::nullopt;
}

}  // namespace patternforge
