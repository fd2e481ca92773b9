#include "patternforge/explicit_solution.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace patternforge {

namespace {

// Sparse multivariate polynomial over Q. Variables 0..m-1 are matrix
// entries, m..m+n-1 the target coefficients e_1..e_n.
class MPoly {
 public:
  using Monomial = std::vector<int>;

  MPoly() = default;
  explicit MPoly(int vars) : vars_(vars) {}

  static MPoly constant(int vars, const Rational& c) {
    MPoly p(vars);
    if (c != 0) p.t_[Monomial(static_cast<std::size_t>(vars), 0)] = c;
    return p;
  }
  static MPoly variable(int vars, int i) {
    MPoly p(vars);
    Monomial m(static_cast<std::size_t>(vars), 0);
    m[static_cast<std::size_t>(i)] = 1;
    p.t_[m] = 1;
    return p;
  }

  bool is_zero() const { return t_.empty(); }
  const std::map<Monomial, Rational>& terms() const { return t_; }

  int degree_in(int i) const {
    int d = -1;
    for (const auto& [m, c] : t_) d = std::max(d, m[static_cast<std::size_t>(i)]);
    return d;
  }
  bool mentions(int i) const { return degree_in(i) > 0; }

  /// Coefficient of x_i^k as a polynomial in the other variables.
  MPoly coefficient(int i, int k) const {
    MPoly out(vars_);
    for (const auto& [m, c] : t_) {
      if (m[static_cast<std::size_t>(i)] != k) continue;
      Monomial r = m;
      r[static_cast<std::size_t>(i)] = 0;
      out.t_[r] = c;
    }
    return out;
  }

  std::optional<Rational> constant_value() const {
    if (t_.empty()) return Rational(0);
    if (t_.size() != 1) return std::nullopt;
    const auto& [m, c] = *t_.begin();
    if (std::any_of(m.begin(), m.end(), [](int e) { return e != 0; })) return std::nullopt;
    return c;
  }

  MPoly operator+(const MPoly& o) const {
    MPoly r = *this;
    for (const auto& [m, c] : o.t_) r.add_term(m, c);
    return r;
  }
  MPoly operator-(const MPoly& o) const { return *this + o * Rational(-1); }
  MPoly operator*(const Rational& s) const {
    MPoly r(vars_);
    if (s == 0) return r;
    for (const auto& [m, c] : t_) r.t_[m] = c * s;
    return r;
  }
  MPoly operator*(const MPoly& o) const {
    MPoly r(vars_);
    for (const auto& [a, ca] : t_)
      for (const auto& [b, cb] : o.t_) {
        Monomial m(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] + b[i];
        r.add_term(m, ca * cb);
      }
    return r;
  }

  MPoly substitute(int i, const MPoly& value) const {
    const int d = degree_in(i);
    if (d <= 0) return *this;
    MPoly out(vars_), power = constant(vars_, 1);
    for (int k = 0; k <= d; ++k) {
      if (k > 0) power = power * value;
      const MPoly ck = coefficient(i, k);
      if (!ck.is_zero()) out = out + ck * power;
    }
    return out;
  }

  long double evaluate(const std::vector<long double>& x) const {
    long double s = 0;
    for (const auto& [m, c] : t_) {
      long double term = c.get_d();
      for (std::size_t i = 0; i < m.size(); ++i)
        for (int e = 0; e < m[i]; ++e) term *= x[i];
      s += term;
    }
    return s;
  }

  std::string to_string(const std::vector<std::string>& names) const {
    if (t_.empty()) return "0";
    std::string out;
    // Highest total degree first.
    std::vector<std::pair<Monomial, Rational>> ordered(t_.begin(), t_.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
      return std::accumulate(a.first.begin(), a.first.end(), 0) > std::accumulate(b.first.begin(), b.first.end(), 0);
    });
    for (const auto& [m, c] : ordered) {
      std::string mono;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += names[i];
        if (m[i] > 1) mono += "^" + std::to_string(m[i]);
      }
      const bool neg = c < 0;
      const Rational mag = neg ? Rational(-c) : c;
      std::string body;
      if (mono.empty())
        body = patternforge::to_string(mag);
      else if (mag == 1)
        body = mono;
      else
        body = patternforge::to_string(mag) + "*" + mono;
      if (out.empty())
        out = neg ? "-" + body : body;
      else
        out += neg ? " - " + body : " + " + body;
    }
    return out;
  }

 private:
  void add_term(const Monomial& m, const Rational& c) {
    auto it = t_.find(m);
    if (it == t_.end()) {
      if (c != 0) t_[m] = c;
      return;
    }
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }

  int vars_ = 0;
  std::map<Monomial, Rational> t_;
};

struct System {
  int m = 0, n = 0;
  std::vector<Arc> entries;
  std::vector<std::string> names;
  std::vector<MPoly> equations;  // E_k(A) - e_k, k = 1..n
};

System build_system(const ZeroPattern& p, const std::set<Arc>& units, const std::set<Arc>& zeros) {
  System s;
  s.n = p.order();
  const auto coeffs = symbolic_coefficients(p);
  s.entries = coeffs.front().variables;
  s.m = static_cast<int>(s.entries.size());
  const int vars = s.m + s.n;
  for (const auto& a : s.entries) s.names.push_back("a(" + std::to_string(a.row) + "," + std::to_string(a.col) + ")");
  for (int k = 1; k <= s.n; ++k) s.names.push_back("e" + std::to_string(k));
  for (int k = 0; k < s.n; ++k) {
    MPoly f = MPoly::variable(vars, s.m + k) * Rational(-1);
    for (const auto& [mask, coef] : coeffs[static_cast<std::size_t>(k)].terms) {
      MPoly term = MPoly::constant(vars, Rational(coef));
      bool dead = false;
      for (int v = 0; v < s.m; ++v) {
        if (!((mask >> v) & 1U)) continue;
        const Arc& a = s.entries[static_cast<std::size_t>(v)];
        if (zeros.count(a)) {
          dead = true;
          break;
        }
        if (!units.count(a)) term = term * MPoly::variable(vars, v);
      }
      if (!dead) f = f + term;
    }
    s.equations.push_back(std::move(f));
  }
  return s;
}

bool mentions_entry(const MPoly& f, int m) {
  for (int v = 0; v < m; ++v)
    if (f.mentions(v)) return true;
  return false;
}

struct Elimination {
  int var = 0, equation = 0, degree = 1;
  MPoly value;  // linear steps: the entry in terms of later entries and e
  MPoly final;  // last step: the univariate equation
};

// Depth-first search over (equation, entry) choices.
class Search {
 public:
  Search(const System& s, long budget) : s_(s), budget_(budget) {}

  std::optional<std::vector<Elimination>> run(const std::vector<int>& free_vars) {
    std::vector<int> eqs(static_cast<std::size_t>(s_.n));
    std::iota(eqs.begin(), eqs.end(), 0);
    std::vector<Elimination> path;
    if (dfs(s_.equations, eqs, free_vars, path)) return path;
    return std::nullopt;
  }

 private:
  bool dfs(const std::vector<MPoly>& f, const std::vector<int>& eqs, const std::vector<int>& vars, std::vector<Elimination>& path) {
    if (--budget_ < 0) return false;
    if (eqs.size() == 1 && vars.size() == 1) {
      const MPoly& g = f[static_cast<std::size_t>(eqs[0])];
      const int v = vars[0];
      const int d = g.degree_in(v);
      if (d < 1 || d % 2 == 0) return false;
      const auto lead = g.coefficient(v, d).constant_value();
      if (!lead || *lead == 0) return false;
      path.push_back({v, eqs[0], d, {}, g});
      return true;
    }
    for (std::size_t ei = 0; ei < eqs.size(); ++ei) {
      const MPoly& g = f[static_cast<std::size_t>(eqs[ei])];
      for (std::size_t vi = 0; vi < vars.size(); ++vi) {
        const int v = vars[vi];
        if (g.degree_in(v) != 1) continue;
        const auto alpha = g.coefficient(v, 1).constant_value();
        if (!alpha || *alpha == 0) continue;
        const MPoly value = g.coefficient(v, 0) * Rational(-1 / *alpha);
        std::vector<MPoly> next = f;
        std::vector<int> rest_eqs, rest_vars;
        bool dead = false;
        for (std::size_t ej = 0; ej < eqs.size() && !dead; ++ej) {
          if (ej == ei) continue;
          MPoly& h = next[static_cast<std::size_t>(eqs[ej])];
          h = h.substitute(v, value);
          // An equation free of entries would constrain the target.
          if (!mentions_entry(h, s_.m)) dead = true;
          rest_eqs.push_back(eqs[ej]);
        }
        if (dead) continue;
        for (std::size_t vj = 0; vj < vars.size(); ++vj)
          if (vj != vi) rest_vars.push_back(vars[vj]);
        path.push_back({v, eqs[ei], 1, value, {}});
        if (dfs(next, rest_eqs, rest_vars, path)) return true;
        path.pop_back();
        if (budget_ < 0) return false;
      }
    }
    return false;
  }

  const System& s_;
  long budget_;
};

// Spanning forests of the non-loop arcs, as index subsets of `arcs`.
std::vector<std::vector<int>> spanning_forests(int n, const std::vector<Arc>& arcs, std::size_t cap) {
  std::vector<int> cand;
  for (std::size_t i = 0; i < arcs.size(); ++i)
    if (arcs[i].row != arcs[i].col) cand.push_back(static_cast<int>(i));
  auto forest_rank = [&](const std::vector<int>& chosen) {
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) { return parent[static_cast<std::size_t>(v)] == v ? v : parent[static_cast<std::size_t>(v)] = find(parent[static_cast<std::size_t>(v)]); };
    int rank = 0;
    for (int i : chosen) {
      int a = find(arcs[static_cast<std::size_t>(i)].row - 1), b = find(arcs[static_cast<std::size_t>(i)].col - 1);
      if (a == b) return -1;
      parent[static_cast<std::size_t>(a)] = b;
      ++rank;
    }
    return rank;
  };
  const int rank = forest_rank(cand) >= 0 ? static_cast<int>(cand.size()) : [&] {
    // Rank of the whole arc set: greedy forest size.
    std::vector<int> greedy;
    for (int i : cand) {
      greedy.push_back(i);
      if (forest_rank(greedy) < 0) greedy.pop_back();
    }
    return static_cast<int>(greedy.size());
  }();
  std::vector<std::vector<int>> out;
  std::vector<int> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (out.size() >= cap) return;
    if (static_cast<int>(pick.size()) == rank) {
      if (forest_rank(pick) == rank) out.push_back(pick);
      return;
    }
    for (std::size_t i = from; i < cand.size(); ++i) {
      pick.push_back(cand[i]);
      if (forest_rank(pick) >= 0) rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return out;
}

void subsets(int count, int size, std::size_t cap, std::vector<std::vector<int>>& out) {
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int from) {
    if (out.size() >= cap) return;
    if (static_cast<int>(pick.size()) == size) {
      out.push_back(pick);
      return;
    }
    for (int i = from; i < count; ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
}

std::optional<std::vector<Elimination>> replay(const System& s, const SolutionCertificate& c) {
  std::vector<MPoly> f = s.equations;
  std::vector<bool> used(static_cast<std::size_t>(s.n), false);
  std::set<int> solved;
  std::vector<Elimination> path;
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    const SolutionStep& st = c.steps[i];
    const auto it = std::find(s.entries.begin(), s.entries.end(), st.entry);
    if (it == s.entries.end()) return std::nullopt;
    const int v = static_cast<int>(it - s.entries.begin());
    const int k = st.equation - 1;
    if (k < 0 || k >= s.n || used[static_cast<std::size_t>(k)] || solved.count(v)) return std::nullopt;
    const MPoly& g = f[static_cast<std::size_t>(k)];
    const bool last = i + 1 == c.steps.size();
    if (!last) {
      if (g.degree_in(v) != 1) return std::nullopt;
      const auto alpha = g.coefficient(v, 1).constant_value();
      if (!alpha || *alpha == 0) return std::nullopt;
      const MPoly value = g.coefficient(v, 0) * Rational(-1 / *alpha);
      for (int j = 0; j < s.n; ++j)
        if (j != k && !used[static_cast<std::size_t>(j)]) f[static_cast<std::size_t>(j)] = f[static_cast<std::size_t>(j)].substitute(v, value);
      path.push_back({v, k, 1, value, {}});
    } else {
      const int d = g.degree_in(v);
      if (d != st.degree || d < 1 || d % 2 == 0) return std::nullopt;
      const auto lead = g.coefficient(v, d).constant_value();
      if (!lead || *lead == 0) return std::nullopt;
      for (int w = 0; w < s.m; ++w)
        if (w != v && g.mentions(w)) return std::nullopt;
      path.push_back({v, k, d, {}, g});
    }
    used[static_cast<std::size_t>(k)] = true;
    solved.insert(v);
  }
  if (std::count(used.begin(), used.end(), true) != s.n) return std::nullopt;
  // Every entry that is neither fixed nor solved must be absent.
  std::set<Arc> fixed(c.unit_entries.begin(), c.unit_entries.end());
  fixed.insert(c.zero_entries.begin(), c.zero_entries.end());
  for (int v = 0; v < s.m; ++v)
    if (!solved.count(v) && !fixed.count(s.entries[static_cast<std::size_t>(v)])) return std::nullopt;
  return path;
}

}  // namespace

std::optional<SolutionCertificate> triangular_solution(const ZeroPattern& p, const std::vector<Arc>& zero_entries) {
  const int n = p.order();
  if (n > 6) throw std::invalid_argument("explicit solution search is limited to order 6");
  if (n < 1 || p.nnz() == 0) return std::nullopt;
  const std::set<Arc> forced_zero(zero_entries.begin(), zero_entries.end());
  std::vector<Arc> live;
  for (const auto& a : p.support())
    if (!forced_zero.count(a)) live.push_back(a);

  for (const auto& forest : spanning_forests(n, live, 400)) {
    std::set<Arc> units;
    for (int i : forest) units.insert(live[static_cast<std::size_t>(i)]);
    std::vector<Arc> free;
    for (const auto& a : live)
      if (!units.count(a)) free.push_back(a);
    const int surplus = static_cast<int>(free.size()) - n;
    if (surplus < 0) continue;
    std::vector<std::vector<int>> zero_sets;
    subsets(static_cast<int>(free.size()), surplus, 200, zero_sets);
    for (const auto& zs : zero_sets) {
      std::set<Arc> zeros = forced_zero;
      for (int i : zs) zeros.insert(free[static_cast<std::size_t>(i)]);
      const System s = build_system(p, units, zeros);
      std::vector<int> free_vars;
      for (int v = 0; v < s.m; ++v) {
        const Arc& a = s.entries[static_cast<std::size_t>(v)];
        if (!units.count(a) && !zeros.count(a)) free_vars.push_back(v);
      }
      Search search(s, 20000);
      const auto path = search.run(free_vars);
      if (!path) continue;
      SolutionCertificate c;
      c.pattern = p;
      c.unit_entries.assign(units.begin(), units.end());
      c.zero_entries.assign(zeros.begin(), zeros.end());
      for (const auto& e : *path) {
        SolutionStep st;
        st.entry = s.entries[static_cast<std::size_t>(e.var)];
        st.equation = e.equation + 1;
        st.degree = e.degree;
        st.expression = e.degree == 1 ? s.names[static_cast<std::size_t>(e.var)] + " = " + e.value.to_string(s.names)
                                      : e.final.to_string(s.names) + " = 0";
        c.steps.push_back(std::move(st));
      }
      return c;
    }
  }
  return std::nullopt;
}

bool verify_solution_certificate(const SolutionCertificate& c) {
  const std::set<Arc> units(c.unit_entries.begin(), c.unit_entries.end());
  const std::set<Arc> zeros(c.zero_entries.begin(), c.zero_entries.end());
  for (const auto& a : units)
    if (!c.pattern.has(a.row, a.col) || a.row == a.col || zeros.count(a)) return false;
  for (const auto& a : zeros)
    if (!c.pattern.has(a.row, a.col)) return false;
  // Unit entries must form a forest so a diagonal similarity can set them.
  std::vector<int> parent(static_cast<std::size_t>(c.pattern.order()));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) { return parent[static_cast<std::size_t>(v)] == v ? v : parent[static_cast<std::size_t>(v)] = find(parent[static_cast<std::size_t>(v)]); };
  for (const auto& a : units) {
    const int x = find(a.row - 1), y = find(a.col - 1);
    if (x == y) return false;
    parent[static_cast<std::size_t>(x)] = y;
  }
  const System s = build_system(c.pattern, units, zeros);
  return replay(s, c).has_value();
}

std::optional<std::vector<std::vector<long double>>> solve_with_certificate(const SolutionCertificate& c,
                                                                            const CharPoly& target) {
  const std::set<Arc> units(c.unit_entries.begin(), c.unit_entries.end());
  const std::set<Arc> zeros(c.zero_entries.begin(), c.zero_entries.end());
  const System s = build_system(c.pattern, units, zeros);
  if (static_cast<int>(target.e.size()) != s.n) throw std::invalid_argument("target order differs from the pattern");
  const auto path = replay(s, c);
  if (!path) return std::nullopt;
  std::vector<long double> x(static_cast<std::size_t>(s.m + s.n), 0.0L);
  for (int k = 0; k < s.n; ++k) x[static_cast<std::size_t>(s.m + k)] = target.e[static_cast<std::size_t>(k)].get_d();

  // Real root of the final odd-degree equation by bisection.
  const Elimination& last = path->back();
  const int d = last.degree;
  std::vector<long double> coef(static_cast<std::size_t>(d + 1));
  for (int k = 0; k <= d; ++k) coef[static_cast<std::size_t>(k)] = last.final.coefficient(last.var, k).evaluate(x);
  long double bound = 1;
  for (int k = 0; k < d; ++k) bound = std::max(bound, 1 + std::fabs(coef[static_cast<std::size_t>(k)] / coef[static_cast<std::size_t>(d)]));
  auto value = [&](long double t) {
    long double acc = 0;
    for (int k = d; k >= 0; --k) acc = acc * t + coef[static_cast<std::size_t>(k)];
    return acc;
  };
  long double lo = -bound, hi = bound;
  const bool rising = value(hi) > 0;
  for (int it = 0; it < 200; ++it) {
    const long double mid = (lo + hi) / 2;
    if ((value(mid) > 0) == rising)
      hi = mid;
    else
      lo = mid;
  }
  x[static_cast<std::size_t>(last.var)] = (lo + hi) / 2;
  for (auto it = path->rbegin() + 1; it != path->rend(); ++it) x[static_cast<std::size_t>(it->var)] = it->value.evaluate(x);

  std::vector<std::vector<long double>> a(static_cast<std::size_t>(s.n), std::vector<long double>(static_cast<std::size_t>(s.n), 0.0L));
  for (int v = 0; v < s.m; ++v) {
    const Arc& arc = s.entries[static_cast<std::size_t>(v)];
    long double val = x[static_cast<std::size_t>(v)];
    if (units.count(arc)) val = 1;
    if (zeros.count(arc)) val = 0;
    a[static_cast<std::size_t>(arc.row - 1)][static_cast<std::size_t>(arc.col - 1)] = val;
  }
  return a;
}

}  // namespace patternforge
