#include "patternforge/nests.hpp"

#include <map>
#include <random>
#include <stdexcept>

#include "patternforge/errors.hpp"
#include "patternforge/families.hpp"
#include "patternforge/solver.hpp"

namespace patternforge {

namespace {

std::uint32_t prefix_mask(const NestOrdering& ord, std::size_t k) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < k; ++i) mask |= 1u << (ord.sequence[i] - 1);
  return mask;
}

void check_ordering(const RationalMatrix& b, const NestOrdering& ord) {
  const int n = b.order();
  if (static_cast<int>(ord.sequence.size()) != n) throw std::invalid_argument("ordering length differs from the matrix order");
  std::uint32_t seen = 0;
  for (int v : ord.sequence) {
    if (v < 1 || v > n || (seen >> (v - 1)) & 1u) throw std::invalid_argument("ordering is not a permutation");
    seen |= 1u << (v - 1);
  }
}

int required_sign(std::size_t k) { return k % 2 == 0 ? 1 : -1; }

}  // namespace

std::vector<int> nest_signs(const RationalMatrix& b, const NestOrdering& ord) {
  check_ordering(b, ord);
  std::vector<int> out;
  for (std::size_t k = 1; k <= ord.sequence.size(); ++k) out.push_back(sign(principal_minor(b, prefix_mask(ord, k))));
  return out;
}

bool is_properly_signed_nest(const RationalMatrix& b, const NestOrdering& ord) {
  auto s = nest_signs(b, ord);
  for (std::size_t k = 0; k < s.size(); ++k)
    if (s[k] != required_sign(k + 1)) return false;
  return true;
}

std::optional<NestOrdering> find_nest(const RationalMatrix& b) {
  const int n = b.order();
  if (n > 8) throw BudgetError("exhaustive nest search is limited to order 8; use find_nest_greedy");
  std::map<std::uint32_t, int> minor_sign;
  std::map<std::uint32_t, bool> dead;
  auto sign_of = [&](std::uint32_t mask) {
    auto it = minor_sign.find(mask);
    if (it != minor_sign.end()) return it->second;
    int s = sign(principal_minor(b, mask));
    minor_sign[mask] = s;
    return s;
  };
  std::vector<int> seq;
  // Depth-first in increasing index order gives the lexicographically first nest.
  auto dfs = [&](auto&& self, std::uint32_t mask) -> bool {
    if (static_cast<int>(seq.size()) == n) return true;
    if (dead.count(mask)) return false;
    for (int v = 0; v < n; ++v) {
      if ((mask >> v) & 1u) continue;
      const std::uint32_t next = mask | (1u << v);
      if (sign_of(next) != required_sign(seq.size() + 1)) continue;
      seq.push_back(v + 1);
      if (self(self, next)) return true;
      seq.pop_back();
    }
    dead[mask] = true;
    return false;
  };
  if (n == 0) return NestOrdering{};
  if (dfs(dfs, 0)) return NestOrdering{seq};
  return std::nullopt;
}

std::optional<NestOrdering> find_nest_greedy(const RationalMatrix& b) {
  const int n = b.order();
  NestOrdering ord;
  std::uint32_t mask = 0;
  for (int k = 1; k <= n; ++k) {
    bool grown = false;
    for (int v = 0; v < n && !grown; ++v) {
      if ((mask >> v) & 1u) continue;
      if (sign(principal_minor(b, mask | (1u << v))) == required_sign(static_cast<std::size_t>(k))) {
        mask |= 1u << v;
        ord.sequence.push_back(v + 1);
        grown = true;
      }
    }
    if (!grown) return std::nullopt;
  }
  return ord;
}

RationalMatrix canonical_path_matrix(int n, int alpha) {
  if (n < 1 || alpha < 1 || alpha > n) throw std::invalid_argument("path matrix needs 1 <= alpha <= n");
  RationalMatrix a(n);
  for (int i = 0; i + 1 < n; ++i) {
    a(i + 1, i) = 1;
    a(i, i + 1) = -1;
  }
  a(alpha - 1, alpha - 1) = -1;
  return a;
}

NestOrdering descending_prefix_ordering(int n, int alpha) {
  NestOrdering ord;
  for (int v = alpha; v >= 1; --v) ord.sequence.push_back(v);
  for (int v = alpha + 1; v <= n; ++v) ord.sequence.push_back(v);
  return ord;
}

std::optional<RationalMatrix> nest_scaling_witness(const RationalMatrix& b, const NestOrdering& ord) {
  if (!is_properly_signed_nest(b, ord)) return std::nullopt;
  const int n = b.order();
  const RefinedInertia stable{0, n, 0, 0};
  Rational eps(1, 2);
  for (int step = 0; step < 40; ++step, eps /= 4) {
    RationalMatrix d(n);
    Rational scale = 1;
    for (int k = 0; k < n; ++k) {
      d(ord.sequence[static_cast<std::size_t>(k)] - 1, ord.sequence[static_cast<std::size_t>(k)] - 1) = scale;
      scale *= eps;
    }
    RationalMatrix db = d * b;
    if (exact_refined_inertia(char_poly(db)) == stable) return db;
  }
  return std::nullopt;
}

NestReport nest_implies_inertia_check(const RationalMatrix& b, const NestOrdering& ord, const RealizeOptions& opts) {
  if (!is_properly_signed_nest(b, ord)) throw std::invalid_argument("ordering is not a properly signed nest of the matrix");
  const int n = b.order();
  NestReport report;
  report.pattern = ZeroPattern::of(b);
  report.ordering = ord;
  report.signs = nest_signs(b, ord);
  const RefinedInertia stable{0, n, 0, 0}, unstable{n, 0, 0, 0};
  if (auto db = nest_scaling_witness(b, ord)) {
    RealizationWitness w;
    w.pattern = report.pattern;
    w.matrix = *db;
    w.charpoly = char_poly(*db);
    w.refined_inertia = stable;
    w.method = "construction";
    report.stable = w;
    RealizationWitness u = w;
    u.matrix = -w.matrix;
    u.charpoly = char_poly(u.matrix);
    u.refined_inertia = unstable;
    u.method = "negation";
    report.unstable = u;
  }
  if (!report.stable) report.stable = realize_refined_inertia(report.pattern, stable, opts);
  if (!report.unstable) report.unstable = realize_refined_inertia(report.pattern, unstable, opts);
  report.verdict = report.stable && report.unstable && verify_witness(*report.stable) && verify_witness(*report.unstable);
  return report;
}

PatternNestSearch pattern_allows_nest(const ZeroPattern& p, int samples, std::uint64_t seed) {
  const int n = p.order();
  PatternNestSearch out;
  auto attempt = [&](const RationalMatrix& a) {
    auto ord = n <= 8 ? find_nest(a) : find_nest_greedy(a);
    if (ord) {
      out.matrix = a;
      out.ordering = ord;
    }
    return ord.has_value();
  };
  // Reference signing: +1 below the diagonal, -1 on and above it.
  RationalMatrix ref(n);
  for (const auto& arc : p.support()) ref(arc.row - 1, arc.col - 1) = arc.row > arc.col ? 1 : -1;
  if (attempt(ref)) return out;
  std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(p.nnz())));
  std::uniform_int_distribution<int> num(-12, 12), den(1, 4);
  for (int s = 0; s < samples; ++s) {
    ++out.samples_tried;
    RationalMatrix a(n);
    for (const auto& arc : p.support()) {
      int v;
      do v = num(rng);
      while (v == 0);
      a(arc.row - 1, arc.col - 1) = Rational(v) / den(rng);
    }
    if (attempt(a)) return out;
  }
  return out;
}

}  // namespace patternforge
