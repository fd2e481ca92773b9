#include "patternforge/pattern.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "patternforge/errors.hpp"

namespace patternforge {

namespace {

void check_order(int n) {
  if (n < 0 || n > kMaxPatternOrder) {
    throw std::invalid_argument("pattern order must be in [0, " + std::to_string(kMaxPatternOrder) +
                                "], got " + std::to_string(n));
  }
}

}  // namespace

ZeroPattern::ZeroPattern(int n) : n_(n) {
  check_order(n);
  rows_.assign(static_cast<std::size_t>(n), 0u);
}

ZeroPattern::ZeroPattern(int n, const std::vector<Arc>& support) : ZeroPattern(n) {
  for (const auto& a : support) {
    if (a.row < 1 || a.row > n || a.col < 1 || a.col > n) {
      throw std::invalid_argument("support position (" + std::to_string(a.row) + "," +
                                  std::to_string(a.col) + ") outside order " + std::to_string(n));
    }
    if (has(a.row, a.col)) {
      throw std::invalid_argument("duplicate support position (" + std::to_string(a.row) + "," +
                                  std::to_string(a.col) + ")");
    }
    set(a.row, a.col);
  }
}

bool ZeroPattern::has(int row, int col) const {
  if (row < 1 || row > n_ || col < 1 || col > n_) return false;
  return has0(row - 1, col - 1);
}

void ZeroPattern::set(int row, int col, bool on) {
  if (row < 1 || row > n_ || col < 1 || col > n_) throw std::out_of_range("pattern position out of range");
  auto& r = rows_[static_cast<std::size_t>(row - 1)];
  if (on)
    r |= (1u << (col - 1));
  else
    r &= ~(1u << (col - 1));
}

std::vector<Arc> ZeroPattern::support() const {
  std::vector<Arc> out;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (has0(i, j)) out.push_back({i + 1, j + 1});
  return out;
}

int ZeroPattern::nnz() const {
  int c = 0;
  for (auto r : rows_) c += std::popcount(r);
  return c;
}

int ZeroPattern::loop_count() const {
  int c = 0;
  for (int i = 0; i < n_; ++i) c += has0(i, i) ? 1 : 0;
  return c;
}

ZeroPattern ZeroPattern::transpose() const {
  ZeroPattern out(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (has0(i, j)) out.rows_[static_cast<std::size_t>(j)] |= (1u << i);
  return out;
}

ZeroPattern ZeroPattern::permuted(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != n_) throw std::invalid_argument("permutation size mismatch");
  ZeroPattern out(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (has0(i, j)) {
        out.rows_[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] |=
            (1u << perm[static_cast<std::size_t>(j)]);
      }
  return out;
}

std::uint64_t ZeroPattern::code() const {
  if (n_ > 8) throw std::invalid_argument("pattern code requires order <= 8");
  std::uint64_t c = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) c = (c << 1) | (has0(i, j) ? 1u : 0u);
  return c;
}

ZeroPattern ZeroPattern::from_code(int n, std::uint64_t code) {
  if (n > 8) throw std::invalid_argument("pattern code requires order <= 8");
  ZeroPattern p(n);
  int total = n * n;
  for (int idx = 0; idx < total; ++idx) {
    if ((code >> (total - 1 - idx)) & 1u) p.rows_[static_cast<std::size_t>(idx / n)] |= 1u << (idx % n);
  }
  return p;
}

bool ZeroPattern::admits(const RationalMatrix& a) const {
  if (a.order() != n_) return false;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (a(i, j) != 0 && !has0(i, j)) return false;
  return true;
}

ZeroPattern ZeroPattern::of(const RationalMatrix& a) {
  ZeroPattern p(a.order());
  for (int i = 0; i < a.order(); ++i)
    for (int j = 0; j < a.order(); ++j)
      if (a(i, j) != 0) p.set(i + 1, j + 1);
  return p;
}

bool ZeroPattern::operator<(const ZeroPattern& rhs) const {
  if (n_ != rhs.n_) return n_ < rhs.n_;
  // Same ordering as code() without the order limit.
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      bool a = has0(i, j), b = rhs.has0(i, j);
      if (a != b) return !a;
    }
  return false;
}

Symmetry Symmetry::identity(int n) {
  Symmetry s;
  s.perm.resize(static_cast<std::size_t>(n));
  std::iota(s.perm.begin(), s.perm.end(), 0);
  return s;
}

Symmetry Symmetry::inverse() const {
  Symmetry s;
  s.perm.resize(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) s.perm[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
  s.transpose = transpose;
  return s;
}

Symmetry Symmetry::after(const Symmetry& first) const {
  Symmetry s;
  s.perm.resize(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    s.perm[i] = perm[static_cast<std::size_t>(first.perm[i])];
  }
  s.transpose = transpose != first.transpose;
  return s;
}

ZeroPattern Symmetry::apply(const ZeroPattern& p) const {
  return (transpose ? p.transpose() : p).permuted(perm);
}

RationalMatrix Symmetry::apply(const RationalMatrix& a) const {
  return (transpose ? a.transpose() : a).permuted(perm);
}

namespace {

template <typename Visit>
void for_each_image(const ZeroPattern& p, Visit&& visit) {
  const int n = p.order();
  if (n > 8) throw BudgetError("exhaustive symmetry search is limited to order 8");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  const ZeroPattern t = p.transpose();
  do {
    visit(p.permuted(perm), perm, false);
    visit(t.permuted(perm), perm, true);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

CanonicalForm canonicalize(const ZeroPattern& p) {
  CanonicalForm best;
  std::uint64_t best_code = 0;
  bool first = true;
  for_each_image(p, [&](const ZeroPattern& img, const std::vector<int>& perm, bool tr) {
    std::uint64_t c = img.code();
    if (first || c < best_code) {
      first = false;
      best_code = c;
      best.pattern = img;
      best.certificate.perm = perm;
      best.certificate.transpose = tr;
    }
  });
  if (first) best.certificate = Symmetry::identity(p.order()), best.pattern = p;
  return best;
}

std::vector<std::pair<ZeroPattern, Symmetry>> orbit(const ZeroPattern& p) {
  std::vector<std::pair<ZeroPattern, Symmetry>> out;
  std::vector<std::uint64_t> seen;
  for_each_image(p, [&](const ZeroPattern& img, const std::vector<int>& perm, bool tr) {
    std::uint64_t c = img.code();
    if (std::find(seen.begin(), seen.end(), c) != seen.end()) return;
    seen.push_back(c);
    out.push_back({img, Symmetry{perm, tr}});
  });
  return out;
}

ZeroPattern parse_pattern(std::string_view text) {
  std::vector<std::vector<bool>> rows;
  std::vector<int> line_numbers;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<bool> row;
    for (std::size_t col = 0; col < line.size(); ++col) {
      char ch = line[col];
      if (ch == '#') break;
      if (ch == ' ' || ch == '\t' || ch == '\r' || ch == ',') continue;
      if (ch == '*' || ch == '1') {
        row.push_back(true);
      } else if (ch == '0') {
        row.push_back(false);
      } else {
        throw ParseError("line " + std::to_string(line_no) + ", column " + std::to_string(col + 1) +
                         ": illegal symbol '" + std::string(1, ch) + "'");
      }
    }
    if (!row.empty()) {
      rows.push_back(std::move(row));
      line_numbers.push_back(line_no);
    }
  }
  if (rows.empty()) throw ParseError("empty pattern input");
  const std::size_t n = rows.size();
  if (static_cast<int>(n) > kMaxPatternOrder) throw ParseError("pattern order exceeds limit");
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw ParseError("ragged row " + std::to_string(i + 1) + " (line " +
                       std::to_string(line_numbers[i]) + "): " + std::to_string(rows[i].size()) +
                       " symbols, expected " + std::to_string(n));
    }
  }
  ZeroPattern p(static_cast<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (rows[i][j]) p.set(static_cast<int>(i + 1), static_cast<int>(j + 1));
  return p;
}

std::string format_pattern(const ZeroPattern& p) {
  std::string out;
  for (int i = 0; i < p.order(); ++i) {
    for (int j = 0; j < p.order(); ++j) out += p.has0(i, j) ? '*' : '0';
    out += '\n';
  }
  return out;
}

namespace {

std::uint32_t reach(const ZeroPattern& p, bool reverse) {
  const int n = p.order();
  std::uint32_t seen = 1u, frontier = 1u;
  while (frontier) {
    std::uint32_t next = 0;
    for (int v = 0; v < n; ++v) {
      if (!((frontier >> v) & 1u)) continue;
      if (!reverse) {
        next |= p.row_mask(v);
      } else {
        for (int u = 0; u < n; ++u)
          if (p.has0(u, v)) next |= 1u << u;
      }
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return seen;
}

}  // namespace

bool is_irreducible(const ZeroPattern& p) {
  const int n = p.order();
  if (n <= 1) return true;
  const std::uint32_t all = (n == 32) ? ~0u : ((1u << n) - 1u);
  return reach(p, false) == all && reach(p, true) == all;
}

bool is_superpattern(const ZeroPattern& a, const ZeroPattern& b) {
  if (a.order() != b.order()) throw std::invalid_argument("superpattern test needs equal orders");
  for (int i = 0; i < a.order(); ++i)
    if ((a.row_mask(i) & ~b.row_mask(i)) != 0) return false;
  return true;
}

std::uint32_t SimpleCycle::vertex_mask() const {
  std::uint32_t m = 0;
  for (int v : vertices) m |= 1u << (v - 1);
  return m;
}

std::vector<Arc> SimpleCycle::arcs() const {
  std::vector<Arc> out;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    out.push_back({vertices[i], vertices[(i + 1) % vertices.size()]});
  }
  return out;
}

std::vector<Arc> CompositeCycle::arcs() const {
  std::vector<Arc> out;
  for (const auto& c : cycles) {
    auto a = c.arcs();
    out.insert(out.end(), a.begin(), a.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

int CompositeCycle::sign() const {
  return ((length - static_cast<int>(cycles.size())) % 2 == 0) ? 1 : -1;
}

std::vector<SimpleCycle> simple_cycles(const ZeroPattern& p) {
  const int n = p.order();
  std::vector<SimpleCycle> out;
  std::vector<int> path;
  // Depth-first search from each start vertex through larger vertices only,
  // so each cycle is produced once, rooted at its minimum.
  for (int s = 0; s < n; ++s) {
    path.assign(1, s);
    std::uint32_t on_path = 1u << s;
    auto dfs = [&](auto&& self, int v) -> void {
      for (int w = s; w < n; ++w) {
        if (!p.has0(v, w)) continue;
        if (w == s) {
          SimpleCycle c;
          for (int u : path) c.vertices.push_back(u + 1);
          out.push_back(std::move(c));
        } else if (!((on_path >> w) & 1u)) {
          path.push_back(w);
          on_path |= 1u << w;
          self(self, w);
          on_path &= ~(1u << w);
          path.pop_back();
        }
      }
    };
    dfs(dfs, s);
  }
  return out;
}

std::vector<CompositeCycle> composite_cycles(const ZeroPattern& p, int k) {
  if (k < 1 || k > p.order()) {
    throw std::invalid_argument("composite cycle length " + std::to_string(k) + " outside [1, " +
                                std::to_string(p.order()) + "]");
  }
  const auto cycles = simple_cycles(p);
  std::vector<CompositeCycle> out;
  std::vector<int> chosen;
  auto rec = [&](auto&& self, std::size_t start, std::uint32_t used, int len) -> void {
    if (len == k) {
      CompositeCycle cc;
      for (int idx : chosen) cc.cycles.push_back(cycles[static_cast<std::size_t>(idx)]);
      cc.length = k;
      out.push_back(std::move(cc));
      return;
    }
    for (std::size_t i = start; i < cycles.size(); ++i) {
      const auto& c = cycles[i];
      if (len + c.length() > k) continue;
      std::uint32_t m = c.vertex_mask();
      if (m & used) continue;
      chosen.push_back(static_cast<int>(i));
      self(self, i + 1, used | m, len + c.length());
      chosen.pop_back();
    }
  };
  rec(rec, 0, 0u, 0);
  std::sort(out.begin(), out.end(),
            [](const CompositeCycle& a, const CompositeCycle& b) { return a.arcs() < b.arcs(); });
  return out;
}

std::vector<bool> has_composite_cycle_all_k(const ZeroPattern& p) {
  const int n = p.order();
  // Subset-sum over vertex-disjoint cycles; reachable[mask] marks unions of
  // disjoint cycles.
  std::vector<bool> result(static_cast<std::size_t>(n), false);
  const auto cycles = simple_cycles(p);
  std::vector<char> reachable(std::size_t{1} << n, 0);
  reachable[0] = 1;
  for (const auto& c : cycles) {
    std::uint32_t m = c.vertex_mask();
    for (std::uint32_t s = (1u << n); s-- > 0;) {
      if (reachable[s] && !(s & m)) reachable[s | m] = 1;
    }
  }
  for (std::uint32_t s = 1; s < (1u << n); ++s)
    if (reachable[s]) result[static_cast<std::size_t>(std::popcount(s) - 1)] = true;
  return result;
}

int count_proper_two_cycles(const ZeroPattern& p) {
  int c = 0;
  for (int i = 0; i < p.order(); ++i)
    for (int j = i + 1; j < p.order(); ++j)
      if (p.has0(i, j) && p.has0(j, i)) ++c;
  return c;
}

bool has_proper_two_cycle(const ZeroPattern& p) { return count_proper_two_cycles(p) > 0; }

}  // namespace patternforge
