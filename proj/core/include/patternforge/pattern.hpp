#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "patternforge/matrix.hpp"

namespace patternforge {

inline constexpr int kMaxPatternOrder = 16;

/// A support position or digraph arc, 1-based.
struct Arc {
  int row = 0;
  int col = 0;
  auto operator<=>(const Arc&) const = default;
};

/// Zero pattern of order n. Rows are stored as column bitmasks.
class ZeroPattern {
 public:
  ZeroPattern() = default;
  explicit ZeroPattern(int n);
  ZeroPattern(int n, const std::vector<Arc>& support);

  int order() const { return n_; }
  bool has(int row, int col) const;  // 1-based
  void set(int row, int col, bool on = true);
  std::uint32_t row_mask(int row0) const { return rows_[static_cast<std::size_t>(row0)]; }
  bool has0(int r0, int c0) const { return (rows_[static_cast<std::size_t>(r0)] >> c0) & 1u; }

  /// Sorted (row-major) list of support positions.
  std::vector<Arc> support() const;
  int nnz() const;
  int loop_count() const;

  ZeroPattern transpose() const;
  /// Relabels vertex i as perm[i] (0-based), i.e. P A P^T.
  ZeroPattern permuted(const std::vector<int>& perm) const;

  /// Row-major bit string with entry (1,1) most significant; requires n <= 8.
  std::uint64_t code() const;
  static ZeroPattern from_code(int n, std::uint64_t code);

  /// True iff every nonzero entry of `a` sits on the support.
  bool admits(const RationalMatrix& a) const;
  /// The pattern of nonzero entries of a matrix.
  static ZeroPattern of(const RationalMatrix& a);

  bool operator==(const ZeroPattern& rhs) const { return n_ == rhs.n_ && rows_ == rhs.rows_; }
  bool operator!=(const ZeroPattern& rhs) const { return !(*this == rhs); }
  bool operator<(const ZeroPattern& rhs) const;

 private:
  int n_ = 0;
  std::vector<std::uint32_t> rows_;
};

/// Pattern symmetry: optional transpose followed by relabeling i -> perm[i].
/// The two operations commute, so the order is only a convention.
struct Symmetry {
  std::vector<int> perm;
  bool transpose = false;

  static Symmetry identity(int n);
  Symmetry inverse() const;
  /// (*this) after `first`.
  Symmetry after(const Symmetry& first) const;
  ZeroPattern apply(const ZeroPattern& p) const;
  RationalMatrix apply(const RationalMatrix& a) const;
};

struct CanonicalForm {
  ZeroPattern pattern;
  Symmetry certificate;  // certificate.apply(original) == pattern
};

/// Minimum code over all 2 * n! images; n <= 8.
CanonicalForm canonicalize(const ZeroPattern& p);

/// All distinct images of p under the symmetry group, each with a symmetry producing it.
std::vector<std::pair<ZeroPattern, Symmetry>> orbit(const ZeroPattern& p);

/// Parses n lines over {*, 0}; '1' is an alias for '*', '#' starts a comment.
ZeroPattern parse_pattern(std::string_view text);
std::string format_pattern(const ZeroPattern& p);

bool is_irreducible(const ZeroPattern& p);
/// True iff support(b) contains support(a).
bool is_superpattern(const ZeroPattern& a, const ZeroPattern& b);

/// Simple directed cycle given by its vertex sequence (1-based), starting
/// at its smallest vertex. A loop is a cycle of length 1.
struct SimpleCycle {
  std::vector<int> vertices;
  int length() const { return static_cast<int>(vertices.size()); }
  std::uint32_t vertex_mask() const;
  std::vector<Arc> arcs() const;
  bool operator==(const SimpleCycle&) const = default;
};

struct CompositeCycle {
  std::vector<SimpleCycle> cycles;
  int length = 0;
  std::vector<Arc> arcs() const;  // sorted
  int sign() const;               // (-1)^(length - #cycles)
};

std::vector<SimpleCycle> simple_cycles(const ZeroPattern& p);
/// Every composite k-cycle, ordered lexicographically by sorted arc list.
std::vector<CompositeCycle> composite_cycles(const ZeroPattern& p, int k);
/// Entry k-1 is true iff a composite k-cycle exists (k = 1..n).
std::vector<bool> has_composite_cycle_all_k(const ZeroPattern& p);
bool has_proper_two_cycle(const ZeroPattern& p);
int count_proper_two_cycles(const ZeroPattern& p);

}  // namespace patternforge
