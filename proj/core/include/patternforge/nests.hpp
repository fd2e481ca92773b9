#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "patternforge/matrix.hpp"
#include "patternforge/pattern.hpp"
#include "patternforge/realization.hpp"

namespace patternforge {

/// An ordering (alpha_1, ..., alpha_n) of 1..n.
struct NestOrdering {
  std::vector<int> sequence;  // 1-based
  bool operator==(const NestOrdering&) const = default;
};

/// Signs in {-1, 0, 1} of det B[{alpha_1..alpha_k}], k = 1..n.
std::vector<int> nest_signs(const RationalMatrix& b, const NestOrdering& ord);

/// True iff sign det B[{alpha_1..alpha_k}] = (-1)^k for every k.
bool is_properly_signed_nest(const RationalMatrix& b, const NestOrdering& ord);

/// Lexicographically first properly signed nest, by exhaustive search with
/// memoized minors. Throws BudgetError for n > 8.
std::optional<NestOrdering> find_nest(const RationalMatrix& b);

/// Greedy growth: append the smallest index giving the required next sign.
/// Works at any order but may miss nests.
std::optional<NestOrdering> find_nest_greedy(const RationalMatrix& b);

/// The path matrix with subdiagonal entries 1 and every other support entry
/// (superdiagonal and the loop at alpha) equal to -1.
RationalMatrix canonical_path_matrix(int n, int alpha);

/// (alpha, alpha - 1, ..., 1, alpha + 1, ..., n).
NestOrdering descending_prefix_ordering(int n, int alpha);

/// D = diag(eps^(k-1)) placed along the nest order makes D*B stable for small
/// eps; returns the first exactly verified D*B (refined inertia (0,n,0,0)).
std::optional<RationalMatrix> nest_scaling_witness(const RationalMatrix& b, const NestOrdering& ord);

struct NestReport {
  ZeroPattern pattern;
  NestOrdering ordering;
  std::vector<int> signs;
  bool verdict = false;  // both all-stable and all-unstable spectra realized
  std::optional<RealizationWitness> stable;    // (0, n, 0, 0)
  std::optional<RealizationWitness> unstable;  // (n, 0, 0, 0)
};

/// Confirms on this instance that a properly signed nest yields the refined
/// inertias (n,0,0,0) and (0,n,0,0) for the pattern of b. Throws
/// std::invalid_argument when ord is not a properly signed nest of b.
NestReport nest_implies_inertia_check(const RationalMatrix& b, const NestOrdering& ord,
                                      const RealizeOptions& opts = {});

struct PatternNestSearch {
  std::optional<RationalMatrix> matrix;
  std::optional<NestOrdering> ordering;
  int samples_tried = 0;
};

/// Semi-decision: the signed reference matrix first, then random rational
/// realizations. No result means "no nest found", not impossibility.
PatternNestSearch pattern_allows_nest(const ZeroPattern& p, int samples = 500, std::uint64_t seed = 0);

}  // namespace patternforge
