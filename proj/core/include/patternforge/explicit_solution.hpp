#pragma once

#include <optional>
#include <string>
#include <vector>

#include "patternforge/pattern.hpp"
#include "patternforge/spectra.hpp"

namespace patternforge {

/// One elimination step: `entry` is solved from coefficient equation
/// E_equation(A) = e_equation.
struct SolutionStep {
  Arc entry;
  int equation = 0;  // 1-based
  /// 1 for a linear step with a nonzero constant coefficient; otherwise the
  /// odd degree of the final univariate equation.
  int degree = 1;
  std::string expression;  // "a(4,1) = -e4" or "a(3,3)^3 - e1*a(3,3)^2 + ... = 0"
};

/// Exact proof that a pattern realizes every monic real polynomial of its
/// order. After fixing unit_entries to 1 (a diagonal similarity) and
/// zero_entries to 0, the coefficient equations E_k(A) = e_k are solved in
/// order: every step but the last is linear in its entry with a constant
/// coefficient, and the last is a univariate equation of odd degree with a
/// constant leading coefficient, so it has a real root for every target.
struct SolutionCertificate {
  ZeroPattern pattern;
  std::vector<Arc> unit_entries;
  std::vector<Arc> zero_entries;
  std::vector<SolutionStep> steps;
};

/// Searches spanning-tree normalizations and elimination orders. Entries in
/// `zero_entries` are held at 0 (used when inheriting from a subpattern);
/// surplus free entries are zeroed when needed. Order at most 6.
std::optional<SolutionCertificate> triangular_solution(const ZeroPattern& p, const std::vector<Arc>& zero_entries = {});

/// Replays the recorded elimination exactly and confirms every step.
bool verify_solution_certificate(const SolutionCertificate& c);

/// A floating-point realization of the target produced by following the
/// certificate: a real root of the final equation, then back-substitution.
std::optional<std::vector<std::vector<long double>>> solve_with_certificate(const SolutionCertificate& c,
                                                                            const CharPoly& target);

}  // namespace patternforge
