#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "patternforge/matrix.hpp"
#include "patternforge/pattern.hpp"
#include "patternforge/quadratic.hpp"

namespace patternforge {

enum class NcVerdict { SapCertified, TestFailed, Indeterminate };

std::string to_string(NcVerdict v);
NcVerdict parse_nc_verdict(const std::string& text);

struct NcCertificate {
  ZeroPattern pattern;
  /// Exact entries; rational whenever possible, otherwise in one real
  /// quadratic field (radicand() reports which).
  QuadMatrix nilpotent;
  int index = 0;
  /// Dimension of {B : AB = BA, B^T o pattern = 0}.
  int centralizer_rank_deficiency = 0;
  NcVerdict verdict = NcVerdict::Indeterminate;
  /// "hamilton-path", "bordered", "newton", "algebraic" or "given".
  std::string source = "given";

  int field_radicand() const { return nilpotent.radicand(); }
};

struct NilpotentOptions {
  int attempts = 48;            // numeric x^n searches with rational rounding
  int algebraic_attempts = 24;  // square normalized systems recognized in Q(sqrt d)
  std::uint64_t seed = 0;
};

/// Smallest k with a^k = 0. Throws std::invalid_argument if a is not nilpotent.
int nilpotent_index(const RationalMatrix& a);
int nilpotent_index(const QuadMatrix& a);

/// An exact rational realization of x^n in Q(p), or none within budget.
/// The index may be below n.
std::optional<RationalMatrix> find_nilpotent(const ZeroPattern& p, const NilpotentOptions& opts = {});

/// The nilpotent-centralizer test on an exact nilpotent a in Q(p). Throws
/// std::invalid_argument if a does not conform to p or is not nilpotent.
NcCertificate nc_test(const ZeroPattern& p, const RationalMatrix& a);
NcCertificate nc_test(const ZeroPattern& p, const QuadMatrix& a);

/// Re-checks a certificate from its stored matrix.
bool verify_certificate(const NcCertificate& c);

/// Searches for an index-n nilpotent passing the test: unit matrices along
/// Hamilton paths, the bordered construction for a path with loops at 1 and
/// n-1, numeric x^n realizations rounded to rationals, and finally isolated
/// solutions of a normalized square system recognized in a real quadratic
/// field. Returns the first SapCertified certificate, otherwise the best
/// inconclusive one (if any).
std::optional<NcCertificate> certify_sap(const ZeroPattern& p, const NilpotentOptions& opts = {});

/// [[M, e^T], [0, 0]] with e = (0, ..., 0, 1): a proper Hessenberg extension of
/// index n when M is a proper Hessenberg nilpotent of index n - 1.
QuadMatrix bordered_nilpotent(const QuadMatrix& m);

/// Nearest a + b sqrt(d) with denominators up to max_denominator, if within tol.
std::optional<QuadraticNumber> recognize_quadratic(long double value, int d, int max_denominator = 64,
                                                   long double tol = 1e-11L);

}  // namespace patternforge
