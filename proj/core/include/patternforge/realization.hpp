#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "patternforge/obstructions.hpp"
#include "patternforge/pattern.hpp"
#include "patternforge/spectra.hpp"

namespace patternforge {

/// One monic factor of a target polynomial with exact parameters.
struct SpectralFactor {
  enum class Kind {
    Real,       // x - a
    Zero,       // x
    Imaginary,  // x^2 + a, a > 0
    Complex,    // x^2 - 2 a x + a^2 + b, a != 0, b > 0
  };
  Kind kind = Kind::Zero;
  Rational a = 0, b = 0;

  Polynomial polynomial() const;
  int degree() const { return (kind == Kind::Real || kind == Kind::Zero) ? 1 : 2; }
  std::string to_string() const;
};

struct TargetSpectrum {
  std::vector<SpectralFactor> factors;
  RefinedInertia refined_inertia;

  CharPoly charpoly() const;
  std::string to_string() const;
};

/// A factored polynomial with refined inertia ri. Seed 0 gives the fixed
/// reference spectrum; other seeds draw well-separated roots with moduli in
/// [1/2, 4]. Throws std::invalid_argument for odd n_imag.
TargetSpectrum target_poly_for(const RefinedInertia& ri, std::uint64_t seed = 0);

struct RealizationWitness {
  ZeroPattern pattern;
  RationalMatrix matrix;
  CharPoly charpoly;
  std::optional<TargetSpectrum> target;
  RefinedInertia refined_inertia;
  /// "construction", "newton", "rounded", "negation", "inherited" or "replay".
  std::string method;
  /// Coefficient residual; zero because every returned witness is exact.
  long double residual = 0;
  bool exact = true;
};

struct RealizeOptions {
  int starts = 64;  // multi-start budget per fixed target
  std::uint64_t seed = 0;
  int target_seeds = 3;            // fixed targets tried per refined inertia
  bool flexible_targets = true;    // also let the target roots move
  bool use_constructions = true;   // family shortcuts before numeric search
  int first_start = 0;             // index of the first multi-start layout
};

/// Re-verifies a candidate witness exactly: pattern conformance and, when a
/// target is given, equality of the characteristic polynomial.
bool verify_witness(const RealizationWitness& w);

/// A symmetry s with s.apply(family) contained in p, if any (order <= 8).
std::optional<Symmetry> find_embedding(const ZeroPattern& family, const ZeroPattern& p);

/// Exact realization of a characteristic polynomial, or none within budget.
std::optional<RealizationWitness> realize_charpoly(const ZeroPattern& p, const CharPoly& target,
                                                   const RealizeOptions& opts = {});

/// Exact realization of a refined inertia, or none within budget.
std::optional<RealizationWitness> realize_refined_inertia(const ZeroPattern& p, const RefinedInertia& ri,
                                                          const RealizeOptions& opts = {});

/// The loops-on-a-Hamilton-cycle construction: diagonal (d_1..d_{n-1}, 0),
/// superdiagonal ones and (n,1) entry c, with c = 0 when the target has a zero
/// eigenvalue and otherwise a small exact shift chosen below the critical
/// values of x * prod(x - d_i). Throws for n < 3 or a target not summing to n.
RationalMatrix an_family_witness(int n, const Inertia& target);

/// Witness for a path pattern built from 2x2 blocks with refined inertias
/// (1,1,0,0), (0,0,2,0), (0,0,0,2) peeled from either end.
std::optional<RationalMatrix> path_block_witness(int n, int alpha, const RefinedInertia& ri,
                                                 const RealizeOptions& opts = {});

struct SurveyOptions {
  RealizeOptions realize;
  /// Targets to attempt; empty means every refined inertia of the order.
  std::vector<RefinedInertia> targets;
  /// Skip targets refuted by a structural obstruction.
  bool skip_refuted = true;
  /// Stop at the first target (in the given order) left unrealized.
  bool stop_on_failure = false;
};

struct SurveyResult {
  std::map<RefinedInertia, std::optional<RealizationWitness>> witnesses;
  std::vector<RefinedInertia> refuted;     // skipped because an obstruction rules them out
  std::vector<RefinedInertia> unattempted; // skipped after a stop_on_failure miss

  bool realized(const RefinedInertia& ri) const;
  /// True iff every inertia of the order is the projection of a realized refined inertia.
  bool all_inertias_realized(int n) const;
  bool all_refined_realized(int n) const;
};

/// Attempts every requested refined inertia; a witness for ri yields one for
/// its reversal by negation.
SurveyResult survey(const ZeroPattern& p, const SurveyOptions& opts = {});

}  // namespace patternforge
