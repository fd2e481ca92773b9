#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "patternforge/pattern.hpp"
#include "patternforge/spectra.hpp"

namespace patternforge {

/// Coefficient map t -> (E_1(t), ..., E_n(t)) of a pattern, compiled for fast
/// floating-point evaluation. Variables are the support positions in
/// row-major order.
class CoefficientModel {
 public:
  explicit CoefficientModel(const ZeroPattern& p);

  struct Term {
    long coef;
    std::vector<int> vars;
  };

  const ZeroPattern& pattern() const { return pattern_; }
  int order() const { return pattern_.order(); }
  int variable_count() const { return static_cast<int>(vars_.size()); }
  const std::vector<Arc>& variables() const { return vars_; }
  const std::vector<std::vector<Term>>& equations() const { return eqs_; }
  int variable_index(int row0, int col0) const;

  void evaluate(const std::vector<long double>& x, std::vector<long double>& e) const;
  /// Jacobian rows k = 0..n-1 restricted to the given columns.
  void jacobian(const std::vector<long double>& x, const std::vector<int>& cols,
                std::vector<std::vector<long double>>& jac) const;

  RationalMatrix to_matrix(const std::vector<Rational>& values) const;
  std::vector<long double> from_matrix(const RationalMatrix& a) const;

 private:
  ZeroPattern pattern_;
  std::vector<Arc> vars_;
  std::vector<std::vector<Term>> eqs_;
  std::vector<int> index_;
};

/// Target coefficients as a function of free parameters theta. A fixed target
/// has no parameters.
class TargetModel {
 public:
  virtual ~TargetModel() = default;
  virtual int parameter_count() const = 0;
  /// e[k] = E_{k+1}(theta); de[k][j] = dE_{k+1}/dtheta_j.
  virtual void evaluate(const std::vector<long double>& theta, std::vector<long double>& e,
                        std::vector<std::vector<long double>>* de) const = 0;
};

class FixedTarget : public TargetModel {
 public:
  explicit FixedTarget(const CharPoly& c);
  int parameter_count() const override { return 0; }
  void evaluate(const std::vector<long double>& theta, std::vector<long double>& e,
                std::vector<std::vector<long double>>* de) const override;

 private:
  std::vector<long double> e_;
};

struct SolveSettings {
  int max_iterations = 120;
  long double tolerance = 1e-12L;
};

struct SolveState {
  std::vector<long double> x;      // all entry values; inactive ones stay fixed
  std::vector<int> active;         // indices of entries being solved for
  std::vector<long double> theta;  // target parameters
  long double residual = 0;        // max_k |E_k(x) - e_k(theta)| / (1 + |e_k|)
};

/// Damped minimum-norm Gauss-Newton (Levenberg-Marquardt on the
/// underdetermined system). Returns true when the residual drops below tolerance.
bool gauss_newton(const CoefficientModel& model, const TargetModel& target, SolveState& state,
                  const SolveSettings& settings = {});

long double residual_of(const CoefficientModel& model, const TargetModel& target, const SolveState& state);

/// Smallest singular value of the coefficient Jacobian (all entries) at x,
/// relative to the largest.
long double jacobian_conditioning(const CoefficientModel& model, const std::vector<long double>& x);

/// Turns a numeric solution of E(t) = target into an exact rational one.
/// `fixed` holds entries whose exact value is already decided (zeros forced by
/// the start, unit arcs fixed by diagonal similarity). Returns the matrix when
/// its exact characteristic polynomial equals the target.
std::optional<RationalMatrix> exactify(const CoefficientModel& model, const CharPoly& target,
                                       const std::vector<long double>& numeric,
                                       const std::vector<std::optional<Rational>>& fixed,
                                       std::mt19937_64& rng, int attempts = 6);

/// Deterministic seed mixing used across the search routines.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace patternforge
