#pragma once

#include <optional>
#include <string>
#include <vector>

#include "patternforge/pattern.hpp"
#include "patternforge/spectra.hpp"

namespace patternforge {

enum class Property { SAP, RIAP, IAP };

std::string to_string(Property p);

enum class ObstructionKind {
  MissingCompositeKCycle,
  NoProper2Cycle,
  NoNonzeroTransversal,
  LoopForcedDeterminant,
  EntryCountBound,
};

/// A structural certificate that some realizations are impossible.
struct Obstruction {
  ObstructionKind kind = ObstructionKind::MissingCompositeKCycle;
  int k = 0;  // cycle length for MissingCompositeKCycle
  /// Strongest property refuted; refuting IAP also refutes RIAP and SAP.
  Property refutes = Property::SAP;
  /// Specific refined inertias shown to be unattainable (may be empty).
  std::vector<RefinedInertia> refuted_targets;
  std::string citation;

  std::string name() const;
  bool refutes_property(Property p) const;
  bool refutes_target(const RefinedInertia& ri) const;
};

std::optional<Obstruction> check_kcycle_obstruction(const ZeroPattern& p);
std::optional<Obstruction> check_2cycle_obstruction(const ZeroPattern& p);
std::optional<Obstruction> check_transversal_obstruction(const ZeroPattern& p);
std::optional<Obstruction> check_loop_forced_determinant(const ZeroPattern& p);
/// Throws std::invalid_argument for reducible input.
std::optional<Obstruction> check_entry_count(const ZeroPattern& p);

/// Every applicable obstruction in a fixed order. A missing composite n-cycle
/// is reported once, as NoNonzeroTransversal.
std::vector<Obstruction> run_all_obstructions(const ZeroPattern& p);

bool any_refutes(const std::vector<Obstruction>& obs, Property p);
bool any_refutes(const std::vector<Obstruction>& obs, const RefinedInertia& ri);

}  // namespace patternforge
