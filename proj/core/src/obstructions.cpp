#include "patternforge/obstructions.hpp"

#include <algorithm>
#include <stdexcept>

namespace patternforge {

std::string to_string(Property p) {
  switch (p) {
    case Property::SAP: return "SAP";
    case Property::RIAP: return "RIAP";
    case Property::IAP: return "IAP";
  }
  return "?";
}

std::string Obstruction::name() const {
  switch (kind) {
    case ObstructionKind::MissingCompositeKCycle: return "MissingCompositeKCycle(" + std::to_string(k) + ")";
    case ObstructionKind::NoProper2Cycle: return "NoProper2Cycle";
    case ObstructionKind::NoNonzeroTransversal: return "NoNonzeroTransversal";
    case ObstructionKind::LoopForcedDeterminant: return "LoopForcedDeterminant";
    case ObstructionKind::EntryCountBound: return "EntryCountBound";
  }
  return "?";
}

bool Obstruction::refutes_property(Property p) const {
  // SAP implies RIAP implies IAP, so refuting a weaker property refutes the stronger ones.
  auto rank = [](Property q) { return q == Property::SAP ? 0 : (q == Property::RIAP ? 1 : 2); };
  return rank(p) <= rank(refutes);
}

bool Obstruction::refutes_target(const RefinedInertia& ri) const {
  return std::find(refuted_targets.begin(), refuted_targets.end(), ri) != refuted_targets.end();
}

namespace {

std::vector<RefinedInertia> nonsingular_targets(int n) {
  std::vector<RefinedInertia> out;
  for (const auto& ri : all_refined_inertias(n))
    if (ri.zero == 0) out.push_back(ri);
  return out;
}

}  // namespace

std::optional<Obstruction> check_kcycle_obstruction(const ZeroPattern& p) {
  const int n = p.order();
  auto has = has_composite_cycle_all_k(p);
  for (int k = 1; k <= n; ++k) {
    if (has[static_cast<std::size_t>(k - 1)]) continue;
    Obstruction o;
    o.kind = ObstructionKind::MissingCompositeKCycle;
    o.k = k;
    o.refutes = Property::IAP;
    // E_k vanishes identically, so not every coefficient can be positive
    // (or alternate), ruling out all-stable and all-unstable spectra.
    if (k == n) {
      o.refuted_targets = nonsingular_targets(n);
    } else {
      o.refuted_targets = {{n, 0, 0, 0}, {0, n, 0, 0}};
    }
    o.citation = "a pattern allowing every inertia has a composite k-cycle for each k; none of length " +
                 std::to_string(k) + " exists";
    return o;
  }
  return std::nullopt;
}

std::optional<Obstruction> check_2cycle_obstruction(const ZeroPattern& p) {
  if (has_proper_two_cycle(p)) return std::nullopt;
  const int n = p.order();
  Obstruction o;
  o.kind = ObstructionKind::NoProper2Cycle;
  o.refutes = Property::RIAP;
  for (int c = 1; 2 * c <= n; ++c) o.refuted_targets.push_back({0, 0, n - 2 * c, 2 * c});
  o.citation =
      "with trace zero and no proper 2-cycle, 2 E_2 = -(sum of squared diagonal entries) <= 0, but a "
      "spectrum (0,0,a,b) with b >= 2 needs E_2 > 0";
  return o;
}

std::optional<Obstruction> check_transversal_obstruction(const ZeroPattern& p) {
  const int n = p.order();
  if (n == 0) return std::nullopt;
  auto has = has_composite_cycle_all_k(p);
  if (has[static_cast<std::size_t>(n - 1)]) return std::nullopt;
  Obstruction o;
  o.kind = ObstructionKind::NoNonzeroTransversal;
  o.refutes = Property::IAP;
  o.refuted_targets = nonsingular_targets(n);
  o.citation = "no composite n-cycle: every realization is singular";
  return o;
}

std::optional<Obstruction> check_loop_forced_determinant(const ZeroPattern& p) {
  const int n = p.order();
  if (n % 2 != 0 || p.loop_count() != 1) return std::nullopt;
  int loop = 0;
  while (!p.has0(loop, loop)) ++loop;
  auto transversals = composite_cycles(p, n);
  if (transversals.empty()) return std::nullopt;
  for (const auto& t : transversals) {
    bool uses_loop = false;
    for (const auto& c : t.cycles)
      if (c.length() == 1 && c.vertices.front() == loop + 1) uses_loop = true;
    if (!uses_loop) return std::nullopt;
  }
  Obstruction o;
  o.kind = ObstructionKind::LoopForcedDeterminant;
  o.refutes = Property::RIAP;
  o.refuted_targets = {{0, 0, 0, n}};
  o.citation = "the only loop lies on every transversal, so trace zero forces det = 0";
  return o;
}

std::optional<Obstruction> check_entry_count(const ZeroPattern& p) {
  if (!is_irreducible(p)) throw std::invalid_argument("entry-count bounds apply to irreducible patterns only");
  const int n = p.order(), m = p.nnz();
  if (n == 3 && m < 5) {
    Obstruction o;
    o.kind = ObstructionKind::EntryCountBound;
    o.refutes = Property::IAP;
    o.citation = "an irreducible order-3 pattern allowing every inertia needs at least 5 free entries";
    return o;
  }
  if (n == 4 && m < 7) {
    Obstruction o;
    o.kind = ObstructionKind::EntryCountBound;
    o.refutes = Property::RIAP;
    o.citation = "an irreducible order-4 pattern allowing every refined inertia needs at least 7 free entries";
    return o;
  }
  return std::nullopt;
}

std::vector<Obstruction> run_all_obstructions(const ZeroPattern& p) {
  std::vector<Obstruction> out;
  auto transversal = check_transversal_obstruction(p);
  if (auto o = check_kcycle_obstruction(p)) {
    if (!(transversal && o->k == p.order())) out.push_back(*o);
  }
  if (auto o = check_2cycle_obstruction(p)) out.push_back(*o);
  if (transversal) out.push_back(*transversal);
  if (auto o = check_loop_forced_determinant(p)) out.push_back(*o);
  if (is_irreducible(p)) {
    if (auto o = check_entry_count(p)) out.push_back(*o);
  }
  return out;
}

bool any_refutes(const std::vector<Obstruction>& obs, Property p) {
  return std::any_of(obs.begin(), obs.end(), [&](const Obstruction& o) { return o.refutes_property(p); });
}

bool any_refutes(const std::vector<Obstruction>& obs, const RefinedInertia& ri) {
  return std::any_of(obs.begin(), obs.end(), [&](const Obstruction& o) { return o.refutes_target(ri); });
}

}  // namespace patternforge
