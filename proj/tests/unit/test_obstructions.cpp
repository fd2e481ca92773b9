#include <gtest/gtest.h>

#include <random>

#include "pftest/generators.hpp"
#include "patternforge/families.hpp"
#include "patternforge/obstructions.hpp"
#include "patternforge/spectra.hpp"

using namespace patternforge;

TEST(Obstructions, MissingLoopsGiveK1) {
  ZeroPattern p(3, {{1, 2}, {2, 1}, {2, 3}, {3, 2}});
  auto o = check_kcycle_obstruction(p);
  ASSERT_TRUE(o.has_value());
  EXPECT_EQ(o->kind, ObstructionKind::MissingCompositeKCycle);
  EXPECT_EQ(o->k, 1);
  EXPECT_TRUE(o->refutes_target({3, 0, 0, 0}));
  EXPECT_TRUE(o->refutes_property(Property::SAP));
  EXPECT_TRUE(o->refutes_property(Property::IAP));
}

TEST(Obstructions, CompanionHasNone) {
  for (int n = 2; n <= 6; ++n) EXPECT_TRUE(run_all_obstructions(companion_pattern(n)).empty()) << n;
}

TEST(Obstructions, TransversalForP52AndP54) {
  for (int alpha : {2, 4}) {
    ZeroPattern p = path_pattern(5, alpha);
    auto o = check_transversal_obstruction(p);
    ASSERT_TRUE(o.has_value()) << alpha;
    EXPECT_TRUE(o->refutes_target({5, 0, 0, 0}));
    EXPECT_TRUE(o->refutes_target({0, 5, 0, 0}));
    EXPECT_FALSE(o->refutes_target({0, 0, 1, 4}));
    EXPECT_TRUE(any_refutes(run_all_obstructions(p), RefinedInertia{5, 0, 0, 0}));
  }
  EXPECT_FALSE(check_transversal_obstruction(path_pattern(5, 3)).has_value());
}

TEST(Obstructions, NoProperTwoCycleForAn) {
  for (int n = 3; n <= 5; ++n) {
    auto o = check_2cycle_obstruction(an_pattern(n));
    ASSERT_TRUE(o.has_value()) << n;
    EXPECT_EQ(o->refutes, Property::RIAP);
    EXPECT_FALSE(o->refutes_property(Property::IAP));
    for (int c = 1; 2 * c <= n; ++c) EXPECT_TRUE(o->refutes_target({0, 0, n - 2 * c, 2 * c}));
    EXPECT_FALSE(o->refutes_target({n - 2, 0, 0, 2}));
  }
  EXPECT_FALSE(check_2cycle_obstruction(companion_pattern(4)).has_value());
}

TEST(Obstructions, LoopForcedDeterminant) {
  // P4,1 has the loop-free transversal (12)(34).
  EXPECT_FALSE(check_loop_forced_determinant(path_pattern(4, 1)).has_value());
  ZeroPattern p(4, {{1, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 2}, {2, 1}});
  auto q = check_loop_forced_determinant(p);
  // Transversals: (1)(234) uses the loop; (12)(34) needs (4,3), absent.
  ASSERT_TRUE(q.has_value());
  EXPECT_TRUE(q->refutes_target({0, 0, 0, 4}));
}

TEST(Obstructions, EntryCountBound) {
  ZeroPattern c3 = companion_pattern(3);
  ZeroPattern sparse(3, {{1, 2}, {2, 3}, {3, 1}, {1, 1}});
  EXPECT_FALSE(check_entry_count(c3).has_value());
  ASSERT_TRUE(check_entry_count(sparse).has_value());
  EXPECT_EQ(check_entry_count(sparse)->refutes, Property::IAP);
  EXPECT_THROW(check_entry_count(ZeroPattern(2, {{1, 1}, {2, 2}})), std::invalid_argument);
}

TEST(Obstructions, SoundOnRandomRealizationsProperty) {
  // No random realization of an obstructed pattern attains a refuted target
  // whose refutation needs no trace condition (missing k-cycles, transversals).
  std::mt19937_64 rng(9);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    int n = pftest::uniform_int(rng, 2, 5);
    ZeroPattern p = pftest::random_pattern(rng, n, 40);
    std::vector<Obstruction> obs;
    if (auto o = check_kcycle_obstruction(p)) obs.push_back(*o);
    if (auto o = check_transversal_obstruction(p)) obs.push_back(*o);
    if (obs.empty()) continue;
    for (int s = 0; s < 5; ++s) {
      RefinedInertia ri = exact_refined_inertia(char_poly(pftest::random_realization(rng, p)));
      EXPECT_FALSE(any_refutes(obs, ri)) << format_pattern(p) << ri.to_string();
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Obstructions, NamesAreStable) {
  Obstruction o;
  o.kind = ObstructionKind::NoNonzeroTransversal;
  EXPECT_EQ(o.name(), "NoNonzeroTransversal");
}
