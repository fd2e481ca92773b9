#include <gtest/gtest.h>

#include <random>
#include <set>

#include "pftest/generators.hpp"
#include "patternforge/errors.hpp"
#include "patternforge/families.hpp"
#include "patternforge/pattern.hpp"

using namespace patternforge;

TEST(Pattern, ParseAliasesAndComments) {
  ZeroPattern p = parse_pattern("# A3\n* * 0\n1 0 *  # row two\n0 * 0\n");
  EXPECT_EQ(p.order(), 3);
  EXPECT_EQ(p.nnz(), 5);
  EXPECT_TRUE(p.has(2, 1));
  EXPECT_FALSE(p.has(3, 3));
  EXPECT_EQ(parse_pattern(format_pattern(p)), p);
  EXPECT_THROW(parse_pattern("* *\n*\n"), ParseError);
  EXPECT_THROW(parse_pattern("* x\n0 *\n"), ParseError);
}

TEST(Pattern, CodeRoundTrip) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    int n = pftest::uniform_int(rng, 1, 6);
    ZeroPattern p = pftest::random_pattern(rng, n);
    EXPECT_EQ(ZeroPattern::from_code(n, p.code()), p);
  }
}

TEST(Pattern, CyclesOfCompanion) {
  // C4 (full first column plus the superdiagonal) has one simple k-cycle for every k.
  ZeroPattern c = companion_pattern(4);
  auto cycles = simple_cycles(c);
  EXPECT_EQ(cycles.size(), 4u);
  auto present = has_composite_cycle_all_k(c);
  for (bool b : present) EXPECT_TRUE(b);
  EXPECT_EQ(count_proper_two_cycles(c), 1);
}

TEST(Pattern, CompositeCycleSign) {
  ZeroPattern d(3, {{1, 1}, {2, 2}, {3, 3}});
  auto cc = composite_cycles(d, 3);
  ASSERT_EQ(cc.size(), 1u);
  EXPECT_EQ(cc[0].sign(), 1);
  ZeroPattern t(2, {{1, 2}, {2, 1}});
  auto two = composite_cycles(t, 2);
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two[0].sign(), -1);
}

TEST(Pattern, Irreducibility) {
  EXPECT_TRUE(is_irreducible(companion_pattern(5)));
  EXPECT_FALSE(is_irreducible(ZeroPattern(3, {{1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}})));
}

TEST(Pattern, CanonicalFormOrbitInvarianceProperty) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    int n = pftest::uniform_int(rng, 2, 5);
    ZeroPattern p = pftest::random_pattern(rng, n);
    CanonicalForm base = canonicalize(p);
    EXPECT_EQ(base.certificate.apply(p), base.pattern);
    for (const auto& [image, sym] : orbit(p)) {
      EXPECT_EQ(sym.apply(p), image);
      EXPECT_EQ(canonicalize(image).pattern, base.pattern);
    }
    ZeroPattern relabeled = p.permuted(pftest::random_permutation(rng, n));
    EXPECT_EQ(canonicalize(relabeled).pattern, base.pattern);
    EXPECT_EQ(canonicalize(p.transpose()).pattern, base.pattern);
  }
}

TEST(Pattern, SymmetryInverseComposition) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    int n = pftest::uniform_int(rng, 2, 5);
    ZeroPattern p = pftest::random_pattern(rng, n);
    Symmetry s{pftest::random_permutation(rng, n), pftest::uniform_int(rng, 0, 1) == 1};
    EXPECT_EQ(s.inverse().apply(s.apply(p)), p);
    EXPECT_EQ(s.inverse().after(s).apply(p), p);
  }
}

TEST(Pattern, Superpattern) {
  ZeroPattern a = an_pattern(3);
  ZeroPattern b = a;
  b.set(3, 3);
  EXPECT_TRUE(is_superpattern(a, b));
  EXPECT_FALSE(is_superpattern(b, a));
}

TEST(Families, NamedPatterns) {
  EXPECT_EQ(pattern_from_name("C5"), companion_pattern(5));
  EXPECT_EQ(pattern_from_name("A4"), an_pattern(4));
  EXPECT_EQ(pattern_from_name("P4,2"), path_pattern(4, 2));
  EXPECT_EQ(pattern_from_name("T4"), t_pattern(4));
  EXPECT_EQ(pattern_from_name("W5"), w_pattern(5));
  EXPECT_EQ(figure_group("J").size(), 6u);
  EXPECT_EQ(pattern_from_name("J3").order(), 4);
  EXPECT_THROW(pattern_from_name("nonsense"), std::exception);
}

TEST(Families, PathPatternSupport) {
  ZeroPattern p = path_pattern(4, 2);
  EXPECT_EQ(p.nnz(), 7);
  EXPECT_TRUE(p.has(2, 2));
  EXPECT_TRUE(p.has(1, 2));
  EXPECT_TRUE(p.has(2, 1));
  EXPECT_EQ(p.loop_count(), 1);
}
