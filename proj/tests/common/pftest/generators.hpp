#pragma once

// Hand-rolled generators for property tests. Every generator is a pure
// function of a seeded std::mt19937_64, so failures replay from the seed.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "patternforge/matrix.hpp"
#include "patternforge/pattern.hpp"

namespace pftest {

using patternforge::Rational;
using patternforge::RationalMatrix;
using patternforge::ZeroPattern;

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Small rational with numerator in [-9, 9] and denominator in [1, 4].
inline Rational small_rational(std::mt19937_64& rng) {
  Rational r(uniform_int(rng, -9, 9), uniform_int(rng, 1, 4));
  r.canonicalize();
  return r;
}

/// Nonzero variant of small_rational.
inline Rational nonzero_rational(std::mt19937_64& rng) {
  for (;;) {
    Rational r = small_rational(rng);
    if (r != 0) return r;
  }
}

/// Each position is in the support with probability density/100.
inline ZeroPattern random_pattern(std::mt19937_64& rng, int n, int density = 50) {
  ZeroPattern p(n);
  for (int r = 1; r <= n; ++r)
    for (int c = 1; c <= n; ++c)
      if (uniform_int(rng, 1, 100) <= density) p.set(r, c);
  return p;
}

/// A random irreducible pattern: a random Hamiltonian cycle plus extra arcs.
inline ZeroPattern random_irreducible_pattern(std::mt19937_64& rng, int n, int density = 30) {
  ZeroPattern p = random_pattern(rng, n, density);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  std::shuffle(perm.begin(), perm.end(), rng);
  for (int i = 0; i < n; ++i) p.set(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>((i + 1) % n)]);
  return p;
}

/// A realization of p with nonzero small rationals on its support.
inline RationalMatrix random_realization(std::mt19937_64& rng, const ZeroPattern& p) {
  RationalMatrix a(p.order());
  for (const auto& arc : p.support()) a(arc.row - 1, arc.col - 1) = nonzero_rational(rng);
  return a;
}

inline RationalMatrix random_matrix(std::mt19937_64& rng, int n, int density = 60) {
  return random_realization(rng, random_pattern(rng, n, density));
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

/// Positive diagonal entries in [1/4, 9].
inline std::vector<Rational> random_positive_diagonal(std::mt19937_64& rng, int n) {
  std::vector<Rational> d;
  for (int i = 0; i < n; ++i) {
    Rational r(uniform_int(rng, 1, 9), uniform_int(rng, 1, 4));
    r.canonicalize();
    d.push_back(r);
  }
  return d;
}

}  // namespace pftest
