#pragma once

// Random instance generators and independent reference computations used
// by the unit and acceptance suites. Nothing here calls the LP.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "kelley/kelley.hpp"

namespace kelley::testing {

using Rng = std::mt19937_64;

inline std::size_t uniform_int(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// n/d in lowest terms. The two-argument GMP constructor does not reduce.
inline Rational frac(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline Subset random_nonempty_subset(Rng& rng, std::size_t n) {
  std::uint64_t bits = 0;
  while (bits == 0) bits = std::uniform_int_distribution<std::uint64_t>(1, (std::uint64_t{1} << n) - 1)(rng);
  return Subset(bits);
}

inline SetSystem random_system(Rng& rng, const GroundSet& g, std::size_t sets) {
  std::vector<Subset> fam;
  for (std::size_t k = 0; k < sets; ++k) fam.push_back(random_nonempty_subset(rng, g.size()));
  return SetSystem(g, fam);
}

/// Probability with small integer weights; `zero_chance` percent of atoms get mass 0
/// (at least one atom always keeps mass).
inline Measure random_probability(Rng& rng, const GroundSet& g, unsigned zero_chance = 0, unsigned max_weight = 9) {
  std::vector<unsigned long> w(g.size());
  unsigned long total = 0;
  for (auto& x : w) {
    x = uniform_int(rng, 0, 99) < zero_chance ? 0 : uniform_int(rng, 1, max_weight);
    total += x;
  }
  if (total == 0) {
    w[uniform_int(rng, 0, g.size() - 1)] = 1;
    total = 1;
  }
  std::vector<Rational> mass;
  for (auto x : w) {
    Rational r(x, total);
    r.canonicalize();
    mass.push_back(r);
  }
  return Measure(g, std::move(mass));
}

/// Nonnegative measure with masses in {0, 1/4, ..., max_quarters/4}.
inline Measure random_measure(Rng& rng, const GroundSet& g, unsigned max_quarters = 6) {
  std::vector<Rational> mass;
  for (std::size_t i = 0; i < g.size(); ++i) {
    Rational r(static_cast<unsigned long>(uniform_int(rng, 0, max_quarters)), 4UL);
    r.canonicalize();
    mass.push_back(r);
  }
  return Measure(g, std::move(mass));
}

inline SimpleFunction random_function(Rng& rng, const GroundSet& g, long lo = -6, long hi = 6, unsigned long den = 3) {
  std::vector<Rational> v;
  for (std::size_t i = 0; i < g.size(); ++i) {
    Rational r(std::uniform_int_distribution<long>(lo, hi)(rng), den);
    r.canonicalize();
    v.push_back(r);
  }
  return SimpleFunction(g, std::move(v));
}

/// Atoms of the generated algebra, found by closing the generators under
/// complement and pairwise intersection and keeping the minimal nonempty sets.
inline std::set<Subset> atoms_by_closure(const GroundSet& base, const std::vector<Subset>& generators) {
  std::set<Subset> algebra{base.full()};
  for (Subset g : generators) {
    algebra.insert(g);
    algebra.insert(g.complement_in(base.size()));
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Subset> items(algebra.begin(), algebra.end());
    for (Subset a : items) {
      for (Subset b : items) {
        if (algebra.insert(a & b).second) grew = true;
      }
    }
  }
  std::set<Subset> atoms;
  for (Subset a : algebra) {
    if (a.empty()) continue;
    bool minimal = std::none_of(algebra.begin(), algebra.end(), [&](Subset b) { return !b.empty() && b != a && b.subset_of(a); });
    if (minimal) atoms.insert(a);
  }
  return atoms;
}

/// Brute-force I_* straight from its definition: for every multiset β of
/// size ≤ max_len, minimize sup g over the members of [s(β)]_* whose values
/// on N* are drawn from `grid` (values off N* are pinned to s(β)).
inline Rational order_intersection_by_grid(const Ideal& ideal, const SetSystem& s, std::uint64_t max_len,
                                           const std::vector<Rational>& grid) {
  const GroundSet& g = s.ground();
  const auto null_atoms = ideal.generator().indices();
  std::optional<Rational> best;
  Multiset beta(s.size(), 0);
  auto evaluate = [&]() {
    SimpleFunction f = sequence_average(g, s.family(), beta);
    // Enumerate the value assignments on N*.
    std::vector<std::size_t> digit(null_atoms.size(), 0);
    for (;;) {
      std::vector<Rational> v = f.values();
      for (std::size_t k = 0; k < null_atoms.size(); ++k) v[null_atoms[k]] = grid[digit[k]];
      Rational sup = max_of(v);
      if (!best || sup < *best) best = sup;
      std::size_t pos = 0;
      while (pos < digit.size() && ++digit[pos] == grid.size()) digit[pos++] = 0;
      if (pos == digit.size()) break;
    }
  };
  auto dfs = [&](auto&& self, std::size_t idx, std::uint64_t len) -> void {
    if (idx == s.size()) {
      if (len > 0) evaluate();
      return;
    }
    for (std::uint64_t c = 0; len + c <= max_len; ++c) {
      beta[idx] = c;
      self(self, idx + 1, len + c);
    }
    beta[idx] = 0;
  };
  dfs(dfs, 0, 0);
  return *best;
}

/// Every subset family of the powerset of n atoms as bitmask lists.
inline std::vector<Subset> all_nonempty_subsets(const GroundSet& g) {
  std::vector<Subset> out;
  for_each_nonempty_subset(g.full(), [&](Subset a) { out.push_back(a); });
  return out;
}

}  // namespace kelley::testing
