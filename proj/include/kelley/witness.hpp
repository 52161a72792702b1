#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "kelley/error.hpp"
#include "kelley/model.hpp"
#include "kelley/rational.hpp"

namespace kelley {

/// Multiset over a family: multiplicity of each member, indexed like the family.
using Multiset = std::vector<std::uint64_t>;

inline std::uint64_t multiset_size(const Multiset& beta) {
  std::uint64_t n = 0;
  for (auto k : beta) n += k;
  return n;
}

/// Clears denominators of a rational probability vector: each member
/// appears weight × lcm(denominators) times.
inline Multiset witness_from_strategy(std::span<const Rational> weights) {
  Rational total = 0;
  for (const auto& w : weights) {
    if (w < 0) throw Error(ErrorKind::NotAProbability, "negative weight " + to_string(w));
    total += w;
  }
  if (total != 1) throw Error(ErrorKind::NotAProbability, "weights sum to " + to_string(total));
  const Integer scale = lcm_of_denominators(weights);
  Multiset out;
  out.reserve(weights.size());
  for (const auto& w : weights) {
    Integer k = w.get_num() * (scale / w.get_den());
    if (!k.fits_ulong_p()) throw std::overflow_error("witness multiplicity does not fit 64 bits");
    out.push_back(k.get_ui());
  }
  return out;
}

/// s(β)(ω) = (1/|β|) Σ_{B∈β} 1_B(ω) for a sequence of sets.
inline SimpleFunction sequence_average(const GroundSet& ground, std::span<const Subset> beta) {
  if (beta.empty()) throw Error(ErrorKind::EmptySequence, "sequence must contain at least one set");
  std::vector<Rational> v(ground.size(), 0);
  for (Subset b : beta) {
    for (std::size_t i : b.indices()) v.at(i) += 1;
  }
  const Rational len(static_cast<unsigned long>(beta.size()));
  for (auto& x : v) x /= len;
  return SimpleFunction(ground, std::move(v));
}

/// s(β) for β given as multiplicities over `family`.
inline SimpleFunction sequence_average(const GroundSet& ground, std::span<const Subset> family, const Multiset& beta) {
  std::uint64_t len = multiset_size(beta);
  if (len == 0) throw Error(ErrorKind::EmptySequence, "sequence must contain at least one set");
  std::vector<Rational> v(ground.size(), 0);
  for (std::size_t k = 0; k < family.size(); ++k) {
    if (beta[k] == 0) continue;
    for (std::size_t i : family[k].indices()) v.at(i) += static_cast<unsigned long>(beta[k]);
  }
  const Rational denom(static_cast<unsigned long>(len));
  for (auto& x : v) x /= denom;
  return SimpleFunction(ground, std::move(v));
}

}  // namespace kelley
