#pragma once

// Brute-force evaluation of intersection numbers straight from the
// sequence-infimum definition. Deliberately naive: no pruning, no LP.

#include <cstdint>
#include <optional>
#include <vector>

#include "kelley/intersection.hpp"
#include "kelley/witness.hpp"

namespace kelley {

inline constexpr std::uint64_t kDefaultMultisetCap = 1'000'000;

enum class Exactness { Certified, UpperBoundOnly };

struct BruteForceResult {
  Rational best_value;
  Multiset best_sequence;
  std::uint64_t searched_max_length = 0;
  Exactness exactness = Exactness::UpperBoundOnly;
};

/// Number of nonempty multisets of size ≤ max_len over k elements, i.e.
/// C(max_len + k, k) − 1.
inline Integer multiset_count(std::uint64_t k, std::uint64_t max_len) {
  Integer c;
  mpz_bin_uiui(c.get_mpz_t(), max_len + k, k);
  return c - 1;
}

/// min over multisets β of size 1..max_len of sup_ω s(β)(ω). Passing the LP
/// value marks the result Certified when the two agree.
inline BruteForceResult bruteforce_intersection(const SetSystem& s, std::uint64_t max_len,
                                                std::optional<Rational> lp_value = std::nullopt,
                                                std::uint64_t cap = kDefaultMultisetCap) {
  if (s.empty()) throw Error(ErrorKind::EmptyFamily, "brute force over an empty family");
  if (max_len == 0) throw Error(ErrorKind::BudgetTooLarge, "max_len must be at least 1");
  const Integer count = multiset_count(s.size(), max_len);
  if (count > cap) {
    throw Error(ErrorKind::BudgetTooLarge, count.get_str() + " multisets exceed the cap of " + std::to_string(cap));
  }

  const std::size_t k = s.size(), n = s.ground().size();
  std::vector<std::vector<std::size_t>> members(k);
  for (std::size_t c = 0; c < k; ++c) members[c] = s.family()[c].indices();

  std::vector<std::uint64_t> hits(n, 0);
  Multiset current(k, 0), best(k, 0);
  // best value as the fraction best_hits / best_len
  std::uint64_t best_hits = 1, best_len = 0;

  auto visit = [&](std::uint64_t len) {
    std::uint64_t top = 0;
    for (auto h : hits) top = std::max(top, h);
    if (best_len == 0 || top * best_len < best_hits * len) {
      best_hits = top;
      best_len = len;
      best = current;
    }
  };
  auto dfs = [&](auto&& self, std::size_t idx, std::uint64_t len) -> void {
    if (idx == k) {
      if (len > 0) visit(len);
      return;
    }
    self(self, idx + 1, len);
    std::uint64_t added = 0;
    while (len + added < max_len) {
      ++added;
      ++current[idx];
      for (std::size_t w : members[idx]) ++hits[w];
      self(self, idx + 1, len + added);
    }
    current[idx] = 0;
    for (std::size_t w : members[idx]) hits[w] -= added;
  };
  dfs(dfs, 0, 0);

  BruteForceResult out;
  out.best_value = Rational(static_cast<unsigned long>(best_hits), static_cast<unsigned long>(best_len));
  out.best_value.canonicalize();
  out.best_sequence = std::move(best);
  out.searched_max_length = max_len;
  out.exactness = (lp_value && *lp_value == out.best_value) ? Exactness::Certified : Exactness::UpperBoundOnly;
  return out;
}

struct MinimaxCertificate {
  bool verdict = false;
  Rational lp_value;
  Multiset witness;
  Rational witness_sup;   ///< sup_ω s(witness)(ω)
  Rational brute_value;   ///< brute-force minimum at max_len = |witness|
};

/// Certifies the minimax identity on one instance: the LP value, the
/// supremum of the witness sequence it induces, and the brute-force minimum
/// at the witness length all coincide.
inline MinimaxCertificate verify_minimax(const SetSystem& s, std::uint64_t cap = kDefaultMultisetCap) {
  IntersectionReport report = intersection_number(s);
  MinimaxCertificate cert;
  cert.lp_value = report.value;
  cert.witness = witness_from_strategy(report.optimal_weights);
  cert.witness_sup = sequence_average(s.ground(), s.family(), cert.witness).sup();
  BruteForceResult brute = bruteforce_intersection(s, multiset_size(cert.witness), report.value, cap);
  cert.brute_value = brute.best_value;
  cert.verdict = cert.witness_sup == report.value && brute.exactness == Exactness::Certified;
  return cert;
}

}  // namespace kelley
