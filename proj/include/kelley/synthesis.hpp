#pragma once

// Both directions of the strictly-positive-measure characterization:
// threshold families cut from a measure, verification of a decomposition
// of the algebra into families with positive intersection number, and the
// geometric mixture that turns per-family optima into one strictly
// positive measure. Also the constant-additive normalization of a vertex
// functional and bounds on its nonlinearity modulus.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kelley/intersection.hpp"
#include "kelley/oracle.hpp"

namespace kelley {

namespace detail {
inline void require_enumerable(const GroundSet& ground) {
  if (ground.size() > kMaxEnumerableAtoms) {
    throw Error(ErrorKind::BudgetTooLarge, "powerset enumeration limited to " + std::to_string(kMaxEnumerableAtoms) + " atoms");
  }
}
}  // namespace detail

/// {A ≠ ∅ : m(A) > ε}. Empty when ε ≥ total(m).
inline SetSystem threshold_family(const Measure& m, const Rational& epsilon) {
  if (epsilon <= 0) throw Error(ErrorKind::BadThreshold, "threshold must be positive, got " + to_string(epsilon));
  detail::require_enumerable(m.ground());
  std::vector<Subset> family;
  for_each_nonempty_subset(m.ground().full(), [&](Subset a) {
    if (m.of(a) > epsilon) family.push_back(a);
  });
  return SetSystem(m.ground(), std::move(family));
}

/// {A ≠ ∅ : π(1_A) > ε}.
inline SetSystem threshold_family_pi(const VertexFunctional& pi, const Rational& epsilon) {
  if (epsilon <= 0) throw Error(ErrorKind::BadThreshold, "threshold must be positive, got " + to_string(epsilon));
  detail::require_enumerable(pi.ground());
  std::vector<Subset> family;
  for_each_nonempty_subset(pi.ground().full(), [&](Subset a) {
    if (pi.of(a) > epsilon) family.push_back(a);
  });
  return SetSystem(pi.ground(), std::move(family));
}

/// 𝓐 = 𝓝 ∪ 𝓑₁ ∪ 𝓑₂ ∪ … ; `ideal_part` is the trivial ideal {∅} for the
/// plain form.
struct Decomposition {
  GroundSet ground;
  std::vector<SetSystem> families;
  Ideal ideal_part;

  Decomposition(GroundSet g, std::vector<SetSystem> fams)
      : ground(g), families(std::move(fams)), ideal_part(Ideal::trivial(g)) {}
  Decomposition(GroundSet g, std::vector<SetSystem> fams, Ideal ideal)
      : ground(std::move(g)), families(std::move(fams)), ideal_part(std::move(ideal)) {}
};

namespace mode {
/// Families measured by I; null part {∅}; ideal_part must be trivial.
struct Plain {};
/// Families measured by I_π; null part Neg(π), which must contain ideal_part.
struct Pi {
  VertexFunctional pi;
};
/// Families measured by I_𝓝 with 𝓝 = ideal_part.
struct Ideal {};
}  // namespace mode

using DecompositionMode = std::variant<mode::Plain, mode::Pi, mode::Ideal>;

struct DecompositionVerdict {
  bool verdict = false;
  std::vector<Rational> values;              ///< per-family I / I_π / I_𝓝
  std::vector<IntersectionReport> reports;   ///< per-family game solutions
  std::optional<Subset> uncovered;           ///< first nonempty set outside every part
  std::string reason;                        ///< empty when verdict holds
};

inline DecompositionVerdict verify_decomposition(const Decomposition& d, const DecompositionMode& how) {
  for (const auto& f : d.families) require_same_ground(d.ground, f.ground());
  require_same_ground(d.ground, d.ideal_part.ground());
  detail::require_enumerable(d.ground);

  DecompositionVerdict out;
  Ideal null_part = Ideal::trivial(d.ground);
  if (std::holds_alternative<mode::Plain>(how)) {
    if (!d.ideal_part.is_trivial()) out.reason = "plain decomposition with a nontrivial null part";
  } else if (const auto* p = std::get_if<mode::Pi>(&how)) {
    require_same_ground(d.ground, p->pi.ground());
    null_part = p->pi.null_ideal();
    if (!d.ideal_part.generator().subset_of(null_part.generator())) out.reason = "null part is not inside Neg(pi)";
  } else {
    require_proper(d.ideal_part);
    null_part = d.ideal_part;
  }

  for (std::size_t n = 0; n < d.families.size(); ++n) {
    const SetSystem& fam = d.families[n];
    if (fam.empty()) {
      if (out.reason.empty()) out.reason = "family " + std::to_string(n + 1) + " is empty";
      out.values.emplace_back(0);
      out.reports.push_back(IntersectionReport{0, Measure::zero(d.ground), {}, {}});
      continue;
    }
    IntersectionReport r = std::visit(
        [&](const auto& m) -> IntersectionReport {
          using M = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<M, mode::Plain>) return intersection_number(fam);
          else if constexpr (std::is_same_v<M, mode::Pi>) return intersection_number_pi(m.pi, fam);
          else return intersection_number_ideal(d.ideal_part, fam);
        },
        how);
    if (r.value <= 0 && out.reason.empty()) out.reason = "family " + std::to_string(n + 1) + " has intersection number 0";
    out.values.push_back(r.value);
    out.reports.push_back(std::move(r));
  }

  for_each_nonempty_subset(d.ground.full(), [&](Subset a) {
    if (out.uncovered || null_part.contains(a)) return;
    for (const auto& fam : d.families) {
      if (fam.contains(a)) return;
    }
    out.uncovered = a;
  });
  if (out.uncovered && out.reason.empty()) out.reason = d.ground.format(*out.uncovered) + " is not covered";
  out.verdict = out.reason.empty();
  return out;
}

/// Weights 2^{N-n} / (2^N − 1), n = 1..N: the geometric weights 2^{-n}
/// renormalized over finitely many terms.
inline std::vector<Rational> geometric_weights(std::size_t count) {
  Integer total;
  mpz_ui_pow_ui(total.get_mpz_t(), 2, count);
  total -= 1;
  std::vector<Rational> w;
  for (std::size_t n = 1; n <= count; ++n) {
    Integer num;
    mpz_ui_pow_ui(num.get_mpz_t(), 2, count - n);
    Rational r(num, total);
    r.canonicalize();
    w.push_back(r);
  }
  return w;
}

/// Σ_n w_n m_n with m_n the optimal measure of family n. Positive on every
/// member of every family; a probability in plain and ideal mode,
/// π-dominated in π mode.
inline Measure synthesize_strictly_positive(const Decomposition& d, const DecompositionMode& how) {
  DecompositionVerdict v = verify_decomposition(d, how);
  if (!v.verdict) throw Error(ErrorKind::InvalidDecomposition, v.reason);
  if (d.families.empty()) {
    // Only reachable in π mode with π ≡ 0: every set is null.
    return Measure::zero(d.ground);
  }
  std::vector<Measure> optima;
  for (const auto& r : v.reports) optima.push_back(r.optimal_measure);
  Measure m = mixture(d.ground, optima, geometric_weights(optima.size()));
  for (const auto& fam : d.families) {
    for (Subset a : fam.family()) {
      if (m.of(a) <= 0) throw std::logic_error("synthesized measure vanishes on a family member");
    }
  }
  return m;
}

/// π̂(f) = inf_a [π(f + a) − a] for π = max_i m_i. Monotone, sublinear,
/// additive with respect to constants and below π; anything it dominates is
/// a probability.
///
/// With c_i = m_i(f) and slope s_i = total(m_i) − 1 the quantity is the
/// infimum of the upper envelope of the lines a ↦ c_i + a·s_i. When slopes
/// of both signs exist the minimum sits at a crossing of two lines;
/// otherwise the envelope is monotone and the infimum is the flat limit
/// over the lines of slope 0.
class NormalizedFunctional {
 public:
  explicit NormalizedFunctional(VertexFunctional pi) : pi_(std::move(pi)) {
    Rational hi = pi_.vertices().front().total(), lo = hi;
    for (const auto& v : pi_.vertices()) {
      Rational t = v.total();
      hi = std::max(hi, t);
      lo = std::min(lo, t);
      slopes_.push_back(t - 1);
    }
    if (!(hi >= 1 && lo <= 1)) {
      throw Error(ErrorKind::NormalizationImpossible,
                  "need max total >= 1 >= min total, got max " + to_string(hi) + ", min " + to_string(lo));
    }
  }

  const VertexFunctional& original() const { return pi_; }

  Rational operator()(const SimpleFunction& f) const {
    require_same_ground(pi_.ground(), f.ground());
    const std::size_t k = pi_.size();
    std::vector<Rational> c(k);
    bool has_pos = false, has_neg = false;
    for (std::size_t i = 0; i < k; ++i) {
      c[i] = pi_.vertices()[i].integrate(f);
      has_pos = has_pos || slopes_[i] > 0;
      has_neg = has_neg || slopes_[i] < 0;
    }
    if (!(has_pos && has_neg)) {
      std::optional<Rational> flat;
      for (std::size_t i = 0; i < k; ++i) {
        if (slopes_[i] == 0 && (!flat || c[i] > *flat)) flat = c[i];
      }
      return *flat;
    }
    std::optional<Rational> best;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        if (slopes_[i] == slopes_[j]) continue;
        Rational a = (c[j] - c[i]) / (slopes_[i] - slopes_[j]);
        Rational env = c[0] + a * slopes_[0];
        for (std::size_t q = 1; q < k; ++q) env = std::max(env, Rational(c[q] + a * slopes_[q]));
        if (!best || env < *best) best = env;
      }
    }
    return *best;
  }

  /// The dual description: π̂(f) = max over the probabilities in the convex
  /// hull of the vertices. Its extreme points are the vertices of total 1
  /// and, for each pair with totals on opposite sides of 1, the mixture of
  /// the two with total exactly 1.
  std::vector<Measure> probability_vertices() const {
    const auto& vs = pi_.vertices();
    std::vector<Measure> out;
    auto push = [&](Measure m) {
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(std::move(m));
    };
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (slopes_[i] == 0) push(vs[i]);
    }
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for (std::size_t j = 0; j < vs.size(); ++j) {
        if (slopes_[i] > 0 && slopes_[j] < 0) {
          // λ s_i + (1 − λ) s_j = 0
          Rational lambda = -slopes_[j] / (slopes_[i] - slopes_[j]);
          push(vs[i].scaled(lambda) + vs[j].scaled(1 - lambda));
        }
      }
    }
    return out;
  }

  VertexFunctional as_vertex_functional() const { return VertexFunctional(pi_.ground(), probability_vertices()); }

 private:
  VertexFunctional pi_;
  std::vector<Rational> slopes_;
};

inline NormalizedFunctional normalize_functional(const VertexFunctional& pi) { return NormalizedFunctional(pi); }

struct ModulusBounds {
  Rational lower;
  Rational upper;
  /// Indicator multiset achieving `lower`, as (set, multiplicity) pairs.
  std::vector<std::pair<Subset, std::uint64_t>> witness;
  /// `lower` comes from a search restricted to indicator functions.
  bool lower_is_heuristic = true;
};

/// Brackets the nonlinearity modulus sup (Σ a_i π(f_i) − π(Σ a_i f_i)) / π(Σ a_i f_i)
/// over convex combinations of nonnegative f_i. The upper bound k − 1 holds
/// for every functional with k vertices because Σ a_i π(f_i) ≤ Σ_j m_j(Σ a_i f_i)
/// ≤ k·π(Σ a_i f_i). The lower bound is the best ratio over uniform averages
/// of up to `search_len` indicators.
inline ModulusBounds nonlinearity_modulus_bounds(const VertexFunctional& pi, std::uint64_t search_len,
                                                 std::uint64_t cap = kDefaultMultisetCap) {
  bool any_mass = false;
  for (const auto& v : pi.vertices()) any_mass = any_mass || v.total() > 0;
  if (!any_mass) throw Error(ErrorKind::DegenerateFunctional, "every vertex is the zero measure");
  if (search_len == 0) throw Error(ErrorKind::BudgetTooLarge, "search length must be at least 1");
  detail::require_enumerable(pi.ground());

  const GroundSet& ground = pi.ground();
  std::vector<Subset> sets;
  for_each_nonempty_subset(ground.full(), [&](Subset a) { sets.push_back(a); });
  const Integer count = multiset_count(sets.size(), search_len);
  if (count > cap) {
    throw Error(ErrorKind::BudgetTooLarge, count.get_str() + " indicator combinations exceed the cap of " + std::to_string(cap));
  }

  // π on single indicators and vertex masses per set, precomputed.
  std::vector<Rational> pi_of(sets.size());
  for (std::size_t s = 0; s < sets.size(); ++s) pi_of[s] = pi.of(sets[s]);

  ModulusBounds out;
  out.upper = Rational(static_cast<unsigned long>(pi.size() - 1));
  std::optional<Rational> best;
  std::vector<std::uint64_t> counts(sets.size(), 0), best_counts;
  // hits[w] = number of chosen indicators containing atom w
  std::vector<unsigned long> hits(ground.size(), 0);
  Rational pi_sum = 0;

  // Both numerator and denominator of the ratio carry the common factor
  // 1/len, so the unnormalized sums are compared directly.
  auto visit = [&]() {
    Rational combined;
    bool first = true;
    for (const auto& v : pi.vertices()) {
      Rational acc = 0;
      for (std::size_t w = 0; w < hits.size(); ++w) {
        if (hits[w] != 0) acc += v[w] * hits[w];
      }
      if (first || acc > combined) combined = acc;
      first = false;
    }
    if (combined <= 0) return;
    Rational ratio = (pi_sum - combined) / combined;
    if (!best || ratio > *best) {
      best = ratio;
      best_counts = counts;
    }
  };
  auto dfs = [&](auto&& self, std::size_t idx, std::uint64_t len) -> void {
    if (idx == sets.size()) {
      if (len > 0) visit();
      return;
    }
    self(self, idx + 1, len);
    std::uint64_t added = 0;
    const auto members = sets[idx].indices();
    while (len + added < search_len) {
      ++added;
      ++counts[idx];
      pi_sum += pi_of[idx];
      for (std::size_t w : members) ++hits[w];
      self(self, idx + 1, len + added);
    }
    counts[idx] = 0;
    pi_sum -= pi_of[idx] * static_cast<unsigned long>(added);
    for (std::size_t w : members) hits[w] -= added;
  };
  dfs(dfs, 0, 0);

  out.lower = best.value_or(Rational(0));
  for (std::size_t s = 0; s < best_counts.size(); ++s) {
    if (best_counts[s] != 0) out.witness.emplace_back(sets[s], best_counts[s]);
  }
  return out;
}

}  // namespace kelley
