#pragma once

// Weak domination of families of probabilities: common null sets, a
// dominating average, conditional vertices, a small dominating subfamily,
// and the norming identity for an ideal.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "kelley/model.hpp"
#include "kelley/simplex.hpp"

namespace kelley {

class MeasureFamily {
 public:
  MeasureFamily(GroundSet ground, std::vector<Measure> members) : ground_(std::move(ground)), members_(std::move(members)) {
    if (members_.empty()) throw Error(ErrorKind::SchemaError, "measure family must be nonempty");
    for (const auto& m : members_) {
      require_same_ground(ground_, m.ground());
      if (!m.is_probability()) throw Error(ErrorKind::NotAProbability, "family member has total mass " + to_string(m.total()));
    }
  }

  const GroundSet& ground() const { return ground_; }
  const std::vector<Measure>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

 private:
  GroundSet ground_;
  std::vector<Measure> members_;
};

/// ⋂_m Neg(m): generated by the atoms no member charges.
inline Ideal common_null_ideal(const MeasureFamily& f) {
  Subset charged;
  for (const auto& m : f.members()) charged = charged | m.support();
  return Ideal(f.ground(), charged.complement_in(f.ground().size()));
}

/// All conditionals m_A over members m and sets A with m(A) > 0, first
/// occurrence kept; member order, then increasing subset mask.
inline std::vector<Measure> mstar_vertices(const MeasureFamily& f) {
  std::vector<Measure> out;
  for (const auto& m : f.members()) {
    for_each_nonempty_subset(m.ground().full(), [&](Subset a) {
      if (m.of(a) == 0) return;
      Measure c = restrict_measure(m, a);
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
    });
  }
  return out;
}

struct WeakDomination {
  Measure measure;                     ///< uniform average of the members
  Ideal null_ideal;                    ///< Neg(measure)
  bool dominates = false;              ///< Neg(measure) == common null ideal
  std::vector<Rational> mstar_weights; ///< convex weights over mstar_vertices(f)
};

/// The uniform average m̄ weakly dominates the family: its null sets are
/// exactly the common null sets. It lies in 𝓜* because each member m equals
/// its own conditional m_Ω.
inline WeakDomination weakly_dominating_measure(const MeasureFamily& f) {
  const Rational w(1, static_cast<unsigned long>(f.size()));
  std::vector<Rational> weights(f.size(), w);
  Measure avg = mixture(f.ground(), f.members(), weights);

  std::vector<Measure> vertices = mstar_vertices(f);
  std::vector<Rational> coeffs(vertices.size(), 0);
  for (const auto& m : f.members()) {
    auto it = std::find(vertices.begin(), vertices.end(), m);
    coeffs[static_cast<std::size_t>(it - vertices.begin())] += w;
  }
  Ideal neg = null_ideal(avg);
  bool dominated = neg == common_null_ideal(f) && mixture(f.ground(), vertices, coeffs) == avg;
  return WeakDomination{std::move(avg), std::move(neg), dominated, std::move(coeffs)};
}

/// Greedy subfamily with the same common null ideal: repeatedly take the
/// member whose support adds the most uncovered atoms, lowest index on
/// ties. Returns member indices in selection order; at most one pick per atom.
inline std::vector<std::size_t> halmos_savage_subset(const MeasureFamily& f) {
  const Subset target = common_null_ideal(f).cogenerator();
  Subset covered;
  std::vector<std::size_t> picks;
  while (covered != target) {
    std::size_t best = f.size(), best_gain = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      std::size_t gain = (f.members()[i].support() - covered).size();
      if (gain > best_gain) {
        best = i;
        best_gain = gain;
      }
    }
    picks.push_back(best);
    covered = covered | f.members()[best].support();
  }
  return picks;
}

struct NormingCheck {
  bool verdict = false;
  Rational measure_side;   ///< max of m(f) over probabilities vanishing on N*
  Rational ideal_side;     ///< inf_{N ∈ 𝓝} sup_{Nᶜ} f
  Measure maximizer;       ///< a probability attaining measure_side
};

/// Both sides of m(f) = inf_{N∈𝓝} sup_{N^c} f. The measure side is an LP
/// over probabilities supported off N*; the ideal side enumerates every
/// member N of the ideal.
inline NormingCheck check_norming(const Ideal& ideal, const SimpleFunction& f) {
  require_proper(ideal);
  require_same_ground(ideal.ground(), f.ground());
  const GroundSet& ground = ideal.ground();
  if (ideal.generator().size() > kMaxEnumerableAtoms) throw Error(ErrorKind::BudgetTooLarge, "ideal too large to enumerate");
  const auto live = ideal.cogenerator().indices();

  // maximize Σ f_w m_w over live atoms, Σ m_w ≤ 1 and −Σ m_w ≤ −1.
  RationalMatrix a(2, std::vector<Rational>(live.size()));
  std::vector<Rational> c(live.size());
  for (std::size_t k = 0; k < live.size(); ++k) {
    a[0][k] = 1;
    a[1][k] = -1;
    c[k] = f[live[k]];
  }
  LpResult lp = simplex_solve(a, {Rational(1), Rational(-1)}, c);
  if (lp.status != LpStatus::Optimal) throw std::logic_error("norming LP has no optimum");
  std::vector<Rational> mass(ground.size(), 0);
  for (std::size_t k = 0; k < live.size(); ++k) mass[live[k]] = lp.x[k];

  std::optional<Rational> ideal_side;
  for (Subset n : ideal.members()) {
    Rational s = f.sup_over(n.complement_in(ground.size()));
    if (!ideal_side || s < *ideal_side) ideal_side = s;
  }

  NormingCheck out{false, lp.value, *ideal_side, Measure(ground, std::move(mass))};
  out.verdict = out.measure_side == out.ideal_side && out.maximizer.is_probability() &&
                out.maximizer.integrate(f) == out.measure_side;
  return out;
}

}  // namespace kelley
