#pragma once

// Almost-sure rankings f ≥_* g on a finite ground set. On finitely many
// atoms the sets {f − g < −t} stop changing once t drops below the smallest
// positive gap, so "f ≥ g m-a.s." is just m({f < g}) = 0.

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kelley/intersection.hpp"
#include "kelley/synthesis.hpp"

namespace kelley {

struct MeasureBacked {
  Measure measure;
};
struct IdealBacked {
  Ideal ideal;
};
/// Opaque decision procedure for f ≥_* g. Only testable pointwise.
struct OracleBacked {
  std::function<bool(const SimpleFunction&, const SimpleFunction&)> geq;
};

class OrderSpec {
 public:
  static OrderSpec measure(Measure m) {
    if (m.total() <= 0) throw Error(ErrorKind::ImproperIdeal, "order backed by the zero measure");
    return OrderSpec(MeasureBacked{std::move(m)});
  }
  static OrderSpec ideal(Ideal n) {
    require_proper(n);
    return OrderSpec(IdealBacked{std::move(n)});
  }
  static OrderSpec oracle(GroundSet ground, std::function<bool(const SimpleFunction&, const SimpleFunction&)> geq) {
    return OrderSpec(OracleBacked{std::move(geq)}, std::move(ground));
  }

  const GroundSet& ground() const { return ground_; }
  /// Comparisons are total and computable (not an opaque oracle).
  bool exact() const { return !std::holds_alternative<OracleBacked>(backing_); }
  const std::variant<MeasureBacked, IdealBacked, OracleBacked>& backing() const { return backing_; }

  bool geq(const SimpleFunction& f, const SimpleFunction& g) const {
    require_same_ground(ground_, f.ground());
    require_same_ground(ground_, g.ground());
    if (const auto* m = std::get_if<MeasureBacked>(&backing_)) return m->measure.of(f.less_than(g)) == 0;
    if (const auto* n = std::get_if<IdealBacked>(&backing_)) return n->ideal.contains(f.less_than(g));
    return std::get<OracleBacked>(backing_).geq(f, g);
  }

  /// geq on raw value vectors, for exact orders only.
  bool geq_values(std::span<const Rational> f, std::span<const Rational> g) const {
    Subset below;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i] < g[i]) below = below | Subset::singleton(i);
    }
    if (!exact()) throw std::logic_error("geq_values needs an exact order");
    return below.subset_of(null_atoms_);
  }

 private:
  // A set is null exactly when it avoids the support.
  explicit OrderSpec(MeasureBacked b)
      : ground_(b.measure.ground()),
        null_atoms_(b.measure.support().complement_in(ground_.size())),
        backing_(std::move(b)) {}
  explicit OrderSpec(IdealBacked b) : ground_(b.ideal.ground()), null_atoms_(b.ideal.generator()), backing_(std::move(b)) {}
  OrderSpec(OracleBacked b, GroundSet g) : ground_(std::move(g)), backing_(std::move(b)) {}

  GroundSet ground_;
  Subset null_atoms_;
  std::variant<MeasureBacked, IdealBacked, OracleBacked> backing_;
};

inline bool order_compare(const OrderSpec& spec, const SimpleFunction& f, const SimpleFunction& g) { return spec.geq(f, g); }

struct AxiomVerdict {
  bool holds = true;
  std::size_t instances = 0;
  /// The comparison that should have held but did not: lhs ≥_* rhs.
  std::optional<std::pair<SimpleFunction, SimpleFunction>> counterexample;
  std::string detail;
  /// True when the verdict covers every function, not just the grid.
  bool exact = false;
};

/// Verdicts for:
///  (i)   0 is not strictly above 1
///  (ii)  f ≥_* 0 and a > 0 imply f ∧ a ≥_* 0
///  (iii) f ≥ 0 implies f ≥_* 0
///  (iv)  f ≥_* g implies b·f + h ≥_* b·g + h for positive bounded b
///  (v)   f + ε ≥_* 0 for all ε > 0 implies f ≥_* 0
struct AxiomReport {
  std::array<AxiomVerdict, 5> axioms;
  bool all_hold() const {
    return std::all_of(axioms.begin(), axioms.end(), [](const AxiomVerdict& v) { return v.holds; });
  }
};

/// Functions with values in {−1, −1/2, 0, 1/2, 1}, in lexicographic order,
/// truncated to `limit` entries.
inline std::vector<SimpleFunction> default_grid(const GroundSet& ground, std::size_t limit = 625) {
  const std::array<Rational, 5> values{Rational(-1), Rational(-1, 2), Rational(0), Rational(1, 2), Rational(1)};
  std::vector<SimpleFunction> out;
  std::vector<std::size_t> digits(ground.size(), 0);
  while (out.size() < limit) {
    std::vector<Rational> v(ground.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = values[digits[i]];
    out.emplace_back(ground, std::move(v));
    std::size_t pos = 0;
    while (pos < digits.size() && ++digits[pos] == values.size()) digits[pos++] = 0;
    if (pos == digits.size()) break;
  }
  return out;
}

inline std::vector<Rational> default_scalars() { return {Rational(1, 4), Rational(1, 2), Rational(1), Rational(2)}; }

namespace detail {

inline void fail(AxiomVerdict& v, SimpleFunction lhs, SimpleFunction rhs, std::string detail) {
  if (!v.holds) return;
  v.holds = false;
  v.counterexample.emplace(std::move(lhs), std::move(rhs));
  v.detail = std::move(detail);
}

// Below this every nonzero |f(ω)| exceeds ε, so {f + ε < 0} = {f < 0}.
inline Rational stabilizing_epsilon(const SimpleFunction& f) {
  std::optional<Rational> smallest;
  for (const auto& v : f.values()) {
    if (v != 0) {
      Rational a = abs(v);
      if (!smallest || a < *smallest) smallest = a;
    }
  }
  return smallest ? Rational(*smallest / 2) : Rational(1);
}

}  // namespace detail

/// Checks the five axioms on a grid of functions. For measure- and
/// ideal-backed orders (i) and (v) are decided exactly; (ii)–(iv) are
/// exhaustive over the grid. Oracle orders get the same instances and a
/// finite list of ε for (v), which cannot be exhaustive.
inline AxiomReport axioms_check(const OrderSpec& spec, const std::vector<SimpleFunction>& grid,
                                const std::vector<Rational>& scalars) {
  if (grid.empty()) throw Error(ErrorKind::SchemaError, "axiom grid must be nonempty");
  const GroundSet& ground = spec.ground();
  const SimpleFunction zero = SimpleFunction::constant(ground, 0);
  const SimpleFunction one = SimpleFunction::constant(ground, 1);
  std::vector<Rational> positive;
  for (const auto& s : scalars) {
    if (s > 0) positive.push_back(s);
  }
  std::sort(positive.begin(), positive.end(), std::greater<>());

  AxiomReport report;
  auto& [ax1, ax2, ax3, ax4, ax5] = report.axioms;

  // (i) 0 >_* 1 would mean 0 ≥_* 1 without 1 ≥_* 0.
  ax1.instances = 1;
  ax1.exact = true;
  if (spec.geq(zero, one) && !spec.geq(one, zero)) detail::fail(ax1, one, zero, "0 is strictly above 1");

  std::vector<char> above_zero(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) above_zero[i] = spec.geq(grid[i], zero);

  // (ii)
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!above_zero[i]) continue;
    for (const auto& a : positive) {
      ++ax2.instances;
      SimpleFunction capped = grid[i].meet(a);
      if (!spec.geq(capped, zero)) detail::fail(ax2, capped, zero, "f ∧ " + to_string(a) + " is not above 0");
    }
  }

  // (iii)
  for (const auto& f : grid) {
    if (!f.nonnegative()) continue;
    ++ax3.instances;
    if (!spec.geq(f, zero)) detail::fail(ax3, f, zero, "pointwise nonnegative f is not above 0");
  }

  // (iv) multipliers: positive constants and strictly positive grid functions.
  std::vector<SimpleFunction> multipliers;
  for (const auto& a : positive) multipliers.push_back(SimpleFunction::constant(ground, a));
  for (const auto& f : grid) {
    if (f.inf() > 0) multipliers.push_back(f);
  }
  // Stops at the first counterexample. For exact orders the sums b·f + h
  // are tabulated once per multiplier when the table is small enough.
  const std::size_t n = ground.size(), size = grid.size();
  std::vector<std::pair<std::size_t, std::size_t>> ranked;
  for (std::size_t fi = 0; fi < size; ++fi) {
    for (std::size_t gi = 0; gi < size; ++gi) {
      if (spec.geq(grid[fi], grid[gi])) ranked.emplace_back(fi, gi);
    }
  }
  constexpr std::size_t kTableLimit = 1 << 18;
  const bool tabulate = spec.exact() && size * size * n <= kTableLimit;
  std::vector<Rational> table(tabulate ? size * size * n : 0);
  std::vector<Rational> lhs(n), rhs(n);
  [&] {
    for (const auto& b : multipliers) {
      if (tabulate) {
        for (std::size_t fi = 0; fi < size; ++fi) {
          const SimpleFunction bf = b * grid[fi];
          for (std::size_t hi = 0; hi < size; ++hi) {
            for (std::size_t i = 0; i < n; ++i) {
              mpq_add(table[(fi * size + hi) * n + i].get_mpq_t(), bf[i].get_mpq_t(), grid[hi][i].get_mpq_t());
            }
          }
        }
      }
      for (const auto& [fi, gi] : ranked) {
        const SimpleFunction bf = b * grid[fi], bg = b * grid[gi];
        for (std::size_t hi = 0; hi < size; ++hi) {
          ++ax4.instances;
          bool kept;
          if (tabulate) {
            kept = spec.geq_values(std::span(table).subspan((fi * size + hi) * n, n),
                                   std::span(table).subspan((gi * size + hi) * n, n));
          } else {
            for (std::size_t i = 0; i < n; ++i) {
              mpq_add(lhs[i].get_mpq_t(), bf[i].get_mpq_t(), grid[hi][i].get_mpq_t());
              mpq_add(rhs[i].get_mpq_t(), bg[i].get_mpq_t(), grid[hi][i].get_mpq_t());
            }
            kept = spec.exact() ? spec.geq_values(lhs, rhs) : spec.geq(SimpleFunction(ground, lhs), SimpleFunction(ground, rhs));
          }
          if (!kept) {
            const SimpleFunction& h = grid[hi];
            detail::fail(ax4, bf + h, bg + h, "scaling/translating a ranked pair reversed it");
            return;
          }
        }
      }
    }
  }();

  // (v)
  ax5.exact = spec.exact();
  for (const auto& f : grid) {
    ++ax5.instances;
    std::vector<Rational> epsilons = positive;
    const Rational stable = detail::stabilizing_epsilon(f);
    epsilons.push_back(stable);
    epsilons.push_back(stable / 2);
    bool all_shifted = std::all_of(epsilons.begin(), epsilons.end(),
                                   [&](const Rational& e) { return spec.geq(f + e, zero); });
    if (all_shifted && !spec.geq(f, zero)) detail::fail(ax5, f, zero, "f + ε is above 0 for every tested ε but f is not");
  }
  if (!spec.exact()) ax5.detail = ax5.holds ? "checked on finitely many ε only" : ax5.detail;
  return report;
}

struct Representation {
  Measure measure;                     ///< uniform probability off N*
  Ideal ideal;
  bool null_sets_match = false;        ///< Neg(measure) == ideal
  Decomposition decomposition;         ///< threshold families of `measure`
  std::vector<Rational> thresholds;    ///< ε_n = 1/n per family
  std::vector<Rational> order_values;  ///< I_* per family
  bool decomposition_verified = false; ///< coverage and I_*(𝓑_n) ≥ ε_n > 0
};

/// Builds a representing probability for the a.s. order whose null sets
/// form `ideal`, together with the decomposition 2^Ω = 𝓝 ∪ ⋃ 𝓑_n,
/// 𝓑_n = {A : m(A) > 1/n}, checked through the equivalence-class
/// intersection number.
inline Representation representability(const Ideal& ideal) {
  require_proper(ideal);
  const GroundSet& ground = ideal.ground();
  Measure m = Measure::uniform(ground, ideal.cogenerator());
  const std::size_t live = ideal.cogenerator().size();

  std::vector<SetSystem> families;
  std::vector<Rational> thresholds;
  for (std::size_t n = 2; n <= live + 1; ++n) {
    Rational eps(1, static_cast<unsigned long>(n));
    SetSystem fam = threshold_family(m, eps);
    if (fam.empty()) continue;
    families.push_back(std::move(fam));
    thresholds.push_back(eps);
  }
  Decomposition d(ground, families, ideal);

  std::vector<Rational> values;
  bool bounds_hold = true;
  for (std::size_t k = 0; k < families.size(); ++k) {
    values.push_back(intersection_number_order(ideal, families[k]).value);
    bounds_hold = bounds_hold && values.back() >= thresholds[k];
  }
  bool covered = verify_decomposition(d, mode::Ideal{}).verdict;

  Representation out{m, ideal, null_ideal(m) == ideal, std::move(d), std::move(thresholds), std::move(values), false};
  out.decomposition_verified = covered && bounds_hold;
  return out;
}

/// Explicit collection form: validated as a proper ideal first.
inline Representation representability(const GroundSet& ground, std::span<const Subset> collection) {
  return representability(ideal_validate(ground, collection));
}

}  // namespace kelley
