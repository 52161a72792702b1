#pragma once

// Intersection numbers of finite set systems, computed as values of
// zero-sum games between a measure (rows) and a convex combination of
// family indicators (columns).

#include <vector>

#include "kelley/model.hpp"
#include "kelley/simplex.hpp"
#include "kelley/witness.hpp"

namespace kelley {

struct IntersectionReport {
  Rational value;
  /// Row-player optimum: inf over the family of its mass equals `value`.
  Measure optimal_measure;
  /// Column-player optimum over SetSystem::family().
  std::vector<Rational> optimal_weights;
  /// optimal_weights with denominators cleared.
  Multiset witness_sequence;
};

namespace detail {

inline void require_nonempty(const SetSystem& s) {
  if (s.empty()) throw Error(ErrorKind::EmptyFamily, "intersection number of an empty family");
}

inline IntersectionReport report_from_game(const GameSolution& sol, Measure measure) {
  return IntersectionReport{sol.value, std::move(measure), sol.col_strategy, witness_from_strategy(sol.col_strategy)};
}

// Rows indexed by the atoms in `rows`, entry 1 when the atom is in the member.
inline RationalMatrix incidence_matrix(const SetSystem& s, Subset rows) {
  RationalMatrix m;
  for (std::size_t w : rows.indices()) {
    std::vector<Rational> row(s.size());
    for (std::size_t c = 0; c < s.size(); ++c) row[c] = s.family()[c].contains(w) ? 1 : 0;
    m.push_back(std::move(row));
  }
  return m;
}

// Spread the row strategy (indexed by atoms of `rows`) back onto the ground set.
inline Measure lift_row_strategy(const GroundSet& ground, Subset rows, const std::vector<Rational>& q) {
  std::vector<Rational> mass(ground.size(), 0);
  auto idx = rows.indices();
  for (std::size_t k = 0; k < idx.size(); ++k) mass[idx[k]] = q[k];
  return Measure(ground, std::move(mass));
}

}  // namespace detail

/// I(𝓑) = inf_β sup_ω s(β)(ω), the value of the game M[ω][B] = 1_B(ω).
inline IntersectionReport intersection_number(const SetSystem& s) {
  detail::require_nonempty(s);
  const Subset all = s.ground().full();
  GameSolution sol = solve_matrix_game(detail::incidence_matrix(s, all));
  return detail::report_from_game(sol, detail::lift_row_strategy(s.ground(), all, sol.row_strategy));
}

/// I_π(𝓑) = inf_β π(s(β)) for π = max_i m_i; game M[i][B] = m_i(B).
/// The optimal measure is the row-strategy mixture of the vertices.
inline IntersectionReport intersection_number_pi(const VertexFunctional& pi, const SetSystem& s) {
  require_same_ground(pi.ground(), s.ground());
  detail::require_nonempty(s);
  RationalMatrix m;
  for (const auto& v : pi.vertices()) {
    std::vector<Rational> row(s.size());
    for (std::size_t c = 0; c < s.size(); ++c) row[c] = v.of(s.family()[c]);
    m.push_back(std::move(row));
  }
  GameSolution sol = solve_matrix_game(m);
  Measure mixed = mixture(s.ground(), pi.vertices(), sol.row_strategy);
  return detail::report_from_game(sol, std::move(mixed));
}

/// I_𝓝(𝓑): the plain intersection number after deleting the atoms of N*.
/// A member contained in N* becomes a zero column and forces value 0.
inline IntersectionReport intersection_number_ideal(const Ideal& ideal, const SetSystem& s) {
  require_proper(ideal);
  require_same_ground(ideal.ground(), s.ground());
  detail::require_nonempty(s);
  const Subset live = ideal.cogenerator();
  GameSolution sol = solve_matrix_game(detail::incidence_matrix(s, live));
  return detail::report_from_game(sol, detail::lift_row_strategy(s.ground(), live, sol.row_strategy));
}

/// I_*(𝓑) for the a.s. order whose null sets are the ideal: inf over each
/// equivalence class of sup g. Every f = s(β) ≥ 0 has the masked
/// representative f·1_{(N*)ᶜ} in its class, and values on N* can be pushed
/// down freely, so the game keeps every atom as a row but zeroes the rows
/// inside N*.
inline IntersectionReport intersection_number_order(const Ideal& ideal, const SetSystem& s) {
  require_proper(ideal);
  require_same_ground(ideal.ground(), s.ground());
  detail::require_nonempty(s);
  const Subset live = ideal.cogenerator();
  RationalMatrix masked = detail::incidence_matrix(s, s.ground().full());
  for (std::size_t w : ideal.generator().indices()) {
    for (auto& e : masked[w]) e = 0;
  }
  GameSolution sol = solve_matrix_game(masked);
  Measure measure = detail::lift_row_strategy(s.ground(), s.ground().full(), sol.row_strategy);
  if (measure.support().intersects(ideal.generator())) {
    // Only possible at value 0, where any measure living off N* is optimal.
    measure = Measure::uniform(s.ground(), live);
  }
  return detail::report_from_game(sol, std::move(measure));
}

}  // namespace kelley
