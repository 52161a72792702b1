#pragma once

// Exact rational simplex (dictionary form, Bland's rule) and the zero-sum
// matrix game solver built on it.

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kelley/rational.hpp"

namespace kelley {

using RationalMatrix = std::vector<std::vector<Rational>>;

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;             ///< optimal objective when Optimal
  std::vector<Rational> x;    ///< primal solution
  std::vector<Rational> y;    ///< dual multipliers, one per constraint row
  std::size_t pivots = 0;
};

/// maximize cᵀx subject to Ax ≤ b, x ≥ 0.
///
/// Bland's rule on both the entering and the leaving variable, so the
/// method terminates on degenerate problems. Infeasible starts (some b < 0)
/// go through an auxiliary phase with one artificial variable.
class SimplexSolver {
 public:
  SimplexSolver(const RationalMatrix& a, const std::vector<Rational>& b, const std::vector<Rational>& c)
      : m_(b.size()), n_(c.size()), basic_(m_), nonbasic_(n_ + 1), d_(m_ + 2, std::vector<Rational>(n_ + 2)) {
    if (a.size() != m_) throw std::invalid_argument("constraint matrix row count does not match b");
    for (std::size_t i = 0; i < m_; ++i) {
      if (a[i].size() != n_) throw std::invalid_argument("constraint matrix is not rectangular");
      for (std::size_t j = 0; j < n_; ++j) d_[i][j] = a[i][j];
      basic_[i] = static_cast<long>(n_ + i);
      d_[i][n_] = -1;
      d_[i][n_ + 1] = b[i];
    }
    for (std::size_t j = 0; j < n_; ++j) {
      nonbasic_[j] = static_cast<long>(j);
      d_[m_][j] = -c[j];
    }
    nonbasic_[n_] = kArtificial;
    d_[m_ + 1][n_] = 1;
  }

  LpResult solve() {
    LpResult result;
    std::size_t r = 0;
    for (std::size_t i = 1; i < m_; ++i) {
      if (d_[i][n_ + 1] < d_[r][n_ + 1]) r = i;
    }
    if (m_ > 0 && d_[r][n_ + 1] < 0) {
      pivot(r, n_);
      if (!run(2) || d_[m_ + 1][n_ + 1] < 0) {
        result.status = LpStatus::Infeasible;
        result.pivots = pivots_;
        return result;
      }
      for (std::size_t i = 0; i < m_; ++i) {
        if (basic_[i] == kArtificial) {
          // A row with no nonzero entry is redundant; the artificial stays basic at zero.
          std::size_t s = n_ + 1;
          for (std::size_t j = 0; j <= n_; ++j) {
            if (d_[i][j] != 0 && (s == n_ + 1 || nonbasic_[j] < nonbasic_[s])) s = j;
          }
          if (s != n_ + 1) pivot(i, s);
        }
      }
    }
    bool bounded = run(1);
    result.pivots = pivots_;
    if (!bounded) {
      result.status = LpStatus::Unbounded;
      return result;
    }
    result.status = LpStatus::Optimal;
    result.value = d_[m_][n_ + 1];
    result.x.assign(n_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basic_[i] >= 0 && static_cast<std::size_t>(basic_[i]) < n_) result.x[basic_[i]] = d_[i][n_ + 1];
    }
    result.y.assign(m_, 0);
    for (std::size_t j = 0; j <= n_; ++j) {
      if (nonbasic_[j] >= static_cast<long>(n_)) result.y[nonbasic_[j] - n_] = d_[m_][j];
    }
    return result;
  }

 private:
  static constexpr long kArtificial = -1;

  void pivot(std::size_t r, std::size_t s) {
    ++pivots_;
    const Rational inv = 1 / d_[r][s];
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i == r || d_[i][s] == 0) continue;
      const Rational factor = d_[i][s] * inv;
      for (std::size_t j = 0; j < n_ + 2; ++j) {
        if (j != s && d_[r][j] != 0) d_[i][j] -= d_[r][j] * factor;
      }
      d_[i][s] = -factor;
    }
    for (std::size_t j = 0; j < n_ + 2; ++j) {
      if (j != s) d_[r][j] *= inv;
    }
    d_[r][s] = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  // phase 1 optimizes the real objective row, phase 2 the auxiliary one.
  bool run(int phase) {
    const std::size_t obj = phase == 1 ? m_ : m_ + 1;
    for (;;) {
      // Bland: entering variable is the lowest-index one with negative reduced cost.
      std::size_t s = n_ + 1;
      for (std::size_t j = 0; j <= n_; ++j) {
        if (phase == 1 && nonbasic_[j] == kArtificial) continue;
        if (d_[obj][j] < 0 && (s == n_ + 1 || nonbasic_[j] < nonbasic_[s])) s = j;
      }
      if (s == n_ + 1) return true;
      // Minimum ratio, ties to the lowest-index basic variable.
      std::size_t r = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (d_[i][s] <= 0) continue;
        Rational ratio = d_[i][n_ + 1] / d_[i][s];
        if (r == m_ || ratio < best || (ratio == best && basic_[i] < basic_[r])) {
          r = i;
          best = ratio;
        }
      }
      if (r == m_) return false;
      pivot(r, s);
    }
  }

  std::size_t m_, n_;
  std::vector<long> basic_, nonbasic_;
  RationalMatrix d_;
  std::size_t pivots_ = 0;
};

inline LpResult simplex_solve(const RationalMatrix& a, const std::vector<Rational>& b, const std::vector<Rational>& c) {
  return SimplexSolver(a, b, c).solve();
}

/// Value and optimal mixed strategies of the zero-sum game in which the
/// column player picks p and pays (Mp)_r to the row player.
///
///   value = min_p max_r (Mp)_r = max_q min_c (qᵀM)_c
struct GameSolution {
  Rational value;
  std::vector<Rational> row_strategy;  ///< q, maximizer over rows
  std::vector<Rational> col_strategy;  ///< p, minimizer over columns
};

/// max_r (M·p)_r
inline Rational row_best_response(const RationalMatrix& m, const std::vector<Rational>& p) {
  Rational best;
  for (std::size_t r = 0; r < m.size(); ++r) {
    Rational acc = 0;
    for (std::size_t c = 0; c < p.size(); ++c) acc += m[r][c] * p[c];
    if (r == 0 || acc > best) best = acc;
  }
  return best;
}

/// min_c (qᵀ·M)_c
inline Rational col_best_response(const RationalMatrix& m, const std::vector<Rational>& q) {
  Rational best;
  const std::size_t cols = m.front().size();
  for (std::size_t c = 0; c < cols; ++c) {
    Rational acc = 0;
    for (std::size_t r = 0; r < m.size(); ++r) acc += q[r] * m[r][c];
    if (c == 0 || acc < best) best = acc;
  }
  return best;
}

inline GameSolution solve_matrix_game(const RationalMatrix& m) {
  if (m.empty() || m.front().empty()) throw std::invalid_argument("game matrix must be nonempty");
  const std::size_t rows = m.size(), cols = m.front().size();
  for (const auto& row : m) {
    if (row.size() != cols) throw std::invalid_argument("game matrix is not rectangular");
  }

  // Shift every payoff to be at least 1; then with x = p / v the column
  // player's problem is: maximize Σx subject to Mx ≤ 1, x ≥ 0, and the
  // row strategy comes from the dual multipliers.
  Rational lo = m[0][0];
  for (const auto& row : m) {
    for (const auto& e : row) lo = std::min(lo, e);
  }
  const Rational shift = 1 - lo;
  RationalMatrix a(rows, std::vector<Rational>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = m[r][c] + shift;
  }
  LpResult lp = simplex_solve(a, std::vector<Rational>(rows, 1), std::vector<Rational>(cols, 1));
  if (lp.status != LpStatus::Optimal || lp.value <= 0) throw std::logic_error("game LP did not reach an optimum");

  const Rational shifted_value = 1 / lp.value;
  GameSolution sol;
  sol.value = shifted_value - shift;
  sol.col_strategy.resize(cols);
  for (std::size_t c = 0; c < cols; ++c) sol.col_strategy[c] = lp.x[c] * shifted_value;
  sol.row_strategy.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) sol.row_strategy[r] = lp.y[r] * shifted_value;

  // Certificate: both strategies are distributions and both best responses
  // meet at the value.
  for (const auto* s : {&sol.col_strategy, &sol.row_strategy}) {
    Rational total = 0;
    for (const auto& v : *s) {
      if (v < 0) throw std::logic_error("negative strategy weight");
      total += v;
    }
    if (total != 1) throw std::logic_error("strategy does not sum to one");
  }
  if (row_best_response(m, sol.col_strategy) != sol.value || col_best_response(m, sol.row_strategy) != sol.value) {
    throw std::logic_error("minimax certificate failed");
  }
  return sol;
}

}  // namespace kelley
