#pragma once

// Zero-sum games over 0/1 payoff matrices: rows are sample positions, columns
// are pool hypotheses, and the column player wants a mixture whose worst-row
// payoff (the margin) is large.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sclab/errors.hpp"

namespace sclab {

// Row-major 0/1 matrix.
class PayoffMatrix {
 public:
  PayoffMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::uint8_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, bool v) { data_[i * cols_ + j] = v ? 1 : 0; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint8_t> data_;
};

struct GamePlan {
  std::vector<double> p;
  // min over rows of the p-mass of columns paying 1 on that row.
  double margin = 0.0;
  std::size_t iterations = 0;
  bool exact = false;
  // Best upper bound on the game value seen while solving.
  double value_upper_bound = 1.0;
};

inline double plan_margin(const PayoffMatrix& m, const std::vector<double>& p) {
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double mass = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0) mass += p[j];
    }
    margin = std::min(margin, mass);
  }
  return m.rows() == 0 ? 1.0 : margin;
}

struct GameOptions {
  // Margin at which multiplicative weights stops.
  double target_margin = 2.0 / 3.0 - 1.0 / 12.0;
  // Margin any returned plan must strictly exceed.
  double required_margin = 0.5;
  std::size_t max_iterations = 200000;
  double learning_rate = 0.05;
  // Pools up to this many columns fall back to the exact LP.
  std::size_t exact_column_limit = 12;
};

// Maximizes min_i (M p)_i over the simplex with a dense simplex method on the
// dual LP  max 1'y  s.t.  M'y <= 1, y >= 0  (Bland's rule). Returns the optimal
// column mixture; an unbounded dual means some row is never paid, so the value
// is 0 and any p is optimal.
inline GamePlan solve_game_exact(const PayoffMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  if (cols == 0) throw PreconditionError("game needs at least one column");
  GamePlan plan;
  plan.exact = true;
  plan.p.assign(cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    bool paid = false;
    for (std::size_t j = 0; j < cols; ++j) paid = paid || m(i, j) != 0;
    if (!paid) {
      plan.p[0] = 1.0;
      plan.margin = 0.0;
      plan.value_upper_bound = 0.0;
      return plan;
    }
  }
  if (rows == 0) {
    plan.p[0] = 1.0;
    plan.margin = 1.0;
    return plan;
  }
  // Tableau: `cols` constraints over `rows` structural + `cols` slack variables.
  const std::size_t nvar = rows + cols;
  std::vector<std::vector<double>> tab(cols + 1, std::vector<double>(nvar + 1, 0.0));
  std::vector<std::size_t> basis(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < rows; ++i) tab[j][i] = m(i, j);
    tab[j][rows + j] = 1.0;
    tab[j][nvar] = 1.0;
    basis[j] = rows + j;
  }
  auto& obj = tab[cols];  // reduced costs of max 1'y, stored as -c
  for (std::size_t i = 0; i < rows; ++i) obj[i] = -1.0;
  constexpr double eps = 1e-12;
  for (std::size_t iter = 0; iter < 100000; ++iter) {
    std::size_t enter = nvar;
    for (std::size_t v = 0; v < nvar; ++v) {
      if (obj[v] < -eps) {
        enter = v;
        break;
      }
    }
    if (enter == nvar) break;
    std::size_t leave = cols;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < cols; ++r) {
      if (tab[r][enter] > eps) {
        const double ratio = tab[r][nvar] / tab[r][enter];
        if (ratio < best_ratio - eps || (ratio <= best_ratio + eps && leave < cols && basis[r] < basis[leave])) {
          best_ratio = ratio;
          leave = r;
        }
      }
    }
    if (leave == cols) {
      plan.p.assign(cols, 0.0);
      plan.p[0] = 1.0;
      plan.margin = plan_margin(m, plan.p);
      plan.value_upper_bound = 0.0;
      return plan;
    }
    const double piv = tab[leave][enter];
    for (auto& v : tab[leave]) v /= piv;
    for (std::size_t r = 0; r <= cols; ++r) {
      if (r == leave || tab[r][enter] == 0.0) continue;
      const double f = tab[r][enter];
      for (std::size_t v = 0; v <= nvar; ++v) tab[r][v] -= f * tab[leave][v];
    }
    basis[leave] = enter;
    plan.iterations = iter + 1;
  }
  // Primal x_j is the reduced cost of slack j; value = 1 / sum(x).
  double total = 0.0;
  for (std::size_t j = 0; j < cols; ++j) {
    plan.p[j] = std::max(0.0, obj[rows + j]);
    total += plan.p[j];
  }
  for (auto& v : plan.p) v /= total;
  plan.margin = plan_margin(m, plan.p);
  plan.value_upper_bound = 1.0 / obj[nvar];
  return plan;
}

// Multiplicative-weights self-play. The row player reweights positions by
// (1 - eta) each time the column best response pays them; the column mixture
// is the empirical distribution of best responses, whose margin is exact
// (integer counts over the iteration count). Each best-response value is an
// upper bound on the game value, so a bound <= required_margin proves the
// requirement cannot be met.
inline GamePlan solve_game(const PayoffMatrix& m, const GameOptions& opts = {}) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  if (cols == 0) throw PreconditionError("game needs at least one column");
  GamePlan plan;
  if (rows == 0) {
    plan.p.assign(cols, 0.0);
    plan.p[0] = 1.0;
    plan.margin = 1.0;
    return plan;
  }
  std::vector<double> w(rows, 1.0);
  std::vector<std::size_t> counts(cols, 0);
  std::vector<std::size_t> paid(rows, 0);
  double upper = 1.0;
  std::size_t best_min_paid = 0;
  std::size_t best_t = 1;
  std::vector<std::size_t> best_counts;
  bool proven_infeasible = false;
  std::size_t t = 0;
  while (t < opts.max_iterations) {
    double wsum = 0.0;
    for (double v : w) wsum += v;
    std::size_t br = 0;
    double br_val = -1.0;
    for (std::size_t j = 0; j < cols; ++j) {
      double val = 0.0;
      for (std::size_t i = 0; i < rows; ++i) {
        if (m(i, j) != 0) val += w[i];
      }
      if (val > br_val) {
        br_val = val;
        br = j;
      }
    }
    upper = std::min(upper, br_val / wsum);
    ++t;
    ++counts[br];
    std::size_t min_paid = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < rows; ++i) {
      if (m(i, br) != 0) {
        ++paid[i];
        w[i] *= 1.0 - opts.learning_rate;
      }
      min_paid = std::min(min_paid, paid[i]);
    }
    // Renormalize to keep weights away from underflow.
    double wmax = 0.0;
    for (double v : w) wmax = std::max(wmax, v);
    for (auto& v : w) v /= wmax;
    if (best_counts.empty() || min_paid * best_t > best_min_paid * t) {
      best_min_paid = min_paid;
      best_t = t;
      best_counts = counts;
    }
    if (static_cast<double>(min_paid) >= opts.target_margin * static_cast<double>(t)) break;
    if (upper <= opts.required_margin) {
      proven_infeasible = true;
      break;
    }
  }
  plan.iterations = t;
  plan.value_upper_bound = upper;
  plan.p.assign(cols, 0.0);
  for (std::size_t j = 0; j < cols; ++j) plan.p[j] = static_cast<double>(best_counts[j]) / static_cast<double>(best_t);
  plan.margin = static_cast<double>(best_min_paid) / static_cast<double>(best_t);
  if (plan.margin > opts.required_margin) return plan;
  if (!proven_infeasible && cols <= opts.exact_column_limit) {
    GamePlan exact = solve_game_exact(m);
    if (exact.margin > opts.required_margin) return exact;
    plan.value_upper_bound = std::min(plan.value_upper_bound, exact.value_upper_bound);
  }
  throw ContractViolation("weak-learner violation: no hypothesis mixture reaches margin > " +
                          std::to_string(opts.required_margin) + " (best margin " + std::to_string(plan.margin) +
                          ", value upper bound " + std::to_string(plan.value_upper_bound) +
                          "); the learner does not weakly learn this sample");
}

}  // namespace sclab
