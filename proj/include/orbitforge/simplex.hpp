#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "orbitforge/linalg.hpp"

namespace orbitforge {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  RatVec x;
  Rational value = 0;
};

namespace detail {

/// Dense tableau in canonical form with respect to `basis`.
class Tableau {
 public:
  Tableau(RatMatrix a, RatVec b) : t_(std::move(a)), rhs_(std::move(b)), basis_(t_.rows(), 0) {}

  RatMatrix& t() { return t_; }
  RatVec& rhs() { return rhs_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t row, std::size_t col) {
    const Rational inv = Rational(1) / t_(row, col);
    for (std::size_t j = 0; j < t_.cols(); ++j) t_(row, j) *= inv;
    rhs_[row] *= inv;
    for (std::size_t i = 0; i < t_.rows(); ++i) {
      if (i == row || t_(i, col) == 0) continue;
      const Rational f = t_(i, col);
      for (std::size_t j = 0; j < t_.cols(); ++j)
        if (t_(row, j) != 0) t_(i, j) -= f * t_(row, j);
      rhs_[i] -= f * rhs_[row];
    }
    basis_[row] = col;
  }

  /// Maximizes cost over columns [0, active_cols); Bland's rule guarantees termination.
  LpStatus maximize(const RatVec& cost, std::size_t active_cols) {
    for (;;) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < active_cols && !entering; ++j) {
        Rational reduced = cost[j];
        for (std::size_t i = 0; i < t_.rows(); ++i)
          if (t_(i, j) != 0) reduced -= cost[basis_[i]] * t_(i, j);
        if (reduced > 0) entering = j;
      }
      if (!entering) return LpStatus::optimal;
      std::optional<std::size_t> leaving;
      Rational best_ratio;
      for (std::size_t i = 0; i < t_.rows(); ++i) {
        if (t_(i, *entering) <= 0) continue;
        const Rational ratio = rhs_[i] / t_(i, *entering);
        if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (!leaving) return LpStatus::unbounded;
      pivot(*leaving, *entering);
    }
  }

  void drop_row(std::size_t row) {
    RatMatrix reduced(t_.rows() - 1, t_.cols());
    RatVec rhs(t_.rows() - 1);
    std::vector<std::size_t> basis;
    for (std::size_t i = 0, k = 0; i < t_.rows(); ++i) {
      if (i == row) continue;
      for (std::size_t j = 0; j < t_.cols(); ++j) reduced(k, j) = t_(i, j);
      rhs[k] = rhs_[i];
      basis.push_back(basis_[i]);
      ++k;
    }
    t_ = std::move(reduced);
    rhs_ = std::move(rhs);
    basis_ = std::move(basis);
  }

 private:
  RatMatrix t_;
  RatVec rhs_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

/// Exact two-phase simplex: maximize cost.x subject to a x = b, x >= 0.
inline LpResult maximize(const RatMatrix& a, const RatVec& b, const RatVec& cost) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  RatMatrix ext(m, n + m);
  RatVec rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) ext(i, j) = flip ? Rational(-a(i, j)) : a(i, j);
    ext(i, n + i) = 1;
    rhs[i] = flip ? Rational(-b[i]) : b[i];
  }
  detail::Tableau tab(std::move(ext), std::move(rhs));
  for (std::size_t i = 0; i < m; ++i) tab.basis()[i] = n + i;

  RatVec phase1(n + m);
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = -1;
  tab.maximize(phase1, n + m);
  Rational infeasibility = 0;
  for (std::size_t i = 0; i < tab.basis().size(); ++i)
    if (tab.basis()[i] >= n) infeasibility += tab.rhs()[i];
  if (infeasibility != 0) return {LpStatus::infeasible, {}, 0};

  // Drive remaining (zero-valued) artificials out of the basis.
  for (std::size_t i = 0; i < tab.basis().size();) {
    if (tab.basis()[i] < n) {
      ++i;
      continue;
    }
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < n && !col; ++j)
      if (tab.t()(i, j) != 0) col = j;
    if (col) {
      tab.pivot(i, *col);
      ++i;
    } else {
      tab.drop_row(i);
    }
  }

  RatVec phase2(n + m);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = cost[j];
  if (tab.maximize(phase2, n) == LpStatus::unbounded) return {LpStatus::unbounded, {}, 0};

  LpResult result{LpStatus::optimal, RatVec(n), 0};
  for (std::size_t i = 0; i < tab.basis().size(); ++i) result.x[tab.basis()[i]] = tab.rhs()[i];
  result.value = dot(result.x, cost);
  return result;
}

}  // namespace orbitforge
