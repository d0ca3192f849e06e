#pragma once

// Floating-point solvers: Newton's method for the moment equation on nice
// spans, a criticality residual, and an exploratory gradient flow of |mm|^2.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

#include "orbitforge/lattice.hpp"
#include "orbitforge/nicecrit.hpp"
#include "orbitforge/ratgeom.hpp"
#include "orbitforge/reps.hpp"

namespace orbitforge {

struct NewtonOptions {
  double tolerance = 1e-12;
  int max_iterations = 50;
  double armijo = 1e-4;
  double psd_slack = 1e-12;
};

struct MomentSolution {
  std::vector<double> x;            // X in the group's diagonal subalgebra
  std::vector<double> multipliers;  // exp(X_i)
  RatVec beta;
  double residual = 0.0;            // |mm_a(exp(X) w) - beta|
  int iterations = 0;
  bool converged = false;
  bool hessian_psd = true;          // every iterate
  double min_hessian_eigenvalue = 0.0;
  std::vector<double> objective;    // phi at each accepted iterate
  std::vector<std::vector<double>> directions;  // orthonormal basis of the search space
};

class NotInRelativeInterior : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Weights of w seen by the group with their masses c_i = sum coeff^2 |b|^2.
inline std::pair<std::vector<RatVec>, std::vector<double>> weight_data(const RepVector& w, const Group& g) {
  std::map<RatVec, Rational> mass;
  std::vector<RatVec> order;
  for (const auto& [k, c] : w.terms()) {
    const RatVec a = g.project(weight(w.space(), k));
    auto [sq, sg] = c.signed_square();
    if (!mass.count(a)) order.push_back(a);
    mass[a] += sq * basis_norm2(w.space(), k);
  }
  std::vector<double> c;
  for (const auto& a : order) c.push_back(to_double(mass[a]));
  return {order, c};
}

inline Eigen::VectorXd to_eigen(const RatVec& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = to_double(v[i]);
  return out;
}

}  // namespace detail

/// Float image of mm_a(exp(X) w) = sum p_i alpha_i with p_i proportional to c_i e^(2<X, alpha_i>).
inline Eigen::VectorXd diagonal_moment(const std::vector<Eigen::VectorXd>& alphas, const std::vector<double>& c,
                                       const Eigen::VectorXd& x) {
  std::vector<double> s(alphas.size());
  double top = -INFINITY;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    s[i] = 2.0 * alphas[i].dot(x);
    top = std::max(top, s[i]);
  }
  double z = 0.0;
  Eigen::VectorXd m = Eigen::VectorXd::Zero(x.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double p = c[i] * std::exp(s[i] - top);
    z += p;
    m += p * alphas[i];
  }
  return m / z;
}

/// Newton's method on phi(X) = log sum c_i e^(2<X, alpha_i>) - 2<beta, X> over
/// span{alpha_i - alpha_1}; directions orthogonal to it act on w as scalars.
inline MomentSolution solve_moment_equation(const RepVector& w, const Group& g, const NewtonOptions& opt = {}) {
  if (w.is_zero()) throw std::invalid_argument("solve_moment_equation: zero vector");
  auto [weights, c] = detail::weight_data(w, g);
  const PointSet support_set(weights);
  MomentSolution sol;
  sol.beta = mcc(support_set);
  if (!in_relative_interior(support_set, sol.beta))
    throw NotInRelativeInterior("mcc of the weights is not in the relative interior of their hull");

  const std::size_t n = w.space().n;
  std::vector<RatVec> diffs;
  for (std::size_t i = 1; i < weights.size(); ++i) diffs.push_back(weights[i] - weights[0]);
  std::vector<Eigen::VectorXd> basis;
  if (!diffs.empty()) {
    const RowEchelon e = rref(rows_matrix(diffs, n));
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) {
      Eigen::VectorXd b(static_cast<Eigen::Index>(n));
      for (std::size_t j = 0; j < n; ++j) b[static_cast<Eigen::Index>(j)] = to_double(e.reduced(r, j));
      for (const auto& q : basis) b -= q.dot(b) * q;
      basis.push_back(b.normalized());
    }
  }
  for (const auto& b : basis) sol.directions.emplace_back(b.data(), b.data() + b.size());

  std::vector<Eigen::VectorXd> alphas;
  for (const auto& a : weights) alphas.push_back(detail::to_eigen(a));
  const Eigen::VectorXd beta = detail::to_eigen(sol.beta);
  const auto k = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd a_proj(static_cast<Eigen::Index>(alphas.size()), k);  // <alpha_i, b_k>
  for (std::size_t i = 0; i < alphas.size(); ++i)
    for (Eigen::Index j = 0; j < k; ++j) a_proj(static_cast<Eigen::Index>(i), j) = alphas[i].dot(basis[static_cast<std::size_t>(j)]);

  auto to_x = [&](const Eigen::VectorXd& y) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (Eigen::Index j = 0; j < k; ++j) x += y[j] * basis[static_cast<std::size_t>(j)];
    return x;
  };
  auto phi = [&](const Eigen::VectorXd& y) {
    const Eigen::VectorXd x = to_x(y);
    double top = -INFINITY;
    std::vector<double> s(alphas.size());
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      s[i] = 2.0 * alphas[i].dot(x);
      top = std::max(top, s[i]);
    }
    double z = 0.0;
    for (std::size_t i = 0; i < alphas.size(); ++i) z += c[i] * std::exp(s[i] - top);
    return top + std::log(z) - 2.0 * beta.dot(x);
  };

  Eigen::VectorXd y = Eigen::VectorXd::Zero(k);
  sol.min_hessian_eigenvalue = INFINITY;
  for (;;) {
    const Eigen::VectorXd x = to_x(y);
    const Eigen::VectorXd m = diagonal_moment(alphas, c, x);
    sol.residual = (m - beta).norm();
    sol.objective.push_back(phi(y));
    if (sol.residual <= opt.tolerance) {
      sol.converged = true;
      break;
    }
    if (sol.iterations >= opt.max_iterations || k == 0) break;

    // p_i, gradient 2<m - beta, b_k>, Hessian 4(E[a a^T] - E[a] E[a]^T)
    std::vector<double> s(alphas.size());
    double top = -INFINITY;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      s[i] = 2.0 * alphas[i].dot(x);
      top = std::max(top, s[i]);
    }
    Eigen::VectorXd p(static_cast<Eigen::Index>(alphas.size()));
    for (std::size_t i = 0; i < alphas.size(); ++i) p[static_cast<Eigen::Index>(i)] = c[i] * std::exp(s[i] - top);
    p /= p.sum();
    const Eigen::VectorXd mean = a_proj.transpose() * p;
    Eigen::VectorXd grad(k);
    for (Eigen::Index j = 0; j < k; ++j) grad[j] = 2.0 * (m - beta).dot(basis[static_cast<std::size_t>(j)]);
    const Eigen::MatrixXd hess = 4.0 * (a_proj.transpose() * p.asDiagonal() * a_proj - mean * mean.transpose());

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hess);
    const double lo = eig.eigenvalues().minCoeff();
    sol.min_hessian_eigenvalue = std::min(sol.min_hessian_eigenvalue, lo);
    if (lo < -opt.psd_slack * std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff())) sol.hessian_psd = false;

    const Eigen::VectorXd step = -hess.ldlt().solve(grad);
    const double slope = grad.dot(step);
    const double f0 = sol.objective.back();
    double t = 1.0;
    while (t > 1e-12 && phi(y + t * step) > f0 + opt.armijo * t * slope) t *= 0.5;
    y += t * step;
    ++sol.iterations;
  }
  const Eigen::VectorXd x = to_x(y);
  sol.x.assign(x.data(), x.data() + x.size());
  for (double xi : sol.x) sol.multipliers.push_back(std::exp(xi));
  return sol;
}

/// exp(X) . v in floating point.
inline FloatVector group_scale(const std::vector<double>& x, const FloatVector& v) {
  if (x.size() != v.space().n) throw std::invalid_argument("group_scale: dimension mismatch");
  FloatVector out(v.space());
  for (const auto& [k, c] : v.terms()) {
    const RatVec w = weight(v.space(), k);
    double e = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) e += to_double(w[i]) * x[i];
    out.set(k, c * std::exp(e));
  }
  return out;
}

template <class T>
double frobenius(const Matrix<T>& m) {
  double acc = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double x = ScalarTraits<T>::to_double(m(i, j));
      acc += x * x;
    }
  return std::sqrt(acc);
}

struct CriticalityReport {
  bool critical = false;
  double lambda = 0.0;
  double residual = 0.0;  // |pi(mm) v - lambda v| / |v|
  Matrix<double> mm;
};

/// Residual of pi(mm(v)) v = lambda v with lambda = <pi(mm) v, v> / |v|^2.
inline CriticalityReport is_critical(const FloatVector& v, const Group& g, double tol = 1e-10) {
  CriticalityReport rep;
  rep.mm = moment_map_restricted(v, g);
  const FloatVector image = apply_matrix(rep.mm, v);
  const double nv = norm2(v);
  rep.lambda = inner(image, v) / nv;
  const FloatVector r = image - v.scaled(rep.lambda);
  rep.residual = std::sqrt(std::max(0.0, norm2(r))) / std::sqrt(nv);
  rep.critical = rep.residual <= tol;
  return rep;
}

inline std::vector<double> sorted_eigenvalues(const Matrix<double>& m) {
  Eigen::MatrixXd e(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(e);
  std::vector<double> out(eig.eigenvalues().data(), eig.eigenvalues().data() + eig.eigenvalues().size());
  std::sort(out.begin(), out.end());
  return out;
}

struct FlowResult {
  FloatVector limit;           // unit norm
  Matrix<double> mm;
  std::vector<double> label;   // eigenvalues of the final mm, ascending
  std::vector<double> f_history;
  int steps = 0;
  bool critical = false;
};

/// Explicit Euler descent of F = |mm|^2 on the unit sphere:
/// v <- v - step * 4 (pi(mm(v)) v - |mm(v)|^2 v), renormalized each step.
/// Exploratory only; it stops early once the criticality residual drops below tol.
inline FlowResult gradient_flow(const FloatVector& start, const Group& g, double step, int max_iters,
                                double tol = 1e-10) {
  if (!(step > 0)) throw std::invalid_argument("gradient_flow: step must be positive");
  if (start.is_zero()) throw std::invalid_argument("gradient_flow: zero vector");
  const std::vector<RatMatrix> p_basis = g.kind() == Subgroup::sp ? p_part_basis(g) : std::vector<RatMatrix>{};
  auto mm_of = [&](const FloatVector& v) {
    return g.kind() == Subgroup::sp ? project_onto(moment_map(v), p_basis) : moment_map_restricted(v, g);
  };
  FlowResult res;
  FloatVector v = start.scaled(1.0 / std::sqrt(norm2(start)));
  for (;;) {
    const Matrix<double> m = mm_of(v);
    const double f = frobenius(m) * frobenius(m);
    res.f_history.push_back(f);
    const FloatVector image = apply_matrix(m, v);
    const FloatVector tangent = image - v.scaled(inner(image, v));
    const double r = std::sqrt(std::max(0.0, norm2(tangent)));
    if (r <= tol || res.steps >= max_iters) {
      res.mm = m;
      res.critical = r <= tol;
      break;
    }
    v = v - tangent.scaled(4.0 * step);
    v = v.scaled(1.0 / std::sqrt(norm2(v)));
    ++res.steps;
  }
  res.limit = v;
  res.label = sorted_eigenvalues(res.mm);
  return res;
}

}  // namespace orbitforge
