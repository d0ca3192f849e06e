#include <gtest/gtest.h>

#include <cmath>

#include "orbitforge/flow.hpp"

using namespace orbitforge;

namespace {

const RepSpace kQuartics = RepSpace::poly(3, 4);

RepVector heisenberg() {
  RepVector mu(RepSpace::bracket(6));
  mu.set({0, 3, 5}, Surd(1));
  mu.set({1, 2, 4}, Surd(1));
  return mu;
}

RepVector form(std::initializer_list<std::pair<Index, Surd>> terms) {
  RepVector v(kQuartics);
  for (const auto& [k, c] : terms) v.set(k, c);
  return v;
}

double component_along(const std::vector<double>& x, const std::vector<std::vector<double>>& dirs) {
  double acc = 0.0;
  for (const auto& d : dirs) {
    double dp = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) dp += x[i] * d[i];
    acc += dp * dp;
  }
  return std::sqrt(acc);
}

}  // namespace

TEST(Newton, HeisenbergModuloDegeneracy) {
  const Group sp(Subgroup::sp, 6);
  const MomentSolution s = solve_moment_equation(heisenberg(), sp);
  EXPECT_TRUE(s.converged);
  EXPECT_LE(s.residual, 1e-12);
  EXPECT_TRUE(s.hessian_psd);
  const double l2 = std::log(2.0);
  const std::vector<double> reference{l2, 0, l2, -l2, 0, -l2};
  std::vector<double> diff(6);
  for (std::size_t i = 0; i < 6; ++i) diff[i] = s.x[i] - reference[i];
  EXPECT_LE(component_along(diff, s.directions), 1e-12);
}

TEST(Newton, SingleWeight) {
  const Group gl(Subgroup::gl, 3);
  const MomentSolution s = solve_moment_equation(form({{{0, 0, 4}, Surd(3)}}), gl);
  EXPECT_TRUE(s.converged);
  EXPECT_EQ(s.iterations, 0);
  for (double x : s.x) EXPECT_EQ(x, 0.0);
}

TEST(Newton, BetaOneRecoversMasses) {
  const Group gl(Subgroup::gl, 3);
  const RepVector w = form({{{2, 0, 2}, Surd(1)}, {{0, 3, 1}, Surd(1)}});
  const MomentSolution s = solve_moment_equation(w, gl);
  ASSERT_TRUE(s.converged);
  EXPECT_LE(s.iterations, 50);
  const FloatVector scaled = group_scale(s.x, to_float(w));
  const double nv = norm2(scaled);
  const double a2 = scaled.coefficient({2, 0, 2}) * scaled.coefficient({2, 0, 2}) / nv;
  const double b2 = scaled.coefficient({0, 3, 1}) * scaled.coefficient({0, 3, 1}) / nv;
  EXPECT_NEAR(a2, 1.0 / 7, 1e-12);
  EXPECT_NEAR(b2, 1.0 / 14, 1e-12);
  // Objective decreases monotonically.
  for (std::size_t i = 1; i < s.objective.size(); ++i) EXPECT_LE(s.objective[i], s.objective[i - 1] + 1e-15);
}

TEST(Newton, RejectsBoundaryBeta) {
  const Group gl(Subgroup::gl, 3);
  EXPECT_THROW(solve_moment_equation(form({{{2, 0, 2}, Surd(1)}, {{0, 0, 4}, Surd(1)}}), gl), NotInRelativeInterior);
}

TEST(Newton, RationalMultipliersReproduceBetaExactly) {
  const Group sp(Subgroup::sp, 6);
  const MomentSolution s = solve_moment_equation(heisenberg(), sp);
  RatVec t(6);
  for (std::size_t i = 0; i < 6; ++i) {
    // Round multipliers to nearby rationals; exact only when they are exact.
    t[i] = Rational(static_cast<long>(std::llround(s.multipliers[i] * 1024)), 1024);
  }
  const RepVector scaled = group_scale(t, heisenberg());
  const SymMatrix m = moment_map_restricted(scaled, sp);
  EXPECT_TRUE(m.is_diagonal());
  EXPECT_EQ(diagonal_of(m), s.beta);
}

TEST(IsCritical, Examples) {
  const Group gl(Subgroup::gl, 3);
  const RepVector v = form({{{2, 0, 2}, Surd::signed_sqrt(Rational(1, 7))}, {{0, 3, 1}, Surd::signed_sqrt(Rational(1, 14))}});
  const CriticalityReport r = is_critical(to_float(v), gl);
  EXPECT_TRUE(r.critical);
  EXPECT_NEAR(r.lambda, 266.0 / 49.0, 1e-12);

  const RepVector u = form({{{4, 0, 0}, Surd(1)}, {{0, 4, 0}, Surd(2)}});
  EXPECT_FALSE(is_critical(to_float(u), gl).critical);

  for (const auto& idx : kQuartics.basis()) {
    RepVector b(kQuartics);
    b.set(idx, Surd(1));
    const CriticalityReport rb = is_critical(to_float(b), gl);
    EXPECT_TRUE(rb.critical);
    EXPECT_NEAR(rb.lambda, to_double(norm2(weight(kQuartics, idx))), 1e-12);
  }
}

TEST(GradientFlow, CriticalStartStays) {
  const Group gl(Subgroup::gl, 3);
  const RepVector v = form({{{2, 0, 2}, Surd::signed_sqrt(Rational(1, 7))}, {{0, 3, 1}, Surd::signed_sqrt(Rational(1, 14))}});
  const FloatVector f = to_float(v);
  const FlowResult r = gradient_flow(f, gl, 1e-3, 1000, 0.0);
  EXPECT_EQ(r.steps, 1000);
  const Matrix<double> m0 = moment_map(f);
  double drift = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) drift = std::max(drift, std::abs(r.mm(i, j) - m0(i, j)));
  EXPECT_LE(drift, 1e-10);
  EXPECT_THROW(gradient_flow(f, gl, 0.0, 10), std::invalid_argument);
}

TEST(GradientFlow, MonomialIsStationary) {
  const Group gl(Subgroup::gl, 3);
  RepVector b(kQuartics);
  b.set({1, 3, 0}, Surd(2));
  const FlowResult r = gradient_flow(to_float(b), gl, 1e-3, 100);
  EXPECT_EQ(r.steps, 0);
  EXPECT_TRUE(r.critical);
}

TEST(GradientFlow, ReachesBetaOne) {
  const Group gl(Subgroup::gl, 3);
  const RepVector w = form({{{2, 0, 2}, Surd(3)}, {{0, 3, 1}, Surd(1)}});
  const FlowResult r = gradient_flow(to_float(w), gl, 2e-3, 200000, 1e-12);
  const std::vector<double> expected{-11.0 / 7, -9.0 / 7, -8.0 / 7};
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(r.label[i], expected[i], 1e-6);
  for (std::size_t i = 1; i < r.f_history.size(); ++i) EXPECT_LE(r.f_history[i], r.f_history[i - 1] + 1e-12);
}
