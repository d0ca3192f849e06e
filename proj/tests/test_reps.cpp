#include <gtest/gtest.h>

#include <random>

#include "orbitforge/reps.hpp"

using namespace orbitforge;

namespace {

RepVector form(std::size_t d, std::initializer_list<std::pair<Index, Surd>> terms) {
  RepVector v(RepSpace::poly(3, d));
  for (const auto& [k, c] : terms) v.set(k, c);
  return v;
}

RepVector heisenberg(const Rational& c = 1) {
  RepVector mu(RepSpace::bracket(6));
  mu.set({0, 3, 5}, c);
  mu.set({1, 2, 4}, c);
  return mu;
}

Surd root(const Rational& sq, int sign = 1) { return Surd::signed_sqrt(sq, sign); }

}  // namespace

TEST(Support, Examples) {
  const RepVector p = form(4, {{{2, 0, 2}, Surd(1)}, {{0, 3, 1}, Surd(5)}});
  EXPECT_EQ(support(p), PointSet({-RatVec::from_ints({0, 3, 1}), -RatVec::from_ints({2, 0, 2})}));
  EXPECT_EQ(support(heisenberg()), PointSet({RatVec::from_ints({-1, 0, 0, -1, 0, 1}), RatVec::from_ints({0, -1, -1, 0, 1, 0})}));
  EXPECT_EQ(support(form(4, {{{0, 0, 4}, Surd(1)}})), PointSet({-RatVec::from_ints({0, 0, 4})}));
  EXPECT_THROW(support(RepVector(RepSpace::poly(3, 4))), std::invalid_argument);
}

TEST(Validate, RejectsBadIndices) {
  RepVector p(RepSpace::poly(3, 4));
  EXPECT_THROW(p.set({1, 1, 1}, Surd(1)), std::invalid_argument);
  RepVector b(RepSpace::bracket(4));
  EXPECT_THROW(b.set({2, 1, 0}, Surd(1)), std::invalid_argument);
  EXPECT_THROW(b.set({0, 4, 1}, Surd(1)), std::invalid_argument);
}

TEST(ApplyDiag, IdentityScalesByDegree) {
  const RatVec id = RatVec::from_ints({1, 1, 1});
  const RepVector p = form(4, {{{4, 0, 0}, Surd(1)}, {{1, 2, 1}, Surd(3)}});
  EXPECT_EQ(apply_diag(id, p), p.scaled(Surd(-4)));
  const RepVector mu = heisenberg();
  EXPECT_EQ(apply_diag(RatVec::from_ints({1, 1, 1, 1, 1, 1}), mu), mu.scaled(Surd(-1)));
  EXPECT_TRUE(apply_diag(RatVec(3), p).is_zero());
}

TEST(ApplyElementary, PolyDerivativeRule) {
  // E_12 on x^(1+n1) y^(n2-1) z^n3 = -(1+n1) x^n1 y^n2 z^n3
  for (int n1 = 0; n1 <= 2; ++n1)
    for (int n2 = 1; n2 <= 4 - n1; ++n2) {
      const int n3 = 4 - n1 - n2;
      const RepVector p = form(4, {{{1 + n1, n2 - 1, n3}, Surd(1)}});
      const RepVector img = apply_elementary(0, 1, p);
      EXPECT_EQ(img, form(4, {{{n1, n2, n3}, Surd(-(1 + n1))}}));
    }
  EXPECT_TRUE(apply_elementary(0, 1, form(4, {{{0, 0, 4}, Surd(1)}})).is_zero());
}

TEST(ApplyElementary, BracketThreeTermFormula) {
  RepVector mu(RepSpace::bracket(6));
  mu.set({0, 3, 5}, Surd(1));
  RepVector expected(RepSpace::bracket(6));
  expected.set({1, 3, 5}, Surd(-1));
  EXPECT_EQ(apply_elementary(0, 1, mu), expected);
}

TEST(ApplyElementary, RespectsWeights) {
  const RepSpace spaces[] = {RepSpace::poly(3, 4), RepSpace::bracket(5)};
  for (const auto& space : spaces)
    for (const auto& idx : space.basis()) {
      RepVector v(space);
      v.set(idx, Surd(1));
      for (std::size_t i = 0; i < space.n; ++i)
        for (std::size_t j = 0; j < space.n; ++j) {
          if (i == j) continue;
          const RepVector img = apply_elementary(i, j, v);
          const RatVec shift = unit_vector(space.n, i) - unit_vector(space.n, j);
          for (const auto& [k, c] : img.terms()) EXPECT_EQ(weight(space, k), weight(space, idx) + shift);
        }
    }
}

TEST(ApplyElementary, AdjointUnderInnerProduct) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coef(-3, 3);
  const RepSpace spaces[] = {RepSpace::poly(3, 3), RepSpace::bracket(4)};
  for (const auto& space : spaces)
    for (int trial = 0; trial < 5; ++trial) {
      RepVector a(space), b(space);
      for (const auto& idx : space.basis()) {
        a.set(idx, Surd(coef(rng)));
        b.set(idx, Surd(coef(rng)));
      }
      for (std::size_t i = 0; i < space.n; ++i)
        for (std::size_t j = 0; j < space.n; ++j)
          EXPECT_EQ(inner(apply_elementary(i, j, a), b), inner(a, apply_elementary(j, i, b)));
    }
}

TEST(GroupScale, HeisenbergHalves) {
  const RatVec t({2, 1, 2, Rational(1, 2), 1, Rational(1, 2)});
  EXPECT_EQ(group_scale(t, heisenberg()), heisenberg(Rational(1, 2)));
  EXPECT_EQ(group_scale(RatVec::from_ints({1, 1, 1, 1, 1, 1}), heisenberg()), heisenberg());
  EXPECT_THROW(group_scale(RatVec::from_ints({1, 0, 1, 1, 1, 1}), heisenberg()), std::invalid_argument);
}

TEST(MomentMap, TableRowBetaOne) {
  const RepVector p = form(4, {{{2, 0, 2}, root(Rational(1, 7))}, {{0, 3, 1}, root(Rational(1, 14))}});
  EXPECT_EQ(norm2_exact(p), 1);
  const SymMatrix m = moment_map(p);
  EXPECT_TRUE(m.is_diagonal());
  EXPECT_EQ(diagonal_of(m), -RatVec({Rational(8, 7), Rational(9, 7), Rational(11, 7)}));
}

TEST(MomentMap, BasisVectorGivesItsWeight) {
  const RepSpace spaces[] = {RepSpace::poly(3, 4), RepSpace::bracket(5)};
  for (const auto& space : spaces)
    for (const auto& idx : space.basis()) {
      RepVector v(space);
      v.set(idx, Surd(3));
      const SymMatrix m = moment_map(v);
      EXPECT_EQ(m, SymMatrix::diagonal(weight(space, idx)));
    }
}

TEST(MomentMap, ScaleInvariantAndTrace) {
  const RepVector p = form(4, {{{4, 0, 0}, Surd(1)}, {{3, 1, 0}, Surd(2)}, {{1, 1, 2}, root(3)}});
  const SymMatrix m = moment_map(p);
  EXPECT_EQ(moment_map(p.scaled(Surd(Rational(-5, 3)))), m);
  Surd tr;
  for (std::size_t i = 0; i < 3; ++i) tr += m(i, i);
  EXPECT_EQ(tr, Surd(-4));
  EXPECT_TRUE(m.is_symmetric());
  const SymMatrix mb = moment_map(heisenberg());
  Surd trb;
  for (std::size_t i = 0; i < 6; ++i) trb += mb(i, i);
  EXPECT_EQ(trb, Surd(-1));
}

TEST(MomentMap, HeisenbergRescaled) {
  const RepVector mu = heisenberg(Rational(1, 2));
  EXPECT_EQ(norm2_exact(mu), 1);
  EXPECT_EQ(moment_map(mu), SymMatrix::diagonal(RatVec({Rational(-1, 2), Rational(-1, 2), Rational(-1, 2),
                                                        Rational(-1, 2), Rational(1, 2), Rational(1, 2)})));
  const Group sp(Subgroup::sp, 6);
  EXPECT_EQ(moment_map_restricted(mu, sp),
            SymMatrix::diagonal(RatVec({Rational(-1, 2), Rational(-1, 2), 0, 0, Rational(1, 2), Rational(1, 2)})));
}

TEST(MomentMap, PermutationEquivariance) {
  const RepVector p = form(4, {{{4, 0, 0}, Surd(1)}, {{3, 1, 0}, Surd(2)}, {{0, 2, 2}, Surd(-1)}});
  const std::size_t perm[3] = {2, 0, 1};
  RepVector q(p.space());
  for (const auto& [k, c] : p.terms()) {
    Index img(3);
    for (std::size_t i = 0; i < 3; ++i) img[perm[i]] = k[i];
    q.set(img, c);
  }
  const SymMatrix mp = moment_map(p);
  const SymMatrix mq = moment_map(q);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(mq(perm[i], perm[j]), mp(i, j));
}

TEST(MomentMap, RestrictedSlIsTraceless) {
  const Group sl(Subgroup::sl, 3);
  const RepVector p = form(4, {{{4, 0, 0}, Surd(1)}, {{3, 1, 0}, Surd(2)}, {{1, 1, 2}, root(3)}});
  const SymMatrix m = moment_map_restricted(p, sl);
  Surd tr;
  for (std::size_t i = 0; i < 3; ++i) tr += m(i, i);
  EXPECT_TRUE(tr.is_zero());
}

TEST(MomentMap, SpProjectionTwoRoutes) {
  const Group sp(Subgroup::sp, 6);
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> coef(-2, 2);
  const auto basis = RepSpace::bracket(6).basis();
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  for (int trial = 0; trial < 30; ++trial) {
    RepVector mu(RepSpace::bracket(6));
    for (int t = 0; t < 3; ++t) mu.set(basis[pick(rng)], Surd(coef(rng)));
    if (mu.is_zero()) continue;
    const SymMatrix m = moment_map(mu);
    const SymMatrix proj = project_to_p(m, sp);
    if (m.is_diagonal()) {
      EXPECT_TRUE(proj.is_diagonal());
      EXPECT_EQ(diagonal_of(proj), project_to_sp_diag(diagonal_of(m), 3));
    }
    EXPECT_EQ(project_to_p(proj, sp), proj);
  }
}

TEST(MomentMap, DiagonalLiesInInteriorOfSupportHull) {
  const RepVector p = form(4, {{{2, 0, 2}, Surd(1)}, {{0, 3, 1}, Surd(3)}, {{4, 0, 0}, Surd(2)}});
  const SymMatrix m = moment_map(p);
  ASSERT_TRUE(m.is_diagonal());
  EXPECT_TRUE(in_relative_interior(support(p), diagonal_of(m)));
}
