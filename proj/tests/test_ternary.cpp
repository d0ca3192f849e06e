#include <gtest/gtest.h>

#include <cstdlib>
#include <set>

#include "orbitforge/ternary.hpp"

using namespace orbitforge;

namespace {

RatVec q(std::initializer_list<Rational> e) { return RatVec(e); }

Rational r(long p, long qq = 1) { return Rational(p, qq); }

// Closest point to the origin on the segment [a, b].
RatVec segment_min(const RatVec& a, const RatVec& b) {
  const RatVec u = b - a;
  if (norm2(u) == 0) return a;
  Rational t = -dot(a, u) / norm2(u);
  if (t < 0) t = 0;
  if (t > 1) t = 1;
  return a + u * t;
}

std::set<RatVec> oracle_types(std::size_t d) {
  std::vector<RatVec> w;
  for (std::size_t i = 0; i <= d; ++i)
    for (std::size_t j = 0; i + j <= d; ++j)
      w.push_back(-q({r(static_cast<long>(i)), r(static_cast<long>(j)), r(static_cast<long>(d - i - j))}));
  std::set<RatVec> out;
  for (const auto& a : w)
    for (const auto& b : w) {
      const RatVec diff = a - b;
      int plus = 0, minus = 0, zero = 0;
      for (const auto& x : diff) {
        if (x == 1) ++plus;
        else if (x == -1) ++minus;
        else if (x == 0) ++zero;
      }
      if (plus == 1 && minus == 1 && zero == 1) continue;
      out.insert(chamber_canonical(-segment_min(a, b)));
    }
  return out;
}

std::set<RatVec> types_of(const std::vector<RatVec>& labels) {
  std::set<RatVec> out;
  for (const auto& b : labels) out.insert(label_type(b));
  return out;
}

const std::vector<Stratum>& quartic_strata() {
  static const std::vector<Stratum> strata = classify(4, {-q({r(1, 2), r(1, 2), r(3)})});
  return strata;
}

const Stratum& stratum(const RatVec& type) {
  const Stratum* s = find_stratum(quartic_strata(), type);
  if (!s) throw std::runtime_error("missing stratum " + type.str());
  return *s;
}

const StratumSolution& solution_on(const Stratum& s, std::vector<Index> monomials) {
  for (const auto& sol : s.solutions)
    if (detail::same_monomials(sol.monomials, monomials)) return sol;
  throw std::runtime_error("no solution on the requested monomials");
}

}  // namespace

TEST(StratifyingSet, QuarticTypes) {
  const std::set<RatVec> expected{
      q({r(4, 3), r(4, 3), r(4, 3)}), q({r(8, 7), r(9, 7), r(11, 7)}),  q({r(1), r(3, 2), r(3, 2)}),
      q({r(6, 7), r(10, 7), r(12, 7)}), q({r(5, 6), r(8, 6), r(11, 6)}), q({r(1), r(1), r(2)}),
      q({r(8, 13), r(20, 13), r(24, 13)}), q({r(1, 2), r(3, 2), r(2)}), q({r(1, 3), r(4, 3), r(7, 3)}),
      q({r(0), r(2), r(2)}),             q({r(0), r(1), r(3)}),         q({r(0), r(0), r(4)})};
  EXPECT_EQ(types_of(stratifying_set(3, 4)), expected);
}

TEST(StratifyingSet, MatchesSegmentOracle) {
  for (std::size_t d = 1; d <= 6; ++d) EXPECT_EQ(types_of(stratifying_set(3, d)), oracle_types(d)) << "d=" << d;
}

TEST(StratifyingSet, LowDegreeBaselines) {
  EXPECT_EQ(types_of(stratifying_set(3, 1)), (std::set<RatVec>{q({r(0), r(0), r(1)})}));
  EXPECT_EQ(types_of(stratifying_set(3, 2)),
            (std::set<RatVec>{q({r(2, 3), r(2, 3), r(2, 3)}), q({r(0), r(1), r(1)}), q({r(0), r(0), r(2)})}));
}

TEST(StratifyingSet, OrderedByNormDescending) {
  const auto labels = stratifying_set(3, 5);
  for (std::size_t i = 1; i < labels.size(); ++i) EXPECT_GE(norm2(labels[i - 1]), norm2(labels[i]));
  for (const auto& b : labels) EXPECT_TRUE(in_closed_chamber(-b));
}

TEST(StratifyingSet, RejectsDegenerateInput) {
  EXPECT_THROW(stratifying_set(3, 0), std::invalid_argument);
  EXPECT_THROW(stratifying_set(0, 2), std::invalid_argument);
}

TEST(StratifyingSet, ThreadCountDoesNotChangeResult) {
  ::setenv("ORBITFORGE_THREADS", "1", 1);
  const auto serial = stratifying_set(3, 5);
  ::setenv("ORBITFORGE_THREADS", "3", 1);
  const auto threaded = stratifying_set(3, 5);
  ::unsetenv("ORBITFORGE_THREADS");
  EXPECT_EQ(serial, threaded);
}

TEST(StratifyingSet, ExcludedRootRelatedPair) {
  const auto excluded = types_of(excluded_pair_labels(3, 4));
  EXPECT_TRUE(excluded.count(q({r(1, 2), r(1, 2), r(3)})));
}

TEST(OmegaWeights, BetaOneHasTwoMonomials) {
  const auto omega = omega_monomials(-q({r(8, 7), r(9, 7), r(11, 7)}), 4);
  EXPECT_EQ(omega, (std::vector<Index>{{0, 3, 1}, {2, 0, 2}}));
  EXPECT_EQ(omega_weights(-q({r(8, 7), r(9, 7), r(11, 7)}), 4).size(), 2u);
}

TEST(Classify, UniqueCriticalPoints) {
  struct Case {
    RatVec type;
    std::vector<Index> monomials;
    std::vector<Rational> squares;
  };
  const std::vector<Case> cases{
      {q({r(8, 7), r(9, 7), r(11, 7)}), {{2, 0, 2}, {0, 3, 1}}, {r(1, 7), r(1, 14)}},
      {q({r(6, 7), r(10, 7), r(12, 7)}), {{1, 1, 2}, {0, 4, 0}}, {r(3, 7), r(1, 168)}},
      {q({r(5, 6), r(8, 6), r(11, 6)}), {{1, 1, 2}, {0, 3, 1}}, {r(5, 12), r(1, 36)}},
      {q({r(8, 13), r(20, 13), r(24, 13)}), {{1, 0, 3}, {0, 4, 0}}, {r(4, 39), r(5, 312)}},
      {q({r(1, 2), r(3, 2), r(2)}), {{1, 0, 3}, {0, 3, 1}}, {r(1, 12), r(1, 12)}},
      {q({r(1, 3), r(4, 3), r(7, 3)}), {{1, 0, 3}, {0, 2, 2}}, {r(1, 18), r(1, 6)}},
      {q({r(0), r(1), r(3)}), {{0, 1, 3}}, {r(1, 6)}},
      {q({r(0), r(0), r(4)}), {{0, 0, 4}}, {r(1, 24)}},
  };
  for (const auto& c : cases) {
    const Stratum& s = stratum(c.type);
    ASSERT_EQ(s.solutions.size(), 1u) << c.type.str();
    const auto& sol = solution_on(s, c.monomials);
    EXPECT_TRUE(sol.family.unique());
    EXPECT_TRUE(sol.family.strictly_positive);
    const auto sq = sol.family.squared_coefficients();
    for (std::size_t i = 0; i < c.monomials.size(); ++i) {
      const auto at = std::find(sol.monomials.begin(), sol.monomials.end(), c.monomials[i]) - sol.monomials.begin();
      EXPECT_EQ(sq[static_cast<std::size_t>(at)], c.squares[i]) << c.type.str();
    }
  }
}

TEST(Classify, AssembledPointsAreCritical) {
  const RepSpace space = RepSpace::poly(3, 4);
  const Group gl(Subgroup::gl, 3);
  for (const auto& s : quartic_strata())
    for (const auto& sol : s.solutions) {
      if (!sol.family.strictly_positive) continue;
      const RepVector v = assemble_from_masses(space, sol.monomials, sol.family.particular);
      EXPECT_EQ(norm2_exact(v), 1);
      // The moment map of a critical point on a nice span is diagonal and equals beta.
      const SymMatrix m = moment_map(v);
      EXPECT_EQ(diagonal_of(m), s.beta) << s.type().str();
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
          if (i != j) {
            EXPECT_EQ(m(i, j), 0);
          }
    }
}

TEST(Classify, EmptyStratum) {
  const Stratum& s = stratum(q({r(1, 2), r(1, 2), r(3)}));
  EXPECT_FALSE(s.in_stratifying_set);
  EXPECT_EQ(s.omega, (std::vector<Index>{{0, 1, 3}, {1, 0, 3}}));
  EXPECT_TRUE(s.empty());
}

TEST(Classify, FamilyDimensions) {
  EXPECT_EQ(stratum(q({r(1), r(3, 2), r(3, 2)})).family_dimension(), 0u);
  EXPECT_EQ(stratum(q({r(1), r(1), r(2)})).family_dimension(), 0u);
  EXPECT_EQ(stratum(q({r(0), r(2), r(2)})).family_dimension(), 1u);
  EXPECT_EQ(stratum(q({r(1), r(3, 2), r(3, 2)})).solutions.size(), 3u);
}

TEST(Classify, BetaTwoPair) {
  const auto& sol = solution_on(stratum(q({r(1), r(3, 2), r(3, 2)})), {{1, 3, 0}, {1, 1, 2}});
  const auto sq = sol.family.squared_coefficients();
  const auto at = std::find(sol.monomials.begin(), sol.monomials.end(), Index{1, 3, 0}) - sol.monomials.begin();
  EXPECT_EQ(sq[static_cast<std::size_t>(at)], r(1, 24));
  EXPECT_EQ(sq[static_cast<std::size_t>(1 - at)], r(9, 24));
}

TEST(Classify, MinimalStratumContainsFermat) {
  const RepSpace space = RepSpace::poly(3, 4);
  const Stratum& s = stratum(q({r(4, 3), r(4, 3), r(4, 3)}));
  EXPECT_EQ(s.omega.size(), space.basis().size());
  RepVector fermat(space);
  for (const Index& i : {Index{4, 0, 0}, Index{0, 4, 0}, Index{0, 0, 4}}) fermat.set(i, Surd(1));
  const Verdict v = is_distinguished(fermat, Group(Subgroup::gl, 3));
  EXPECT_EQ(v.outcome, Outcome::distinguished);
  EXPECT_EQ(v.beta, s.beta);
}

TEST(CheckRow, DetectsWrongCoefficient) {
  TableRow row;
  row.label = "beta_1";
  row.type = q({r(8, 7), r(9, 7), r(11, 7)});
  row.monomials = {{2, 0, 2}, {0, 3, 1}};
  row.squared_coefficients = {r(1, 7), r(1, 14)};
  EXPECT_TRUE(check_row(row, quartic_strata(), 4).passed);
  row.squared_coefficients[1] = r(1, 15);
  EXPECT_FALSE(check_row(row, quartic_strata(), 4).passed);
  row.type = q({r(1), r(1), r(1)});
  EXPECT_FALSE(check_row(row, quartic_strata(), 4).passed);
}
