#include <gtest/gtest.h>

#include "orbitforge/ratgeom.hpp"
#include "oracles.hpp"

using namespace orbitforge;

namespace {
RatVec v(std::initializer_list<Rational> e) { return RatVec(e); }
}  // namespace

TEST(Mcc, SegmentExample) {
  const PointSet s({RatVec::from_ints({2, 0, 2}), RatVec::from_ints({0, 3, 1})});
  EXPECT_EQ(mcc(s), v({Rational(8, 7), Rational(9, 7), Rational(11, 7)}));
}

TEST(Mcc, Trivial) {
  EXPECT_EQ(mcc(PointSet({RatVec::from_ints({1, 0}), RatVec::from_ints({0, 1})})), v({Rational(1, 2), Rational(1, 2)}));
  EXPECT_EQ(mcc(PointSet({RatVec::from_ints({1, 0}), RatVec::from_ints({-1, 0}), RatVec::from_ints({0, 1})})),
            RatVec::from_ints({0, 0}));
  EXPECT_THROW(mcc(PointSet()), std::invalid_argument);
}

TEST(PointSet, RejectsDuplicates) {
  EXPECT_THROW(PointSet({RatVec::from_ints({1, 0}), RatVec::from_ints({1, 0})}), std::invalid_argument);
  EXPECT_THROW(PointSet({RatVec::from_ints({1, 0}), RatVec::from_ints({1, 0, 0})}), std::invalid_argument);
  EXPECT_EQ(PointSet::deduplicated({RatVec::from_ints({1}), RatVec::from_ints({1})}).size(), 1u);
}

TEST(Barycentric, Examples) {
  const PointSet s({RatVec::from_ints({2, 0, 2}), RatVec::from_ints({0, 3, 1})});
  auto c = barycentric(s, v({Rational(8, 7), Rational(9, 7), Rational(11, 7)}));
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, v({Rational(4, 7), Rational(3, 7)}));
  auto one = barycentric(PointSet({RatVec::from_ints({1, 0})}), RatVec::from_ints({1, 0}));
  ASSERT_TRUE(one);
  EXPECT_EQ(*one, RatVec::from_ints({1}));
  EXPECT_FALSE(barycentric(PointSet({RatVec::from_ints({1, 0}), RatVec::from_ints({0, 1})}), RatVec::from_ints({1, 1})));
}

TEST(RelativeInterior, Examples) {
  const PointSet seg({RatVec::from_ints({2, 0, 2}), RatVec::from_ints({0, 3, 1})});
  const auto cert = relative_interior_certificate(seg, v({Rational(8, 7), Rational(9, 7), Rational(11, 7)}));
  EXPECT_TRUE(cert.interior);
  EXPECT_EQ(combine(seg, cert.coefficients), v({Rational(8, 7), Rational(9, 7), Rational(11, 7)}));
  EXPECT_FALSE(in_relative_interior(PointSet({RatVec::from_ints({1, 0}), RatVec::from_ints({0, 1})}), RatVec::from_ints({1, 0})));
  const PointSet yz({RatVec::from_ints({0, 4, 0}), RatVec::from_ints({0, 2, 2}), RatVec::from_ints({0, 0, 4})});
  EXPECT_TRUE(in_relative_interior(yz, RatVec::from_ints({0, 2, 2})));
  EXPECT_FALSE(in_relative_interior(yz, RatVec::from_ints({0, 4, 0})));
  EXPECT_FALSE(in_relative_interior(yz, RatVec::from_ints({1, 2, 2})));
}

TEST(Vertices, Examples) {
  const PointSet s({RatVec::from_ints({0, 0}), RatVec::from_ints({1, 0}), RatVec::from_ints({0, 1}),
                    v({Rational(1, 4), Rational(1, 4)})});
  EXPECT_EQ(vertices(s), PointSet({RatVec::from_ints({0, 0}), RatVec::from_ints({1, 0}), RatVec::from_ints({0, 1})}));
  EXPECT_EQ(vertices(PointSet({RatVec::from_ints({0, 0})})), PointSet({RatVec::from_ints({0, 0})}));
}

TEST(Mcc, HyperplaneWhenInterior) {
  // Interior mcc forces every point onto the supporting hyperplane.
  const PointSet s({RatVec::from_ints({2, 0, 2}), RatVec::from_ints({0, 3, 1})});
  const RatVec b = mcc(s);
  ASSERT_TRUE(in_relative_interior(s, b));
  for (const auto& p : s) EXPECT_EQ(dot(p, b), norm2(b));
}

TEST(Mcc, HyperplaneDoesNotImplyInterior) {
  const PointSet s({RatVec::from_ints({1, 0}), RatVec::from_ints({1, 1})});
  const RatVec b = mcc(s);
  EXPECT_EQ(b, RatVec::from_ints({1, 0}));
  for (const auto& p : s) EXPECT_EQ(dot(p, b), norm2(b));
  EXPECT_FALSE(in_relative_interior(s, b));
}

TEST(Mcc, AgreesWithBruteForce) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const PointSet s = oracle::random_point_set(rng, 1 + trial % 6, 1 + trial % 4, 3);
    const RatVec got = mcc(s);
    EXPECT_EQ(got, oracle::brute_force_mcc(s)) << "trial " << trial;
    EXPECT_TRUE(barycentric(s, got).has_value());
    EXPECT_TRUE(satisfies_min_norm_certificate(s, got));
  }
}

TEST(Mcc, PermutationAndHullInvariance) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const PointSet s = oracle::random_point_set(rng, 2 + trial % 5, 2 + trial % 3, 4);
    const RatVec b = mcc(s);
    std::vector<RatVec> pts = s.points();
    std::shuffle(pts.begin(), pts.end(), rng);
    EXPECT_EQ(mcc(PointSet(pts)), b);
    RatVec mid = (s[0] + s[1]) * Rational(1, 2);
    if (!s.contains(mid)) {
      pts.push_back(mid);
      EXPECT_EQ(mcc(PointSet(pts)), b);
    }
  }
}

TEST(Vertices, EachVertexIsExtreme) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const PointSet s = oracle::random_point_set(rng, 1 + trial % 7, 2, 3);
    const PointSet vs = vertices(s);
    for (const auto& p : vs) {
      std::vector<RatVec> others;
      for (const auto& q : s)
        if (q != p) others.push_back(q);
      if (!others.empty()) {
        EXPECT_FALSE(barycentric(PointSet(others), p));
      }
    }
    for (const auto& p : s) EXPECT_TRUE(barycentric(vs, p));
  }
}
