#include <gtest/gtest.h>

#include <algorithm>

#include "parikh/geometry.hpp"
#include "parikh/oracle.hpp"
#include "support.hpp"

using namespace parikh;
using namespace parikh::testing;

namespace {

GeneratorSet gens(std::initializer_list<IntVector> vs) { return GeneratorSet(vs); }

Rational q(long long n, long long d = 1) { return Rational(n, d); }

}  // namespace

TEST(IntVector, RejectsZeroDimension) {
  EXPECT_THROW(IntVector(std::size_t{0}), malformed_input);
  EXPECT_THROW(IntVector(std::vector<Integer>{}), malformed_input);
}

TEST(IntVector, ArithmeticAndOrder) {
  IntVector a{1, 2}, b{3, -1};
  EXPECT_EQ(a + b, (IntVector{4, 1}));
  EXPECT_EQ(a - b, (IntVector{-2, 3}));
  EXPECT_EQ(Integer(3) * a, (IntVector{3, 6}));
  EXPECT_LT(a, b);
  EXPECT_LT(IntVector{5}, (IntVector{0, 0}));  // dimension first
  EXPECT_THROW(a + IntVector{1}, malformed_input);
  EXPECT_EQ(a.to_string(), "(1, 2)");
}

TEST(Dominates, Examples) {
  EXPECT_TRUE(dominates(IntVector{0, 0}, IntVector{3, 1}));
  EXPECT_FALSE(dominates(IntVector{2, 1}, IntVector{1, 5}));
  EXPECT_TRUE(dominates(IntVector{1, 1, 1}, IntVector{1, 1, 1}));
  EXPECT_THROW(dominates(IntVector{1}, IntVector{1, 2}), malformed_input);
}

TEST(Dominates, IsAPartialOrderOnRandomSamples) {
  Rng rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    auto draw = [&] {
      IntVector v(3);
      for (std::size_t i = 0; i < 3; ++i) v[i] = uniform_ll(rng, 0, 3);
      return v;
    };
    IntVector u = draw(), v = draw(), w = draw();
    EXPECT_TRUE(dominates(u, u));
    if (dominates(u, v) && dominates(v, u)) EXPECT_EQ(u, v);
    if (dominates(u, v) && dominates(v, w)) EXPECT_TRUE(dominates(u, w));
  }
}

TEST(GeneratorSet, SortedDeduplicatedWithMaxAbs) {
  GeneratorSet g(2, {IntVector{3, 0}, IntVector{-5, 1}, IntVector{3, 0}});
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0], (IntVector{-5, 1}));
  EXPECT_EQ(g[1], (IntVector{3, 0}));
  EXPECT_EQ(g.max_abs(), 5);
  EXPECT_FALSE(g.is_nonnegative());
  EXPECT_THROW(GeneratorSet(2, {IntVector{1}}), malformed_input);
}

TEST(GeneratorSet, MaxAbsMatchesRecomputation) {
  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    GeneratorSet g = random_generators(rng, 3, 5, -7, 7);
    Integer best = 0;
    for (const auto& v : g)
      for (const auto& x : v) best = std::max(best, Integer(x < 0 ? -x : x));
    EXPECT_EQ(g.max_abs(), best);
    EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
    EXPECT_EQ(std::adjacent_find(g.begin(), g.end()), g.end());
  }
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(gens({{1, 0}, {0, 1}})), 2u);
  EXPECT_EQ(rank(gens({{1, 0}, {2, 0}})), 1u);
  EXPECT_EQ(rank(gens({{1, 1}, {2, 2}, {0, 3}})), 2u);
  EXPECT_THROW(rank(GeneratorSet(2)), malformed_input);
}

TEST(SolveInSpan, Examples) {
  auto a = solve_in_span(gens({{1, 0}, {1, 1}}), IntVector{3, 1});
  ASSERT_TRUE(a);
  EXPECT_EQ(*a, (std::vector<Rational>{q(2), q(1)}));
  auto b = solve_in_span(gens({{2}}), IntVector{7});
  ASSERT_TRUE(b);
  EXPECT_EQ(*b, (std::vector<Rational>{q(7, 2)}));
  EXPECT_FALSE(solve_in_span(gens({{1, 0}}), IntVector{0, 1}));
  EXPECT_THROW(solve_in_span(gens({{1, 0}, {2, 0}}), IntVector{1, 0}), domain_error);
}

TEST(SolveInSpan, RoundTripReconstructsTheVector) {
  Rng rng(3);
  int solved = 0;
  for (int trial = 0; trial < 300; ++trial) {
    GeneratorSet s = random_generators(rng, 3, 3, -4, 4);
    if (!is_independent(s)) continue;
    IntVector v(3);
    for (std::size_t i = 0; i < 3; ++i) v[i] = uniform_ll(rng, -9, 9);
    auto lambda = solve_in_span(s, v);
    if (!lambda) continue;
    ++solved;
    std::vector<Rational> acc(3);
    for (std::size_t j = 0; j < s.size(); ++j)
      for (std::size_t i = 0; i < 3; ++i) acc[i] += (*lambda)[j] * Rational(s[j][i]);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(acc[i], Rational(v[i]));
  }
  EXPECT_GT(solved, 50);
}

TEST(ConeContains, Examples) {
  auto a = cone_contains(gens({{2, 0}, {1, 1}}), IntVector{3, 1});
  ASSERT_TRUE(a);
  // canonical order is (1,1), (2,0)
  EXPECT_EQ(*a, (std::vector<Rational>{q(1), q(1)}));
  EXPECT_FALSE(cone_contains(gens({{2, 0}, {1, 1}}), IntVector{0, 1}));
  auto c = cone_contains(gens({{1}}), IntVector{0});
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, (std::vector<Rational>{q(0)}));
}

TEST(CaratheodorySubcones, Examples) {
  auto sorted = [](std::vector<GeneratorSet> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  EXPECT_EQ(caratheodory_subcones(gens({{1, 0}, {1, 1}, {0, 1}})),
            sorted({gens({{1, 0}, {1, 1}}), gens({{1, 0}, {0, 1}}), gens({{1, 1}, {0, 1}})}));
  EXPECT_EQ(caratheodory_subcones(gens({{1, 0}, {2, 0}, {0, 1}})),
            sorted({gens({{1, 0}, {0, 1}}), gens({{2, 0}, {0, 1}})}));
  EXPECT_EQ(caratheodory_subcones(gens({{2}})), std::vector<GeneratorSet>{gens({{2}})});
  EXPECT_THROW(caratheodory_subcones(GeneratorSet(1)), malformed_input);
}

TEST(CaratheodorySubcones, EverySubconeHasFullRank) {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    GeneratorSet v = random_generators(rng, 3, 5, -3, 3);
    const std::size_t d = rank(v);
    auto subs = caratheodory_subcones(v);
    EXPECT_FALSE(subs.empty());
    for (const auto& s : subs) {
      EXPECT_EQ(s.size(), d);
      EXPECT_EQ(rank(s), d);
      EXPECT_TRUE(s.is_subset_of(v));
    }
  }
}

namespace {

// cross product sign test for p in cone{u, w} in the plane, plus rays
bool planar_cone_contains(const GeneratorSet& v, const IntVector& p) {
  auto cross = [](const IntVector& x, const IntVector& y) { return x[0] * y[1] - x[1] * y[0]; };
  auto dot = [](const IntVector& x, const IntVector& y) { return x[0] * y[0] + x[1] * y[1]; };
  if (p.is_zero()) return true;
  for (const auto& u : v)
    if (cross(u, p) == 0 && dot(u, p) > 0) return true;
  for (const auto& u : v)
    for (const auto& w : v) {
      Integer c = cross(u, w);
      if (c == 0) continue;
      if (cross(u, p) * c >= 0 && cross(p, w) * c >= 0) return true;
    }
  return false;
}

}  // namespace

TEST(CaratheodorySubcones, RealConesCoverTheCone) {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    GeneratorSet v = random_generators(rng, 2, 4, -3, 3);
    auto subs = caratheodory_subcones(v);
    for (int i = 0; i < 200; ++i) {
      IntVector p{uniform_ll(rng, -6, 6), uniform_ll(rng, -6, 6)};
      bool covered = false;
      for (const auto& s : subs) covered = covered || cone_contains(s, p).has_value();
      EXPECT_EQ(covered, planar_cone_contains(v, p)) << v.to_string() << " " << p.to_string();
    }
  }
}

TEST(SumSemilinear, Examples) {
  SemilinearBasis p(2, {LinearBasis(IntVector{1, 0})});
  SemilinearBasis r(2, {LinearBasis(IntVector{0, 1})});
  EXPECT_EQ(sum_semilinear(p, r), SemilinearBasis(2, {LinearBasis(IntVector{1, 1})}));

  SemilinearBasis evens(1, {LinearBasis(IntVector{0}, gens({{2}}))});
  SemilinearBasis threes(1, {LinearBasis(IntVector{1}, gens({{3}}))});
  EXPECT_EQ(sum_semilinear(evens, threes),
            SemilinearBasis(1, {LinearBasis(IntVector{1}, gens({{2}, {3}}))}));

  SemilinearBasis empty(1);
  SemilinearBasis naturals(1, {LinearBasis(IntVector{0}, gens({{1}}))});
  EXPECT_TRUE(sum_semilinear(empty, naturals).empty());
  EXPECT_THROW(sum_semilinear(empty, p), malformed_input);
}

TEST(SumSemilinear, PointSemanticsOnABox) {
  Rng rng(6);
  auto random_basis = [&] {
    std::vector<LinearBasis> bs;
    const std::size_t n = uniform(rng, 1, 2);
    for (std::size_t i = 0; i < n; ++i) {
      IntVector off{uniform_ll(rng, 0, 3), uniform_ll(rng, 0, 3)};
      GeneratorSet g = uniform(rng, 0, 1) ? random_generators(rng, 2, 2, 0, 3) : GeneratorSet(2);
      bs.emplace_back(off, g.without_zero());
    }
    return SemilinearBasis(2, bs);
  };
  for (int trial = 0; trial < 25; ++trial) {
    SemilinearBasis b1 = random_basis(), b2 = random_basis();
    SemilinearBasis sum = sum_semilinear(b1, b2);
    Box small(2, 6), big(2, 12);
    PointSet p1 = oracle_semilinear_points(b1, small), p2 = oracle_semilinear_points(b2, small);
    PointSet ps = oracle_semilinear_points(sum, big);
    for (const auto& x : p1)
      for (const auto& y : p2) EXPECT_TRUE(ps.count(x + y)) << (x + y).to_string();
    for (const auto& z : oracle_semilinear_points(sum, small)) {
      bool split = false;
      for (const auto& x : p1) split = split || p2.count(z - x);
      EXPECT_TRUE(split) << z.to_string();
    }
  }
}
