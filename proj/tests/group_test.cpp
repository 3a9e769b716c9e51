#include <gtest/gtest.h>

#include <random>

#include "gowers/error.hpp"
#include "gowers/group.hpp"
#include "oracles.hpp"

using namespace gowers;

namespace {

GroupFunction fn(const GroupSpec& g, std::vector<double> v) { return GroupFunction(g, std::move(v)); }

TEST(GroupSpec, RejectsZeroOrder) { EXPECT_THROW(GroupSpec({2, 0}), InvalidParameter); }

TEST(GroupSpec, AdditionMatchesComponentwiseOracle) {
  for (const std::vector<std::size_t>& orders : {std::vector<std::size_t>{7}, {2, 3}, {2, 2, 3}, {4, 1, 5}}) {
    const GroupSpec g(orders);
    const oracle::Group og{orders};
    ASSERT_EQ(g.order(), og.size());
    for (Element a = 0; a < g.order(); ++a) {
      EXPECT_EQ(g.neg(a), og.neg(a));
      EXPECT_EQ(g.add(a, g.neg(a)), 0u);
      EXPECT_EQ(g.from_digits(g.digits(a)), a);
      for (Element b = 0; b < g.order(); ++b) {
        EXPECT_EQ(g.add(a, b), og.add(a, b));
        EXPECT_EQ(g.add(a, b), g.add(b, a));
      }
    }
  }
}

TEST(GroupSpec, Associativity) {
  const GroupSpec g({3, 4});
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b)
      for (Element c = 0; c < g.order(); c += 5) EXPECT_EQ(g.add(g.add(a, b), c), g.add(a, g.add(b, c)));
}

TEST(GroupSpec, MultipleIsRepeatedAddition) {
  const GroupSpec g({4, 6});
  for (Element a = 0; a < g.order(); ++a) {
    Element acc = 0;
    for (std::uint64_t k = 0; k < 13; ++k) {
      EXPECT_EQ(g.multiple(k, a), acc);
      acc = g.add(acc, a);
    }
  }
}

TEST(GroupFunction, RejectsNonFiniteAndWrongSize) {
  const GroupSpec g = GroupSpec::cyclic(2);
  EXPECT_THROW(fn(g, {1.0, std::nan("")}), InvalidParameter);
  EXPECT_THROW(fn(g, {1.0, kInfinity}), InvalidParameter);
  EXPECT_THROW(fn(g, {1.0}), InvalidParameter);
}

TEST(LpNorm, Examples) {
  const GroupSpec z4 = GroupSpec::cyclic(4);
  EXPECT_DOUBLE_EQ(lp_norm(fn(z4, {1, 1, 1, 1}), 2), 1.0);
  EXPECT_DOUBLE_EQ(lp_norm(fn(z4, {1, 0, 0, 0}), 1), 0.25);
  EXPECT_DOUBLE_EQ(lp_norm(fn(z4, {1, 0, 0, 0}), 2), 0.5);
  EXPECT_DOUBLE_EQ(lp_norm(fn(z4, {1, -3, 0, 0}), kInfinity), 3.0);
  EXPECT_THROW(lp_norm(fn(z4, {1, 0, 0, 0}), 0.5), InvalidParameter);
}

TEST(LpNorm, MatchesOracle) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 1 + i % 17;
    const auto v = oracle::random_vec(rng, n, -2, 2);
    const GroupFunction f = fn(GroupSpec::cyclic(n), v);
    for (double p : {1.0, 1.5, 2.0, 3.0, 7.0, kInfinity}) EXPECT_NEAR(lp_norm(f, p), oracle::lp(v, p), 1e-13);
    EXPECT_NEAR(mean(f), oracle::mean(v), 1e-15);
  }
}

TEST(LpNorm, HomogeneityAndTriangle) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 200; ++i) {
    const GroupSpec g = GroupSpec::cyclic(2 + i % 13);
    const GroupFunction f = fn(g, oracle::random_vec(rng, g.order()));
    const GroupFunction h = fn(g, oracle::random_vec(rng, g.order()));
    const double s = u(rng);
    for (double p : {1.0, 2.0, 3.3, kInfinity}) {
      EXPECT_NEAR(lp_norm(s * f, p), std::abs(s) * lp_norm(f, p), 1e-12 * (1 + std::abs(s)));
      EXPECT_LE(lp_norm(f + h, p), lp_norm(f, p) + lp_norm(h, p) + 1e-12);
    }
  }
}

TEST(LpNorm, HolderAndMonotone) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(1.01, 8.0);
  for (int i = 0; i < 200; ++i) {
    const GroupSpec g = GroupSpec::cyclic(2 + i % 11);
    const GroupFunction f = fn(g, oracle::random_vec(rng, g.order()));
    const GroupFunction h = fn(g, oracle::random_vec(rng, g.order()));
    const double p = u(rng), q = p / (p - 1);
    EXPECT_LE(std::abs(inner(f, h)), lp_norm(f, p) * lp_norm(h, q) + 1e-12);
    const double p2 = p + u(rng);
    EXPECT_LE(lp_norm(f, p), lp_norm(f, p2) + 1e-12);
  }
}

TEST(Translate, Examples) {
  const GroupSpec z4 = GroupSpec::cyclic(4);
  EXPECT_EQ(translate(fn(z4, {1, 0, 0, 0}), 1).vector(), (std::vector<double>{0, 0, 0, 1}));
  const GroupFunction f = fn(z4, {1, 2, 3, 4});
  EXPECT_EQ(translate(f, 0).vector(), f.vector());
  EXPECT_EQ(translate(translate(f, 1), 1).vector(), (std::vector<double>{3, 4, 1, 2}));
}

TEST(Translate, MatchesOracleAndPreservesNorms) {
  std::mt19937_64 rng(14);
  const GroupSpec g({2, 3, 2});
  const oracle::Group og{{2, 3, 2}};
  for (Element t = 0; t < g.order(); ++t) {
    const auto v = oracle::random_vec(rng, g.order());
    const GroupFunction f = fn(g, v);
    EXPECT_EQ(translate(f, t).vector(), oracle::translate(og, v, t));
    for (double p : {1.0, 2.0, 5.0, kInfinity}) EXPECT_NEAR(lp_norm(translate(f, t), p), lp_norm(f, p), 1e-14);
  }
}

TEST(Inner, Examples) {
  const GroupSpec z4 = GroupSpec::cyclic(4);
  EXPECT_DOUBLE_EQ(inner(fn(z4, {1, 1, 1, 1}), fn(z4, {1, 1, 1, 1})), 1.0);
  EXPECT_DOUBLE_EQ(inner(fn(z4, {1, 0, 0, 0}), fn(z4, {0, 1, 0, 0})), 0.0);
  const GroupSpec z2 = GroupSpec::cyclic(2);
  EXPECT_DOUBLE_EQ(inner(fn(z2, {1, -1}), fn(z2, {1, 1})), 0.0);
  EXPECT_THROW(inner(fn(z2, {1, 1}), fn(z4, {1, 1, 1, 1})), DimensionMismatch);
}

TEST(Inner, MatchesOracle) {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = 1 + i;
    const auto a = oracle::random_vec(rng, n), b = oracle::random_vec(rng, n);
    EXPECT_NEAR(inner(fn(GroupSpec::cyclic(n), a), fn(GroupSpec::cyclic(n), b)), oracle::inner(a, b), 1e-15);
  }
}

}  // namespace
