#include <gtest/gtest.h>

#include <numbers>

#include "gowers/error.hpp"
#include "gowers/gowers_norm.hpp"
#include "gowers/signals.hpp"
#include "gowers/spectral.hpp"
#include "oracles.hpp"

using namespace gowers;

namespace {

TEST(Indicator, ValuesAndRange) {
  const GroupSpec g = GroupSpec::cyclic(6);
  EXPECT_EQ(gen_indicator(g, {1, 4}).vector(), (std::vector<double>{0, 1, 0, 0, 1, 0}));
  EXPECT_EQ(gen_indicator(g, {}).vector(), std::vector<double>(6, 0.0));
  EXPECT_THROW(gen_indicator(g, {6}), InvalidParameter);
}

TEST(PolynomialPhase, Examples) {
  const GroupFunction zero = gen_polynomial_phase(GroupSpec::cyclic(5), {0});
  for (double x : zero.vector()) EXPECT_NEAR(x, 1, 1e-15);
  const GroupFunction lin = gen_polynomial_phase(GroupSpec::cyclic(4), {0, 1});
  const double expect[] = {1, 0, -1, 0};
  for (Element x = 0; x < 4; ++x) EXPECT_NEAR(lin[x], expect[x], 1e-15);
  const GroupFunction quad = gen_polynomial_phase(GroupSpec::cyclic(8), {0, 0, 1});
  EXPECT_GE(gowers_norm(quad, 3), gowers_norm(quad, 2) - 1e-12);
}

TEST(PolynomialPhase, MatchesDirectEvaluation) {
  const std::size_t N = 13;
  const std::vector<std::int64_t> c{3, -7, 5, 11};
  const GroupFunction f = gen_polynomial_phase(GroupSpec::cyclic(N), c);
  for (std::int64_t n = 0; n < static_cast<std::int64_t>(N); ++n) {
    std::int64_t p = c[0] + c[1] * n + c[2] * n * n + c[3] * n * n * n;
    p = ((p % 13) + 13) % 13;
    EXPECT_NEAR(f[n], std::cos(2 * std::numbers::pi * p / 13.0), 1e-12);
  }
  EXPECT_THROW(gen_polynomial_phase(GroupSpec({2, 2}), {1}), InvalidParameter);
}

TEST(PolynomialPhase, LargeCoefficientsStayExact) {
  const GroupFunction f = gen_polynomial_phase(GroupSpec::cyclic(7), {0, 7'000'000'000'000'000'001LL});
  const GroupFunction g = gen_polynomial_phase(GroupSpec::cyclic(7), {0, 1});
  for (Element x = 0; x < 7; ++x) EXPECT_NEAR(f[x], g[x], 1e-14);
}

TEST(Torus, Constant) {
  TorusFunctionSpec spec{{{0, 0.7, 0.0}}};
  const TorusSequence s = gen_torus_sequence(spec, 0.25, 8);
  for (double x : s.h.vector()) EXPECT_NEAR(x, 0.7, 1e-15);
  EXPECT_NEAR(s.bound, 0.7, 1e-15);
  EXPECT_NEAR(s.u2_dual, 0.7, 1e-14);
  EXPECT_TRUE(s.embedding);
}

TEST(Torus, CosineEmbedding) {
  TorusFunctionSpec spec{{{1, 1.0, 0.0}}};
  const TorusSequence s = gen_torus_sequence(spec, 1.0 / 16, 16);
  for (Element n = 0; n < 16; ++n) EXPECT_NEAR(s.h[n], std::cos(2 * std::numbers::pi * n / 16), 1e-14);
  // two frequencies of weight 1/2
  EXPECT_NEAR(s.u2_dual, std::pow(2 * std::pow(0.5, 4.0 / 3), 0.75), 1e-12);
  EXPECT_LE(s.u2_dual, s.bound + 1e-12);
  EXPECT_NEAR(s.bound, 1.0, 1e-15);
}

TEST(Torus, IrrationalRotationGeneratesOnly) {
  TorusFunctionSpec spec{{{1, 1.0, 0.0}}};
  const double alpha = 1 / std::sqrt(2.0);
  const TorusSequence s = gen_torus_sequence(spec, alpha, 16);
  EXPECT_FALSE(s.embedding);
  for (Element n = 0; n < 16; ++n) {
    const double theta = std::fmod(n * alpha, 1.0);
    EXPECT_NEAR(s.h[n], std::cos(2 * std::numbers::pi * theta), 1e-12);
  }
}

TEST(Torus, L1MassMergesOppositeFrequencies) {
  TorusFunctionSpec spec{{{2, 1.0, 0.0}, {-2, 1.0, 0.0}, {3, 0.0, -0.5}}};
  // cos(4 pi t) + cos(-4 pi t) = 2 cos(4 pi t): mass 2; -0.5 sin(6 pi t): mass 0.5
  EXPECT_NEAR(spec.l1_mass(), 2.5, 1e-15);
  EXPECT_NEAR(spec(0.1), 2 * std::cos(0.4 * std::numbers::pi) - 0.5 * std::sin(0.6 * std::numbers::pi), 1e-14);
}

TEST(Torus, RandomEmbeddingsRespectBound) {
  std::mt19937_64 rng(111);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 30; ++i) {
    TorusFunctionSpec spec;
    for (int j = 0; j < 4; ++j) spec.terms.push_back({static_cast<std::int64_t>(rng() % 9) - 4, u(rng), u(rng)});
    const std::size_t N = 5 + rng() % 20;
    const TorusSequence s = gen_torus_sequence(spec, static_cast<double>(1 + rng() % (N - 1)) / N, N);
    EXPECT_TRUE(s.embedding);
    const double dual = oracle::spectral_lp(oracle::dft(oracle::cyclic(N), s.h.vector()), 4.0 / 3.0);
    EXPECT_NEAR(s.u2_dual, dual, 1e-12);
    EXPECT_LE(dual, s.bound + 1e-10);
  }
}

TEST(Random, DeterministicAndBounded) {
  const GroupSpec g({3, 4});
  EXPECT_EQ(gen_random(g, 5).vector(), gen_random(g, 5).vector());
  EXPECT_NE(gen_random(g, 5).vector(), gen_random(g, 6).vector());
  EXPECT_LE(lp_norm(gen_random(g, 5, 0.3), kInfinity), 0.3);
}

TEST(Random, LowPassSupport) {
  const GroupSpec g = GroupSpec::cyclic(32);
  const GroupFunction f = gen_random(g, 9, 0.8, 3);
  EXPECT_NEAR(lp_norm(f, kInfinity), 0.8, 1e-12);
  const auto s = oracle::dft(oracle::cyclic(32), f.vector());
  for (std::size_t xi = 0; xi < 32; ++xi) {
    const std::size_t wrapped = std::min(xi, 32 - xi);
    if (wrapped < 1 || wrapped > 3) EXPECT_NEAR(std::abs(s[xi]), 0, 1e-12) << xi;
  }
}

}  // namespace
