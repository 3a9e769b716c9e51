#include <gtest/gtest.h>

#include <random>

#include "gowers/fourier_algebra.hpp"
#include "gowers/gowers_norm.hpp"
#include "gowers/spectral.hpp"
#include "oracles.hpp"

using namespace gowers;

namespace {

GroupFunction fn(const GroupSpec& g, std::vector<double> v) { return GroupFunction(g, std::move(v)); }

TEST(Dft, Examples) {
  const GroupSpec z4 = GroupSpec::cyclic(4);
  for (const Complex& z : dft(fn(z4, {1, 0, 0, 0})).coefficients) EXPECT_NEAR(std::abs(z - Complex(0.25)), 0, 1e-16);
  const Spectrum c = dft(GroupFunction::constant(z4, 2.5));
  EXPECT_NEAR(std::abs(c.coefficients[0] - 2.5), 0, 1e-15);
  for (Element xi = 1; xi < 4; ++xi) EXPECT_NEAR(std::abs(c.coefficients[xi]), 0, 1e-15);
  const Spectrum cs = dft(fn(z4, {1, 0, -1, 0}));
  const double expect[] = {0, 0.5, 0, 0.5};
  for (Element xi = 0; xi < 4; ++xi) EXPECT_NEAR(std::abs(cs.coefficients[xi] - expect[xi]), 0, 1e-15);
}

TEST(Dft, MatchesDirectTransform) {
  std::mt19937_64 rng(41);
  for (const std::vector<std::size_t>& orders :
       {std::vector<std::size_t>{1}, {2}, {8}, {64}, {12}, {7}, {2, 4}, {3, 5}, {2, 2, 3}}) {
    const GroupSpec g(orders);
    const auto v = oracle::random_vec(rng, g.order());
    const Spectrum s = dft(fn(g, v));
    const auto expect = oracle::dft(oracle::Group{orders}, v);
    for (Element xi = 0; xi < g.order(); ++xi) EXPECT_NEAR(std::abs(s.coefficients[xi] - expect[xi]), 0, 1e-13);
    const auto back = inverse_dft(s);
    for (Element x = 0; x < g.order(); ++x) EXPECT_NEAR(std::abs(back[x] - v[x]), 0, 1e-13);
    for (Element xi = 0; xi < g.order(); ++xi) {
      EXPECT_NEAR(std::abs(s.coefficients[g.neg(xi)] - std::conj(s.coefficients[xi])), 0, 1e-13);
      EXPECT_NEAR(std::abs(character(g, xi, 1 % g.order()) - oracle::character(oracle::Group{orders}, xi, 1 % g.order())),
                  0, 1e-14);
    }
  }
}

TEST(Dft, Parseval) {
  std::mt19937_64 rng(42);
  for (std::size_t n : {4u, 9u, 16u, 30u}) {
    const auto v = oracle::random_vec(rng, n);
    double energy = 0;
    for (const Complex& z : dft(fn(GroupSpec::cyclic(n), v)).coefficients) energy += std::norm(z);
    EXPECT_NEAR(energy, std::pow(oracle::lp(v, 2), 2), 1e-12);
  }
}

TEST(U2Spectral, Examples) {
  const GroupSpec z4 = GroupSpec::cyclic(4);
  EXPECT_NEAR(u2_norm_spectral(fn(z4, {1, 0, 0, 0})), std::pow(2.0, -1.5), 1e-15);
  EXPECT_NEAR(u2_norm_spectral(GroupFunction::constant(z4, -3)), 3, 1e-14);
  EXPECT_NEAR(u2_norm_spectral(fn(z4, {1, 0, -1, 0})), std::pow(8.0, -0.25), 1e-15);
}

TEST(U2Spectral, AgreesWithCubeEnumeration) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = std::size_t{4} << (i % 5);
    const auto v = oracle::random_vec(rng, n);
    const GroupFunction f = fn(GroupSpec::cyclic(n), v);
    EXPECT_NEAR(u2_norm_spectral(f), gowers_norm(f, 2), 1e-10);
    if (n <= 16) EXPECT_NEAR(u2_norm_spectral(f), oracle::gowers(oracle::cyclic(n), v, 2), 1e-10);
  }
}

TEST(U2DualSpectral, Examples) {
  const GroupSpec z4 = GroupSpec::cyclic(4);
  EXPECT_NEAR(u2_dual_norm_spectral(fn(z4, {1, 0, 0, 0})), std::pow(2.0, -0.5), 1e-15);
  EXPECT_NEAR(u2_dual_norm_spectral(GroupFunction::constant(z4, 0.4)), 0.4, 1e-15);
  EXPECT_NEAR(u2_dual_norm_spectral(fn(z4, {2, 0, 0, 0})), std::sqrt(2.0), 1e-14);
}

TEST(U2DualSpectral, IsSpectralL43) {
  std::mt19937_64 rng(44);
  for (std::size_t n : {5u, 8u, 12u}) {
    const auto v = oracle::random_vec(rng, n);
    EXPECT_NEAR(u2_dual_norm_spectral(fn(GroupSpec::cyclic(n), v)),
                oracle::spectral_lp(oracle::dft(oracle::cyclic(n), v), 4.0 / 3.0), 1e-13);
  }
}

TEST(A2Norm, Examples) {
  const GroupSpec z4 = GroupSpec::cyclic(4);
  EXPECT_NEAR(a2_norm(GroupFunction::constant(z4, -1.5)), 1.5, 1e-15);
  EXPECT_NEAR(a2_norm(fn(z4, {1, 0, 0, 0})), 1, 1e-15);
  EXPECT_NEAR(a2_norm(fn(z4, {1, 0, -1, 0})), 1, 1e-15);
}

TEST(A2Norm, Submultiplicative) {
  std::mt19937_64 rng(45);
  for (int i = 0; i < 200; ++i) {
    const GroupSpec g = GroupSpec::cyclic(2 + i % 31);
    const GroupFunction f = fn(g, oracle::random_vec(rng, g.order())), h = fn(g, oracle::random_vec(rng, g.order()));
    EXPECT_LE(a2_norm(f * h), a2_norm(f) * a2_norm(h) + 1e-10);
  }
}

TEST(CharacterDecomposition, CertificateEqualsA2Norm) {
  std::mt19937_64 rng(46);
  for (const std::vector<std::size_t>& orders : {std::vector<std::size_t>{1}, {2}, {5}, {8}, {2, 3}, {4, 4}}) {
    const GroupSpec g(orders);
    const GroupFunction f = fn(g, oracle::random_vec(rng, g.order()));
    const AdDecomposition D = character_decomposition(f);
    EXPECT_NEAR(ad_certificate_value(D), a2_norm(f), 1e-10);
    const GroupFunction back = materialize(D);
    for (Element x = 0; x < g.order(); ++x) EXPECT_NEAR(back[x], f[x], 1e-12);
  }
}

TEST(SpectralCubicBound, Examples) {
  const GroupSpec z4 = GroupSpec::cyclic(4);
  const GroupFunction one = GroupFunction::constant(z4, 1);
  SpectralCubicCheck s = spectral_cubic_bound_check(one, one, one);
  EXPECT_NEAR(s.lhs, 1, 1e-14);
  EXPECT_NEAR(s.rhs, 1, 1e-14);
  const GroupFunction delta = fn(z4, {1, 0, 0, 0});
  s = spectral_cubic_bound_check(delta, delta, delta);
  // brute force: g = D_2 delta, spectrum by direct sum
  const auto g = oracle::dual(oracle::cyclic(4), delta.vector(), 2);
  EXPECT_NEAR(s.lhs, oracle::spectral_power_sum(oracle::dft(oracle::cyclic(4), g), 2.0 / 3.0), 1e-14);
  EXPECT_NEAR(s.lhs, 0.25, 1e-14);
  EXPECT_NEAR(s.rhs, 0.25, 1e-14);
  EXPECT_TRUE(s.holds());
}

TEST(SpectralCubicBound, RandomTriples) {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 50; ++i) {
    const GroupSpec g = GroupSpec::cyclic(2 + i % 10);
    const auto a = oracle::random_vec(rng, g.order()), b = oracle::random_vec(rng, g.order()),
               c = oracle::random_vec(rng, g.order());
    const SpectralCubicCheck s = spectral_cubic_bound_check(fn(g, a), fn(g, b), fn(g, c));
    EXPECT_TRUE(s.holds()) << s.lhs << " " << s.rhs;
    EXPECT_LE(s.coefficient_defect, 1e-12);
    const auto conv = oracle::cubic_convolution(oracle::cyclic(g.order()), 2, {{1, a}, {2, b}, {3, c}});
    EXPECT_NEAR(s.lhs, oracle::spectral_power_sum(oracle::dft(oracle::cyclic(g.order()), conv), 2.0 / 3.0), 1e-10);
  }
}

}  // namespace
