#pragma once

// Deterministic test-function generators.

#include <cstdint>
#include <optional>
#include <vector>

#include "gowers/group.hpp"

namespace gowers {

GroupFunction gen_indicator(const GroupSpec& g, const std::vector<Element>& subset);

/// f(n) = cos(2 pi p(n) / N) with p(n) = a_0 + a_1 n + ... evaluated mod N.
GroupFunction gen_polynomial_phase(const GroupSpec& g, const std::vector<std::int64_t>& coefficients);

struct TorusTerm {
  std::int64_t n = 0;
  double a = 0.0;  // cos(2 pi n theta)
  double b = 0.0;  // sin(2 pi n theta)
};

/// F(theta) = sum a cos(2 pi n theta) + b sin(2 pi n theta).
struct TorusFunctionSpec {
  std::vector<TorusTerm> terms;

  double operator()(double theta) const;
  /// sum_n |hat F(n)| after merging terms with the same |n|.
  double l1_mass() const;
};

struct TorusSequence {
  GroupFunction h;
  double bound = 0.0;  // ||hat F||_{l^1}
  bool embedding = false;  // alpha N is an integer
  double u2_dual = 0.0;
};

/// h(n) = F(n alpha mod 1) on Z_N. In the embedding case the spectrum of h is
/// a re-indexing of F's coefficients, so ||h||_{U(2)}* <= ||hat F||_{l^1} is
/// asserted (InternalError otherwise).
TorusSequence gen_torus_sequence(const TorusFunctionSpec& spec, double alpha, std::size_t N);

/// Values uniform in [-bound, bound]. With a low-pass width K only the
/// frequencies whose wrapped magnitude on every axis lies in [1, K] survive,
/// and the result is rescaled to sup norm `bound`.
GroupFunction gen_random(const GroupSpec& g, std::uint64_t seed, double bound = 1.0,
                         std::optional<std::size_t> low_pass = std::nullopt);

}  // namespace gowers
