#include "gowers/signals.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "gowers/error.hpp"
#include "gowers/numeric.hpp"
#include "gowers/spectral.hpp"

namespace gowers {

GroupFunction gen_indicator(const GroupSpec& g, const std::vector<Element>& subset) {
  std::vector<double> v(g.order(), 0.0);
  for (Element x : subset) {
    if (x >= g.order()) throw InvalidParameter("indicator element " + std::to_string(x) + " out of range");
    v[x] = 1.0;
  }
  return GroupFunction(g, std::move(v));
}

GroupFunction gen_polynomial_phase(const GroupSpec& g, const std::vector<std::int64_t>& coefficients) {
  if (g.rank() != 1) throw InvalidParameter("polynomial phases are defined on cyclic groups");
  const auto n = static_cast<std::int64_t>(g.order());
  if (n < 2) throw InvalidParameter("polynomial phase needs N >= 2");
  std::vector<double> v(g.order());
  for (std::int64_t x = 0; x < n; ++x) {
    std::int64_t acc = 0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {  // Horner mod N
      acc = ((acc * x) % n + (*it % n) + n) % n;
    }
    v[static_cast<std::size_t>(x)] = std::cos(2.0 * std::numbers::pi * static_cast<double>(acc) / static_cast<double>(n));
  }
  return GroupFunction(g, std::move(v));
}

double TorusFunctionSpec::operator()(double theta) const {
  double s = 0.0;
  for (const TorusTerm& t : terms) {
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(t.n) * theta;
    s += t.a * std::cos(ang) + t.b * std::sin(ang);
  }
  return s;
}

double TorusFunctionSpec::l1_mass() const {
  std::map<std::int64_t, std::pair<double, double>> merged;
  for (const TorusTerm& t : terms) {
    auto& [a, b] = merged[t.n < 0 ? -t.n : t.n];
    a += t.a;
    b += t.n < 0 ? -t.b : t.b;
  }
  double mass = 0.0;
  for (const auto& [n, ab] : merged) mass += n == 0 ? std::abs(ab.first) : std::hypot(ab.first, ab.second);
  return mass;
}

TorusSequence gen_torus_sequence(const TorusFunctionSpec& spec, double alpha, std::size_t N) {
  if (N < 2) throw InvalidParameter("torus sequence needs N >= 2");
  if (!std::isfinite(alpha)) throw InvalidParameter("alpha must be finite");
  const GroupSpec g = GroupSpec::cyclic(N);
  std::vector<double> v(N);
  const double scaled = alpha * static_cast<double>(N);
  const double p = std::round(scaled);
  TorusSequence out;
  out.embedding = std::abs(scaled - p) <= 1e-12 * std::max(1.0, std::abs(scaled));
  for (std::size_t n = 0; n < N; ++n) {
    double theta = 0.0;
    if (out.embedding) {
      // exact residue so that h is N-periodic to the last bit
      const auto pn = static_cast<std::int64_t>(p);
      const auto nn = static_cast<std::int64_t>(N);
      theta = static_cast<double>(((pn % nn + nn) % nn * static_cast<std::int64_t>(n)) % nn) / static_cast<double>(N);
    } else {
      theta = static_cast<double>(n) * alpha;
      theta -= std::floor(theta);
    }
    v[n] = spec(theta);
  }
  out.h = GroupFunction(g, std::move(v));
  out.bound = spec.l1_mass();
  out.u2_dual = u2_dual_norm_spectral(out.h);
  if (out.embedding && out.u2_dual > out.bound + 1e-10) {
    throw InternalError("embedded torus sequence exceeds its coefficient bound");
  }
  return out;
}

GroupFunction gen_random(const GroupSpec& g, std::uint64_t seed, double bound, std::optional<std::size_t> low_pass) {
  if (!(bound >= 0.0) || !std::isfinite(bound)) throw InvalidParameter("bound must be finite and nonnegative");
  std::mt19937_64 rng(seed);
  std::vector<double> v(g.order());
  for (double& x : v) x = bound * (2.0 * uniform01(rng) - 1.0);
  if (!low_pass || bound == 0.0) return GroupFunction(g, std::move(v));
  const std::size_t K = *low_pass;
  Spectrum s = dft(GroupFunction(g, v));
  for (Element xi = 0; xi < g.order(); ++xi) {
    const auto digits = g.digits(xi);
    std::size_t radius = 0;
    for (std::size_t j = 0; j < digits.size(); ++j) {
      radius = std::max(radius, std::min(digits[j], g.orders()[j] - digits[j]));
    }
    if (radius < 1 || radius > K) s.coefficients[xi] = 0.0;
  }
  const std::vector<Complex> back = inverse_dft(s);
  double top = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = back[i].real();
    top = std::max(top, std::abs(v[i]));
  }
  if (top > 0.0) {
    for (double& x : v) x *= bound / top;
  }
  return GroupFunction(g, std::move(v));
}

}  // namespace gowers
