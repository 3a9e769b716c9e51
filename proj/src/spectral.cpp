#include "gowers/spectral.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "gowers/cube.hpp"
#include "gowers/error.hpp"
#include "gowers/gowers_norm.hpp"
#include "gowers/numeric.hpp"

namespace gowers {

namespace {

void fft_radix2(std::vector<Complex>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        // twiddles computed directly rather than by recurrence, to keep error flat
        const Complex w(std::cos(ang * static_cast<double>(k)), std::sin(ang * static_cast<double>(k)));
        const Complex u = a[i + k];
        const Complex v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

void dft_direct_line(std::vector<Complex>& a, bool inverse) {
  const std::size_t n = a.size();
  std::vector<Complex> out(n);
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>((k * x) % n) / static_cast<double>(n);
      acc += a[x] * Complex(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  a = std::move(out);
}

void transform(const GroupSpec& g, std::vector<Complex>& values, bool inverse) {
  const auto& orders = g.orders();
  std::size_t stride = g.order();
  for (std::size_t n : orders) {
    stride /= n;
    if (n == 1) continue;
    const std::size_t block = stride * n;
    std::vector<Complex> line(n);
    for (std::size_t base = 0; base < values.size(); base += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        for (std::size_t i = 0; i < n; ++i) line[i] = values[base + off + i * stride];
        if (std::has_single_bit(n)) {
          fft_radix2(line, inverse);
        } else {
          dft_direct_line(line, inverse);
        }
        const double scale = inverse ? 1.0 : 1.0 / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) values[base + off + i * stride] = line[i] * scale;
      }
    }
  }
}

double spectrum_power_sum(const Spectrum& s, double p) {
  CompensatedSum acc;
  for (const Complex& c : s.coefficients) acc.add(std::pow(std::abs(c), p));
  return acc.value();
}

}  // namespace

Complex character(const GroupSpec& g, Element xi, Element x) {
  const auto a = g.digits(xi);
  const auto b = g.digits(x);
  double phase = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const std::size_t n = g.orders()[j];
    phase += static_cast<double>((a[j] * b[j]) % n) / static_cast<double>(n);
  }
  phase -= std::floor(phase);
  return std::polar(1.0, 2.0 * std::numbers::pi * phase);
}

Spectrum dft(const GroupSpec& g, std::vector<Complex> values) {
  if (values.size() != g.order()) throw InvalidParameter("transform input size does not match group order");
  transform(g, values, false);
  return Spectrum{g, std::move(values)};
}

Spectrum dft(const GroupFunction& f) {
  std::vector<Complex> values(f.values().begin(), f.values().end());
  return dft(f.group(), std::move(values));
}

std::vector<Complex> inverse_dft(const Spectrum& s) {
  if (s.coefficients.size() != s.group.order()) throw InvalidParameter("spectrum size does not match group order");
  std::vector<Complex> values = s.coefficients;
  transform(s.group, values, true);
  return values;
}

double u2_norm_spectral(const GroupFunction& f) {
  return std::pow(std::max(0.0, spectrum_power_sum(dft(f), 4.0)), 0.25);
}

double u2_dual_norm_spectral(const GroupFunction& g) {
  return std::pow(spectrum_power_sum(dft(g), 4.0 / 3.0), 0.75);
}

double a2_norm(const GroupFunction& g) { return spectrum_power_sum(dft(g), 1.0); }

SpectralCubicCheck spectral_cubic_bound_check(const GroupFunction& f01, const GroupFunction& f10,
                                              const GroupFunction& f11) {
  require_same_group(f01, f10);
  require_same_group(f01, f11);
  const GroupFunction g = cubic_convolution(2, VertexMap{{1, f01}, {2, f10}, {3, f11}});
  const Spectrum sg = dft(g);
  const Spectrum a = dft(f01);
  const Spectrum b = dft(f10);
  const Spectrum c = dft(f11);
  SpectralCubicCheck out;
  out.lhs = spectrum_power_sum(sg, 2.0 / 3.0);
  out.rhs = std::pow(lp_norm(f01, 2) * lp_norm(f10, 2) * lp_norm(f11, 2), 2.0 / 3.0);
  for (std::size_t xi = 0; xi < g.size(); ++xi) {
    const double expect = std::abs(a.coefficients[xi]) * std::abs(b.coefficients[xi]) * std::abs(c.coefficients[xi]);
    out.coefficient_defect = std::max(out.coefficient_defect, std::abs(std::abs(sg.coefficients[xi]) - expect));
  }
  return out;
}

}  // namespace gowers
