#pragma once

// Brute-force reference implementations. Nothing here calls library kernels:
// group arithmetic, cube enumeration and transforms are redone by hand.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

struct Group {
  std::vector<std::size_t> orders;

  std::size_t size() const {
    std::size_t n = 1;
    for (auto o : orders) n *= o;
    return n;
  }
  std::vector<std::size_t> digits(std::size_t a) const {
    std::vector<std::size_t> d(orders.size());
    for (std::size_t i = orders.size(); i-- > 0;) {
      d[i] = a % orders[i];
      a /= orders[i];
    }
    return d;
  }
  std::size_t index(const std::vector<std::size_t>& d) const {
    std::size_t a = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) a = a * orders[i] + d[i];
    return a;
  }
  std::size_t add(std::size_t a, std::size_t b) const {
    auto x = digits(a), y = digits(b);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = (x[i] + y[i]) % orders[i];
    return index(x);
  }
  std::size_t neg(std::size_t a) const {
    auto x = digits(a);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = (orders[i] - x[i]) % orders[i];
    return index(x);
  }
};

inline Group cyclic(std::size_t n) { return Group{{n}}; }

inline Vec random_vec(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vec v(n);
  for (double& x : v) x = u(rng);
  return v;
}

inline double mean(const Vec& v) {
  long double s = 0;
  for (double x : v) s += x;
  return static_cast<double>(s / v.size());
}

inline double lp(const Vec& v, double p) {
  if (std::isinf(p)) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  long double s = 0;
  for (double x : v) s += std::pow(std::abs(static_cast<long double>(x)), p);
  return static_cast<double>(std::pow(s / v.size(), 1.0L / p));
}

inline double inner(const Vec& a, const Vec& b) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long double>(a[i]) * b[i];
  return static_cast<double>(s / a.size());
}

/// Calls visit(x, t, coords) for every (x, t_1..t_d); coords[eps] = x + eps·t.
inline void enumerate_cube(const Group& g, int d, const std::function<void(const std::vector<std::size_t>&)>& visit) {
  const std::size_t n = g.size();
  const std::size_t V = std::size_t{1} << d;
  std::vector<std::size_t> params(d + 1, 0);
  std::vector<std::size_t> coords(V);
  while (true) {
    for (std::size_t e = 0; e < V; ++e) {
      std::size_t y = params[0];
      for (int i = 0; i < d; ++i) {
        if (e >> i & 1) y = g.add(y, params[i + 1]);
      }
      coords[e] = y;
    }
    visit(coords);
    int k = d;
    while (k >= 0 && ++params[k] == n) params[k--] = 0;
    if (k < 0) break;
  }
}

/// E prod_eps fs[eps](x + eps·t); a missing entry stands for 1.
inline double cube_average(const Group& g, int d, const std::map<unsigned, Vec>& fs) {
  long double s = 0;
  std::size_t count = 0;
  enumerate_cube(g, d, [&](const std::vector<std::size_t>& c) {
    long double prod = 1;
    for (const auto& [e, f] : fs) prod *= f[c[e]];
    s += prod;
    ++count;
  });
  return static_cast<double>(s / count);
}

inline double gowers_power(const Group& g, const Vec& f, int d) {
  std::map<unsigned, Vec> fs;
  for (unsigned e = 0; e < (1u << d); ++e) fs[e] = f;
  return cube_average(g, d, fs);
}

inline double gowers(const Group& g, const Vec& f, int d) {
  return std::pow(std::max(0.0, gowers_power(g, f, d)), 1.0 / std::pow(2.0, d));
}

/// x -> E_t prod_{eps != 0} fs[eps](x + eps·t).
inline Vec cubic_convolution(const Group& g, int d, const std::map<unsigned, Vec>& fs) {
  const std::size_t n = g.size();
  Vec out(n, 0.0);
  std::vector<long double> acc(n, 0.0L);
  enumerate_cube(g, d, [&](const std::vector<std::size_t>& c) {
    long double prod = 1;
    for (const auto& [e, f] : fs) {
      if (e != 0) prod *= f[c[e]];
    }
    acc[c[0]] += prod;
  });
  const double per_x = std::pow(static_cast<double>(n), d);
  for (std::size_t x = 0; x < n; ++x) out[x] = static_cast<double>(acc[x] / per_x);
  return out;
}

inline Vec dual(const Group& g, const Vec& f, int d) {
  std::map<unsigned, Vec> fs;
  for (unsigned e = 1; e < (1u << d); ++e) fs[e] = f;
  return cubic_convolution(g, d, fs);
}

using C = std::complex<double>;

inline C character(const Group& g, std::size_t xi, std::size_t x) {
  const auto a = g.digits(xi), b = g.digits(x);
  double phase = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    phase += static_cast<double>((a[i] * b[i]) % g.orders[i]) / static_cast<double>(g.orders[i]);
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * phase);
}

/// hat f(xi) = E_x f(x) conj(xi(x)).
inline std::vector<C> dft(const Group& g, const Vec& f) {
  const std::size_t n = g.size();
  std::vector<C> out(n);
  for (std::size_t xi = 0; xi < n; ++xi) {
    C s = 0;
    for (std::size_t x = 0; x < n; ++x) s += f[x] * std::conj(character(g, xi, x));
    out[xi] = s / static_cast<double>(n);
  }
  return out;
}

inline double spectral_lp(const std::vector<C>& s, double p) {
  double acc = 0;
  for (const C& z : s) acc += std::pow(std::abs(z), p);
  return std::pow(acc, 1.0 / p);
}

inline double spectral_power_sum(const std::vector<C>& s, double p) {
  double acc = 0;
  for (const C& z : s) acc += std::pow(std::abs(z), p);
  return acc;
}

inline Vec translate(const Group& g, const Vec& f, std::size_t t) {
  Vec out(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) out[x] = f[g.add(x, t)];
  return out;
}

}  // namespace oracle
