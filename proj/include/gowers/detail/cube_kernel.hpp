#pragma once

// Enumeration kernels over the parametrized cube group: a point of Z_d is
// (x + eps·t : eps in V_d) for (x, t_1..t_d) in Z^{d+1}. Vertex eps is encoded
// as a bit mask whose bit (i-1) is eps_i.

#include <array>
#include <complex>
#include <cstddef>

#include "gowers/group.hpp"
#include "gowers/numeric.hpp"

namespace gowers::detail {

inline constexpr int kMaxCubeDim = 4;

template <typename T>
class Accumulator;

template <>
class Accumulator<double> {
 public:
  void add(double v) { s_.add(v); }
  double value() const { return s_.value(); }

 private:
  CompensatedSum s_;
};

template <>
class Accumulator<std::complex<double>> {
 public:
  void add(std::complex<double> v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

/// E_{t in Z^d} prod_{eps} f_eps(x + eps·t) at a fixed x. fv has 2^d entries;
/// a null entry stands for the constant 1. The vertex-0 factor is included.
template <typename T>
class CubeAverager {
 public:
  CubeAverager(const GroupSpec& g, int d, const T* const* fv) : g_(g), d_(d), fv_(fv), n_(g.order()) {}

  T at(Element x) {
    pos_[0] = x;
    const T base = fv_[0] != nullptr ? fv_[0][x] : T(1);
    if (base == T(0)) return T(0);
    return base * level(0);
  }

 private:
  T level(int j) {
    if (j == d_ || j >= kMaxCubeDim) return T(1);
    const std::size_t half = std::size_t{1} << j;
    Accumulator<T> acc;
    for (Element t = 0; t < n_; ++t) {
      T factor(1);
      for (std::size_t e = 0; e < half; ++e) {
        const Element p = g_.add(pos_[e], t);
        pos_[e | half] = p;
        if (const T* f = fv_[e | half]) factor *= f[p];
      }
      if (factor == T(0)) continue;
      acc.add(factor * level(j + 1));
    }
    return acc.value() / static_cast<double>(n_);
  }

  const GroupSpec& g_;
  int d_;
  const T* const* fv_;
  std::size_t n_;
  std::array<Element, std::size_t{1} << kMaxCubeDim> pos_{};
};

/// Visits every parameter (x, t_1..t_d) in row-major order, passing the
/// running parameter index and the 2^d vertex coordinates.
template <typename Visit>
void for_each_cube(const GroupSpec& g, int d, Visit&& visit) {
  std::array<Element, std::size_t{1} << kMaxCubeDim> pos{};
  std::size_t index = 0;
  const std::size_t n = g.order();
  auto rec = [&](auto&& self, int j) -> void {
    if (j == d) {
      visit(index++, static_cast<const Element*>(pos.data()));
      return;
    }
    const std::size_t half = std::size_t{1} << j;
    for (Element t = 0; t < n; ++t) {
      for (std::size_t e = 0; e < half; ++e) pos[e | half] = g.add(pos[e], t);
      self(self, j + 1);
    }
  };
  for (Element x = 0; x < n; ++x) {
    pos[0] = x;
    rec(rec, 0);
  }
}

/// Same enumeration restricted to a single base point x; indices run over
/// the N^d values of t.
template <typename Visit>
void for_each_cube_at(const GroupSpec& g, int d, Element x, Visit&& visit) {
  std::array<Element, std::size_t{1} << kMaxCubeDim> pos{};
  std::size_t index = 0;
  const std::size_t n = g.order();
  pos[0] = x;
  auto rec = [&](auto&& self, int j) -> void {
    if (j == d) {
      visit(index++, static_cast<const Element*>(pos.data()));
      return;
    }
    const std::size_t half = std::size_t{1} << j;
    for (Element t = 0; t < n; ++t) {
      for (std::size_t e = 0; e < half; ++e) pos[e | half] = g.add(pos[e], t);
      self(self, j + 1);
    }
  };
  rec(rec, 0);
}

}  // namespace gowers::detail
