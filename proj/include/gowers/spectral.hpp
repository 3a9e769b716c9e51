#pragma once

// Exact d = 2 theory through the discrete Fourier transform. Characters of
// Z_{N1} x ... x Z_{Nk} are indexed like group elements:
// xi(x) = exp(2 pi i sum_j xi_j x_j / N_j).

#include <complex>
#include <vector>

#include "gowers/group.hpp"

namespace gowers {

using Complex = std::complex<double>;

struct Spectrum {
  GroupSpec group;
  /// hat f(xi) = E_x f(x) conj(xi(x)).
  std::vector<Complex> coefficients;
};

Complex character(const GroupSpec& g, Element xi, Element x);

/// Averaging-normalized transform; radix-2 per axis when the factor order is
/// a power of two, a direct per-axis sum otherwise.
Spectrum dft(const GroupFunction& f);
Spectrum dft(const GroupSpec& g, std::vector<Complex> values);
/// sum_xi c(xi) xi(x).
std::vector<Complex> inverse_dft(const Spectrum& s);

double u2_norm_spectral(const GroupFunction& f);
double u2_dual_norm_spectral(const GroupFunction& g);
double a2_norm(const GroupFunction& g);

struct SpectralCubicCheck {
  double lhs = 0.0;                // sum |hat g|^{2/3}
  double rhs = 0.0;                // prod ||f_eps||_2^{2/3}
  double coefficient_defect = 0.0; // max_xi | |hat g| - prod |hat f_eps| |
  bool holds() const { return lhs <= rhs + 1e-10 && coefficient_defect <= 1e-12; }
};

/// g = D_2(f01, f10, f11); hat g = hat f01 · hat f10 · conj(hat f11).
SpectralCubicCheck spectral_cubic_bound_check(const GroupFunction& f01, const GroupFunction& f10,
                                              const GroupFunction& f11);

}  // namespace gowers
