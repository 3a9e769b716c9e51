#pragma once

#include <vector>

#include "gowers/cube.hpp"
#include "gowers/group.hpp"

namespace gowers {

enum class NormMethod { kClosedFormula, kInductive };

/// ||f||_{U(d)}^{2^d}. Small negative accumulations (>= -1e-12) of the closed
/// formula are clamped to 0; anything below raises NumericalConsistency.
double gowers_norm_power(const GroupFunction& f, int d, NormMethod method = NormMethod::kInductive);

/// ||f||_{U(d)}. The inductive method recurses on f·f_t and costs O(N^d);
/// the closed formula enumerates all N^{d+1} cubes.
double gowers_norm(const GroupFunction& f, int d, NormMethod method = NormMethod::kInductive);

/// D_d f(x) = E_t prod_{eps != 0} f(x + eps·t).
GroupFunction dual_function(const GroupFunction& f, int d);

/// Cubic convolution product of a family indexed by V_d \ {0}.
GroupFunction cubic_convolution(int d, const VertexMap& fs);

/// Matrix J[x][y] = d(D_d f)(x) / d f(y), row-major N x N.
std::vector<double> dual_function_jacobian(const GroupFunction& f, int d);

struct ElementaryBoundsRow {
  int d = 0;
  double u_norm = 0.0;            // ||f||_{U(d)}
  double lp_half = 0.0;           // ||f||_{2^{d-1}}
  double lp_sharp = 0.0;          // ||f||_{2^d/(d+1)}
  double dual_sup = 0.0;          // ||D_d f||_inf
  double dual_sup_bound = 0.0;    // ||f||_{2^{d-1}}^{2^d-1}
  double dual_sup_sharp = 0.0;    // ||f||_{(2^d-1)/d}^{2^d-1}
  bool u_le_lp = false;           // U(d) <= L^{2^{d-1}}
  bool u_le_sharp = false;        // U(d) <= L^{2^d/(d+1)}, reported only
  bool dual_le_bound = false;     // sup bound on D_d f
  bool dual_le_sharp = false;     // sharp sup bound, reported only
  bool monotone = true;           // U(d) >= U(d-1)
};

/// Rows for d = 1..d_max. Flags use a slack of 1e-10. The sharp variants are
/// empirical: a violation is a finding, not a library defect.
std::vector<ElementaryBoundsRow> elementary_bounds_report(const GroupFunction& f, int d_max);

}  // namespace gowers
