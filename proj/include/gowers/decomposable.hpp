#pragma once

// Decomposable functions on the cube group: finite sums of vertex products
// F(x, t) = sum_j prod_{eps in V_d} f_{j,eps}(x + eps·t), with the diagonal
// action, the projection pi and the conditional expectation onto vertex 0.

#include <vector>

#include "gowers/cube.hpp"
#include "gowers/group.hpp"

namespace gowers {

struct DecomposableFunction {
  int d = 1;
  std::vector<VertexMap> terms;  // every term carries all 2^d masks
};

inline constexpr std::size_t kMaxDecomposableTerms = 1'000'000;

const GroupSpec& validate_decomposable(const DecomposableFunction& F);

CubeFunction materialize(const DecomposableFunction& F);

/// sum_j prod_eps ||f_{j,eps}||_{2^d}.
double dd_certificate_value(const DecomposableFunction& F);

/// (x, t) -> F(x + s, t).
CubeFunction diagonal_translate(const CubeFunction& F, Element s);

/// pi F(x, t) = E_s F(x + s, t).
CubeFunction diagonal_project(const CubeFunction& F);

/// Proj H(x) = E_t H(x, t).
GroupFunction proj_conditional(const CubeFunction& H);

/// True when F(x + s, t) = F(x, t) for every s within tol.
bool is_diagonally_invariant(const CubeFunction& F, double tol = 1e-10);

/// Decomposition of F · pi G with one term per (term_A, term_B, s in Z):
/// vertex functions f_eps · (g_eps)_s with weight 1/N. Without project_B the
/// second factor must already be diagonally invariant (InvalidParameter
/// otherwise), in which case the result represents F · G.
DecomposableFunction dd_product(const DecomposableFunction& A, const DecomposableFunction& B, bool project_B,
                                std::size_t max_terms = kMaxDecomposableTerms);

/// Pointwise product of two cube functions on the same group and dimension.
CubeFunction operator*(const CubeFunction& a, const CubeFunction& b);
CubeFunction operator-(const CubeFunction& a, const CubeFunction& b);

}  // namespace gowers
