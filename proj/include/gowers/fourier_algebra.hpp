#pragma once

// Certificates for the order-d Fourier algebra A(d): finite sums of cubic
// convolution products whose norm products bound the A(d) norm from above.

#include <cstddef>
#include <vector>

#include "gowers/cube.hpp"
#include "gowers/group.hpp"

namespace gowers {

/// One cubic convolution term over V_d \ {0}.
///
/// A real term materializes to D_d(f_eps). A conjugate pair carries complex
/// vertex functions F_eps = re_eps + i im_eps and materializes to
/// 2 Re D_d(F_eps) = D_d(F_eps) + D_d(conj F_eps), which is how real functions
/// get certificates built from non-real characters.
struct AdTerm {
  VertexMap re;
  VertexMap im;  // only read for conjugate pairs; missing masks are 0
  bool conjugate_pair = false;
};

struct AdDecomposition {
  int d = 1;
  std::vector<AdTerm> terms;
};

inline constexpr std::size_t kMaxAdTerms = 1'000'000;

/// Throws unless every term has one function per nonzero vertex on a single group.
const GroupSpec& validate_decomposition(const AdDecomposition& D);

GroupFunction materialize(const AdDecomposition& D);
/// Contribution of a single term.
GroupFunction materialize_term(const AdTerm& term, int d);

/// sum_j prod_eps ||f_{j,eps}||_{2^{d-1}}; conjugate pairs count twice with
/// the modulus |F_eps| in place of f_eps.
double ad_certificate_value(const AdDecomposition& D);
double ad_term_value(const AdTerm& term, int d);

/// Decomposition of the pointwise product: one term per (term_A, term_B, u)
/// with u in Z^d, vertex functions f_eps · (f'_eps)_{eps·u}, weight 1/N^d.
AdDecomposition ad_product(const AdDecomposition& A, const AdDecomposition& B,
                           std::size_t max_terms = kMaxAdTerms);

struct PairingCheck {
  double lhs = 0.0;  // |<materialize(D); h>|
  double rhs = 0.0;  // certificate · ||h||_{U(d)}
  bool holds(double slack = 1e-10) const { return lhs <= rhs + slack; }
};

PairingCheck ad_pairing_bound_check(const AdDecomposition& D, const GroupFunction& h);

/// The d = 2 character decomposition g = sum_xi hat g(xi) D_2(xi, xi, conj xi):
/// one real term for each self-conjugate frequency and one conjugate pair for
/// each {xi, -xi}. Its certificate equals a2_norm(g).
AdDecomposition character_decomposition(const GroupFunction& g);

/// Single real term with every vertex function equal to the constant c
/// (weight folded into the first vertex).
AdDecomposition constant_decomposition(const GroupSpec& g, int d, double c);

}  // namespace gowers
