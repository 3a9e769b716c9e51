#pragma once

// Structured decomposition of translates of phi = D_{d+1}(f_eps):
// phi(x + t) = sum_i 1_{X_i}(x) phi_i^{(t)}(x) + error, |error| <= rho(x),
// where each phi_i^{(t)} carries an A(d) certificate.

#include <string>
#include <vector>

#include "gowers/cube.hpp"
#include "gowers/fourier_algebra.hpp"
#include "gowers/group.hpp"
#include "gowers/regularity.hpp"

namespace gowers {

struct MainDecomposition {
  int d = 1;
  double delta = 0.0;
  double theta = 0.0;
  VertexMap fs;  // over V_{d+1} \ {0}
  Partition partition = Partition::trivial(GroupSpec());
  RectangleAverage rectangles;  // constants c_j of F_P
  GroupFunction rho;
  double f_error = 0.0;  // ||F - F_P||_{L^2(mu_d)}
  std::size_t m = 0;
  double C_bound = 0.0;  // m^{2^d - 1}
  std::vector<RegularityRound> history;
};

/// phi_i^{(t)}(x) = E_s c_{(i, cell(x + eps·s))} prod_{eps != 0} f_{eps0}(x + eps·s + t).
GroupFunction piece_values(const MainDecomposition& M, std::size_t i, Element t);

/// Certificate of phi_i^{(t)}: one term per rectangle with first cell i and
/// vertex functions 1_{A_{j_eps}} · (f_{eps0})_t, constant folded into vertex 1.
AdDecomposition piece_decomposition(const MainDecomposition& M, std::size_t i, Element t);

/// The largest theta on the grid delta^2/4 · 2^{-j} with
/// (C theta^c + theta)^{1/2} < delta.
double choose_theta(int d, double delta);

struct MainVerification {
  double rho_l2 = 0.0;
  double item1_slack = 0.0;        // delta - ||rho||_2
  double worst_piece_sup = 0.0;
  double item2_sup_slack = 0.0;    // 1 + tol - worst sup
  double worst_certificate = 0.0;
  double item2_cert_slack = 0.0;   // C_bound - worst certificate
  double worst_symbolic_gap = 0.0; // symbolic vs materialized pieces
  double item3_slack = 0.0;        // min over (x, t) of rho(x) + tol - |phi(x+t) - sum_i ...|
  double envelope_slack = 0.0;     // min of rho(x) - |Proj(G_t (F - F_P))(x)|
  double rho_vs_f_error = 0.0;     // ||F - F_P|| - ||rho||_2
  bool item1 = false;
  bool item2 = false;
  bool item3 = false;
  bool passed = false;
  std::vector<std::string> failures;
};

inline constexpr double kMainTolerance = 1e-8;

MainVerification verify_main(const MainDecomposition& M, const VertexMap& fs, double delta);

struct StructuredOptions {
  RegularizeOptions regularize;
  bool verify = true;
};

/// fs maps every mask of V_{d+1} \ {0} (bit d is the last coordinate) to a
/// function with ||f||_{2^d} <= 1.
MainDecomposition structured_decompose(const VertexMap& fs, int d, double delta, const StructuredOptions& opts = {});

}  // namespace gowers
