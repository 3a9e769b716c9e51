#pragma once

// Anti-uniform (dual) norms, the regularized norm of the k-decomposition and
// the decomposition solvers built on it.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gowers/group.hpp"

namespace gowers {

struct DualNormOptions {
  int restarts = 8;
  double tol = 1e-9;
  int max_iterations = 200;  // per ascent restart
  int newton_iterations = 100;
  std::uint64_t seed = 1;
};

struct DualNormResult {
  double value = 0.0;  // <g; witness>, a lower bound on ||g||_{U(d)}*
  GroupFunction witness;
  /// Rigorous upper bound from the stationary point f* of
  /// ||f||^{2^d}/2^d - <g; f>: ||f*||^{2^d-1} + N^{1/4} ||g - D_d f*||_2.
  std::optional<double> certificate_upper;
  int iterations = 0;
  double stationarity_residual = 0.0;  // ||g - value · D_d(witness)||_2
  bool converged = false;
  bool unbounded = false;  // d = 1 and g not constant
};

/// Ratio ascent on <g; f>/||f||_{U(d)} with restarts, polished by Newton's
/// method on the convex problem min ||f||^{2^d}/2^d - <g; f>.
DualNormResult dual_norm(const GroupFunction& g, int d, const DualNormOptions& opts = {});

/// (||f||_{U(d)}^{2^k} + delta^{2^k} ||f||_{2^k}^{2^k})^{1/2^k} for k >= d and
/// (||f||_{U(d)}^{2^d} + delta^{2^d} ||f||_{2^{d-1}}^{2^d})^{1/2^d} for k = d-1.
double nnorm(const GroupFunction& f, int d, int k, double delta);

struct ThkOptions {
  int max_iterations = 200;
  double tol = 1e-12;  // gradient norm target
};

struct ThkResult {
  GroupFunction f;
  GroupFunction h;
  int d = 0;
  int k = 0;
  double delta = 0.0;
  double c = 0.0;         // dual value of the regularized norm at g
  double residual = 0.0;  // ||g - D_d f - h||_2
  int iterations = 0;
  bool converged = false;
  // diagnostics for the guaranteed bounds
  double f_u_norm = 0.0;     // ||f||_{U(d)}
  double f_lp_norm = 0.0;    // ||f||_{2^k}
  double h_dual_lp = 0.0;    // ||h||_{2^k/(2^k-1)}
  double f_sup = 0.0;
  double h_l1 = 0.0;
};

/// g = D_d f + h with ||f||_{U(d)} <= 1, ||f||_{2^k} <= 1/delta and
/// ||h||_{2^k/(2^k-1)} <= delta whenever ||g||_{U(d)}* <= 1.
ThkResult thk_decompose(const GroupFunction& g, int d, int k, double delta, const ThkOptions& opts = {});

struct ThborneResult {
  ThkResult result;
  std::vector<int> schedule_run;
  bool stabilized = false;
  bool flagged = false;
  std::string note;
};

/// Runs thk_decompose along k = d, d+2, ... (or the given schedule, k <= 16)
/// until ||f_k||_inf stabilizes within 1e-6 or already meets 1/delta.
ThborneResult thborne_decompose(const GroupFunction& g, int d, double delta, std::vector<int> k_schedule = {},
                                const ThkOptions& opts = {});

struct ConvexHullReport {
  double dual_norm_value = 0.0;
  bool precondition_met = false;
  std::vector<double> errors;  // ||g - x_i||_2 after iteration i
  GroupFunction approximation;
  int atoms = 0;
};

/// Frank-Wolfe approximation of g by convex combinations of D_d f,
/// ||f||_{U(d)} <= 1. The first atom is D_d of the dual-norm witness; later
/// atoms use the exact oracle D_d(r/||r||_{U(d)}) for the residual r.
ConvexHullReport convex_hull_probe(const GroupFunction& g, int d, int samples, const DualNormOptions& opts = {});

}  // namespace gowers
