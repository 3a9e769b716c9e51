#include "gowers/verify_suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "gowers/anti_uniform.hpp"
#include "gowers/cube.hpp"
#include "gowers/decomposable.hpp"
#include "gowers/error.hpp"
#include "gowers/fourier_algebra.hpp"
#include "gowers/gowers_norm.hpp"
#include "gowers/numeric.hpp"
#include "gowers/regularity.hpp"
#include "gowers/signals.hpp"
#include "gowers/spectral.hpp"
#include "gowers/structured.hpp"

namespace gowers {

namespace {

class Ctx {
 public:
  Ctx(bool full, std::uint64_t seed, bool fault) : full_(full), rng_(seed), fault_(fault) {}

  bool full() const { return full_; }
  int count(int quick, int full) const { return full_ ? full : quick; }
  std::mt19937_64& rng() { return rng_; }

  void le(double lhs, double rhs, double tol) {
    if (fault_) {
      lhs += 1.0;
      fault_ = false;
    }
    const double slack = rhs + tol - lhs;
    if (!(slack >= 0.0)) ++failed_;
    if (!(slack >= worst_)) worst_ = std::isnan(slack) ? -std::numeric_limits<double>::infinity() : slack;
  }
  void close(double a, double b, double tol) { le(std::abs(a - b), 0.0, tol); }
  void truth(bool ok) { le(ok ? 0.0 : 1.0, 0.0, 0.0); }
  void next_case() { ++cases_; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(rng_); }
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(uniform01(rng_) * static_cast<double>(n)) % n; }

  GroupFunction random_function(const GroupSpec& g, double lo = -1.0, double hi = 1.0) {
    std::vector<double> v(g.order());
    for (double& x : v) x = uniform(lo, hi);
    return GroupFunction(g, std::move(v));
  }
  VertexMap random_family(const GroupSpec& g, int d, bool with_zero, double lo = -1.0, double hi = 1.0) {
    VertexMap fs;
    for (VertexMask e = with_zero ? 0 : 1; e < vertex_count(d); ++e) fs.emplace(e, random_function(g, lo, hi));
    return fs;
  }

  std::string detail;
  SuiteEntry finish(std::string name) const {
    SuiteEntry e;
    e.name = std::move(name);
    e.cases = cases_;
    e.worst_slack = worst_ == std::numeric_limits<double>::infinity() ? 0.0 : worst_;
    e.passed = failed_ == 0;
    e.detail = detail;
    return e;
  }

 private:
  bool full_;
  std::mt19937_64 rng_;
  bool fault_;
  std::size_t cases_ = 0;
  std::size_t failed_ = 0;
  double worst_ = std::numeric_limits<double>::infinity();
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

GroupSpec cyc(std::size_t n) { return GroupSpec::cyclic(n); }

double rel_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

// --- group_core -----------------------------------------------------------

void lp_axioms(Ctx& c) {
  const double ps[] = {1.0, 1.5, 2.0, 3.0, 4.0, kInfinity};
  for (int i = 0; i < c.count(50, 300); ++i) {
    const GroupSpec g = cyc(2 + c.pick(15));
    const GroupFunction f = c.random_function(g), h = c.random_function(g);
    const double s = c.uniform(-3, 3);
    for (double p : ps) {
      c.close(lp_norm(s * f, p), std::abs(s) * lp_norm(f, p), 1e-12 * (1 + std::abs(s)));
      c.le(lp_norm(f + h, p), lp_norm(f, p) + lp_norm(h, p), 1e-12);
    }
    c.next_case();
  }
}

void holder(Ctx& c) {
  for (int i = 0; i < c.count(50, 300); ++i) {
    const GroupSpec g = cyc(2 + c.pick(15));
    const GroupFunction f = c.random_function(g), h = c.random_function(g);
    const double p = c.uniform(1.05, 6.0);
    const double q = p / (p - 1.0);
    c.le(std::abs(inner(f, h)), lp_norm(f, p) * lp_norm(h, q), 1e-12);
    c.le(std::abs(inner(f, h)), lp_norm(f, 1) * lp_norm(h, kInfinity), 1e-12);
    c.next_case();
  }
}

void lp_monotone(Ctx& c) {
  for (int i = 0; i < c.count(50, 300); ++i) {
    const GroupFunction f = c.random_function(cyc(2 + c.pick(15)));
    const double p = c.uniform(1.0, 5.0);
    const double p2 = p + c.uniform(0.0, 5.0);
    c.le(lp_norm(f, p), lp_norm(f, p2), 1e-12);
    c.le(lp_norm(f, p2), lp_norm(f, kInfinity), 1e-12);
    c.next_case();
  }
}

void translate_lp(Ctx& c) {
  for (int i = 0; i < c.count(50, 300); ++i) {
    const GroupSpec g = i % 2 == 0 ? cyc(2 + c.pick(15)) : GroupSpec({2, 3, 2});
    const GroupFunction f = c.random_function(g);
    const Element t = c.pick(g.order());
    for (double p : {1.0, 2.0, 3.5, kInfinity}) c.close(lp_norm(translate(f, t), p), lp_norm(f, p), 1e-14);
    c.next_case();
  }
}

// --- cube_geometry ----------------------------------------------------------

void csg(Ctx& c) {
  for (int i = 0; i < c.count(40, 200); ++i) {
    const int d = 1 + static_cast<int>(c.pick(3));
    const GroupSpec g = cyc(d == 3 ? 2 + c.pick(7) : 2 + c.pick(11));
    const BoundCheck b = csg_check(d, c.random_family(g, d, true));
    c.le(b.lhs, b.rhs, 1e-10);
    c.next_case();
  }
}

void cube_symmetry(Ctx& c) {
  for (int i = 0; i < c.count(10, 40); ++i) {
    const int d = 1 + static_cast<int>(c.pick(3));
    const GroupSpec g = cyc(2 + c.pick(6));
    const VertexMap fs = c.random_family(g, d, true);
    const double base = cube_integral(d, fs);
    for (const auto& sigma : cube_isometries(d)) c.close(cube_integral(d, permute_family(fs, sigma)), base, 1e-12);
    c.next_case();
  }
}

// --- gowers_norms -----------------------------------------------------------

void method_agreement(Ctx& c) {
  const std::size_t sizes[] = {4, 8, 12, 16};
  for (int i = 0; i < c.count(40, 200); ++i) {
    const int d = 1 + i % 4;
    const GroupSpec g = cyc(sizes[c.pick(4)]);
    const GroupFunction f = c.random_function(g);
    c.le(rel_gap(gowers_norm(f, d, NormMethod::kClosedFormula), gowers_norm(f, d, NormMethod::kInductive)), 0.0,
         1e-10);
    c.next_case();
  }
}

void translation_invariance(Ctx& c) {
  for (int i = 0; i < c.count(30, 150); ++i) {
    const int d = 1 + static_cast<int>(c.pick(3));
    const GroupSpec g = i % 3 == 0 ? GroupSpec({2, 4}) : cyc(2 + c.pick(12));
    const GroupFunction f = c.random_function(g);
    c.close(gowers_norm(translate(f, c.pick(g.order())), d), gowers_norm(f, d), 1e-12);
    c.next_case();
  }
}

void monotone_in_d(Ctx& c) {
  for (int i = 0; i < c.count(30, 150); ++i) {
    const GroupFunction f = c.random_function(cyc(2 + c.pick(12)));
    for (int d = 1; d < 4; ++d) c.le(gowers_norm(f, d), gowers_norm(f, d + 1), 1e-12);
    c.next_case();
  }
}

void duality_identity(Ctx& c) {
  for (int i = 0; i < c.count(30, 150); ++i) {
    const int d = 1 + static_cast<int>(c.pick(3));
    const GroupFunction f = c.random_function(cyc(2 + c.pick(d == 3 ? 10 : 15)));
    c.close(inner(dual_function(f, d), f), gowers_norm_power(f, d), 1e-10);
    c.next_case();
  }
}

void cor_alpha(Ctx& c) {
  for (int i = 0; i < c.count(30, 150); ++i) {
    const int d = 1 + static_cast<int>(c.pick(3));
    const GroupSpec g = cyc(2 + c.pick(d == 3 ? 7 : 11));
    const VertexMap fs = c.random_family(g, d, true);
    const VertexMask alpha = static_cast<VertexMask>(c.pick(vertex_count(d)));
    double rhs = lp_norm(fs.at(alpha), 1.0);
    for (const auto& [e, f] : fs) {
      if (e != alpha) rhs *= lp_norm(f, static_cast<double>(vertex_count(d - 1)));
    }
    c.le(std::abs(cube_integral(d, fs)), rhs, 1e-10);
    c.next_case();
  }
}

void dual_sup_bounds(Ctx& c) {
  int sharp_u = 0, sharp_dual = 0;
  for (int i = 0; i < c.count(30, 150); ++i) {
    const int d = 1 + static_cast<int>(c.pick(3));
    const GroupSpec g = cyc(2 + c.pick(d == 3 ? 8 : 12));
    const VertexMap fs = c.random_family(g, d, false);
    double rhs = 1.0;
    for (const auto& [e, f] : fs) rhs *= lp_norm(f, static_cast<double>(vertex_count(d - 1)));
    c.le(lp_norm(cubic_convolution(d, fs), kInfinity), rhs, 1e-10);
    for (const auto& row : elementary_bounds_report(fs.begin()->second, 3)) {
      c.truth(row.u_le_lp && row.dual_le_bound && row.monotone);
      sharp_u += row.u_le_sharp ? 0 : 1;
      sharp_dual += row.dual_le_sharp ? 0 : 1;
    }
    c.next_case();
  }
  c.detail = "sharp-bound findings: " + std::to_string(sharp_u) + " U(d), " + std::to_string(sharp_dual) + " dual sup";
}

// --- spectral_d2 ------------------------------------------------------------

std::vector<Complex> direct_dft(const GroupFunction& f) {
  const GroupSpec& g = f.group();
  std::vector<Complex> out(g.order());
  for (Element xi = 0; xi < g.order(); ++xi) {
    Complex acc = 0.0;
    for (Element x = 0; x < g.order(); ++x) acc += f[x] * std::conj(character(g, xi, x));
    out[xi] = acc / static_cast<double>(g.order());
  }
  return out;
}

void parseval_u2(Ctx& c) {
  const std::size_t sizes[] = {4, 8, 16, 32, 64};
  for (int i = 0; i < c.count(100, 500); ++i) {
    const GroupFunction f = c.random_function(cyc(sizes[i % 5]));
    c.close(gowers_norm(f, 2), u2_norm_spectral(f), 1e-10);
    c.next_case();
  }
}

void plancherel(Ctx& c) {
  for (int i = 0; i < c.count(40, 200); ++i) {
    const GroupSpec g = i % 4 == 0 ? GroupSpec({3, 4}) : cyc(2 + c.pick(40));
    const GroupFunction f = c.random_function(g);
    const Spectrum s = dft(f);
    double energy = 0.0;
    for (const Complex& z : s.coefficients) energy += std::norm(z);
    c.close(energy, lp_power(f.values(), 2.0), 1e-12);
    const std::vector<Complex> direct = direct_dft(f);
    for (Element xi = 0; xi < g.order(); ++xi) {
      c.le(std::abs(s.coefficients[xi] - direct[xi]), 0.0, 1e-12);
      c.le(std::abs(s.coefficients[g.neg(xi)] - std::conj(s.coefficients[xi])), 0.0, 1e-12);
    }
    const std::vector<Complex> back = inverse_dft(s);
    for (Element x = 0; x < g.order(); ++x) c.le(std::abs(back[x] - f[x]), 0.0, 1e-12);
    c.next_case();
  }
}

void spectral_dual_consistency(Ctx& c) {
  for (int i = 0; i < c.count(5, 50); ++i) {
    const GroupFunction g = c.random_function(cyc(4 + c.pick(9)));
    c.close(dual_norm(g, 2).value, u2_dual_norm_spectral(g), 1e-6);
    c.next_case();
  }
}

void a2_submultiplicative(Ctx& c) {
  for (int i = 0; i < c.count(40, 200); ++i) {
    const GroupSpec g = cyc(2 + c.pick(30));
    const GroupFunction f = c.random_function(g), h = c.random_function(g);
    c.le(a2_norm(f * h), a2_norm(f) * a2_norm(h), 1e-10);
    c.next_case();
  }
}

void character_certificate(Ctx& c) {
  for (int i = 0; i < c.count(20, 80); ++i) {
    const GroupSpec g = i % 5 == 0 ? GroupSpec({2, 3}) : cyc(1 + c.pick(16));
    const GroupFunction f = c.random_function(g);
    const AdDecomposition D = character_decomposition(f);
    c.close(ad_certificate_value(D), a2_norm(f), 1e-10);
    c.le(lp_norm(materialize(D) - f, 2), 0.0, 1e-10);
    c.next_case();
  }
}

void spectral_cubic(Ctx& c) {
  for (int i = 0; i < c.count(30, 150); ++i) {
    const GroupSpec g = cyc(2 + c.pick(15));
    const SpectralCubicCheck s =
        spectral_cubic_bound_check(c.random_function(g), c.random_function(g), c.random_function(g));
    c.le(s.lhs, s.rhs, 1e-10);
    c.le(s.coefficient_defect, 0.0, 1e-12);
    c.next_case();
  }
}

// --- anti_uniform -----------------------------------------------------------

void norm_df_d2(Ctx& c) {
  for (int i = 0; i < c.count(10, 100); ++i) {
    const GroupFunction f = c.random_function(cyc(2 + c.pick(15)));
    const GroupFunction g = dual_function(f, 2);
    const double expect = std::pow(gowers_norm(f, 2), 3.0);
    c.close(dual_norm(g, 2).value, expect, 1e-6);
    c.close(u2_dual_norm_spectral(g), expect, 1e-10);
    c.next_case();
  }
}

void norm_df_d3(Ctx& c) {
  for (int i = 0; i < c.count(3, 25); ++i) {
    const GroupFunction f = c.random_function(cyc(2 + c.pick(7)));
    const DualNormResult r = dual_norm(dual_function(f, 3), 3);
    const double expect = std::pow(gowers_norm(f, 3), 7.0);
    c.le(expect - r.value, 0.0, 1e-4);
    c.le(r.value, std::pow(lp_norm(f, 4.0), 7.0), 1e-10);
    c.le(r.value, *r.certificate_upper, 1e-10);
    c.next_case();
  }
}

void dual_ordering(Ctx& c) {
  for (int i = 0; i < c.count(3, 25); ++i) {
    const GroupFunction g = c.random_function(cyc(3 + c.pick(6)));
    c.le(dual_norm(g, 3).value, dual_norm(g, 2).value, 1e-6);
    c.next_case();
  }
}

void cor_anti(Ctx& c) {
  for (int i = 0; i < c.count(5, 50); ++i) {
    const int d = 2 + static_cast<int>(c.pick(2));
    const GroupFunction g = c.random_function(cyc(3 + c.pick(d == 3 ? 6 : 10)));
    const double half = static_cast<double>(vertex_count(d - 1));
    const DualNormResult r = dual_norm(g, d);
    c.le(lp_norm(g, half / (half - 1.0)), r.value, 1e-10);
    c.close(r.value, inner(g, r.witness), 1e-12);
    c.close(gowers_norm(r.witness, d), 1.0, 1e-10);
    c.next_case();
  }
}

void nnorm_is_norm(Ctx& c) {
  for (int i = 0; i < c.count(20, 100); ++i) {
    const GroupSpec g = cyc(2 + c.pick(10));
    const int d = 1 + static_cast<int>(c.pick(2));
    const int k = d + static_cast<int>(c.pick(2));
    const double delta = c.uniform(0.05, 2.0);
    const GroupFunction f = c.random_function(g), h = c.random_function(g);
    const double s = c.uniform(-3, 3);
    c.close(nnorm(s * f, d, k, delta), std::abs(s) * nnorm(f, d, k, delta), 1e-12 * (1 + std::abs(s)));
    c.le(nnorm(f + h, d, k, delta), nnorm(f, d, k, delta) + nnorm(h, d, k, delta), 1e-12);
    c.next_case();
  }
}

void check_thk(Ctx& c, const GroupFunction& g, const ThkResult& r) {
  c.le(r.f_u_norm, 1.0, 1e-5);
  c.le(r.f_lp_norm, 1.0 / r.delta, 1e-5);
  c.le(r.h_dual_lp, r.delta, 1e-5);
  c.le(r.residual, 0.0, 1e-5);
  c.close(lp_norm(g - dual_function(r.f, r.d) - r.h, 2), r.residual, 1e-12);
}

GroupFunction unit_dual(Ctx& c, const GroupSpec& g) {
  const GroupFunction raw = c.random_function(g);
  return (1.0 / u2_dual_norm_spectral(raw)) * raw;
}

void thk_bounds(Ctx& c) {
  for (int i = 0; i < c.count(10, 50); ++i) {
    const GroupSpec g = cyc(4 + c.pick(13));
    const GroupFunction gu = unit_dual(c, g);
    const double delta = i % 2 == 0 ? 0.1 : 0.3;
    check_thk(c, gu, thk_decompose(gu, 2, 2, delta));
    c.next_case();
  }
  // the k = d - 1 variant
  for (int i = 0; i < c.count(3, 10); ++i) {
    const GroupFunction gu = unit_dual(c, cyc(4 + c.pick(9)));
    const ThkResult r = thk_decompose(gu, 2, 1, 0.3);
    c.le(r.f_u_norm, 1.0, 1e-5);
    c.le(r.residual, 0.0, 1e-5);
    c.next_case();
  }
}

void thborne_bounds(Ctx& c) {
  for (int i = 0; i < c.count(4, 50); ++i) {
    const GroupFunction gu = unit_dual(c, cyc(4 + c.pick(9)));
    const double delta = i % 2 == 0 ? 0.25 : 0.5;
    const ThborneResult b = thborne_decompose(gu, 2, delta);
    check_thk(c, gu, b.result);
    c.le(b.result.f_sup, 1.0 / delta, 1e-5);
    c.le(b.result.h_l1, delta, 1e-5);
    c.next_case();
  }
}

void convex_hull(Ctx& c) {
  for (int i = 0; i < c.count(3, 20); ++i) {
    const GroupFunction gu = unit_dual(c, cyc(4 + c.pick(5)));
    const ConvexHullReport rep = convex_hull_probe(gu, 2, c.count(20, 60));
    c.truth(rep.precondition_met);
    for (std::size_t j = 1; j < rep.errors.size(); ++j) c.le(rep.errors[j], rep.errors[j - 1], 1e-12);
    c.next_case();
  }
  // g = D_2 f with ||f||_{U(2)} = 1 is a single atom
  const GroupFunction f = c.random_function(cyc(8));
  const GroupFunction g = dual_function((1.0 / gowers_norm(f, 2)) * f, 2);
  c.le(convex_hull_probe(g, 2, 1).errors.front(), 0.0, 1e-8);
  c.next_case();
}

// --- fourier_algebra --------------------------------------------------------

AdDecomposition random_ad(Ctx& c, const GroupSpec& g, int d, int terms) {
  AdDecomposition D;
  D.d = d;
  for (int j = 0; j < terms; ++j) D.terms.push_back(AdTerm{c.random_family(g, d, false), {}, false});
  return D;
}

void ad_sup_and_pairing(Ctx& c) {
  for (int i = 0; i < c.count(20, 100); ++i) {
    const int d = 1 + static_cast<int>(c.pick(3));
    const GroupSpec g = cyc(2 + c.pick(d == 3 ? 6 : 10));
    const AdDecomposition D = random_ad(c, g, d, 1 + static_cast<int>(c.pick(3)));
    const double cert = ad_certificate_value(D);
    c.le(lp_norm(materialize(D), kInfinity), cert, 1e-10);
    const PairingCheck p = ad_pairing_bound_check(D, c.random_function(g));
    c.le(p.lhs, p.rhs, 1e-10);
    c.next_case();
  }
}

void ad_dual_le_certificate(Ctx& c) {
  for (int i = 0; i < c.count(4, 30); ++i) {
    const int d = 2 + static_cast<int>(c.pick(2));
    const GroupSpec g = cyc(3 + c.pick(d == 3 ? 5 : 8));
    const AdDecomposition D = random_ad(c, g, d, 2);
    c.le(dual_norm(materialize(D), d).value, ad_certificate_value(D), 1e-6);
    c.next_case();
  }
}

void ad_product_check(Ctx& c) {
  for (int i = 0; i < c.count(10, 40); ++i) {
    const int d = 1 + static_cast<int>(c.pick(2));
    const GroupSpec g = cyc(2 + c.pick(5));
    AdDecomposition A = random_ad(c, g, d, 1 + static_cast<int>(c.pick(2)));
    AdDecomposition B = random_ad(c, g, d, 1 + static_cast<int>(c.pick(2)));
    if (d == 2 && i % 3 == 0) B = character_decomposition(c.random_function(g));
    const AdDecomposition P = ad_product(A, B);
    c.le(lp_norm(materialize(P) - materialize(A) * materialize(B), kInfinity), 0.0, 1e-9);
    c.le(ad_certificate_value(P), ad_certificate_value(A) * ad_certificate_value(B), 1e-8);
    c.next_case();
  }
}

void ad_associativity(Ctx& c) {
  for (int i = 0; i < c.count(3, 30); ++i) {
    const int d = 1 + i % 2;
    const GroupSpec g = cyc(2 + c.pick(3));
    const AdDecomposition A = random_ad(c, g, d, 1), B = random_ad(c, g, d, 1), C = random_ad(c, g, d, 1);
    const GroupFunction left = materialize(ad_product(ad_product(A, B), C));
    const GroupFunction right = materialize(ad_product(A, ad_product(B, C)));
    c.le(lp_norm(left - right, kInfinity), 0.0, 1e-9);
    c.next_case();
  }
}

// --- decomposable -----------------------------------------------------------

DecomposableFunction random_dd(Ctx& c, const GroupSpec& g, int d, int terms, double lo = -1.0, double hi = 1.0) {
  DecomposableFunction F;
  F.d = d;
  for (int j = 0; j < terms; ++j) F.terms.push_back(c.random_family(g, d, true, lo, hi));
  return F;
}

CubeFunction random_cube(Ctx& c, const GroupSpec& g, int d) {
  std::vector<double> v(cube_parameter_count(g, d));
  for (double& x : v) x = c.uniform(-1, 1);
  return CubeFunction(g, d, std::move(v));
}

void dd_norms(Ctx& c) {
  for (int i = 0; i < c.count(20, 100); ++i) {
    const int d = 1 + static_cast<int>(c.pick(2));
    const GroupSpec g = cyc(2 + c.pick(7));
    const DecomposableFunction F = random_dd(c, g, d, 1 + static_cast<int>(c.pick(3)));
    const CubeFunction M = materialize(F);
    const double cert = dd_certificate_value(F);
    c.le(std::sqrt(cube_energy(M)), cert, 1e-10);
    c.le(cube_lp_norm(diagonal_project(M), kInfinity), cert, 1e-10);
    c.next_case();
  }
}

void pi_projection(Ctx& c) {
  for (int i = 0; i < c.count(20, 100); ++i) {
    const int d = 1 + static_cast<int>(c.pick(2));
    const GroupSpec g = cyc(2 + c.pick(7));
    const CubeFunction F = random_cube(c, g, d);
    const CubeFunction P = diagonal_project(F);
    c.le(cube_energy(P), cube_energy(F), 1e-12);
    c.le(cube_lp_norm(diagonal_project(P) - P, kInfinity), 0.0, 1e-12);
    const Element s = c.pick(g.order());
    c.le(cube_lp_norm(diagonal_translate(P, s) - P, kInfinity), 0.0, 1e-12);
    c.close(cube_mean(diagonal_translate(F, s)), cube_mean(F), 1e-12);
    c.le(lp_norm(proj_conditional(F), 1.0), cube_lp_norm(F, 1.0), 1e-12);
    c.next_case();
  }
}

void proj_cauchy_schwarz(Ctx& c) {
  for (int i = 0; i < c.count(20, 100); ++i) {
    const int d = 1 + static_cast<int>(c.pick(2));
    const GroupSpec g = cyc(2 + c.pick(7));
    const CubeFunction F = random_cube(c, g, d), G = random_cube(c, g, d);
    const GroupFunction lhs = proj_conditional(G * F);
    const GroupFunction gg = proj_conditional(G * G), ff = proj_conditional(F * F);
    for (Element x = 0; x < g.order(); ++x) c.le(std::abs(lhs[x]), std::sqrt(gg[x] * ff[x]), 1e-12);
    c.next_case();
  }
}

void dd_product_check(Ctx& c) {
  for (int i = 0; i < c.count(10, 40); ++i) {
    const int d = 1 + static_cast<int>(c.pick(2));
    const GroupSpec g = cyc(2 + c.pick(4));
    const DecomposableFunction A = random_dd(c, g, d, 1 + static_cast<int>(c.pick(2)));
    const DecomposableFunction B = random_dd(c, g, d, 1 + static_cast<int>(c.pick(2)));
    const DecomposableFunction P = dd_product(A, B, true);
    const CubeFunction expect = materialize(A) * diagonal_project(materialize(B));
    c.le(cube_lp_norm(materialize(P) - expect, kInfinity), 0.0, 1e-9);
    c.le(dd_certificate_value(P), dd_certificate_value(A) * dd_certificate_value(B), 1e-8);
    c.next_case();
  }
}

// --- regularity -------------------------------------------------------------

void refinement_monotone(Ctx& c) {
  for (int i = 0; i < c.count(20, 80); ++i) {
    const int d = 1 + static_cast<int>(c.pick(2));
    const GroupSpec g = cyc(4 + c.pick(5));
    const CubeFunction F = random_cube(c, g, d);
    std::vector<std::size_t> a(g.order()), b(g.order());
    for (auto& x : a) x = c.pick(3);
    for (auto& x : b) x = c.pick(3);
    const Partition P = Partition::from_labels(g, a);
    const Partition R = common_refinement(P, Partition::from_labels(g, b));
    const RectangleAveraging avg = average_over_rectangles(F, P);
    c.le(cube_energy(avg.F_P), cube_energy(average_over_rectangles(F, R).F_P), 1e-12);
    c.le(partition_defect(F, avg.F_P, P), 0.0, 1e-12);
    c.le(partition_defect(F, avg.F_P, P), cube_lp_norm(F - avg.F_P, 1.0), 1e-12);
    for (const Rectangle& r : avg.R.rectangles) c.truth(r.mass > 0.0);
    const UniformizeResult u = uniformize(R, 1 + c.pick(g.order()));
    c.truth(u.partition.almost_uniform());
    c.next_case();
  }
}

void planted_defect(Ctx& c) {
  const GroupSpec g = cyc(8);
  for (int i = 0; i < c.count(3, 30); ++i) {
    std::vector<std::size_t> labels(8);
    for (auto& x : labels) x = c.pick(2);
    labels[0] = 0;
    labels[1] = 1;
    const Partition planted = Partition::from_labels(g, labels);
    VertexMap fs;
    for (VertexMask e = 0; e < 2; ++e) {
      std::vector<double> v(8);
      for (Element x = 0; x < 8; ++x) v[x] = planted.cell_of(x) == e ? 1.0 : -1.0;
      fs.emplace(e, GroupFunction(g, std::move(v)));
    }
    const CubeFunction F = tensor_product(1, fs);
    const CubeFunction mean_part = average_over_rectangles(F, Partition::trivial(g)).F_P;
    const double planted_value = partition_defect(F, mean_part, planted);
    const DefectResult exh = adversarial_defect(F, mean_part, 2, 10'000, 1);
    const DefectResult hill = adversarial_defect(F, mean_part, 2, 10'000, 1, 0.0);
    c.le(planted_value, exh.defect, 1e-12);
    c.le(planted_value, hill.defect, 1e-12);
    c.next_case();
  }
}

void check_regularize(Ctx& c, const CubeFunction& F, double delta, const RegularizeResult& r) {
  c.truth(r.P.almost_uniform());
  c.le(r.final_defect, delta, 0.0);
  c.le(static_cast<double>(r.rounds), std::ceil(cube_energy(F) / (delta * delta)) + 1.0, 0.0);
  for (const RegularityRound& h : r.history) {
    if (h.refined_cells > 0) c.le(h.energy + h.defect * h.defect, h.refined_energy, 1e-9);
  }
  // exhaustive re-check of the final partition against two-cell adversaries
  const DefectResult two = adversarial_defect(F, r.F_P, std::max<std::size_t>(2, r.P.size()), 10'000, 99);
  c.le(two.defect, delta, 1e-12);
}

void regularize_runs(Ctx& c) {
  for (int i = 0; i < c.count(4, 20); ++i) {
    const int d = 1 + i % 2;
    const GroupSpec g = cyc(8);
    const DecomposableFunction D = random_dd(c, g, d, 1, -1.0, 1.0);
    const CubeFunction F = materialize(D);
    const double delta = d == 1 ? 0.05 : 0.2;
    check_regularize(c, F, delta, regularize(F, delta));
    c.next_case();
  }
  // a planted step function terminates with few cells
  const GroupSpec g = cyc(8);
  VertexMap fs;
  for (VertexMask e = 0; e < 2; ++e) fs.emplace(e, gen_indicator(g, {0, 1, 2, 3}));
  const CubeFunction F = tensor_product(1, fs);
  check_regularize(c, F, 0.05, regularize(F, 0.05));
  c.next_case();
}

void weak_to_strong(Ctx& c) {
  for (int i = 0; i < c.count(4, 20); ++i) {
    const int d = 1 + i % 2;
    const GroupSpec g = cyc(8);
    DecomposableFunction F = random_dd(c, g, d, 1, -1.0, 1.0);
    const double cert = dd_certificate_value(F);
    if (cert > 1.0) {
      for (auto& [e, f] : F.terms[0]) {
        if (e == 0) f = (1.0 / cert) * f;
      }
    }
    const WeakToStrongReport rep = weak_to_strong_check(F, 0.1);
    c.le(rep.l2_error, rep.bound, 1e-12);
    c.le(rep.worst_product, rep.product_bound, 1e-12);
    c.next_case();
  }
}

// --- structured_decomposition -------------------------------------------------

void structured_main(Ctx& c) {
  for (int i = 0; i < c.count(2, 10); ++i) {
    const int d = i % 3 == 2 ? 2 : 1;
    const GroupSpec g = cyc(8);
    VertexMap fs;
    for (VertexMask e = 1; e < vertex_count(d + 1); ++e) {
      const GroupFunction f = c.random_function(g);
      fs.emplace(e, (1.0 / lp_norm(f, static_cast<double>(vertex_count(d)))) * f);
    }
    const double delta = d == 1 ? 0.3 : 0.5;
    StructuredOptions opts;
    opts.verify = false;
    const MainDecomposition M = structured_decompose(fs, d, delta, opts);
    const MainVerification v = verify_main(M, fs, delta);
    c.le(v.rho_l2, delta, 1e-8);
    c.le(v.worst_piece_sup, 1.0, 1e-8);
    c.le(v.worst_certificate, M.C_bound, 1e-8);
    c.le(-v.item3_slack, 0.0, 0.0);
    c.le(-v.envelope_slack, 0.0, 1e-10);
    c.truth(M.partition.almost_uniform());
    c.next_case();
  }
}

// --- signals --------------------------------------------------------------------

void torus_embedding(Ctx& c) {
  for (int i = 0; i < c.count(20, 100); ++i) {
    TorusFunctionSpec spec;
    const int terms = 1 + static_cast<int>(c.pick(4));
    for (int j = 0; j < terms; ++j) {
      spec.terms.push_back(
          TorusTerm{static_cast<std::int64_t>(c.pick(9)) - 4, c.uniform(-1, 1), c.uniform(-1, 1)});
    }
    const std::size_t N = 4 + c.pick(29);
    const TorusSequence s = gen_torus_sequence(spec, static_cast<double>(1 + c.pick(N - 1)) / static_cast<double>(N), N);
    c.truth(s.embedding);
    c.le(s.u2_dual, s.bound, 1e-10);
    c.next_case();
  }
}

void generator_determinism(Ctx& c) {
  for (int i = 0; i < c.count(10, 40); ++i) {
    const GroupSpec g = cyc(2 + c.pick(30));
    const std::uint64_t seed = c.pick(1000);
    c.truth(gen_random(g, seed).vector() == gen_random(g, seed).vector());
    c.truth(gen_random(g, seed, 0.7, 2).vector() == gen_random(g, seed, 0.7, 2).vector());
    c.le(lp_norm(gen_random(g, seed, 0.7), kInfinity), 0.7, 0.0);
    c.next_case();
  }
}

struct EntryDef {
  const char* name;
  void (*run)(Ctx&);
};

const std::vector<EntryDef>& registry() {
  static const std::vector<EntryDef> defs = {
      {"group.lp_axioms", lp_axioms},
      {"group.holder", holder},
      {"group.lp_monotone_in_p", lp_monotone},
      {"group.translate_preserves_lp", translate_lp},
      {"cube.csg_inequality", csg},
      {"cube.isometry_invariance", cube_symmetry},
      {"gowers.method_agreement", method_agreement},
      {"gowers.translation_invariance", translation_invariance},
      {"gowers.monotone_in_d", monotone_in_d},
      {"gowers.duality_identity", duality_identity},
      {"gowers.single_l1_vertex_bound", cor_alpha},
      {"gowers.dual_sup_bounds", dual_sup_bounds},
      {"spectral.u2_parseval", parseval_u2},
      {"spectral.transform_identities", plancherel},
      {"spectral.dual_norm_consistency", spectral_dual_consistency},
      {"spectral.a2_submultiplicative", a2_submultiplicative},
      {"spectral.character_certificate", character_certificate},
      {"spectral.cubic_bound", spectral_cubic},
      {"anti_uniform.dual_of_dual_function_d2", norm_df_d2},
      {"anti_uniform.dual_of_dual_function_d3", norm_df_d3},
      {"anti_uniform.dual_norm_ordering", dual_ordering},
      {"anti_uniform.lp_lower_bound", cor_anti},
      {"anti_uniform.regularized_norm_axioms", nnorm_is_norm},
      {"anti_uniform.k_decomposition", thk_bounds},
      {"anti_uniform.bounded_decomposition", thborne_bounds},
      {"anti_uniform.convex_hull", convex_hull},
      {"fourier_algebra.sup_and_pairing", ad_sup_and_pairing},
      {"fourier_algebra.dual_below_certificate", ad_dual_le_certificate},
      {"fourier_algebra.product", ad_product_check},
      {"fourier_algebra.associativity", ad_associativity},
      {"decomposable.norm_bounds", dd_norms},
      {"decomposable.projection", pi_projection},
      {"decomposable.proj_cauchy_schwarz", proj_cauchy_schwarz},
      {"decomposable.product", dd_product_check},
      {"regularity.refinement", refinement_monotone},
      {"regularity.planted_defect", planted_defect},
      {"regularity.regularize", regularize_runs},
      {"regularity.weak_to_strong", weak_to_strong},
      {"structured.main_decomposition", structured_main},
      {"signals.torus_embedding", torus_embedding},
      {"signals.determinism", generator_determinism},
  };
  return defs;
}

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const SuiteEntry& e) { return e.passed; });
}

std::vector<std::string> suite_entry_names() {
  std::vector<std::string> out;
  for (const EntryDef& e : registry()) out.emplace_back(e.name);
  return out;
}

SuiteReport run_verify_suite(const SuiteOptions& opts) {
  SuiteReport rep;
  rep.level = opts.level;
  rep.seed = opts.seed;
  if (!opts.inject_fault.empty()) {
    const auto names = suite_entry_names();
    if (std::find(names.begin(), names.end(), opts.inject_fault) == names.end()) {
      throw InvalidParameter("unknown suite entry '" + opts.inject_fault + "'");
    }
  }
  std::vector<const EntryDef*> chosen;
  for (const EntryDef& def : registry()) {
    if (opts.filter.empty() || std::string(def.name).rfind(opts.filter, 0) == 0) chosen.push_back(&def);
  }
  // entries run concurrently, each into its own slot
  rep.entries.resize(chosen.size());
  parallel_for(chosen.size(), [&](std::size_t i) {
    const std::string name = chosen[i]->name;
    Ctx ctx(opts.level == SuiteLevel::kFull, opts.seed ^ fnv1a(name), name == opts.inject_fault);
    try {
      chosen[i]->run(ctx);
      rep.entries[i] = ctx.finish(name);
    } catch (const std::exception& e) {
      SuiteEntry failed = ctx.finish(name);
      failed.passed = false;
      failed.detail = std::string("exception: ") + e.what();
      rep.entries[i] = std::move(failed);
    }
  });
  return rep;
}

Json to_json(const SuiteReport& r) {
  Json entries = Json::array();
  for (const SuiteEntry& e : r.entries) {
    Json j{{"name", e.name}, {"passed", e.passed}, {"cases", e.cases}, {"worst_slack", e.worst_slack}};
    if (!e.detail.empty()) j["detail"] = e.detail;
    entries.push_back(std::move(j));
  }
  return Json{{"level", r.level == SuiteLevel::kFull ? "full" : "quick"},
              {"seed", r.seed},
              {"passed", r.passed()},
              {"entries", std::move(entries)}};
}

SuiteLevel parse_suite_level(const std::string& s) {
  if (s == "quick") return SuiteLevel::kQuick;
  if (s == "full") return SuiteLevel::kFull;
  throw InvalidParameter("level must be 'quick' or 'full'");
}

}  // namespace gowers
