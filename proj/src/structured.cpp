#include "gowers/structured.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gowers/decomposable.hpp"
#include "gowers/detail/cube_kernel.hpp"
#include "gowers/error.hpp"
#include "gowers/gowers_norm.hpp"
#include "gowers/numeric.hpp"

namespace gowers {

namespace {

using ConstantTable = std::map<std::vector<std::size_t>, double>;

ConstantTable constant_table(const RectangleAverage& R) {
  ConstantTable out;
  for (const Rectangle& r : R.rectangles) out.emplace(r.cells, r.average);
  return out;
}

const GroupSpec& check_family(const VertexMap& fs, int d) {
  if (d < 1) throw InvalidParameter("structured decomposition needs d >= 1");
  const std::size_t full = vertex_count(d + 1);
  if (fs.size() != full - 1) throw InvalidParameter("need one function per nonzero vertex of V_{d+1}");
  const GroupSpec& g = fs.begin()->second.group();
  for (VertexMask e = 1; e < full; ++e) {
    auto it = fs.find(e);
    if (it == fs.end()) throw InvalidParameter("missing function for vertex " + vertex_label(e, d + 1));
    if (!(it->second.group() == g)) throw DimensionMismatch("vertex functions live on different groups");
  }
  check_cube_resources(g, d + 1);
  return g;
}

VertexMap top_family(const VertexMap& fs, int d) {
  VertexMap out;
  for (VertexMask e = 0; e < vertex_count(d); ++e) out.emplace(e, fs.at(e | (1u << d)));
  return out;
}

CubeFunction build_F(const VertexMap& fs, int d) { return diagonal_project(tensor_product(d, top_family(fs, d))); }

// F_P rebuilt from the stored rectangle constants.
CubeFunction build_F_P(const MainDecomposition& M) {
  const GroupSpec& g = M.partition.group();
  const ConstantTable table = constant_table(M.rectangles);
  const std::size_t D = vertex_count(M.d);
  std::vector<double> values(cube_parameter_count(g, M.d));
  std::vector<std::size_t> key(D);
  detail::for_each_cube(g, M.d, [&](std::size_t idx, const Element* pos) {
    for (std::size_t e = 0; e < D; ++e) key[e] = M.partition.cell_of(pos[e]);
    auto it = table.find(key);
    values[idx] = it == table.end() ? 0.0 : it->second;
  });
  return CubeFunction(g, M.d, std::move(values));
}

}  // namespace

GroupFunction piece_values(const MainDecomposition& M, std::size_t i, Element t) {
  const GroupSpec& g = M.partition.group();
  if (i >= M.partition.size()) throw InvalidParameter("cell index out of range");
  if (t >= g.order()) throw InvalidParameter("translation element out of range");
  const ConstantTable table = constant_table(M.rectangles);
  const std::size_t D = vertex_count(M.d);
  std::vector<const double*> fv(D, nullptr);
  for (VertexMask e = 1; e < D; ++e) fv[e] = M.fs.at(e).values().data();
  std::vector<double> out(g.order());
  parallel_for(g.order(), [&](std::size_t x) {
    std::vector<std::size_t> key(D);
    key[0] = i;
    CompensatedSum acc;
    detail::for_each_cube_at(g, M.d, x, [&](std::size_t, const Element* pos) {
      for (std::size_t e = 1; e < D; ++e) key[e] = M.partition.cell_of(pos[e]);
      auto it = table.find(key);
      if (it == table.end() || it->second == 0.0) return;
      double prod = it->second;
      for (std::size_t e = 1; e < D; ++e) prod *= fv[e][g.add(pos[e], t)];
      acc.add(prod);
    });
    out[x] = acc.value() / std::pow(static_cast<double>(g.order()), M.d);
  });
  return GroupFunction(g, std::move(out));
}

AdDecomposition piece_decomposition(const MainDecomposition& M, std::size_t i, Element t) {
  const GroupSpec& g = M.partition.group();
  if (i >= M.partition.size()) throw InvalidParameter("cell index out of range");
  AdDecomposition out;
  out.d = M.d;
  for (const Rectangle& r : M.rectangles.rectangles) {
    if (r.cells[0] != i) continue;
    AdTerm term;
    for (VertexMask e = 1; e < vertex_count(M.d); ++e) {
      const GroupFunction shifted = translate(M.fs.at(e), t);
      std::vector<double> v(g.order(), 0.0);
      for (Element x : M.partition.cells()[r.cells[e]]) v[x] = shifted[x];
      GroupFunction f(g, std::move(v));
      term.re.emplace(e, e == 1 ? r.average * f : std::move(f));
    }
    out.terms.push_back(std::move(term));
  }
  if (out.terms.empty()) return constant_decomposition(g, M.d, 0.0);
  return out;
}

double choose_theta(int d, double delta) {
  if (!(delta > 0.0)) throw InvalidParameter("delta must be positive");
  double theta = delta * delta / 4.0;
  for (int j = 0; j < 2000; ++j, theta *= 0.5) {
    if (weak_to_strong_bound(d, theta) < delta) return theta;
  }
  throw InvalidParameter("no admissible theta for this delta");
}

MainVerification verify_main(const MainDecomposition& M, const VertexMap& fs, double delta) {
  MainVerification rep;
  const int d = M.d;
  const GroupSpec& g = check_family(fs, d);
  const std::size_t n = g.order();
  const double tol = kMainTolerance;

  rep.rho_l2 = lp_norm(M.rho, 2);
  rep.item1_slack = delta - rep.rho_l2;
  rep.item1 = rep.rho_l2 <= delta + tol;
  if (!rep.item1) rep.failures.push_back("item 1: ||rho||_2 exceeds delta");

  // item 2: every piece, materialized from its certificate
  rep.item2_sup_slack = std::numeric_limits<double>::infinity();
  rep.item2_cert_slack = std::numeric_limits<double>::infinity();
  std::vector<std::vector<GroupFunction>> pieces(M.partition.size());
  for (std::size_t i = 0; i < M.partition.size(); ++i) {
    for (Element t = 0; t < n; ++t) {
      const AdDecomposition dec = piece_decomposition(M, i, t);
      const GroupFunction mat = materialize(dec);
      const double sup = lp_norm(mat, kInfinity);
      const double cert = ad_certificate_value(dec);
      rep.worst_piece_sup = std::max(rep.worst_piece_sup, sup);
      rep.worst_certificate = std::max(rep.worst_certificate, cert);
      rep.item2_sup_slack = std::min(rep.item2_sup_slack, 1.0 + tol - sup);
      rep.item2_cert_slack = std::min(rep.item2_cert_slack, M.C_bound - cert);
      rep.worst_symbolic_gap = std::max(rep.worst_symbolic_gap, lp_norm(mat - piece_values(M, i, t), kInfinity));
      pieces[i].push_back(mat);
    }
  }
  rep.item2 = rep.item2_sup_slack >= 0.0 && rep.item2_cert_slack >= -tol && rep.worst_symbolic_gap <= 1e-10;
  if (!rep.item2) rep.failures.push_back("item 2: piece sup, certificate or symbolic form out of bounds");

  // item 3 against a from-scratch phi
  const GroupFunction phi = cubic_convolution(d + 1, fs);
  rep.item3_slack = std::numeric_limits<double>::infinity();
  for (Element t = 0; t < n; ++t) {
    for (Element x = 0; x < n; ++x) {
      const double main = pieces[M.partition.cell_of(x)][t][x];
      const double gap = std::abs(phi[g.add(x, t)] - main);
      rep.item3_slack = std::min(rep.item3_slack, M.rho[x] + tol - gap);
    }
  }
  rep.item3 = rep.item3_slack >= 0.0;
  if (!rep.item3) rep.failures.push_back("item 3: pointwise error exceeds rho");

  // envelope and norm chain from the proof
  const CubeFunction F = build_F(fs, d);
  const CubeFunction diff = F - build_F_P(M);
  rep.rho_vs_f_error = std::sqrt(cube_energy(diff)) - rep.rho_l2;
  rep.envelope_slack = std::numeric_limits<double>::infinity();
  const std::size_t D = vertex_count(d);
  const std::size_t block = diff.size() / n;
  for (Element t = 0; t < n; ++t) {
    for (Element x = 0; x < n; ++x) {
      CompensatedSum acc;
      detail::for_each_cube_at(g, d, x, [&](std::size_t idx, const Element* pos) {
        double gval = 1.0;
        for (std::size_t e = 1; e < D; ++e) gval *= fs.at(static_cast<VertexMask>(e))[g.add(pos[e], t)];
        acc.add(gval * diff[x * block + idx]);
      });
      const double env = std::abs(acc.value()) / static_cast<double>(block);
      rep.envelope_slack = std::min(rep.envelope_slack, M.rho[x] - env);
    }
  }
  if (rep.envelope_slack < -1e-10) rep.failures.push_back("envelope: |Proj(G_t (F - F_P))| exceeds rho");
  if (rep.rho_vs_f_error < -1e-10) rep.failures.push_back("||rho||_2 exceeds ||F - F_P||");
  rep.passed = rep.failures.empty();
  return rep;
}

MainDecomposition structured_decompose(const VertexMap& fs, int d, double delta, const StructuredOptions& opts) {
  const GroupSpec& g = check_family(fs, d);
  if (!(delta > 0.0)) throw InvalidParameter("delta must be positive");
  const double p = static_cast<double>(vertex_count(d));
  for (const auto& [e, f] : fs) {
    if (lp_norm(f, p) > 1.0 + 1e-12) {
      throw InvalidParameter("vertex " + vertex_label(e, d + 1) + " violates ||f||_{2^d} <= 1");
    }
  }
  MainDecomposition M;
  M.d = d;
  M.delta = delta;
  M.fs = fs;
  M.theta = choose_theta(d, delta);

  const CubeFunction F = build_F(fs, d);
  RegularizeOptions ro = opts.regularize;
  const double doubled = std::pow(2.0, p);
  ro.min_test_cells = std::max(ro.min_test_cells, static_cast<std::size_t>(std::min(doubled, static_cast<double>(g.order()))));
  RegularizeResult reg = regularize(F, M.theta, ro);

  M.partition = reg.P;
  M.rectangles = std::move(reg.R);
  M.history = std::move(reg.history);
  M.m = M.partition.size();
  M.C_bound = std::pow(static_cast<double>(M.m), p - 1.0);
  const CubeFunction diff = F - reg.F_P;
  M.f_error = std::sqrt(cube_energy(diff));
  M.rho = proj_conditional(diff * diff);
  std::vector<double> r(g.order());
  for (Element x = 0; x < g.order(); ++x) r[x] = std::sqrt(std::max(0.0, M.rho[x]));
  M.rho = GroupFunction(g, std::move(r));

  if (opts.verify) {
    const MainVerification v = verify_main(M, fs, delta);
    if (!v.passed) {
      std::string msg = "structured decomposition failed verification:";
      for (const auto& f : v.failures) msg += " [" + f + "]";
      throw InternalError(msg);
    }
  }
  return M;
}

}  // namespace gowers
