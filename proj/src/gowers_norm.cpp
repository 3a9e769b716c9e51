#include "gowers/gowers_norm.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "gowers/detail/cube_kernel.hpp"
#include "gowers/error.hpp"
#include "gowers/numeric.hpp"

namespace gowers {

namespace {

constexpr double kClampSlack = 1e-12;

// ||f||_{U(d)}^{2^d} via ||f||_{U(d)}^{2^d} = E_t ||f·f_t||_{U(d-1)}^{2^{d-1}}.
double inductive_power(const GroupSpec& g, std::span<const double> f, int d) {
  if (d == 1) {
    const double m = compensated_mean(f);
    return m * m;
  }
  const std::size_t n = g.order();
  std::vector<double> shifted(n);
  CompensatedSum acc;
  for (Element t = 0; t < n; ++t) {
    for (Element x = 0; x < n; ++x) shifted[x] = f[x] * f[g.add(x, t)];
    acc.add(inductive_power(g, shifted, d - 1));
  }
  return acc.value() / static_cast<double>(n);
}

double closed_power(const GroupFunction& f, int d) {
  const GroupSpec& g = f.group();
  check_cube_resources(g, d);
  std::vector<const double*> fv(vertex_count(d), f.values().data());
  std::vector<double> per_x(g.order());
  parallel_for(g.order(), [&](std::size_t x) {
    detail::CubeAverager<double> avg(g, d, fv.data());
    per_x[x] = avg.at(x);
  });
  return compensated_mean(per_x);
}

const GroupSpec& tilde_family_group(int d, const VertexMap& fs) {
  if (fs.empty()) throw InvalidParameter("empty vertex family");
  const GroupSpec& g = fs.begin()->second.group();
  for (VertexMask e = 1; e < vertex_count(d); ++e) {
    auto it = fs.find(e);
    if (it == fs.end()) throw InvalidParameter("missing function for vertex " + vertex_label(e, d));
    if (!(it->second.group() == g)) throw DimensionMismatch("vertex functions live on different groups");
  }
  for (const auto& [mask, f] : fs) {
    if (mask == 0 || mask >= vertex_count(d)) {
      throw InvalidParameter("cubic convolution takes vertices of V_d minus the zero vertex");
    }
  }
  return g;
}

}  // namespace

double gowers_norm_power(const GroupFunction& f, int d, NormMethod method) {
  if (d < 1) throw InvalidParameter("Gowers norm needs d >= 1");
  double power = 0.0;
  if (method == NormMethod::kClosedFormula) {
    power = closed_power(f, d);
  } else {
    if (d > 8) throw ResourceLimit("inductive Gowers norm capped at d = 8");
    if (std::pow(static_cast<double>(f.size()), d) > static_cast<double>(kMaxCubeParameters)) {
      throw ResourceLimit("inductive Gowers norm cost N^d exceeds 2^26");
    }
    power = inductive_power(f.group(), f.values(), d);
  }
  if (power < 0.0) {
    if (power < -kClampSlack) {
      throw NumericalConsistency("Gowers norm power is negative: " + std::to_string(power));
    }
    power = 0.0;
  }
  return power;
}

double gowers_norm(const GroupFunction& f, int d, NormMethod method) {
  const double power = gowers_norm_power(f, d, method);
  if (d == 1) return std::sqrt(power);
  return std::pow(power, 1.0 / static_cast<double>(vertex_count(d)));
}

GroupFunction cubic_convolution(int d, const VertexMap& fs) {
  const GroupSpec& g = tilde_family_group(d, fs);
  check_cube_resources(g, d);
  std::vector<const double*> fv(vertex_count(d), nullptr);
  for (VertexMask e = 1; e < vertex_count(d); ++e) fv[e] = fs.at(e).values().data();
  std::vector<double> out(g.order());
  parallel_for(g.order(), [&](std::size_t x) {
    detail::CubeAverager<double> avg(g, d, fv.data());
    out[x] = avg.at(x);
  });
  return GroupFunction(g, std::move(out));
}

GroupFunction dual_function(const GroupFunction& f, int d) {
  VertexMap fs;
  for (VertexMask e = 1; e < vertex_count(d); ++e) fs.emplace(e, f);
  return cubic_convolution(d, fs);
}

std::vector<double> dual_function_jacobian(const GroupFunction& f, int d) {
  const GroupSpec& g = f.group();
  check_cube_resources(g, d);
  const std::size_t n = g.order();
  const std::size_t m = vertex_count(d) - 1;
  const double scale = 1.0 / std::pow(static_cast<double>(n), d);
  std::vector<double> jac(n * n, 0.0);
  const double* fv = f.values().data();
  std::array<double, 16> prefix{};
  std::array<double, 16> suffix{};
  detail::for_each_cube(g, d, [&](std::size_t, const Element* pos) {
    // vertices 1..m occupy slots 0..m-1
    prefix[0] = 1.0;
    for (std::size_t i = 0; i < m; ++i) prefix[i + 1] = prefix[i] * fv[pos[i + 1]];
    suffix[m] = 1.0;
    for (std::size_t i = m; i-- > 0;) suffix[i] = suffix[i + 1] * fv[pos[i + 1]];
    double* row = jac.data() + pos[0] * n;
    for (std::size_t i = 0; i < m; ++i) row[pos[i + 1]] += prefix[i] * suffix[i + 1] * scale;
  });
  return jac;
}

std::vector<ElementaryBoundsRow> elementary_bounds_report(const GroupFunction& f, int d_max) {
  if (d_max < 2) throw InvalidParameter("elementary bounds report needs d_max >= 2");
  constexpr double kSlack = 1e-10;
  std::vector<ElementaryBoundsRow> rows;
  double previous = -1.0;
  for (int d = 1; d <= d_max; ++d) {
    ElementaryBoundsRow r;
    r.d = d;
    const double two_d = static_cast<double>(vertex_count(d));
    r.u_norm = gowers_norm(f, d);
    r.lp_half = lp_norm(f, two_d / 2.0);
    r.lp_sharp = lp_norm(f, two_d / (d + 1));
    const GroupFunction dual = dual_function(f, d);
    r.dual_sup = lp_norm(dual, kInfinity);
    r.dual_sup_bound = std::pow(r.lp_half, two_d - 1.0);
    r.dual_sup_sharp = std::pow(lp_norm(f, (two_d - 1.0) / d), two_d - 1.0);
    r.u_le_lp = r.u_norm <= r.lp_half + kSlack;
    r.u_le_sharp = r.u_norm <= r.lp_sharp + kSlack;
    r.dual_le_bound = r.dual_sup <= r.dual_sup_bound + kSlack;
    r.dual_le_sharp = r.dual_sup <= r.dual_sup_sharp + kSlack;
    r.monotone = previous < 0.0 || r.u_norm >= previous - 1e-12;
    previous = r.u_norm;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace gowers
