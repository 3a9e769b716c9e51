#include "gowers/cube.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "gowers/detail/cube_kernel.hpp"
#include "gowers/error.hpp"
#include "gowers/gowers_norm.hpp"

namespace gowers {

std::string vertex_label(VertexMask mask, int d) {
  std::string s(static_cast<std::size_t>(d), '0');
  for (int i = 0; i < d; ++i) {
    if (mask & (1u << i)) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

VertexMask parse_vertex_label(const std::string& label) {
  if (label.empty() || label.size() > 8) throw InvalidParameter("bad vertex label '" + label + "'");
  VertexMask mask = 0;
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (label[i] == '1') {
      mask |= 1u << i;
    } else if (label[i] != '0') {
      throw InvalidParameter("bad vertex label '" + label + "'");
    }
  }
  return mask;
}

std::size_t cube_parameter_count(const GroupSpec& g, int d) {
  std::size_t count = g.order();
  for (int i = 0; i < d; ++i) count *= g.order();
  return count;
}

void check_cube_resources(const GroupSpec& g, int d) {
  if (d < 1) throw InvalidParameter("cube dimension must be >= 1");
  if (d > kMaxCubeDimension) {
    throw ResourceLimit("cube dimension " + std::to_string(d) + " exceeds the cap of " +
                        std::to_string(kMaxCubeDimension));
  }
  const double params = std::pow(static_cast<double>(g.order()), d + 1);
  if (params > static_cast<double>(kMaxCubeParameters)) {
    throw ResourceLimit("parameter space N^(d+1) = " + std::to_string(params) + " exceeds 2^26");
  }
}

Element vertex_coordinate(const GroupSpec& g, const CubePoint& p, VertexMask eps) {
  if (eps >> p.t.size() != 0) throw DimensionMismatch("vertex has more coordinates than the cube point");
  Element y = p.x;
  for (std::size_t i = 0; i < p.t.size(); ++i) {
    if (eps & (1u << i)) y = g.add(y, p.t[i]);
  }
  return y;
}

CubeFunction::CubeFunction(GroupSpec group, int d, std::vector<double> values)
    : group_(std::move(group)), d_(d), values_(std::move(values)) {
  check_cube_resources(group_, d_);
  if (values_.size() != cube_parameter_count(group_, d_)) {
    throw InvalidParameter("cube function needs N^(d+1) values");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidParameter("cube function values must be finite");
  }
}

CubeFunction CubeFunction::constant(const GroupSpec& group, int d, double c) {
  check_cube_resources(group, d);
  return CubeFunction(group, d, std::vector<double>(cube_parameter_count(group, d), c));
}

std::size_t CubeFunction::index(Element x, std::span<const Element> t) const {
  if (t.size() != static_cast<std::size_t>(d_)) throw DimensionMismatch("cube point dimension mismatch");
  std::size_t idx = x;
  for (Element ti : t) idx = idx * group_.order() + ti;
  return idx;
}

CubePoint CubeFunction::point(std::size_t param) const {
  CubePoint p;
  p.t.assign(static_cast<std::size_t>(d_), 0);
  const std::size_t n = group_.order();
  for (std::size_t i = static_cast<std::size_t>(d_); i-- > 0;) {
    p.t[i] = param % n;
    param /= n;
  }
  p.x = param;
  return p;
}

double cube_mean(const CubeFunction& F) { return compensated_mean(F.values()); }

double cube_lp_norm(const CubeFunction& F, double p) {
  if (!(p >= 1.0)) throw InvalidParameter("L^p norm requires p >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : F.values()) m = std::max(m, std::abs(v));
    return m;
  }
  const double power = lp_power(F.values(), p);
  return p == 2.0 ? std::sqrt(power) : std::pow(power, 1.0 / p);
}

namespace {

const GroupSpec& family_group(int d, const VertexMap& fs, bool include_zero) {
  if (fs.empty()) throw InvalidParameter("empty vertex family");
  const GroupSpec& g = fs.begin()->second.group();
  for (VertexMask e = include_zero ? 0 : 1; e < vertex_count(d); ++e) {
    auto it = fs.find(e);
    if (it == fs.end()) throw InvalidParameter("missing function for vertex " + vertex_label(e, d));
    if (!(it->second.group() == g)) throw DimensionMismatch("vertex functions live on different groups");
  }
  for (const auto& [mask, f] : fs) {
    if (mask >= vertex_count(d) || (!include_zero && mask == 0)) {
      throw InvalidParameter("unexpected vertex " + std::to_string(mask) + " in family");
    }
  }
  return g;
}

}  // namespace

double cube_integral(int d, const VertexMap& fs) {
  const GroupSpec& g = family_group(d, fs, true);
  check_cube_resources(g, d);
  std::vector<const double*> fv(vertex_count(d));
  for (VertexMask e = 0; e < vertex_count(d); ++e) fv[e] = fs.at(e).values().data();
  std::vector<double> per_x(g.order());
  parallel_for(g.order(), [&](std::size_t x) {
    detail::CubeAverager<double> avg(g, d, fv.data());
    per_x[x] = avg.at(x);
  });
  return compensated_mean(per_x);
}

CubeFunction tensor_product(int d, const VertexMap& fs) {
  const GroupSpec& g = family_group(d, fs, true);
  check_cube_resources(g, d);
  std::vector<double> values(cube_parameter_count(g, d));
  std::vector<const double*> fv(vertex_count(d));
  for (VertexMask e = 0; e < vertex_count(d); ++e) fv[e] = fs.at(e).values().data();
  detail::for_each_cube(g, d, [&](std::size_t idx, const Element* pos) {
    double prod = 1.0;
    for (std::size_t e = 0; e < fv.size(); ++e) prod *= fv[e][pos[e]];
    values[idx] = prod;
  });
  return CubeFunction(g, d, std::move(values));
}

BoundCheck csg_check(int d, const VertexMap& fs) {
  BoundCheck out;
  out.lhs = std::abs(cube_integral(d, fs));
  out.rhs = 1.0;
  for (const auto& [mask, f] : fs) out.rhs *= gowers_norm(f, d);
  return out;
}

void require_cube_isometry(int d, const std::vector<VertexMask>& sigma) {
  const std::size_t n = vertex_count(d);
  if (sigma.size() != n) throw InvalidParameter("vertex permutation has the wrong size");
  std::vector<bool> seen(n, false);
  for (VertexMask v : sigma) {
    if (v >= n || seen[v]) throw InvalidParameter("vertex map is not a permutation");
    seen[v] = true;
  }
  const VertexMask flip = sigma[0];
  std::vector<int> image(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    const VertexMask u = sigma[1u << i] ^ flip;
    if (u == 0 || (u & (u - 1)) != 0) throw InvalidParameter("vertex permutation is not a cube isometry");
    image[static_cast<std::size_t>(i)] = std::countr_zero(u);
  }
  for (VertexMask e = 0; e < n; ++e) {
    VertexMask expect = flip;
    for (int i = 0; i < d; ++i) {
      if (e & (1u << i)) expect ^= 1u << image[static_cast<std::size_t>(i)];
    }
    if (sigma[e] != expect) throw InvalidParameter("vertex permutation is not a cube isometry");
  }
}

std::vector<std::vector<VertexMask>> cube_isometries(int d) {
  std::vector<int> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<VertexMask>> out;
  do {
    for (VertexMask flip = 0; flip < vertex_count(d); ++flip) {
      std::vector<VertexMask> sigma(vertex_count(d));
      for (VertexMask e = 0; e < vertex_count(d); ++e) {
        VertexMask img = 0;
        for (int i = 0; i < d; ++i) {
          if (e & (1u << i)) img |= 1u << perm[static_cast<std::size_t>(i)];
        }
        sigma[e] = img ^ flip;
      }
      out.push_back(std::move(sigma));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

CubePoint cube_symmetry_orbit(const GroupSpec& g, const CubePoint& p, const std::vector<VertexMask>& sigma) {
  const int d = static_cast<int>(p.t.size());
  require_cube_isometry(d, sigma);
  std::vector<Element> image(vertex_count(d));
  for (VertexMask e = 0; e < vertex_count(d); ++e) image[sigma[e]] = vertex_coordinate(g, p, e);
  CubePoint out;
  out.x = image[0];
  out.t.resize(p.t.size());
  for (int i = 0; i < d; ++i) out.t[static_cast<std::size_t>(i)] = g.sub(image[1u << i], out.x);
  for (VertexMask e = 0; e < vertex_count(d); ++e) {
    if (vertex_coordinate(g, out, e) != image[e]) throw InternalError("isometry image is not a cube");
  }
  return out;
}

VertexMap permute_family(const VertexMap& fs, const std::vector<VertexMask>& sigma) {
  VertexMap out;
  for (const auto& [mask, f] : fs) {
    if (mask >= sigma.size()) throw InvalidParameter("family vertex outside permutation domain");
    out.emplace(sigma[mask], f);
  }
  return out;
}

}  // namespace gowers
