#include "gowers/decomposable.hpp"

#include <cmath>

#include "gowers/error.hpp"
#include "gowers/numeric.hpp"

namespace gowers {

const GroupSpec& validate_decomposable(const DecomposableFunction& F) {
  if (F.terms.empty()) throw InvalidParameter("decomposable function has no terms");
  const GroupSpec* g = nullptr;
  for (const VertexMap& t : F.terms) {
    if (t.size() != vertex_count(F.d)) throw InvalidParameter("each term needs one function per vertex of V_d");
    for (VertexMask e = 0; e < vertex_count(F.d); ++e) {
      auto it = t.find(e);
      if (it == t.end()) throw InvalidParameter("term is missing vertex " + vertex_label(e, F.d));
      if (g == nullptr) g = &it->second.group();
      if (!(it->second.group() == *g)) throw DimensionMismatch("terms live on different groups");
    }
  }
  check_cube_resources(*g, F.d);
  return *g;
}

CubeFunction materialize(const DecomposableFunction& F) {
  const GroupSpec& g = validate_decomposable(F);
  std::vector<CompensatedSum> acc(cube_parameter_count(g, F.d));
  for (const VertexMap& t : F.terms) {
    const CubeFunction part = tensor_product(F.d, t);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i].add(part[i]);
  }
  std::vector<double> out(acc.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = acc[i].value();
  return CubeFunction(g, F.d, std::move(out));
}

double dd_certificate_value(const DecomposableFunction& F) {
  validate_decomposable(F);
  const double p = static_cast<double>(vertex_count(F.d));
  CompensatedSum acc;
  for (const VertexMap& t : F.terms) {
    double prod = 1.0;
    for (const auto& [e, f] : t) prod *= lp_norm(f, p);
    acc.add(prod);
  }
  return acc.value();
}

CubeFunction diagonal_translate(const CubeFunction& F, Element s) {
  const GroupSpec& g = F.group();
  if (s >= g.order()) throw InvalidParameter("translation element out of range");
  const std::size_t block = F.size() / g.order();
  std::vector<double> out(F.size());
  for (Element x = 0; x < g.order(); ++x) {
    const Element src = g.add(x, s);
    std::copy_n(F.values().begin() + static_cast<std::ptrdiff_t>(src * block), block,
                out.begin() + static_cast<std::ptrdiff_t>(x * block));
  }
  return CubeFunction(g, F.dimension(), std::move(out));
}

CubeFunction diagonal_project(const CubeFunction& F) {
  const GroupSpec& g = F.group();
  const std::size_t n = g.order();
  const std::size_t block = F.size() / n;
  std::vector<double> avg(block);
  parallel_for(block, [&](std::size_t j) {
    CompensatedSum s;
    for (Element x = 0; x < n; ++x) s.add(F[x * block + j]);
    avg[j] = s.value() / static_cast<double>(n);
  });
  std::vector<double> out(F.size());
  for (Element x = 0; x < n; ++x) std::copy(avg.begin(), avg.end(), out.begin() + static_cast<std::ptrdiff_t>(x * block));
  return CubeFunction(g, F.dimension(), std::move(out));
}

GroupFunction proj_conditional(const CubeFunction& H) {
  const GroupSpec& g = H.group();
  const std::size_t block = H.size() / g.order();
  std::vector<double> out(g.order());
  parallel_for(g.order(), [&](std::size_t x) {
    out[x] = compensated_mean(H.values().subspan(x * block, block));
  });
  return GroupFunction(g, std::move(out));
}

bool is_diagonally_invariant(const CubeFunction& F, double tol) {
  const std::size_t block = F.size() / F.group().order();
  for (std::size_t i = block; i < F.size(); ++i) {
    if (std::abs(F[i] - F[i % block]) > tol) return false;
  }
  return true;
}

DecomposableFunction dd_product(const DecomposableFunction& A, const DecomposableFunction& B, bool project_B,
                                std::size_t max_terms) {
  const GroupSpec& g = validate_decomposable(A);
  const GroupSpec& gb = validate_decomposable(B);
  if (!(g == gb)) throw DimensionMismatch("product of decomposable functions on different groups");
  if (A.d != B.d) throw DimensionMismatch("product of decomposable functions of different dimensions");
  if (!project_B && !is_diagonally_invariant(materialize(B))) {
    throw InvalidParameter("second factor is not diagonally invariant; request the projection");
  }
  const std::size_t n = g.order();
  const double count = static_cast<double>(A.terms.size()) * static_cast<double>(B.terms.size()) * static_cast<double>(n);
  if (count > static_cast<double>(max_terms)) {
    throw ResourceLimit("product would exceed " + std::to_string(max_terms) + " terms");
  }
  DecomposableFunction out;
  out.d = A.d;
  const double weight = 1.0 / static_cast<double>(n);
  for (const VertexMap& a : A.terms) {
    for (const VertexMap& b : B.terms) {
      for (Element s = 0; s < n; ++s) {
        VertexMap term;
        for (const auto& [e, f] : a) {
          GroupFunction prod = f * translate(b.at(e), s);
          term.emplace(e, e == 0 ? weight * prod : std::move(prod));
        }
        out.terms.push_back(std::move(term));
      }
    }
  }
  return out;
}

namespace {
void require_same_cube(const CubeFunction& a, const CubeFunction& b) {
  if (!(a.group() == b.group()) || a.dimension() != b.dimension()) {
    throw DimensionMismatch("cube functions on different cube groups");
  }
}
}  // namespace

CubeFunction operator*(const CubeFunction& a, const CubeFunction& b) {
  require_same_cube(a, b);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
  return CubeFunction(a.group(), a.dimension(), std::move(out));
}

CubeFunction operator-(const CubeFunction& a, const CubeFunction& b) {
  require_same_cube(a, b);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
  return CubeFunction(a.group(), a.dimension(), std::move(out));
}

}  // namespace gowers
