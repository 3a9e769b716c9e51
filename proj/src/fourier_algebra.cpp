#include "gowers/fourier_algebra.hpp"

#include <algorithm>
#include <cmath>

#include "gowers/detail/cube_kernel.hpp"
#include "gowers/error.hpp"
#include "gowers/gowers_norm.hpp"
#include "gowers/numeric.hpp"
#include "gowers/spectral.hpp"

namespace gowers {

namespace {

using ComplexValues = std::vector<Complex>;

ComplexValues complex_vertex(const AdTerm& term, VertexMask e) {
  const GroupFunction& re = term.re.at(e);
  ComplexValues out(re.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = re[i];
  if (term.conjugate_pair) {
    if (auto it = term.im.find(e); it != term.im.end()) {
      for (std::size_t i = 0; i < out.size(); ++i) out[i].imag(it->second[i]);
    }
  }
  return out;
}

AdTerm term_from_complex(const GroupSpec& g, std::vector<ComplexValues> fv, bool pair) {
  AdTerm t;
  t.conjugate_pair = pair;
  for (std::size_t e = 1; e < fv.size(); ++e) {
    std::vector<double> re(g.order());
    std::vector<double> im(g.order());
    for (std::size_t i = 0; i < re.size(); ++i) {
      re[i] = fv[e][i].real();
      im[i] = fv[e][i].imag();
    }
    t.re.emplace(static_cast<VertexMask>(e), GroupFunction(g, std::move(re)));
    if (pair) t.im.emplace(static_cast<VertexMask>(e), GroupFunction(g, std::move(im)));
  }
  return t;
}

// Per-term vertex arrays ready for the cube kernel (slot 0 stays null).
struct PreparedTerm {
  bool pair = false;
  std::vector<std::vector<double>> real;
  std::vector<ComplexValues> cplx;
  std::vector<const double*> real_ptr;
  std::vector<const Complex*> cplx_ptr;
};

PreparedTerm prepare(const AdTerm& term, int d) {
  PreparedTerm p;
  p.pair = term.conjugate_pair;
  const std::size_t v = vertex_count(d);
  if (p.pair) {
    p.cplx.resize(v);
    p.cplx_ptr.assign(v, nullptr);
    for (VertexMask e = 1; e < v; ++e) {
      p.cplx[e] = complex_vertex(term, e);
      p.cplx_ptr[e] = p.cplx[e].data();
    }
  } else {
    p.real.resize(v);
    p.real_ptr.assign(v, nullptr);
    for (VertexMask e = 1; e < v; ++e) {
      p.real[e] = term.re.at(e).vector();
      p.real_ptr[e] = p.real[e].data();
    }
  }
  return p;
}

double evaluate(const GroupSpec& g, int d, const PreparedTerm& p, Element x) {
  if (p.pair) {
    detail::CubeAverager<Complex> avg(g, d, p.cplx_ptr.data());
    return 2.0 * avg.at(x).real();
  }
  detail::CubeAverager<double> avg(g, d, p.real_ptr.data());
  return avg.at(x);
}

}  // namespace

const GroupSpec& validate_decomposition(const AdDecomposition& D) {
  if (D.d < 1) throw InvalidParameter("decomposition dimension must be >= 1");
  if (D.terms.empty()) throw InvalidParameter("decomposition has no terms");
  const GroupSpec* g = nullptr;
  for (const AdTerm& t : D.terms) {
    if (t.re.size() != vertex_count(D.d) - 1) {
      throw InvalidParameter("each term needs exactly one function per nonzero vertex");
    }
    for (VertexMask e = 1; e < vertex_count(D.d); ++e) {
      auto it = t.re.find(e);
      if (it == t.re.end()) throw InvalidParameter("term is missing vertex " + vertex_label(e, D.d));
      if (g == nullptr) g = &it->second.group();
      if (!(it->second.group() == *g)) throw DimensionMismatch("decomposition terms live on different groups");
    }
    for (const auto& [e, f] : t.im) {
      if (e == 0 || e >= vertex_count(D.d)) throw InvalidParameter("imaginary part on an invalid vertex");
      if (!(f.group() == *g)) throw DimensionMismatch("decomposition terms live on different groups");
    }
  }
  check_cube_resources(*g, D.d);
  return *g;
}

GroupFunction materialize_term(const AdTerm& term, int d) {
  AdDecomposition single{d, {term}};
  return materialize(single);
}

GroupFunction materialize(const AdDecomposition& D) {
  const GroupSpec& g = validate_decomposition(D);
  std::vector<PreparedTerm> prepared;
  prepared.reserve(D.terms.size());
  for (const AdTerm& t : D.terms) prepared.push_back(prepare(t, D.d));
  std::vector<double> out(g.order());
  parallel_for(g.order(), [&](std::size_t x) {
    CompensatedSum acc;
    for (const PreparedTerm& p : prepared) acc.add(evaluate(g, D.d, p, x));
    out[x] = acc.value();
  });
  return GroupFunction(g, std::move(out));
}

double ad_term_value(const AdTerm& term, int d) {
  const double p = static_cast<double>(vertex_count(d - 1));
  double value = term.conjugate_pair ? 2.0 : 1.0;
  for (VertexMask e = 1; e < vertex_count(d); ++e) {
    if (term.conjugate_pair) {
      const ComplexValues c = complex_vertex(term, e);
      std::vector<double> mod(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) mod[i] = std::abs(c[i]);
      value *= std::pow(lp_power(mod, p), 1.0 / p);
    } else {
      value *= lp_norm(term.re.at(e), p);
    }
  }
  return value;
}

double ad_certificate_value(const AdDecomposition& D) {
  validate_decomposition(D);
  CompensatedSum acc;
  for (const AdTerm& t : D.terms) acc.add(ad_term_value(t, D.d));
  return acc.value();
}

AdDecomposition ad_product(const AdDecomposition& A, const AdDecomposition& B, std::size_t max_terms) {
  const GroupSpec& g = validate_decomposition(A);
  const GroupSpec& gb = validate_decomposition(B);
  if (!(g == gb)) throw DimensionMismatch("product of decompositions on different groups");
  if (A.d != B.d) throw DimensionMismatch("product of decompositions of different orders");
  const int d = A.d;
  const std::size_t n = g.order();
  const std::size_t shifts = cube_parameter_count(g, d) / n;
  std::size_t pairs = 0;
  for (const AdTerm& a : A.terms) {
    for (const AdTerm& b : B.terms) pairs += (a.conjugate_pair && b.conjugate_pair) ? 2 : 1;
  }
  if (static_cast<double>(pairs) * static_cast<double>(shifts) > static_cast<double>(max_terms)) {
    throw ResourceLimit("product decomposition would exceed " + std::to_string(max_terms) + " terms");
  }
  const std::size_t v = vertex_count(d);
  const double weight = 1.0 / static_cast<double>(shifts);
  AdDecomposition out;
  out.d = d;
  out.terms.reserve(pairs * shifts);
  std::vector<Element> u(static_cast<std::size_t>(d), 0);
  for (const AdTerm& a : A.terms) {
    std::vector<ComplexValues> fa(v);
    for (VertexMask e = 1; e < v; ++e) fa[e] = complex_vertex(a, e);
    for (const AdTerm& b : B.terms) {
      std::vector<ComplexValues> fb(v);
      for (VertexMask e = 1; e < v; ++e) fb[e] = complex_vertex(b, e);
      const bool pair = a.conjugate_pair || b.conjugate_pair;
      const int variants = (a.conjugate_pair && b.conjugate_pair) ? 2 : 1;
      for (std::size_t code = 0; code < shifts; ++code) {
        std::size_t c = code;
        for (int i = d; i-- > 0;) {
          u[static_cast<std::size_t>(i)] = c % n;
          c /= n;
        }
        for (int variant = 0; variant < variants; ++variant) {
          std::vector<ComplexValues> prod(v);
          for (VertexMask e = 1; e < v; ++e) {
            Element s = 0;
            for (int i = 0; i < d; ++i) {
              if (e & (1u << i)) s = g.add(s, u[static_cast<std::size_t>(i)]);
            }
            prod[e].resize(n);
            for (Element x = 0; x < n; ++x) {
              const Complex other = variant == 0 ? fb[e][g.add(x, s)] : std::conj(fb[e][g.add(x, s)]);
              prod[e][x] = fa[e][x] * other;
            }
          }
          for (Complex& z : prod[1]) z *= weight;
          out.terms.push_back(term_from_complex(g, std::move(prod), pair));
        }
      }
    }
  }
  return out;
}

PairingCheck ad_pairing_bound_check(const AdDecomposition& D, const GroupFunction& h) {
  const GroupFunction m = materialize(D);
  require_same_group(m, h);
  PairingCheck out;
  out.lhs = std::abs(inner(m, h));
  out.rhs = ad_certificate_value(D) * gowers_norm(h, D.d);
  return out;
}

AdDecomposition character_decomposition(const GroupFunction& g) {
  const GroupSpec& grp = g.group();
  check_cube_resources(grp, 2);
  const Spectrum s = dft(g);
  double largest = 0.0;
  for (const Complex& c : s.coefficients) largest = std::max(largest, std::abs(c));
  AdDecomposition out;
  out.d = 2;
  const std::size_t n = grp.order();
  for (Element xi = 0; xi < n; ++xi) {
    const Element nxi = grp.neg(xi);
    if (nxi < xi) continue;
    const Complex c = s.coefficients[xi];
    // coefficients at rounding level carry no mass worth a term
    if (std::abs(c) <= 1e-15 * largest) continue;
    std::vector<ComplexValues> fv(4, ComplexValues(n));
    for (Element x = 0; x < n; ++x) {
      const Complex chi = character(grp, xi, x);
      fv[1][x] = chi;
      fv[2][x] = chi;
      fv[3][x] = c * std::conj(chi);
    }
    if (nxi == xi) {
      // real character, real coefficient
      for (auto& vtx : fv) {
        for (Complex& z : vtx) z = z.real();
      }
      out.terms.push_back(term_from_complex(grp, std::move(fv), false));
    } else {
      out.terms.push_back(term_from_complex(grp, std::move(fv), true));
    }
  }
  if (out.terms.empty()) return constant_decomposition(grp, 2, 0.0);
  return out;
}

AdDecomposition constant_decomposition(const GroupSpec& g, int d, double c) {
  AdTerm t;
  for (VertexMask e = 1; e < vertex_count(d); ++e) {
    t.re.emplace(e, GroupFunction::constant(g, e == 1 ? c : 1.0));
  }
  return AdDecomposition{d, {std::move(t)}};
}

}  // namespace gowers
