#include "gowers/anti_uniform.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "gowers/cube.hpp"
#include "gowers/error.hpp"
#include "gowers/gowers_norm.hpp"
#include "gowers/numeric.hpp"
#include "gowers/spectral.hpp"

namespace gowers {

namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

GroupFunction to_function(const GroupSpec& g, const Vec& v) {
  return GroupFunction(g, std::vector<double>(v.data(), v.data() + v.size()));
}

Vec to_vec(const GroupFunction& f) { return Eigen::Map<const Vec>(f.values().data(), static_cast<Eigen::Index>(f.size())); }

double rms(const Vec& v) { return v.size() == 0 ? 0.0 : std::sqrt(v.squaredNorm() / static_cast<double>(v.size())); }

// ||v||_p computed as max|v| · (E (|v|/max)^p)^{1/p} so large p does not overflow.
double stable_lp(std::span<const double> v, double p) {
  double top = 0.0;
  for (double x : v) top = std::max(top, std::abs(x));
  if (top == 0.0) return 0.0;
  CompensatedSum s;
  const double rp = std::round(p);
  for (double x : v) {
    const double r = std::abs(x) / top;
    s.add(rp == p ? ipow(r, static_cast<unsigned long long>(rp)) : std::pow(r, p));
  }
  return top * std::pow(s.value() / static_cast<double>(v.size()), 1.0 / p);
}

// (a^q + b^q)^{1/q} without forming the powers directly.
double power_mean_sum(double a, double b, double q) {
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  if (hi == 0.0) return 0.0;
  return hi * std::pow(1.0 + std::pow(lo / hi, q), 1.0 / q);
}

Mat jacobian_matrix(const GroupFunction& f, int d) {
  const std::vector<double> j = dual_function_jacobian(f, d);
  const auto n = static_cast<Eigen::Index>(f.size());
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(j.data(), n, n);
}

// Gradient and Hessian are in the averaging representation: both scaled by
// N relative to plain coordinates, which leaves the Newton step unchanged.
struct Model {
  std::function<double(const Vec&)> phi;
  std::function<Vec(const Vec&)> grad;
  std::function<Mat(const Vec&)> hess;
};

struct NewtonOutcome {
  Vec x;
  int iterations = 0;
  double grad_rms = 0.0;
  bool converged = false;
};

NewtonOutcome newton_minimize(const Model& m, Vec x, int max_iterations, double tol) {
  NewtonOutcome out;
  const auto n = x.size();
  double phi = m.phi(x);
  Vec grad = m.grad(x);
  double gn = rms(grad);
  int it = 0;
  for (; it < max_iterations; ++it) {
    if (!(gn > tol)) break;
    const Mat h = m.hess(x);
    const double scale = std::max(h.diagonal().cwiseAbs().maxCoeff(), 1e-300);
    bool moved = false;
    for (double lambda : {0.0, 1e-10, 1e-7, 1e-4, 1e-2, 1.0, 100.0}) {
      Mat a = h;
      a.diagonal().array() += lambda * scale + 1e-14 * scale;
      const Vec step = a.ldlt().solve(-grad);
      if (!step.allFinite()) continue;
      const double slope = grad.dot(step) / static_cast<double>(n);
      if (!(slope < 0.0)) continue;
      double alpha = 1.0;
      for (int ls = 0; ls < 40; ++ls, alpha *= 0.5) {
        const Vec trial = x + alpha * step;
        const double pt = m.phi(trial);
        if (std::isfinite(pt) && pt <= phi + 1e-4 * alpha * slope) {
          x = trial;
          phi = pt;
          moved = true;
          break;
        }
      }
      if (!moved) {
        // objective differences are at rounding level near the optimum;
        // accept the full step when it shrinks the gradient instead
        const Vec trial = x + step;
        const Vec gt = m.grad(trial);
        if (gt.allFinite() && rms(gt) < 0.5 * gn) {
          x = trial;
          phi = m.phi(x);
          moved = true;
        }
      }
      if (moved) break;
    }
    if (!moved) break;
    grad = m.grad(x);
    const double next = rms(grad);
    gn = next;
  }
  out.x = std::move(x);
  out.iterations = it;
  out.grad_rms = gn;
  out.converged = !(gn > tol);
  return out;
}

GroupFunction unit_normalize(const GroupFunction& f, int d, bool& ok) {
  const double n = gowers_norm(f, d);
  ok = n > 0.0 && std::isfinite(n);
  return ok ? (1.0 / n) * f : f;
}

bool is_zero(const GroupFunction& f) {
  return std::all_of(f.values().begin(), f.values().end(), [](double v) { return v == 0.0; });
}

struct AscentOutcome {
  GroupFunction x;
  double value = -std::numeric_limits<double>::infinity();
  int iterations = 0;
};

AscentOutcome ratio_ascent(const GroupFunction& g, int d, const GroupFunction& start, const DualNormOptions& opts) {
  AscentOutcome out;
  bool ok = false;
  GroupFunction x = unit_normalize(start, d, ok);
  if (!ok) return out;
  double r = inner(g, x);
  if (r < 0.0) {
    x = -1.0 * x;
    r = -r;
  }
  double eta = 1.0;
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    const GroupFunction dx = dual_function(x, d);
    const GroupFunction grad = g - r * dx;
    if (lp_norm(grad, 2) <= 1e-14) break;
    bool accepted = false;
    double gain = 0.0;
    for (int ls = 0; ls < 40; ++ls) {
      bool nok = false;
      GroupFunction y = unit_normalize(x + eta * grad, d, nok);
      if (nok) {
        const double ry = inner(g, y);
        if (ry > r) {
          gain = ry - r;
          x = std::move(y);
          r = ry;
          accepted = true;
          eta = std::min(eta * 2.0, 1e6);
          break;
        }
      }
      eta *= 0.5;
    }
    if (!accepted || gain <= opts.tol * std::abs(r)) break;
  }
  out.x = std::move(x);
  out.value = r;
  out.iterations = it;
  return out;
}

GroupFunction random_function(const GroupSpec& g, std::mt19937_64& rng) {
  std::vector<double> v(g.order());
  for (double& x : v) x = 2.0 * uniform01(rng) - 1.0;
  return GroupFunction(g, std::move(v));
}

GroupFunction sign_function(const GroupFunction& f) {
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f[i] > 0.0 ? 1.0 : (f[i] < 0.0 ? -1.0 : 0.0);
  return GroupFunction(f.group(), std::move(v));
}

DualNormResult dual_norm_d1(const GroupFunction& g) {
  DualNormResult res;
  const double c = g[0];
  const double spread = lp_norm(g - GroupFunction::constant(g.group(), c), kInfinity);
  res.converged = true;
  if (spread > 1e-12 * std::max(1.0, std::abs(c))) {
    res.unbounded = true;
    res.value = std::numeric_limits<double>::infinity();
    res.witness = GroupFunction::zeros(g.group());
    return res;
  }
  res.value = std::abs(mean(g));
  res.witness = GroupFunction::constant(g.group(), c < 0.0 ? -1.0 : 1.0);
  res.certificate_upper = res.value;
  res.stationarity_residual = lp_norm(g - res.value * res.witness, 2);
  return res;
}

Model dual_model(const GroupFunction& g, int d) {
  const GroupSpec grp = g.group();
  const Vec gv = to_vec(g);
  const double q = static_cast<double>(vertex_count(d));
  Model m;
  m.phi = [=](const Vec& x) {
    const GroupFunction f = to_function(grp, x);
    return gowers_norm_power(f, d) / q - inner(g, f);
  };
  m.grad = [=](const Vec& x) { return Vec(to_vec(dual_function(to_function(grp, x), d)) - gv); };
  m.hess = [=](const Vec& x) { return jacobian_matrix(to_function(grp, x), d); };
  return m;
}

}  // namespace

DualNormResult dual_norm(const GroupFunction& g, int d, const DualNormOptions& opts) {
  if (d < 1) throw InvalidParameter("dual norm needs d >= 1");
  if (opts.restarts < 1) throw InvalidParameter("dual norm needs at least one restart");
  if (d == 1) return dual_norm_d1(g);
  check_cube_resources(g.group(), d);
  DualNormResult res;
  if (is_zero(g)) {
    res.witness = GroupFunction::zeros(g.group());
    res.certificate_upper = 0.0;
    res.converged = true;
    return res;
  }

  std::mt19937_64 rng(opts.seed);
  AscentOutcome best;
  int total = 0;
  for (int r = 0; r < opts.restarts; ++r) {
    GroupFunction start = r == 0 ? g : (r == 1 ? sign_function(g) : random_function(g.group(), rng));
    AscentOutcome a = ratio_ascent(g, d, start, opts);
    total += a.iterations;
    if (a.value > best.value) best = std::move(a);
  }

  const double q = static_cast<double>(vertex_count(d));
  Vec x0;
  if (best.value > 0.0) {
    x0 = std::pow(best.value, 1.0 / (q - 1.0)) * to_vec(best.x);
  } else {
    x0 = to_vec(g);
  }
  const NewtonOutcome nw = newton_minimize(dual_model(g, d), x0, opts.newton_iterations, 1e-13);
  total += nw.iterations;
  const GroupFunction fstar = to_function(g.group(), nw.x);

  res.value = best.value;
  res.witness = best.x;
  bool ok = false;
  const GroupFunction polished = unit_normalize(fstar, d, ok);
  if (ok) {
    const double v = inner(g, polished);
    if (v >= res.value || !std::isfinite(res.value)) {
      res.value = v;
      res.witness = polished;
    }
  }
  if (!std::isfinite(res.value)) {
    res.value = 0.0;
    res.witness = GroupFunction::zeros(g.group());
  }
  const double fnorm = gowers_norm(fstar, d);
  const double rest = lp_norm(g - dual_function(fstar, d), 2);
  res.certificate_upper = std::pow(fnorm, q - 1.0) + std::pow(static_cast<double>(g.size()), 0.25) * rest;
  res.stationarity_residual = lp_norm(g - res.value * dual_function(res.witness, d), 2);
  res.iterations = total;
  res.converged = nw.converged;
  return res;
}

double nnorm(const GroupFunction& f, int d, int k, double delta) {
  if (d < 1) throw InvalidParameter("nnorm needs d >= 1");
  if (k < d - 1) throw InvalidParameter("nnorm needs k >= d - 1");
  if (!(delta > 0.0)) throw InvalidParameter("nnorm needs delta > 0");
  const double u = gowers_norm(f, d);
  if (k == d - 1) {
    if (k == 0) throw InvalidParameter("nnorm with k = d - 1 needs d >= 2");
    const double q = static_cast<double>(vertex_count(d));
    return power_mean_sum(u, delta * stable_lp(f.values(), q / 2.0), q);
  }
  const double q = static_cast<double>(vertex_count(k));
  return power_mean_sum(u, delta * stable_lp(f.values(), q), q);
}

namespace {

Model thk_model(const GroupFunction& g, int d, int k, double delta) {
  const GroupSpec grp = g.group();
  const Vec gv = to_vec(g);
  const auto n = static_cast<double>(g.size());
  const double two_d = static_cast<double>(vertex_count(d));
  Model m;
  if (k == d - 1) {
    const unsigned p = 1u << (d - 1);
    const double dq = ipow(delta, vertex_count(d));
    auto s_of = [=](const Vec& x) {
      CompensatedSum s;
      for (double v : x) s.add(ipow(v, p));
      return s.value() / n;
    };
    m.phi = [=](const Vec& x) {
      const GroupFunction f = to_function(grp, x);
      const double s = s_of(x);
      return (gowers_norm_power(f, d) + dq * s * s) / two_d - inner(g, f);
    };
    m.grad = [=](const Vec& x) {
      const Vec df = to_vec(dual_function(to_function(grp, x), d));
      const double s = s_of(x);
      Vec out = df - gv;
      for (Eigen::Index i = 0; i < x.size(); ++i) out[i] += dq * s * ipow(x[i], p - 1);
      return out;
    };
    m.hess = [=](const Vec& x) {
      Mat h = jacobian_matrix(to_function(grp, x), d);
      const double s = s_of(x);
      Vec w(x.size());
      for (Eigen::Index i = 0; i < x.size(); ++i) w[i] = ipow(x[i], p - 1);
      h.noalias() += (dq * p / n) * w * w.transpose();
      for (Eigen::Index i = 0; i < x.size(); ++i) h(i, i) += dq * s * (p - 1) * ipow(x[i], p - 2);
      return h;
    };
    return m;
  }
  const unsigned long long q = vertex_count(k);
  const double qd = static_cast<double>(q);
  const double mexp = static_cast<double>(std::size_t{1} << (k - d));  // ||f||_U^{2^k} = P^mexp
  m.phi = [=](const Vec& x) {
    const GroupFunction f = to_function(grp, x);
    const double p = gowers_norm_power(f, d);
    CompensatedSum s;
    for (double v : x) s.add(ipow(delta * v, q));
    return (std::pow(p, mexp) + s.value() / n) / qd - inner(g, f);
  };
  m.grad = [=](const Vec& x) {
    const GroupFunction f = to_function(grp, x);
    const double p = gowers_norm_power(f, d);
    const Vec df = to_vec(dual_function(f, d));
    Vec out = (mexp == 1.0 ? 1.0 : std::pow(p, mexp - 1.0)) * df - gv;
    for (Eigen::Index i = 0; i < x.size(); ++i) out[i] += delta * ipow(delta * x[i], q - 1);
    return out;
  };
  m.hess = [=](const Vec& x) {
    const GroupFunction f = to_function(grp, x);
    const double p = gowers_norm_power(f, d);
    Mat h = (mexp == 1.0 ? 1.0 : std::pow(p, mexp - 1.0)) * jacobian_matrix(f, d);
    if (mexp > 1.0) {
      const Vec df = to_vec(dual_function(f, d));
      const double coef = (mexp - 1.0) * two_d * (mexp == 2.0 ? 1.0 : std::pow(p, mexp - 2.0)) / n;
      h.noalias() += coef * df * df.transpose();
    }
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      h(i, i) += delta * delta * (qd - 1.0) * ipow(delta * x[i], q - 2);
    }
    return h;
  };
  return m;
}

GroupFunction power_map(const GroupFunction& f, unsigned long long e) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = ipow(f[i], e);
  return GroupFunction(f.group(), std::move(out));
}

void fill_diagnostics(ThkResult& r, const GroupFunction& g) {
  const double fexp = r.k == r.d - 1 ? static_cast<double>(vertex_count(r.d - 1))
                                     : static_cast<double>(vertex_count(r.k));
  const double hexp = fexp / (fexp - 1.0);
  r.f_u_norm = gowers_norm(r.f, r.d);
  r.f_lp_norm = stable_lp(r.f.values(), fexp);
  r.h_dual_lp = fexp == 1.0 ? lp_norm(r.h, kInfinity) : stable_lp(r.h.values(), hexp);
  r.f_sup = lp_norm(r.f, kInfinity);
  r.h_l1 = lp_norm(r.h, 1);
  r.residual = lp_norm(g - dual_function(r.f, r.d) - r.h, 2);
}

}  // namespace

ThkResult thk_decompose(const GroupFunction& g, int d, int k, double delta, const ThkOptions& opts) {
  if (d < 1) throw InvalidParameter("decomposition needs d >= 1");
  if (k < d - 1) throw InvalidParameter("decomposition needs k >= d - 1");
  if (k == 0) throw InvalidParameter("k = 0 makes the regularized norm non-smooth");
  if (k > 16) throw ResourceLimit("k is capped at 16");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw InvalidParameter("delta must be positive");
  check_cube_resources(g.group(), d);

  ThkResult r;
  r.d = d;
  r.k = k;
  r.delta = delta;
  if (is_zero(g)) {
    r.f = GroupFunction::zeros(g.group());
    r.h = GroupFunction::zeros(g.group());
    r.converged = true;
    fill_diagnostics(r, g);
    return r;
  }

  const bool variant = k == d - 1;
  const double q = static_cast<double>(variant ? vertex_count(d) : vertex_count(k));
  const double n0 = nnorm(g, d, k, delta);
  const double gg = inner(g, g);
  // minimizer of Phi along the ray s·g
  const double s = std::pow(gg, 1.0 / (q - 1.0)) / std::pow(n0, q / (q - 1.0));
  const NewtonOutcome nw = newton_minimize(thk_model(g, d, k, delta), s * to_vec(g), opts.max_iterations, opts.tol);
  const GroupFunction fstar = to_function(g.group(), nw.x);

  const double nn = nnorm(fstar, d, k, delta);
  if (!(nn > 0.0) || !std::isfinite(nn)) throw NumericalConsistency("regularized solve collapsed to zero");
  const double c = std::pow(nn, q - 1.0);
  const GroupFunction fp = (1.0 / nn) * fstar;
  const double two_d = static_cast<double>(vertex_count(d));
  r.c = c;
  if (variant) {
    const unsigned p = 1u << (d - 1);
    r.f = std::pow(c, 1.0 / (two_d - 1.0)) * fp;
    const double sp = mean(power_map(fp, p));
    r.h = (c * ipow(delta, vertex_count(d)) * sp) * power_map(fp, p - 1);
  } else {
    const double u = gowers_norm(fp, d);
    r.f = std::pow(c * std::pow(u, q - two_d), 1.0 / (two_d - 1.0)) * fp;
    const GroupFunction scaled = delta * fp;
    r.h = (c * delta) * power_map(scaled, vertex_count(k) - 1);
  }
  r.iterations = nw.iterations;
  r.converged = nw.converged;
  fill_diagnostics(r, g);
  return r;
}

ThborneResult thborne_decompose(const GroupFunction& g, int d, double delta, std::vector<int> k_schedule,
                                const ThkOptions& opts) {
  if (!(delta > 0.0)) throw InvalidParameter("delta must be positive");
  if (k_schedule.empty()) {
    for (int k = d; k <= 16; k += 2) k_schedule.push_back(k);
  }
  for (int k : k_schedule) {
    if (k < d || k > 16) throw InvalidParameter("schedule entries must lie in [d, 16]");
  }
  ThborneResult out;
  bool have = false;
  constexpr double kStable = 1e-6;
  for (int k : k_schedule) {
    ThkResult cur;
    try {
      cur = thk_decompose(g, d, k, delta, opts);
    } catch (const NumericalConsistency& e) {
      out.flagged = true;
      out.note = "k = " + std::to_string(k) + ": " + e.what();
      break;
    } catch (const InvalidParameter& e) {
      // non-finite iterates at very large exponents
      out.flagged = true;
      out.note = "k = " + std::to_string(k) + ": " + e.what();
      break;
    }
    if (!cur.converged && have) {
      out.flagged = true;
      out.note = "k = " + std::to_string(k) + " did not converge; kept the previous exponent";
      break;
    }
    out.schedule_run.push_back(k);
    const double prev_sup = have ? out.result.f_sup : 0.0;
    out.result = std::move(cur);
    if (have && std::abs(out.result.f_sup - prev_sup) <= kStable) {
      out.stabilized = true;
      break;
    }
    have = true;
    if (out.result.converged && out.result.f_sup <= 1.0 / delta + kStable) {
      out.note = "sup bound already met";
      break;
    }
  }
  if (!have) throw NumericalConsistency("no exponent in the schedule produced a decomposition");
  if (!out.result.converged) out.flagged = true;
  return out;
}

ConvexHullReport convex_hull_probe(const GroupFunction& g, int d, int samples, const DualNormOptions& opts) {
  if (samples < 1) throw InvalidParameter("convex hull probe needs at least one sample");
  ConvexHullReport rep;
  const DualNormResult dn = dual_norm(g, d, opts);
  rep.dual_norm_value = d == 2 ? u2_dual_norm_spectral(g) : dn.value;
  rep.precondition_met = rep.dual_norm_value <= 1.0 + 1e-9;
  const GroupSpec& grp = g.group();
  const double two_d = static_cast<double>(vertex_count(d));
  GroupFunction x = GroupFunction::zeros(grp);
  for (int i = 0; i < samples; ++i) {
    const GroupFunction r = g - x;
    GroupFunction s = GroupFunction::zeros(grp);
    if (i == 0) {
      if (is_zero(dn.witness)) {
        rep.errors.push_back(lp_norm(r, 2));
        continue;
      }
      s = dual_function(dn.witness, d);
    } else {
      const double nr = gowers_norm(r, d);
      if (!(nr > 0.0)) {
        rep.errors.push_back(lp_norm(r, 2));
        continue;
      }
      s = std::pow(nr, -(two_d - 1.0)) * dual_function(r, d);
    }
    const GroupFunction dir = s - x;
    const double denom = inner(dir, dir);
    if (denom > 0.0) {
      const double gamma = std::clamp(inner(r, dir) / denom, 0.0, 1.0);
      if (gamma > 0.0) {
        x = x + gamma * dir;
        ++rep.atoms;
      }
    }
    rep.errors.push_back(lp_norm(g - x, 2));
  }
  rep.approximation = x;
  return rep;
}

}  // namespace gowers
