#include "gowers/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <unordered_map>

#include "gowers/detail/cube_kernel.hpp"
#include "gowers/numeric.hpp"

namespace gowers {

Partition::Partition(GroupSpec group, std::vector<std::vector<Element>> cells)
    : group_(std::move(group)), cells_(std::move(cells)), label_(group_.order(), group_.order()) {
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    if (cells_[c].empty()) throw InvalidParameter("partition cells must be nonempty");
    for (Element x : cells_[c]) {
      if (x >= group_.order()) throw InvalidParameter("partition cell element out of range");
      if (label_[x] != group_.order()) throw InvalidParameter("partition cells overlap");
      label_[x] = c;
    }
  }
  for (std::size_t l : label_) {
    if (l == group_.order()) throw InvalidParameter("partition cells do not cover the group");
  }
}

Partition Partition::trivial(const GroupSpec& g) {
  std::vector<Element> all(g.order());
  for (Element x = 0; x < g.order(); ++x) all[x] = x;
  return Partition(g, {std::move(all)});
}

Partition Partition::singletons(const GroupSpec& g) {
  std::vector<std::vector<Element>> cells(g.order());
  for (Element x = 0; x < g.order(); ++x) cells[x] = {x};
  return Partition(g, std::move(cells));
}

Partition Partition::from_labels(const GroupSpec& g, const std::vector<std::size_t>& labels) {
  if (labels.size() != g.order()) throw InvalidParameter("one label per group element required");
  std::map<std::size_t, std::size_t> renumber;
  std::vector<std::vector<Element>> cells;
  for (Element x = 0; x < labels.size(); ++x) {
    auto [it, fresh] = renumber.try_emplace(labels[x], cells.size());
    if (fresh) cells.emplace_back();
    cells[it->second].push_back(x);
  }
  return Partition(g, std::move(cells));
}

bool Partition::almost_uniform() const {
  const std::size_t n = group_.order();
  const std::size_t m = cells_.size();
  const std::size_t lo = n / m;
  const std::size_t hi = (n + m - 1) / m;
  return std::all_of(cells_.begin(), cells_.end(), [&](const auto& c) { return c.size() == lo || c.size() == hi; });
}

Partition common_refinement(const Partition& P, const Partition& Q) {
  if (!(P.group() == Q.group())) throw DimensionMismatch("partitions of different groups");
  std::vector<std::size_t> labels(P.group().order());
  for (Element x = 0; x < labels.size(); ++x) labels[x] = P.cell_of(x) * Q.size() + Q.cell_of(x);
  return Partition::from_labels(P.group(), labels);
}

UniformizeResult uniformize(const Partition& P, std::size_t m) {
  const GroupSpec& g = P.group();
  const std::size_t n = g.order();
  if (m < 1 || m > n) throw InvalidParameter("uniformize needs 1 <= m <= N");
  const std::size_t q = n / m;
  std::vector<std::vector<Element>> chunks;
  std::vector<Element> pool;
  for (const auto& cell : P.cells()) {
    std::size_t i = 0;
    while (i + q <= cell.size() && chunks.size() < m) {
      chunks.emplace_back(cell.begin() + static_cast<std::ptrdiff_t>(i), cell.begin() + static_cast<std::ptrdiff_t>(i + q));
      i += q;
    }
    pool.insert(pool.end(), cell.begin() + static_cast<std::ptrdiff_t>(i), cell.end());
  }
  std::sort(pool.begin(), pool.end());
  std::size_t next = 0;
  while (chunks.size() < m) {
    chunks.emplace_back(pool.begin() + static_cast<std::ptrdiff_t>(next), pool.begin() + static_cast<std::ptrdiff_t>(next + q));
    next += q;
  }
  // n mod m elements remain; one extra element each for the first cells
  for (std::size_t c = 0; next < pool.size(); ++c, ++next) chunks[c].push_back(pool[next]);
  UniformizeResult out{Partition(g, std::move(chunks)), 0};
  for (const auto& cell : out.partition.cells()) {
    const std::size_t owner = P.cell_of(cell.front());
    if (std::all_of(cell.begin(), cell.end(), [&](Element x) { return P.cell_of(x) == owner; })) ++out.good_cells;
  }
  if (!out.partition.almost_uniform()) throw InternalError("uniformized partition is not almost uniform");
  return out;
}

namespace {

// Vertex coordinates of every parameter, D entries per parameter.
std::vector<Element> cube_vertices(const GroupSpec& g, int d) {
  const std::size_t D = vertex_count(d);
  std::vector<Element> verts(cube_parameter_count(g, d) * D);
  detail::for_each_cube(g, d, [&](std::size_t idx, const Element* pos) {
    std::copy(pos, pos + D, verts.begin() + static_cast<std::ptrdiff_t>(idx * D));
  });
  return verts;
}

// Dense rectangle ids for every parameter plus the cell tuple of each id.
struct RectangleIds {
  std::vector<std::size_t> id;
  std::vector<std::vector<std::size_t>> tuples;
};

RectangleIds rectangle_ids(const std::vector<Element>& verts, std::size_t D, const std::vector<std::size_t>& labels) {
  const std::size_t params = verts.size() / D;
  RectangleIds out;
  out.id.resize(params);
  std::map<std::vector<std::size_t>, std::size_t> index;
  std::vector<std::size_t> tuple(D);
  for (std::size_t p = 0; p < params; ++p) {
    for (std::size_t e = 0; e < D; ++e) tuple[e] = labels[verts[p * D + e]];
    auto [it, fresh] = index.try_emplace(tuple, out.tuples.size());
    if (fresh) out.tuples.push_back(tuple);
    out.id[p] = it->second;
  }
  return out;
}

void require_matching(const CubeFunction& F, const CubeFunction& G) {
  if (!(F.group() == G.group()) || F.dimension() != G.dimension()) {
    throw DimensionMismatch("cube functions on different cube groups");
  }
}

// Streams sum_R |int_R E dnu| for candidate labelings.
class DefectEvaluator {
 public:
  DefectEvaluator(const CubeFunction& F, const CubeFunction& F_P)
      : n_(F.group().order()), D_(vertex_count(F.dimension())), verts_(cube_vertices(F.group(), F.dimension())) {
    require_matching(F, F_P);
    diff_.resize(F.size());
    for (std::size_t i = 0; i < diff_.size(); ++i) diff_[i] = F[i] - F_P[i];
  }

  std::size_t order() const { return n_; }

  double operator()(const std::vector<std::size_t>& labels, std::size_t m) {
    ++evaluations_;
    const double space = std::pow(static_cast<double>(m), static_cast<double>(D_));
    const std::size_t params = diff_.size();
    if (space <= static_cast<double>(std::size_t{1} << 20)) {
      dense_.assign(static_cast<std::size_t>(space), 0.0);
      touched_.clear();
      for (std::size_t p = 0; p < params; ++p) {
        std::size_t key = 0;
        for (std::size_t e = D_; e-- > 0;) key = key * m + labels[verts_[p * D_ + e]];
        if (dense_[key] == 0.0) touched_.push_back(key);
        dense_[key] += diff_[p];
      }
      std::sort(touched_.begin(), touched_.end());
      touched_.erase(std::unique(touched_.begin(), touched_.end()), touched_.end());
      double total = 0.0;
      for (std::size_t k : touched_) total += std::abs(dense_[k]);
      return total / static_cast<double>(params);
    }
    const RectangleIds ids = rectangle_ids(verts_, D_, labels);
    std::vector<double> sums(ids.tuples.size(), 0.0);
    for (std::size_t p = 0; p < params; ++p) sums[ids.id[p]] += diff_[p];
    double total = 0.0;
    for (double s : sums) total += std::abs(s);
    return total / static_cast<double>(params);
  }

  double exact(const std::vector<std::size_t>& labels) const {
    const RectangleIds ids = rectangle_ids(verts_, D_, labels);
    std::vector<CompensatedSum> sums(ids.tuples.size());
    for (std::size_t p = 0; p < diff_.size(); ++p) sums[ids.id[p]].add(diff_[p]);
    CompensatedSum total;
    for (const auto& s : sums) total.add(std::abs(s.value()));
    return total.value() / static_cast<double>(diff_.size());
  }

  std::uint64_t evaluations() const { return evaluations_; }

 private:
  std::size_t n_;
  std::size_t D_;
  std::vector<Element> verts_;
  std::vector<double> diff_;
  std::vector<double> dense_;
  std::vector<std::size_t> touched_;
  std::uint64_t evaluations_ = 0;
};

// Number of set partitions of n elements into at most m blocks.
double partition_count(std::size_t n, std::size_t m) {
  std::vector<double> s(m + 1, 0.0);  // Stirling numbers of the second kind, row by row
  s[0] = 1.0;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t k = std::min(i, m); k >= 1; --k) s[k] = static_cast<double>(k) * s[k] + s[k - 1];
    s[0] = 0.0;
  }
  double total = 0.0;
  for (std::size_t k = 1; k <= m; ++k) total += s[k];
  return total;
}

struct SearchOutcome {
  double value = -1.0;
  std::vector<std::size_t> labels;
  std::uint64_t evaluations = 0;
};

SearchOutcome exhaustive_search(const CubeFunction& F, const CubeFunction& F_P, std::size_t m) {
  DefectEvaluator eval(F, F_P);
  const std::size_t n = eval.order();
  SearchOutcome best;
  std::vector<std::size_t> a(n, 0);
  std::vector<std::size_t> top(n, 0);  // max label among a[0..i]
  // restricted growth strings with labels < m
  while (true) {
    const double v = eval(a, m);
    if (v > best.value) {
      best.value = v;
      best.labels = a;
    }
    std::size_t i = n;
    while (i-- > 1) {
      if (a[i] < m - 1 && a[i] <= top[i - 1]) break;
    }
    if (i == 0 || i >= n) break;
    ++a[i];
    top[i] = std::max(top[i - 1], a[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      a[j] = 0;
      top[j] = top[j - 1];
    }
  }
  best.evaluations = eval.evaluations();
  return best;
}

SearchOutcome hill_climb(const CubeFunction& F, const CubeFunction& F_P, std::size_t m, std::uint64_t budget,
                         std::uint64_t seed) {
  DefectEvaluator eval(F, F_P);
  const std::size_t n = eval.order();
  std::mt19937_64 rng(seed);
  SearchOutcome best;
  while (eval.evaluations() < budget) {
    std::vector<std::size_t> labels(n);
    for (auto& l : labels) l = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(m)) % m;
    double cur = eval(labels, m);
    bool improved = true;
    while (improved && eval.evaluations() < budget) {
      improved = false;
      for (std::size_t x = 0; x < n && eval.evaluations() < budget; ++x) {
        const std::size_t keep = labels[x];
        for (std::size_t c = 0; c < m && eval.evaluations() < budget; ++c) {
          if (c == keep) continue;
          labels[x] = c;
          const double v = eval(labels, m);
          if (v > cur + 1e-15) {
            cur = v;
            improved = true;
            break;
          }
          labels[x] = keep;
        }
      }
    }
    if (cur > best.value) {
      best.value = cur;
      best.labels = labels;
    }
  }
  best.evaluations = eval.evaluations();
  return best;
}

}  // namespace

double cube_energy(const CubeFunction& F) { return lp_power(F.values(), 2.0); }

RectangleAveraging average_over_rectangles(const CubeFunction& F, const Partition& P) {
  if (!(F.group() == P.group())) throw DimensionMismatch("partition and function live on different groups");
  const std::size_t D = vertex_count(F.dimension());
  const std::vector<Element> verts = cube_vertices(F.group(), F.dimension());
  const RectangleIds ids = rectangle_ids(verts, D, P.labels());
  const std::size_t rects = ids.tuples.size();
  std::vector<CompensatedSum> sums(rects);
  std::vector<std::size_t> counts(rects, 0);
  for (std::size_t p = 0; p < F.size(); ++p) {
    sums[ids.id[p]].add(F[p]);
    ++counts[ids.id[p]];
  }
  std::vector<double> avg(rects);
  for (std::size_t r = 0; r < rects; ++r) avg[r] = sums[r].value() / static_cast<double>(counts[r]);
  std::vector<double> fp(F.size());
  for (std::size_t p = 0; p < F.size(); ++p) fp[p] = avg[ids.id[p]];
  RectangleAveraging out{CubeFunction(F.group(), F.dimension(), std::move(fp)), RectangleAverage{D, {}}};
  out.R.rectangles.reserve(rects);
  for (std::size_t r = 0; r < rects; ++r) {
    out.R.rectangles.push_back(
        Rectangle{ids.tuples[r], avg[r], static_cast<double>(counts[r]) / static_cast<double>(F.size())});
  }
  std::sort(out.R.rectangles.begin(), out.R.rectangles.end(),
            [](const Rectangle& a, const Rectangle& b) { return a.cells < b.cells; });
  return out;
}

double partition_defect(const CubeFunction& F, const CubeFunction& F_P, const Partition& Q) {
  if (!(F.group() == Q.group())) throw DimensionMismatch("partition and function live on different groups");
  return DefectEvaluator(F, F_P).exact(Q.labels());
}

DefectResult adversarial_defect(const CubeFunction& F, const CubeFunction& F_P, std::size_t m, std::uint64_t budget,
                                std::uint64_t seed, double exhaustive_threshold) {
  require_matching(F, F_P);
  const GroupSpec& g = F.group();
  if (m < 1) throw InvalidParameter("adversarial search needs m >= 1");
  m = std::min(m, g.order());
  SearchOutcome best;
  bool exhaustive = false;
  if (partition_count(g.order(), m) <= exhaustive_threshold) {
    best = exhaustive_search(F, F_P, m);
    exhaustive = true;
  } else {
    constexpr std::size_t kRestarts = 8;
    const std::uint64_t share = std::max<std::uint64_t>(budget / kRestarts, g.order() * m);
    std::vector<SearchOutcome> runs(kRestarts);
    parallel_for(kRestarts, [&](std::size_t r) {
      runs[r] = hill_climb(F, F_P, m, share, seed * 0x9E3779B97F4A7C15ULL + r + 1);
    });
    for (auto& r : runs) {
      best.evaluations += r.evaluations;
      if (r.value > best.value) {
        best.value = r.value;
        best.labels = std::move(r.labels);
      }
    }
  }
  const Partition Q = Partition::from_labels(g, best.labels);
  DefectResult out{partition_defect(F, F_P, Q), Q, exhaustive, best.evaluations};
  return out;
}

RegularizeResult regularize(const CubeFunction& F, double delta, const RegularizeOptions& opts) {
  if (!(delta > 0.0)) throw InvalidParameter("delta must be positive");
  double sup = 0.0;
  for (double v : F.values()) sup = std::max(sup, std::abs(v));
  if (sup > 1.0 + 1e-12) throw InvalidParameter("regularize expects ||F||_inf <= 1; rescale first");
  const GroupSpec& g = F.group();
  const std::size_t n = g.order();
  const std::size_t cap = opts.cell_cap == 0 ? n : std::min(opts.cell_cap, n);

  Partition P = Partition::trivial(g);
  std::vector<RegularityRound> history;
  int rounds = 0;
  for (;;) {
    RectangleAveraging avg = average_over_rectangles(F, P);
    RegularityRound round;
    round.cells = P.size();
    round.energy = cube_energy(avg.F_P);
    const std::size_t m_test = std::min(n, std::max(P.size(), opts.min_test_cells));
    const DefectResult found = adversarial_defect(F, avg.F_P, m_test, opts.budget,
                                                  opts.seed + static_cast<std::uint64_t>(rounds),
                                                  opts.exhaustive_threshold);
    round.defect = found.defect;
    round.exhaustive = found.exhaustive;
    if (found.defect <= delta) {
      history.push_back(round);
      return RegularizeResult{std::move(P), std::move(avg.F_P), std::move(avg.R), std::move(history), rounds,
                              found.defect};
    }
    const Partition refined = common_refinement(P, found.Q);
    round.refined_cells = refined.size();
    round.refined_energy = cube_energy(average_over_rectangles(F, refined).F_P);
    if (round.refined_energy < round.energy + found.defect * found.defect - 1e-9) {
      history.push_back(round);
      throw InternalError("energy increment below defect squared");
    }
    if (refined.size() > cap) {
      history.push_back(round);
      throw RegularityFailure("refinement needs " + std::to_string(refined.size()) + " cells, cap is " +
                                  std::to_string(cap),
                              std::move(history));
    }
    const std::size_t target = std::min(cap, refined.size() * refined.size());
    UniformizeResult uni = uniformize(refined, target);
    round.uniformized_cells = uni.partition.size();
    round.uniformized_energy = cube_energy(average_over_rectangles(F, uni.partition).F_P);
    round.good_cells = uni.good_cells;
    history.push_back(round);
    P = std::move(uni.partition);
    ++rounds;
    if (rounds >= opts.max_rounds) throw RegularityFailure("round limit reached", std::move(history));
  }
}

double weak_to_strong_constant(int d) { return static_cast<double>(vertex_count(d + 1)) - 1.0; }

double weak_to_strong_exponent(int d) {
  return (static_cast<double>(vertex_count(d)) - 1.0) / (static_cast<double>(vertex_count(d + 1)) - 1.0);
}

double weak_to_strong_bound(int d, double theta) {
  return std::sqrt(weak_to_strong_constant(d) * std::pow(theta, weak_to_strong_exponent(d)) + theta);
}

WeakToStrongReport weak_to_strong_check(const DecomposableFunction& F, double theta, int samples,
                                        const RegularizeOptions& opts) {
  if (!(theta > 0.0)) throw InvalidParameter("theta must be positive");
  if (dd_certificate_value(F) > 1.0 + 1e-12) throw InvalidParameter("certificate value must be at most 1");
  const CubeFunction M = materialize(F);
  const RegularizeResult reg = regularize(M, theta, opts);
  WeakToStrongReport rep;
  rep.theta = theta;
  rep.cells = reg.P.size();
  const CubeFunction diff = M - reg.F_P;
  rep.l2_error = std::sqrt(cube_energy(diff));
  rep.bound = weak_to_strong_bound(F.d, theta);
  rep.product_bound = weak_to_strong_constant(F.d) * std::pow(theta, weak_to_strong_exponent(F.d));
  std::mt19937_64 rng(opts.seed ^ 0x5DEECE66DULL);
  const GroupSpec& g = M.group();
  for (int s = 0; s < samples; ++s) {
    VertexMap fam;
    for (VertexMask e = 0; e < vertex_count(F.d); ++e) {
      std::vector<double> v(g.order());
      for (double& x : v) x = uniform01(rng);
      fam.emplace(e, GroupFunction(g, std::move(v)));
    }
    const CubeFunction t = tensor_product(F.d, fam);
    CompensatedSum acc;
    for (std::size_t i = 0; i < t.size(); ++i) acc.add(diff[i] * t[i]);
    rep.worst_product = std::max(rep.worst_product, std::abs(acc.value()) / static_cast<double>(t.size()));
  }
  rep.holds = rep.l2_error <= rep.bound + 1e-12 && rep.worst_product <= rep.product_bound + 1e-12;
  return rep;
}

}  // namespace gowers
