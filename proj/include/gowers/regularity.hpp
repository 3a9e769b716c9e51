#pragma once

// Partitions of Z, averaging over the rectangles they induce on the cube
// group, and the energy-increment regularization loop.

#include <cstdint>
#include <vector>

#include "gowers/cube.hpp"
#include "gowers/decomposable.hpp"
#include "gowers/error.hpp"
#include "gowers/group.hpp"

namespace gowers {

class Partition {
 public:
  /// Cells must be nonempty, disjoint and cover the group.
  Partition(GroupSpec group, std::vector<std::vector<Element>> cells);
  static Partition trivial(const GroupSpec& g);
  static Partition singletons(const GroupSpec& g);
  /// Cells numbered by first occurrence; unused labels are dropped.
  static Partition from_labels(const GroupSpec& g, const std::vector<std::size_t>& labels);

  const GroupSpec& group() const { return group_; }
  const std::vector<std::vector<Element>>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  std::size_t cell_of(Element x) const { return label_[x]; }
  const std::vector<std::size_t>& labels() const { return label_; }

  /// Every cell has floor(N/m) or ceil(N/m) elements.
  bool almost_uniform() const;

 private:
  GroupSpec group_;
  std::vector<std::vector<Element>> cells_;
  std::vector<std::size_t> label_;
};

/// Regularization outputs are always almost uniform.
using AlmostUniformPartition = Partition;

/// Cells of P and Q intersected.
Partition common_refinement(const Partition& P, const Partition& Q);

struct UniformizeResult {
  Partition partition;
  std::size_t good_cells = 0;  // cells contained in a single cell of the input
};

/// Splits the cells of P into chunks of size floor(N/m), pools what is left
/// and regroups it so the result has exactly m almost-uniform cells.
UniformizeResult uniformize(const Partition& P, std::size_t m);

struct Rectangle {
  std::vector<std::size_t> cells;  // one cell id per vertex of V_d
  double average = 0.0;
  double mass = 0.0;  // nu-measure
};

struct RectangleAverage {
  std::size_t D = 0;  // 2^d
  std::vector<Rectangle> rectangles;  // sorted by cell tuple
};

struct RectangleAveraging {
  CubeFunction F_P;
  RectangleAverage R;
};

/// F_P is constant on every rectangle (cell(x + eps·t))_eps and equal there to
/// the average of F; rectangles without mass never occur on parameters.
RectangleAveraging average_over_rectangles(const CubeFunction& F, const Partition& P);

/// ||F||^2 in L^2(mu_d).
double cube_energy(const CubeFunction& F);

struct DefectResult {
  double defect = 0.0;
  Partition Q;
  bool exhaustive = false;
  std::uint64_t evaluations = 0;
};

inline constexpr double kExhaustiveThreshold = 1e6;

/// Searches partitions Q with at most m cells for the largest
/// sum_R |int_R (F - F_P) dnu|. All partitions are enumerated when their count
/// is at most exhaustive_threshold; otherwise seeded restarts with
/// single-element moves spend `budget` evaluations.
DefectResult adversarial_defect(const CubeFunction& F, const CubeFunction& F_P, std::size_t m,
                                std::uint64_t budget, std::uint64_t seed,
                                double exhaustive_threshold = kExhaustiveThreshold);

/// Defect of one given partition.
double partition_defect(const CubeFunction& F, const CubeFunction& F_P, const Partition& Q);

struct RegularizeOptions {
  std::uint64_t budget = 10'000;
  std::uint64_t seed = 1;
  std::size_t cell_cap = 0;        // 0 means N
  std::size_t min_test_cells = 2;  // the adversary always gets at least this many cells
  double exhaustive_threshold = kExhaustiveThreshold;
  int max_rounds = 1000;
};

struct RegularityRound {
  std::size_t cells = 0;
  double energy = 0.0;
  double defect = 0.0;
  bool exhaustive = false;
  std::size_t refined_cells = 0;
  double refined_energy = 0.0;
  std::size_t uniformized_cells = 0;
  double uniformized_energy = 0.0;
  std::size_t good_cells = 0;
};

class RegularityFailure : public Error {
 public:
  RegularityFailure(const std::string& what, std::vector<RegularityRound> history)
      : Error(what), history_(std::move(history)) {}
  const std::vector<RegularityRound>& history() const { return history_; }

 private:
  std::vector<RegularityRound> history_;
};

struct RegularizeResult {
  Partition P;
  CubeFunction F_P;
  RectangleAverage R;
  std::vector<RegularityRound> history;
  int rounds = 0;  // accepted increments
  double final_defect = 0.0;
};

RegularizeResult regularize(const CubeFunction& F, double delta, const RegularizeOptions& opts = {});

struct WeakToStrongReport {
  double theta = 0.0;
  double l2_error = 0.0;   // ||F - F_P||_{L^2(mu_d)}
  double bound = 0.0;      // (C theta^c + theta)^{1/2}
  double product_bound = 0.0;  // C theta^c
  double worst_product = 0.0;  // max |int (F - F_P) prod f_eps| over sampled families
  std::size_t cells = 0;
  bool holds = false;
};

/// C = 2^{d+1} - 1 and c = (2^d - 1)/(2^{d+1} - 1).
double weak_to_strong_constant(int d);
double weak_to_strong_exponent(int d);
double weak_to_strong_bound(int d, double theta);

WeakToStrongReport weak_to_strong_check(const DecomposableFunction& F, double theta, int samples = 16,
                                        const RegularizeOptions& opts = {});

}  // namespace gowers
