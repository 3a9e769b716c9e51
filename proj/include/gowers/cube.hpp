#pragma once

// The cube group Z_d, handled exclusively through its parametrization
// (x, t_1..t_d) -> (x + eps·t : eps in V_d). The Haar measure mu_d is the
// pushforward of the uniform measure on Z^{d+1}, so integrals over Z_d are
// plain averages over N^{d+1} parameters.

#include <map>
#include <string>
#include <vector>

#include "gowers/group.hpp"

namespace gowers {

/// eps in V_d = {0,1}^d as a bit mask; bit (i-1) holds eps_i.
using VertexMask = unsigned;

/// Functions indexed by cube vertices. Families over V_d carry all 2^d
/// masks; families over V_d \ {0} omit mask 0.
using VertexMap = std::map<VertexMask, GroupFunction>;

inline constexpr int kMaxCubeDimension = 4;
inline constexpr std::size_t kMaxCubeParameters = std::size_t{1} << 26;

inline std::size_t vertex_count(int d) { return std::size_t{1} << d; }

/// "eps_1 eps_2 ... eps_d" without separators, e.g. mask 1 with d = 2 is "10".
std::string vertex_label(VertexMask mask, int d);
/// Inverse of vertex_label; throws InvalidParameter on malformed labels.
VertexMask parse_vertex_label(const std::string& label);

/// Throws ResourceLimit when d is outside [1, 4] or N^{d+1} exceeds 2^26.
void check_cube_resources(const GroupSpec& g, int d);
std::size_t cube_parameter_count(const GroupSpec& g, int d);

struct CubePoint {
  Element x = 0;
  std::vector<Element> t;
};

/// x + eps·t.
Element vertex_coordinate(const GroupSpec& g, const CubePoint& p, VertexMask eps);

/// Function on Z_d stored row-major over (x, t_1, ..., t_d).
class CubeFunction {
 public:
  CubeFunction(GroupSpec group, int d, std::vector<double> values);
  static CubeFunction constant(const GroupSpec& group, int d, double c);

  const GroupSpec& group() const { return group_; }
  int dimension() const { return d_; }
  std::span<const double> values() const { return values_; }
  const std::vector<double>& vector() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t param) const { return values_[param]; }

  std::size_t index(Element x, std::span<const Element> t) const;
  CubePoint point(std::size_t param) const;

 private:
  GroupSpec group_;
  int d_;
  std::vector<double> values_;
};

/// Integral over mu_d, i.e. the uniform average over all parameters.
double cube_mean(const CubeFunction& F);
double cube_lp_norm(const CubeFunction& F, double p);

/// E_{x, t} prod_{eps in V_d} f_eps(x + eps·t). Every mask of V_d must be
/// present (InvalidParameter otherwise).
double cube_integral(int d, const VertexMap& fs);

/// Product function (x, t) -> prod_eps f_eps(x + eps·t) as a CubeFunction.
CubeFunction tensor_product(int d, const VertexMap& fs);

struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds(double slack) const { return lhs <= rhs + slack; }
};

/// Cauchy-Schwarz-Gowers: |cube_integral(fs)| against prod_eps ||f_eps||_{U(d)}.
BoundCheck csg_check(int d, const VertexMap& fs);

/// Validates that sigma (a permutation of V_d given as sigma[eps]) comes from a
/// signed coordinate permutation of the Euclidean cube.
void require_cube_isometry(int d, const std::vector<VertexMask>& sigma);

/// All 2^d d! isometries of the cube as vertex permutations.
std::vector<std::vector<VertexMask>> cube_isometries(int d);

/// Returns p' whose vertex coordinates satisfy y'_{sigma(eps)} = y_eps.
CubePoint cube_symmetry_orbit(const GroupSpec& g, const CubePoint& p, const std::vector<VertexMask>& sigma);

/// The family f'_{sigma(eps)} = f_eps.
VertexMap permute_family(const VertexMap& fs, const std::vector<VertexMask>& sigma);

}  // namespace gowers
