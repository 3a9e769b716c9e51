#pragma once

// Finite abelian groups Z_{N1} x ... x Z_{Nk}, real-valued functions on them
// and integration against the uniform (Haar) probability measure.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <vector>

namespace gowers {

/// Elements are addressed by their row-major mixed-radix index: the first
/// factor is the most significant digit.
using Element = std::size_t;

class GroupSpec {
 public:
  /// The trivial group Z_1.
  GroupSpec();
  explicit GroupSpec(std::vector<std::size_t> orders);

  static GroupSpec cyclic(std::size_t n) { return GroupSpec({n}); }

  const std::vector<std::size_t>& orders() const { return orders_; }
  std::size_t order() const { return order_; }
  std::size_t rank() const { return orders_.size(); }

  Element add(Element a, Element b) const {
    if (cyclic_) {
      const Element s = a + b;
      return s >= order_ ? s - order_ : s;
    }
    if (table_) return (*table_)[a * order_ + b];
    return add_slow(a, b);
  }
  Element neg(Element a) const;
  Element sub(Element a, Element b) const { return add(a, neg(b)); }
  /// k·a for a nonnegative integer k.
  Element multiple(std::uint64_t k, Element a) const;

  std::vector<std::size_t> digits(Element a) const;
  Element from_digits(std::span<const std::size_t> digits) const;

  bool operator==(const GroupSpec& other) const { return orders_ == other.orders_; }

 private:
  Element add_slow(Element a, Element b) const;

  std::vector<std::size_t> orders_;
  std::vector<std::size_t> strides_;
  std::size_t order_ = 1;
  bool cyclic_ = true;
  std::shared_ptr<const std::vector<std::uint32_t>> table_;
};

/// Real-valued function on a finite abelian group. Immutable once built.
class GroupFunction {
 public:
  GroupFunction() : GroupFunction(GroupSpec(), std::vector<double>{0.0}) {}
  /// Throws InvalidParameter on a size mismatch or non-finite value.
  GroupFunction(GroupSpec group, std::vector<double> values);

  static GroupFunction constant(const GroupSpec& group, double c);
  static GroupFunction zeros(const GroupSpec& group) { return constant(group, 0.0); }

  const GroupSpec& group() const { return group_; }
  std::span<const double> values() const { return values_; }
  const std::vector<double>& vector() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](Element x) const { return values_[x]; }

 private:
  GroupSpec group_;
  std::vector<double> values_;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// (E_x |f(x)|^p)^{1/p}; max |f| for p = kInfinity. p < 1 is rejected.
double lp_norm(const GroupFunction& f, double p);
/// E_x |f(x)|^p without the final root (p finite, >= 1).
double lp_power(std::span<const double> f, double p);

/// f_t(x) = f(x + t).
GroupFunction translate(const GroupFunction& f, Element t);

/// <f; g> = E_x f(x) g(x).
double inner(const GroupFunction& f, const GroupFunction& g);
double inner(std::span<const double> f, std::span<const double> g);

double mean(const GroupFunction& f);

GroupFunction operator+(const GroupFunction& a, const GroupFunction& b);
GroupFunction operator-(const GroupFunction& a, const GroupFunction& b);
/// Pointwise product.
GroupFunction operator*(const GroupFunction& a, const GroupFunction& b);
GroupFunction operator*(double s, const GroupFunction& a);

void require_same_group(const GroupFunction& a, const GroupFunction& b);

}  // namespace gowers
