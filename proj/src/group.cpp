#include "gowers/group.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>

#include "gowers/error.hpp"
#include "gowers/numeric.hpp"

namespace gowers {

namespace {
std::atomic<int> g_threads{1};
constexpr std::size_t kMaxTableOrder = 1024;
}  // namespace

void set_thread_count(int n) { g_threads.store(std::max(1, n)); }
int thread_count() { return g_threads.load(); }

GroupSpec::GroupSpec() : GroupSpec(std::vector<std::size_t>{1}) {}

GroupSpec::GroupSpec(std::vector<std::size_t> orders) : orders_(std::move(orders)) {
  if (orders_.empty()) throw InvalidParameter("group needs at least one cyclic factor");
  order_ = 1;
  for (std::size_t n : orders_) {
    if (n < 1) throw InvalidParameter("cyclic factor orders must be >= 1");
    if (order_ > std::numeric_limits<std::uint32_t>::max() / n) {
      throw ResourceLimit("group order too large");
    }
    order_ *= n;
  }
  strides_.assign(orders_.size(), 1);
  for (std::size_t i = orders_.size(); i-- > 1;) strides_[i - 1] = strides_[i] * orders_[i];
  cyclic_ = std::count_if(orders_.begin(), orders_.end(), [](std::size_t n) { return n > 1; }) <= 1;
  if (!cyclic_ && order_ <= kMaxTableOrder) {
    auto table = std::make_shared<std::vector<std::uint32_t>>(order_ * order_);
    for (Element a = 0; a < order_; ++a) {
      for (Element b = 0; b < order_; ++b) {
        (*table)[a * order_ + b] = static_cast<std::uint32_t>(add_slow(a, b));
      }
    }
    table_ = std::move(table);
  }
}

Element GroupSpec::add_slow(Element a, Element b) const {
  Element result = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    const std::size_t da = (a / strides_[i]) % orders_[i];
    const std::size_t db = (b / strides_[i]) % orders_[i];
    result += ((da + db) % orders_[i]) * strides_[i];
  }
  return result;
}

Element GroupSpec::neg(Element a) const {
  if (cyclic_) return a == 0 ? 0 : order_ - a;
  Element result = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    const std::size_t da = (a / strides_[i]) % orders_[i];
    result += ((orders_[i] - da) % orders_[i]) * strides_[i];
  }
  return result;
}

Element GroupSpec::multiple(std::uint64_t k, Element a) const {
  Element result = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    const std::uint64_t da = (a / strides_[i]) % orders_[i];
    result += static_cast<Element>(((k % orders_[i]) * da) % orders_[i]) * strides_[i];
  }
  return result;
}

std::vector<std::size_t> GroupSpec::digits(Element a) const {
  std::vector<std::size_t> out(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) out[i] = (a / strides_[i]) % orders_[i];
  return out;
}

Element GroupSpec::from_digits(std::span<const std::size_t> digits) const {
  if (digits.size() != orders_.size()) throw DimensionMismatch("digit count does not match group rank");
  Element result = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (digits[i] >= orders_[i]) throw InvalidParameter("digit out of range");
    result += digits[i] * strides_[i];
  }
  return result;
}

GroupFunction::GroupFunction(GroupSpec group, std::vector<double> values)
    : group_(std::move(group)), values_(std::move(values)) {
  if (values_.size() != group_.order()) {
    throw InvalidParameter("function has " + std::to_string(values_.size()) +
                           " values for a group of order " + std::to_string(group_.order()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidParameter("function values must be finite");
  }
}

GroupFunction GroupFunction::constant(const GroupSpec& group, double c) {
  return GroupFunction(group, std::vector<double>(group.order(), c));
}

double lp_power(std::span<const double> f, double p) {
  CompensatedSum s;
  if (p == 1.0) {
    for (double v : f) s.add(std::abs(v));
  } else if (p == 2.0) {
    for (double v : f) s.add(v * v);
  } else {
    const double rp = std::round(p);
    if (rp == p && rp <= 64.0) {
      const auto e = static_cast<unsigned long long>(rp);
      for (double v : f) s.add(ipow(std::abs(v), e));
    } else {
      for (double v : f) s.add(std::pow(std::abs(v), p));
    }
  }
  return s.value() / static_cast<double>(f.size());
}

double lp_norm(const GroupFunction& f, double p) {
  if (!(p >= 1.0)) throw InvalidParameter("L^p norm requires p >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
  }
  const double power = lp_power(f.values(), p);
  if (p == 1.0) return power;
  if (p == 2.0) return std::sqrt(power);
  return std::pow(power, 1.0 / p);
}

GroupFunction translate(const GroupFunction& f, Element t) {
  const GroupSpec& g = f.group();
  if (t >= g.order()) throw InvalidParameter("translation element out of range");
  std::vector<double> out(g.order());
  for (Element x = 0; x < g.order(); ++x) out[x] = f[g.add(x, t)];
  return GroupFunction(g, std::move(out));
}

void require_same_group(const GroupFunction& a, const GroupFunction& b) {
  if (!(a.group() == b.group())) throw DimensionMismatch("functions live on different groups");
}

double inner(std::span<const double> f, std::span<const double> g) {
  if (f.size() != g.size()) throw DimensionMismatch("inner product of vectors of different sizes");
  CompensatedSum s;
  for (std::size_t i = 0; i < f.size(); ++i) s.add(f[i] * g[i]);
  return s.value() / static_cast<double>(f.size());
}

double inner(const GroupFunction& f, const GroupFunction& g) {
  require_same_group(f, g);
  return inner(f.values(), g.values());
}

double mean(const GroupFunction& f) { return compensated_mean(f.values()); }

namespace {
template <typename Op>
GroupFunction pointwise(const GroupFunction& a, const GroupFunction& b, Op op) {
  require_same_group(a, b);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(a[i], b[i]);
  return GroupFunction(a.group(), std::move(out));
}
}  // namespace

GroupFunction operator+(const GroupFunction& a, const GroupFunction& b) {
  return pointwise(a, b, [](double x, double y) { return x + y; });
}
GroupFunction operator-(const GroupFunction& a, const GroupFunction& b) {
  return pointwise(a, b, [](double x, double y) { return x - y; });
}
GroupFunction operator*(const GroupFunction& a, const GroupFunction& b) {
  return pointwise(a, b, [](double x, double y) { return x * y; });
}
GroupFunction operator*(double s, const GroupFunction& a) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * a[i];
  return GroupFunction(a.group(), std::move(out));
}

}  // namespace gowers
