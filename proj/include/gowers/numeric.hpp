#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <thread>
#include <vector>

namespace gowers {

/// Neumaier-compensated accumulator. All reductions in the library feed
/// values in a fixed canonical order so that results are bit-reproducible.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

inline double compensated_mean(std::span<const double> xs) {
  return xs.empty() ? 0.0 : compensated_sum(xs) / static_cast<double>(xs.size());
}

/// Number of worker threads used by parallel loops (default 1).
void set_thread_count(int n);
int thread_count();

/// Runs fn(i) for i in [0, n). Each call must only write to its own output
/// slot; results are then independent of the thread count.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn, std::size_t min_parallel = 2) {
  const auto threads = static_cast<std::size_t>(thread_count());
  if (threads <= 1 || n < min_parallel) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min(threads, n);
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
}

/// Integer power by repeated squaring; exponents here are powers of two.
inline double ipow(double base, unsigned long long e) {
  double result = 1.0;
  while (e != 0) {
    if (e & 1ULL) result *= base;
    e >>= 1;
    if (e != 0) base *= base;
  }
  return result;
}

/// Uniform double in [0, 1) from the top 53 bits, identical on every platform.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace gowers
