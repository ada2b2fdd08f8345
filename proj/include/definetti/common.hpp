#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace definetti {

using cplx = std::complex<double>;
using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;
using rvec = Eigen::VectorXd;
using rmat = Eigen::MatrixXd;

// Invalid argument values (non-finite inputs, out-of-range indices, malformed
// profiles). CLI maps this to exit code 3.
class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Dense-oracle budget violations. CLI maps this to exit code 2.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Weight truncation too aggressive for the requested tolerance. Carries the
// smallest adequate w_max so callers can retry.
class truncation_error : public std::runtime_error {
 public:
  truncation_error(const std::string& what, int adequate_w_max)
      : std::runtime_error(what), w_max_needed(adequate_w_max) {}
  int w_max_needed;
};

inline bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Amplitude cap for dense multi-mode objects; DEFINETTI_BUDGET overrides.
inline std::uint64_t amplitude_budget() {
  if (const char* env = std::getenv("DEFINETTI_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return std::uint64_t{1} << 22;
}

// d^n with overflow saturation, for budget checks.
inline std::uint64_t dense_size(int d, int n) {
  std::uint64_t s = 1;
  for (int i = 0; i < n; ++i) {
    if (s > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(d)) return std::uint64_t{1} << 63;
    s *= static_cast<std::uint64_t>(d);
  }
  return s;
}

// Deterministic blocked pairwise reduction over [0, count): items are folded
// sequentially into per-block accumulators (blocks of fixed size `block`),
// then block results are combined in a pairwise tree over the block index.
// The combination structure depends only on count, so results are bit-stable
// regardless of how block sums would be scheduled across workers.
template <typename T, typename Fold, typename Add>
T blocked_accumulate(std::size_t count, T zero, Fold&& fold, Add&& add,
                     std::size_t block = 256) {
  if (count == 0) return zero;
  std::vector<T> partial;
  partial.reserve((count + block - 1) / block);
  for (std::size_t lo = 0; lo < count; lo += block) {
    const std::size_t hi = std::min(count, lo + block);
    T acc = zero;
    for (std::size_t i = lo; i < hi; ++i) fold(acc, i);
    partial.push_back(std::move(acc));
  }
  while (partial.size() > 1) {
    std::vector<T> next;
    next.reserve((partial.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < partial.size(); i += 2) {
      add(partial[i], partial[i + 1]);
      next.push_back(std::move(partial[i]));
    }
    if (partial.size() % 2 == 1) next.push_back(std::move(partial.back()));
    partial.swap(next);
  }
  return std::move(partial.front());
}

}  // namespace definetti
