#pragma once

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace tel {

/// Raised when a requested computation exceeds a documented size cap.
class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised on malformed or unknown experiment configuration.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline constexpr int kMaxTensorOrder = 8;

/// Exact binomial coefficient in 64-bit arithmetic; throws once the
/// intermediate product would overflow, which callers treat as a size cap.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (std::uint64_t j = 1; j <= k; ++j) {
    // r * (n - k + j) is divisible by j at every step
    unsigned __int128 wide = static_cast<unsigned __int128>(r) * (n - k + j);
    wide /= j;
    if (wide > static_cast<unsigned __int128>(UINT64_MAX))
      throw resource_error("binomial(" + std::to_string(n) + "," + std::to_string(k) +
                           ") exceeds 64-bit range");
    r = static_cast<std::uint64_t>(wide);
  }
  return r;
}

inline double factorial(int n) {
  double r = 1.0;
  for (int j = 2; j <= n; ++j) r *= j;
  return r;
}

/// (c-1)!! for even c; the Gaussian moment coefficient E[xi^c] of a
/// standard normal.
inline double double_factorial_odd(int c) {
  double r = 1.0;
  for (int j = c - 1; j >= 1; j -= 2) r *= j;
  return r;
}

inline int hardware_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

/// Runs fn(chunk) for chunk = 0..n_chunks-1 on up to n_threads workers.
/// Chunks are fixed by the caller, so results that are merged in chunk
/// order do not depend on the number of threads.
template <class Fn>
void parallel_for_chunks(int n_chunks, int n_threads, Fn&& fn) {
  if (n_threads <= 1 || n_chunks <= 1) {
    for (int c = 0; c < n_chunks; ++c) fn(c);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      int c = next.fetch_add(1);
      if (c >= n_chunks) return;
      fn(c);
    }
  };
  int workers = std::min(n_threads, n_chunks);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers) - 1);
  for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

}  // namespace tel
