#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace tel {

// Philox 2x64-10 counter-based generator. Stateless: every 128-bit output
// block is a pure function of (key, counter), which is what makes the
// streaming contraction kernel and the materialized sampler agree bit for
// bit and lets chunks be generated in any order.
namespace philox {

inline constexpr std::uint64_t kMultiplier = 0xD2B74407B1CE6E93ULL;
inline constexpr std::uint64_t kWeylStep = 0x9E3779B97F4A7C15ULL;

struct Block {
  std::uint64_t x0, x1;
};

inline Block generate(std::uint64_t key, std::uint64_t c0, std::uint64_t c1) {
  for (int round = 0; round < 10; ++round) {
    unsigned __int128 prod = static_cast<unsigned __int128>(c0) * kMultiplier;
    std::uint64_t hi = static_cast<std::uint64_t>(prod >> 64);
    std::uint64_t lo = static_cast<std::uint64_t>(prod);
    c0 = hi ^ key ^ c1;
    c1 = lo;
    key += kWeylStep;
  }
  return Block{c0, c1};
}

}  // namespace philox

/// SplitMix64 finalizer; used to spread user seeds and stream ids into keys.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t stream_id) {
  return mix64(seed ^ mix64(stream_id + 0x5851F42D4C957F2DULL));
}

/// Uniform double in the open interval (0,1): 53 bits, never exactly 0 or 1.
inline double to_unit_open(std::uint64_t x) {
  return (static_cast<double>(x >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

/// Standard normal via Box-Muller from one Philox block.
inline double counter_gaussian(std::uint64_t key, std::uint64_t counter) {
  philox::Block b = philox::generate(key, counter, 0);
  double u1 = to_unit_open(b.x0);
  double u2 = to_unit_open(b.x1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

/// Symmetric +-1 draw.
inline double counter_rademacher(std::uint64_t key, std::uint64_t counter) {
  philox::Block b = philox::generate(key, counter, 0);
  return (b.x0 >> 63) ? 1.0 : -1.0;
}

inline double counter_uniform(std::uint64_t key, std::uint64_t counter, std::uint64_t lane) {
  philox::Block b = philox::generate(key, counter, lane);
  return to_unit_open(b.x0);
}

}  // namespace tel
