#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "tel/common.hpp"

namespace tel {

/// Nonincreasing parts summing to the tensor order d.
struct IntegerPartition {
  std::vector<int> parts;

  int sum() const {
    int s = 0;
    for (int p : parts) s += p;
    return s;
  }
  bool operator==(const IntegerPartition&) const = default;
  bool operator<(const IntegerPartition& o) const { return parts < o.parts; }
};

/// A sorted (nondecreasing) index tuple with entries in [1..N].
/// This is the canonical representative of an orbit of index tuples
/// under permutation.
struct MultiIndex {
  std::vector<std::uint32_t> entries;

  int order() const { return static_cast<int>(entries.size()); }
  bool operator==(const MultiIndex&) const = default;
};

inline MultiIndex canonicalize(std::vector<std::uint32_t> tuple, std::uint32_t dim) {
  for (std::uint32_t k : tuple)
    if (k < 1 || k > dim)
      throw std::invalid_argument("index " + std::to_string(k) + " outside [1.." +
                                  std::to_string(dim) + "]");
  std::sort(tuple.begin(), tuple.end());
  return MultiIndex{std::move(tuple)};
}

/// Multiplicities of the distinct values, sorted nonincreasing.
inline IntegerPartition multiplicity_partition(const MultiIndex& m) {
  std::vector<int> counts;
  std::size_t i = 0;
  while (i < m.entries.size()) {
    std::size_t j = i;
    while (j < m.entries.size() && m.entries[j] == m.entries[i]) ++j;
    counts.push_back(static_cast<int>(j - i));
    i = j;
  }
  std::sort(counts.rbegin(), counts.rend());
  return IntegerPartition{std::move(counts)};
}

/// All partitions of d, lexicographically descending: (d), (d-1,1), ...
inline std::vector<IntegerPartition> integer_partitions(int d) {
  if (d < 1) throw std::invalid_argument("integer_partitions: d must be >= 1");
  std::vector<IntegerPartition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rem, int maxPart) -> void {
    if (rem == 0) {
      out.push_back(IntegerPartition{cur});
      return;
    }
    for (int p = std::min(rem, maxPart); p >= 1; --p) {
      cur.push_back(p);
      self(self, rem - p, p);
      cur.pop_back();
    }
  };
  rec(rec, d, d);
  return out;
}

/// Number of canonical multi-indices: multisets of size d from [N].
inline std::uint64_t canonical_count(int d, std::uint32_t N) {
  return binomial(static_cast<std::uint64_t>(N) + d - 1, static_cast<std::uint64_t>(d));
}

// Canonical storage uses the colexicographic rank of the nondecreasing
// tuple. Mapping (k_1 <= ... <= k_d) to the strictly increasing
// combination c_j = k_j + j - 1 gives rank = sum_j binom(c_j - 1, j).

inline std::uint64_t canonical_rank(const std::uint32_t* k, int d) {
  std::uint64_t r = 0;
  for (int j = 1; j <= d; ++j) r += binomial(k[j - 1] + j - 2, j);
  return r;
}

inline std::uint64_t canonical_rank(const MultiIndex& m) {
  return canonical_rank(m.entries.data(), m.order());
}

/// Inverse of canonical_rank: writes the nondecreasing tuple for rank r.
inline void canonical_unrank(std::uint64_t r, int d, std::uint32_t N, std::uint32_t* k) {
  for (int j = d; j >= 1; --j) {
    // largest c with binom(c - 1, j) <= r, scanning down from the cap
    std::uint32_t lo = j, hi = N + j - 1;  // c in [j, N+j-1]
    while (lo < hi) {
      std::uint32_t mid = lo + (hi - lo + 1) / 2;
      if (binomial(mid - 1, j) <= r)
        lo = mid;
      else
        hi = mid - 1;
    }
    k[j - 1] = lo - j + 1;
    r -= binomial(lo - 1, j);
  }
}

/// Advances k to the colex-next nondecreasing tuple; false when exhausted.
inline bool next_canonical(std::uint32_t* k, int d, std::uint32_t N) {
  for (int j = 0; j < d; ++j) {
    std::uint32_t cap = (j + 1 < d) ? k[j + 1] : N;
    if (k[j] < cap) {
      ++k[j];
      for (int i = 0; i < j; ++i) k[i] = 1;
      return true;
    }
  }
  return false;
}

}  // namespace tel
