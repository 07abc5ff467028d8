#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tel/common.hpp"

namespace tel {

/// Partition of {0..n-1} stored as a restricted-growth string:
/// rgs[i] is the block id of element i, block ids introduced in increasing
/// order of their first element.
struct SetPartition {
  std::vector<int> rgs;

  int ground_size() const { return static_cast<int>(rgs.size()); }
  int block_count() const {
    int m = -1;
    for (int b : rgs) m = std::max(m, b);
    return m + 1;
  }
  std::vector<std::vector<int>> blocks() const {
    std::vector<std::vector<int>> out(block_count());
    for (int i = 0; i < ground_size(); ++i) out[rgs[i]].push_back(i);
    return out;
  }
  std::string to_string() const {
    std::string s;
    for (int b : rgs) s += (b < 10) ? static_cast<char>('0' + b) : static_cast<char>('a' + b - 10);
    return s;
  }
  bool operator==(const SetPartition&) const = default;
  bool operator<(const SetPartition& o) const { return rgs < o.rgs; }
};

/// Normalizes an arbitrary block labeling into a restricted-growth string.
inline SetPartition partition_from_labels(const std::vector<int>& labels) {
  std::map<int, int> remap;
  SetPartition p;
  p.rgs.reserve(labels.size());
  for (int l : labels) {
    auto [it, inserted] = remap.emplace(l, static_cast<int>(remap.size()));
    p.rgs.push_back(it->second);
  }
  return p;
}

inline SetPartition partition_from_blocks(int n, const std::vector<std::vector<int>>& blocks) {
  std::vector<int> labels(n, -1);
  int id = 0;
  for (const auto& blk : blocks) {
    for (int e : blk) {
      if (e < 0 || e >= n || labels[e] != -1)
        throw std::invalid_argument("blocks must partition the ground set");
      labels[e] = id;
    }
    ++id;
  }
  for (int l : labels)
    if (l == -1) throw std::invalid_argument("blocks must cover the ground set");
  return partition_from_labels(labels);
}

/// Streams every partition of {0..n-1} in lexicographic RGS order;
/// exactly Bell(n) calls.
template <class Fn>
void enumerate_set_partitions(int n, Fn&& fn) {
  if (n < 1) throw std::invalid_argument("enumerate_set_partitions: n must be >= 1");
  if (n > 14) throw resource_error("set partition enumeration capped at n <= 14");
  std::vector<int> a(n, 0);
  std::vector<int> mx(n, 0);  // mx[i] = max(a[0..i-1]); mx[0] unused
  for (;;) {
    fn(SetPartition{a});
    int i = n - 1;
    while (i >= 1 && a[i] == mx[i] + 1) --i;
    if (i == 0) return;
    ++a[i];
    for (int j = i + 1; j < n; ++j) {
      mx[j] = std::max(mx[j - 1], a[j - 1]);
      a[j] = 0;
    }
  }
}

inline std::vector<SetPartition> all_set_partitions(int n) {
  if (n > 12) throw resource_error("materialized partition list capped at n <= 12");
  std::vector<SetPartition> out;
  enumerate_set_partitions(n, [&](const SetPartition& p) { out.push_back(p); });
  return out;
}

/// sigma <= pi in the order used throughout: sigma refines pi, i.e. every
/// block of sigma is contained in a block of pi.
inline bool refines(const SetPartition& sigma, const SetPartition& pi) {
  if (sigma.ground_size() != pi.ground_size()) return false;
  std::vector<int> rep(sigma.block_count(), -1);
  for (int i = 0; i < sigma.ground_size(); ++i) {
    int b = sigma.rgs[i];
    if (rep[b] == -1)
      rep[b] = pi.rgs[i];
    else if (rep[b] != pi.rgs[i])
      return false;
  }
  return true;
}

/// Noncrossing on 0 < 1 < ... < n-1: arcs joining consecutive elements of
/// each block must be pairwise noncrossing.
inline bool is_noncrossing(const SetPartition& p) {
  int n = p.ground_size();
  std::vector<std::pair<int, int>> arcs;
  std::vector<int> last(p.block_count(), -1);
  for (int i = 0; i < n; ++i) {
    int b = p.rgs[i];
    if (last[b] >= 0) arcs.emplace_back(last[b], i);
    last[b] = i;
  }
  for (std::size_t x = 0; x < arcs.size(); ++x)
    for (std::size_t y = 0; y < arcs.size(); ++y) {
      if (x == y) continue;
      auto [a, c] = arcs[x];
      auto [b, d] = arcs[y];
      if (a < b && b < c && c < d) return false;
    }
  return true;
}

/// A SetPartition certified noncrossing at construction.
struct NCPartition {
  SetPartition p;

  explicit NCPartition(SetPartition sp) : p(std::move(sp)) {
    if (!is_noncrossing(p)) throw std::invalid_argument("partition has a crossing");
  }
  int ground_size() const { return p.ground_size(); }
  int block_count() const { return p.block_count(); }
  bool operator==(const NCPartition&) const = default;
};

inline std::vector<NCPartition> all_noncrossing_partitions(int n) {
  std::vector<NCPartition> out;
  enumerate_set_partitions(n, [&](const SetPartition& sp) {
    if (is_noncrossing(sp)) out.emplace_back(sp);
  });
  return out;
}

/// Streams the noncrossing pair partitions of {0..n-1} via balanced
/// parenthesizations; Catalan(n/2) of them. Odd n yields nothing, matching
/// the vanishing of odd moments.
template <class Fn>
void enumerate_nc_pairings(int n, Fn&& fn) {
  if (n < 0 || n > 24) throw resource_error("noncrossing pairing enumeration capped at n <= 24");
  if (n % 2 != 0 || n == 0) return;
  std::vector<int> open;
  std::vector<std::pair<int, int>> acc;
  std::function<void(int)> gen = [&](int i) {
    if (i == n) {
      std::vector<int> labels(n, 0);
      for (std::size_t k = 0; k < acc.size(); ++k) {
        labels[acc[k].first] = static_cast<int>(k);
        labels[acc[k].second] = static_cast<int>(k);
      }
      fn(NCPartition(partition_from_labels(labels)));
      return;
    }
    if (n - i > static_cast<int>(open.size())) {
      open.push_back(i);
      gen(i + 1);
      open.pop_back();
    }
    if (!open.empty()) {
      int j = open.back();
      open.pop_back();
      acc.emplace_back(j, i);
      gen(i + 1);
      acc.pop_back();
      open.push_back(j);
    }
  };
  gen(0);
}

inline std::vector<NCPartition> all_nc_pairings(int n) {
  std::vector<NCPartition> out;
  enumerate_nc_pairings(n, [&](const NCPartition& p) { out.push_back(p); });
  return out;
}

/// Kreweras complement. For pi noncrossing on the cycle 0..n-1 the blocks
/// of the complement are the cycles of alpha^{-1} gamma, where alpha sends
/// each element to the next one of its block (cyclically in increasing
/// order) and gamma is the full cycle i -> i+1. Satisfies
/// #(pi) + #(kreweras(pi)) = n + 1.
inline NCPartition kreweras(const NCPartition& pi) {
  int n = pi.ground_size();
  std::vector<int> alpha(n), alphaInv(n);
  for (const auto& blk : pi.p.blocks()) {
    int m = static_cast<int>(blk.size());
    for (int j = 0; j < m; ++j) alpha[blk[j]] = blk[(j + 1) % m];
  }
  for (int i = 0; i < n; ++i) alphaInv[alpha[i]] = i;
  std::vector<int> labels(n, -1);
  int id = 0;
  for (int s = 0; s < n; ++s) {
    if (labels[s] != -1) continue;
    int x = s;
    while (labels[x] == -1) {
      labels[x] = id;
      x = alphaInv[(x + 1) % n];
    }
    ++id;
  }
  return NCPartition(partition_from_labels(labels));
}

/// Moebius function of the interval [sigma, pi] in NC(n), by the defining
/// recursion sum_{sigma <= tau <= pi} mob(tau, pi) = [sigma == pi].
inline long long mobius_nc(const NCPartition& sigma, const NCPartition& pi) {
  if (!refines(sigma.p, pi.p)) throw std::invalid_argument("mobius_nc: incomparable arguments");
  int n = sigma.ground_size();
  std::vector<SetPartition> interval;
  enumerate_set_partitions(n, [&](const SetPartition& sp) {
    if (is_noncrossing(sp) && refines(sigma.p, sp) && refines(sp, pi.p)) interval.push_back(sp);
  });
  // coarsest first so the downward recursion has what it needs
  std::sort(interval.begin(), interval.end(), [](const SetPartition& a, const SetPartition& b) {
    return a.block_count() < b.block_count();
  });
  std::map<SetPartition, long long> mob;
  for (const auto& tau : interval) {
    if (tau == pi.p) {
      mob[tau] = 1;
      continue;
    }
    long long s = 0;
    for (const auto& up : interval)
      if (!(up == tau) && refines(tau, up)) s += mob[up];
    mob[tau] = -s;
  }
  return mob[sigma.p];
}

/// Bell numbers by the Bell-triangle recurrence.
inline std::uint64_t bell_number(int n) {
  std::vector<std::vector<std::uint64_t>> tri(static_cast<std::size_t>(n) + 1);
  tri[0] = {1};
  for (int i = 1; i <= n; ++i) {
    tri[i].resize(static_cast<std::size_t>(i) + 1);
    tri[i][0] = tri[i - 1][i - 1];
    for (int j = 1; j <= i; ++j) tri[i][j] = tri[i][j - 1] + tri[i - 1][j - 1];
  }
  return tri[n][0];
}

inline std::uint64_t catalan_number(int n) {
  return binomial(2 * static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(n)) /
         (static_cast<std::uint64_t>(n) + 1);
}

/// Sum over injective assignments of distinct values in [1..N] to blocks:
/// sum_{phi injective} prod_B w_B(phi(B)). Evaluated by Moebius
/// inclusion-exclusion over merges of the blocks, never by an explicit
/// N^{#blocks} loop.
inline double injective_block_sum(const std::vector<std::vector<double>>& weights,
                                  std::uint32_t N) {
  int m = static_cast<int>(weights.size());
  if (m == 0) return 1.0;
  for (const auto& w : weights)
    if (w.size() != N) throw std::invalid_argument("injective_block_sum: weight length mismatch");
  double total = 0.0;
  enumerate_set_partitions(m, [&](const SetPartition& rho) {
    double term = 1.0;
    for (const auto& cls : rho.blocks()) {
      double s = 0.0;
      for (std::uint32_t k = 0; k < N; ++k) {
        double prod = 1.0;
        for (int b : cls) prod *= weights[b][k];
        s += prod;
      }
      int c = static_cast<int>(cls.size());
      double sign = (c % 2 == 1) ? 1.0 : -1.0;
      term *= sign * factorial(c - 1) * s;
    }
    total += term;
  });
  return total;
}

}  // namespace tel
