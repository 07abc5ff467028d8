#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "tel/multi_index.hpp"
#include "tel/partitions.hpp"

namespace tel {

/// Uniform block permutation of [n]: a partition of [n]_L ⊔ [n]_R whose
/// every block has equally many left and right elements. Ground set is
/// encoded as 0..n-1 (left) and n..2n-1 (right).
struct UniformBlockPermutation {
  int n = 0;
  SetPartition part;  // over 2n elements

  int block_count() const { return part.block_count(); }

  std::vector<std::vector<int>> left_sets() const {
    std::vector<std::vector<int>> out(block_count());
    for (int i = 0; i < n; ++i) out[part.rgs[i]].push_back(i);
    return out;
  }
  std::vector<std::vector<int>> right_sets() const {
    std::vector<std::vector<int>> out(block_count());
    for (int i = 0; i < n; ++i) out[part.rgs[n + i]].push_back(i);
    return out;
  }

  /// Integer partition lambda_pi = (|B_1|/2, ..., |B_k|/2, 1, 1) of n + 2,
  /// the multiplicity pattern of a tensor entry seen across this overlay.
  IntegerPartition lambda() const {
    std::vector<int> halves;
    for (const auto& blk : part.blocks()) halves.push_back(static_cast<int>(blk.size()) / 2);
    halves.push_back(1);
    halves.push_back(1);
    std::sort(halves.rbegin(), halves.rend());
    return IntegerPartition{halves};
  }

  bool operator==(const UniformBlockPermutation&) const = default;
  bool operator<(const UniformBlockPermutation& o) const { return part < o.part; }
};

inline bool is_uniform(const SetPartition& p, int n) {
  if (p.ground_size() != 2 * n) return false;
  std::vector<int> bal(p.block_count(), 0);
  for (int i = 0; i < n; ++i) ++bal[p.rgs[i]];
  for (int i = 0; i < n; ++i) --bal[p.rgs[n + i]];
  for (int b : bal)
    if (b != 0) return false;
  return true;
}

/// All uniform block permutations of [n], built from pairs of equal-shape
/// partitions of the two sides and a size-respecting matching of their
/// blocks. Count is sum over lambda |- n of P(lambda)^2 prod_j m_j(lambda)!.
inline std::vector<UniformBlockPermutation> enumerate_ubp(int n) {
  if (n < 1) throw std::invalid_argument("enumerate_ubp: n must be >= 1");
  if (n > 6) throw resource_error("uniform block permutation enumeration capped at n <= 6");
  std::vector<SetPartition> parts = all_set_partitions(n);
  auto shape = [](const SetPartition& p) {
    std::vector<int> sizes;
    for (const auto& b : p.blocks()) sizes.push_back(static_cast<int>(b.size()));
    std::sort(sizes.rbegin(), sizes.rend());
    return sizes;
  };
  std::vector<UniformBlockPermutation> out;
  for (const auto& pl : parts) {
    auto lblocks = pl.blocks();
    auto lshape = shape(pl);
    for (const auto& pr : parts) {
      if (shape(pr) != lshape) continue;
      auto rblocks = pr.blocks();
      // match left blocks to right blocks of equal size
      std::vector<int> order(rblocks.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
      std::sort(order.begin(), order.end());
      do {
        bool ok = true;
        for (std::size_t i = 0; i < lblocks.size(); ++i)
          if (lblocks[i].size() != rblocks[order[i]].size()) {
            ok = false;
            break;
          }
        if (!ok) continue;
        std::vector<int> labels(2 * n);
        for (std::size_t i = 0; i < lblocks.size(); ++i) {
          for (int e : lblocks[i]) labels[e] = static_cast<int>(i);
          for (int e : rblocks[order[i]]) labels[n + e] = static_cast<int>(i);
        }
        out.push_back(UniformBlockPermutation{n, partition_from_labels(labels)});
      } while (std::next_permutation(order.begin(), order.end()));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Closed-form count used as a cross-check on the enumeration.
inline std::uint64_t ubp_count(int n) {
  std::uint64_t total = 0;
  for (const auto& lam : integer_partitions(n)) {
    // number of set partitions of [n] with block sizes lam:
    // n! / (prod parts! * prod m_j!)
    double p = factorial(n);
    std::map<int, int> mult;
    for (int part : lam.parts) {
      p /= factorial(part);
      ++mult[part];
    }
    double mprod = 1.0;
    for (auto& [sz, m] : mult) p /= factorial(m), mprod *= factorial(m);
    total += static_cast<std::uint64_t>(p * p * mprod + 0.5);
  }
  return total;
}

inline bool ubp_refines(const UniformBlockPermutation& a, const UniformBlockPermutation& b) {
  return refines(a.part, b.part);
}

/// Moebius function on the UBP poset under reversed refinement
/// (rho <= pi iff rho refines pi), by the defining recursion.
class UbpPoset {
 public:
  explicit UbpPoset(int n) : elems_(enumerate_ubp(n)) {
    int m = static_cast<int>(elems_.size());
    leq_.assign(m, std::vector<char>(m, 0));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) leq_[i][j] = ubp_refines(elems_[i], elems_[j]) ? 1 : 0;
    mob_.assign(m, std::vector<long long>(m, 0));
    computed_.assign(m, std::vector<char>(m, 0));
  }

  const std::vector<UniformBlockPermutation>& elements() const { return elems_; }

  int index_of(const UniformBlockPermutation& u) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), u);
    if (it == elems_.end() || !(*it == u)) throw std::invalid_argument("ubp not in poset");
    return static_cast<int>(it - elems_.begin());
  }

  bool leq(int i, int j) const { return leq_[i][j] != 0; }

  /// mob(rho, pi) with rho <= pi; throws on incomparable arguments.
  long long mobius(int rho, int pi) {
    if (!leq_[rho][pi]) throw std::invalid_argument("mobius_ubp: incomparable arguments");
    if (computed_[rho][pi]) return mob_[rho][pi];
    long long v;
    if (rho == pi) {
      v = 1;
    } else {
      // sum_{rho <= tau <= pi} mob(tau, pi) = 0 when rho < pi
      long long s = 0;
      for (int tau = 0; tau < static_cast<int>(elems_.size()); ++tau)
        if (tau != rho && leq_[rho][tau] && leq_[tau][pi]) s += mobius(tau, pi);
      v = -s;
    }
    computed_[rho][pi] = 1;
    mob_[rho][pi] = v;
    return v;
  }

 private:
  std::vector<UniformBlockPermutation> elems_;
  std::vector<std::vector<char>> leq_;
  std::vector<std::vector<long long>> mob_;
  std::vector<std::vector<char>> computed_;
};

inline long long mobius_ubp(const UniformBlockPermutation& rho,
                            const UniformBlockPermutation& pi) {
  if (rho.n != pi.n) throw std::invalid_argument("mobius_ubp: mismatched ground sets");
  UbpPoset poset(rho.n);
  return poset.mobius(poset.index_of(rho), poset.index_of(pi));
}

}  // namespace tel
