#pragma once

#include <cstdint>
#include <vector>

#include "tel/common.hpp"

namespace tel {

/// Permanent by Ryser's formula with Gray-code subset updates:
/// per(A) = (-1)^n sum_{S != empty} (-1)^{|S|} prod_i sum_{j in S} a_ij.
/// O(2^n n); exact for integer inputs. Capped at n <= 12.
inline double permanent(const std::vector<std::vector<double>>& a) {
  int n = static_cast<int>(a.size());
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("permanent: not square");
  if (n == 0) return 1.0;
  if (n > 12) throw resource_error("permanent capped at 12x12");

  std::vector<double> rowsum(n, 0.0);
  double total = 0.0;
  std::uint32_t prev = 0;
  int bits = 0;
  for (std::uint32_t g = 1; g < (1u << n); ++g) {
    std::uint32_t gray = g ^ (g >> 1);
    std::uint32_t diff = gray ^ prev;
    int j = 0;
    while (!((diff >> j) & 1u)) ++j;
    if (gray & diff) {
      for (int i = 0; i < n; ++i) rowsum[i] += a[i][j];
      ++bits;
    } else {
      for (int i = 0; i < n; ++i) rowsum[i] -= a[i][j];
      --bits;
    }
    prev = gray;
    double prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= rowsum[i];
    total += ((bits % 2) ? -1.0 : 1.0) * prod;
  }
  return ((n % 2) ? -1.0 : 1.0) * total;
}

}  // namespace tel
