#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "tel/partitions.hpp"
#include "tel/permanent.hpp"
#include "tel/tensor.hpp"
#include "tel/ubp.hpp"
#include "tel/variance_profile.hpp"

namespace tel {

/// Covariance of the limiting semicircular family, indexed by member ids.
struct CovarianceMatrix {
  std::vector<std::string> index;
  std::vector<std::vector<double>> K;

  int size() const { return static_cast<int>(index.size()); }
  double at(int i, int j) const { return K[i][j]; }
};

/// Word (i_1, ..., i_m) of member positions in the covariance index.
using MomentWord = std::vector<int>;

/// Lower and upper bounds for the GOTE variance K_{ii}: [1/d!, 1/(d(d-1))].
inline std::pair<double, double> covariance_bounds(int d) {
  if (d < 3) throw std::invalid_argument("covariance_bounds: d must be >= 3");
  return {1.0 / factorial(d), 1.0 / (d * (d - 1.0))};
}

/// GOTE covariance of two contracted members via the permanental form of
/// the symmetrized inner product:
///   (1/(d(d-1))) (1/(d-2)!) per[ <u_i_j, u_i'_k> ].
inline double covariance_gote(const std::vector<std::vector<double>>& vecs_i,
                              const std::vector<std::vector<double>>& vecs_ip, int d) {
  if (static_cast<int>(vecs_i.size()) != d - 2 || static_cast<int>(vecs_ip.size()) != d - 2)
    throw std::invalid_argument("covariance_gote: need d-2 vectors per member");
  std::size_t N = vecs_i[0].size();
  for (const auto& v : vecs_i)
    if (v.size() != N) throw std::invalid_argument("covariance_gote: dimension mismatch");
  for (const auto& v : vecs_ip)
    if (v.size() != N) throw std::invalid_argument("covariance_gote: dimension mismatch");
  int p = d - 2;
  std::vector<std::vector<double>> gram(p, std::vector<double>(p));
  for (int j = 0; j < p; ++j)
    for (int k = 0; k < p; ++k) gram[j][k] = dot(vecs_i[j], vecs_ip[k]);
  return permanent(gram) / (d * (d - 1.0) * factorial(p));
}

/// General-variance-profile covariance: the uniform-block-permutation sum
///   sum_pi sigma^2_{lambda_pi} sum_{phi: pi into [N]} prod_B
///     prod_{l in B_L} u_i^l(phi(B)) prod_{r in B_R} u_i'^r(phi(B)).
/// Injective sums are evaluated by inclusion-exclusion over block merges.
inline double covariance_general_profile(const VarianceProfile& profile,
                                         const std::vector<std::vector<double>>& vecs_i,
                                         const std::vector<std::vector<double>>& vecs_ip, int d) {
  int p = d - 2;
  if (p < 1 || p > 6) throw resource_error("covariance_general_profile: d-2 must be in [1, 6]");
  if (static_cast<int>(vecs_i.size()) != p || static_cast<int>(vecs_ip.size()) != p)
    throw std::invalid_argument("covariance_general_profile: need d-2 vectors per member");
  std::uint32_t N = static_cast<std::uint32_t>(vecs_i[0].size());
  double total = 0.0;
  for (const auto& pi : enumerate_ubp(p)) {
    double sigma2 = profile.at(pi.lambda());
    if (sigma2 == 0.0) continue;
    auto lsets = pi.left_sets();
    auto rsets = pi.right_sets();
    std::vector<std::vector<double>> weights(pi.block_count(), std::vector<double>(N, 1.0));
    for (int b = 0; b < pi.block_count(); ++b) {
      for (int l : lsets[b])
        for (std::uint32_t k = 0; k < N; ++k) weights[b][k] *= vecs_i[l][k];
      for (int r : rsets[b])
        for (std::uint32_t k = 0; k < N; ++k) weights[b][k] *= vecs_ip[r][k];
    }
    total += sigma2 * injective_block_sum(weights, N);
  }
  return total;
}

/// Constant-profile covariance through the Moebius rewrite on the UBP
/// poset: sum_rho c(rho) prod_B <hadamard of left vecs, hadamard of right
/// vecs>, with c(rho) = sum_{sigma <= rho} mob(sigma, rho). Used as a
/// cross-check against the direct evaluation.
inline double covariance_constant_profile_mobius(const std::vector<std::vector<double>>& vecs_i,
                                                 const std::vector<std::vector<double>>& vecs_ip,
                                                 int d) {
  int p = d - 2;
  if (p < 1 || p > 4) throw resource_error("mobius rewrite capped at d-2 <= 4");
  std::uint32_t N = static_cast<std::uint32_t>(vecs_i[0].size());
  UbpPoset poset(p);
  const auto& elems = poset.elements();
  int m = static_cast<int>(elems.size());
  double total = 0.0;
  for (int rho = 0; rho < m; ++rho) {
    long long coeff = 0;
    for (int sig = 0; sig < m; ++sig)
      if (poset.leq(sig, rho)) coeff += poset.mobius(sig, rho);
    if (coeff == 0) continue;
    auto lsets = elems[rho].left_sets();
    auto rsets = elems[rho].right_sets();
    double prod = 1.0;
    for (int b = 0; b < elems[rho].block_count(); ++b) {
      double s = 0.0;
      for (std::uint32_t k = 0; k < N; ++k) {
        double w = 1.0;
        for (int l : lsets[b]) w *= vecs_i[l][k];
        for (int r : rsets[b]) w *= vecs_ip[r][k];
        s += w;
      }
      prod *= s;
    }
    total += static_cast<double>(coeff) * prod;
  }
  return total;
}

/// GOTE covariance for general (not necessarily pure) unit contractions:
/// (1/(d(d-1))) <Sym U, Sym U'>.
inline double covariance_general_contraction(const GeneralTensor& U, const GeneralTensor& Up,
                                             int d) {
  if (U.order() != d - 2 || Up.order() != d - 2)
    throw std::invalid_argument("covariance_general_contraction: order must be d-2");
  if (U.dim() != Up.dim()) throw std::invalid_argument("dimension mismatch");
  GeneralTensor su = symmetrize(U);
  GeneralTensor sup = symmetrize(Up);
  return tensor_inner(su, sup) / (d * (d - 1.0));
}

/// Members drawn from independent tensors j, j' covary only when j = j'.
inline double covariance_independent(int j, int jp, double base) {
  return (j == jp) ? base : 0.0;
}

/// Mixed moment of a semicircular family:
///   phi(s_{i1} ... s_{im}) = sum over noncrossing pairings of products of
///   covariance entries. Zero for odd m.
inline double semicircular_mixed_moment(const MomentWord& word, const CovarianceMatrix& K) {
  int m = static_cast<int>(word.size());
  if (m == 0) throw std::invalid_argument("semicircular_mixed_moment: empty word");
  if (m > 20) throw resource_error("moment words capped at length 20");
  for (int id : word)
    if (id < 0 || id >= K.size())
      throw std::invalid_argument("semicircular_mixed_moment: unknown member id");
  if (m % 2 != 0) return 0.0;
  double total = 0.0;
  enumerate_nc_pairings(m, [&](const NCPartition& pairing) {
    double prod = 1.0;
    for (const auto& blk : pairing.p.blocks()) prod *= K.at(word[blk[0]], word[blk[1]]);
    total += prod;
  });
  return total;
}

/// m_n = sum_{pi in NC(n)} prod_B kappa_{|B|}, via the first-block
/// recursion m_n = sum_s kappa_s sum_{i_1+..+i_s = n-s} prod m_{i_j}.
inline std::vector<double> moments_from_cumulants(const std::vector<double>& kappa) {
  int n = static_cast<int>(kappa.size());
  if (n > 10) throw resource_error("cumulant transforms capped at order 10");
  std::vector<double> m(static_cast<std::size_t>(n) + 1, 0.0);
  m[0] = 1.0;
  for (int k = 1; k <= n; ++k) {
    double total = 0.0;
    for (int s = 1; s <= k; ++s) {
      // sum over compositions (i_1..i_s) >= 0 with sum k - s of prod m_i
      std::vector<double> conv(static_cast<std::size_t>(k - s) + 1, 0.0);
      conv[0] = 1.0;
      for (int part = 1; part <= s; ++part) {
        std::vector<double> next(conv.size(), 0.0);
        for (int a = 0; a < static_cast<int>(conv.size()); ++a)
          for (int b = 0; a + b < static_cast<int>(conv.size()); ++b)
            next[a + b] += conv[a] * m[b];
        conv = std::move(next);
      }
      total += kappa[s - 1] * conv[k - s];
    }
    m[k] = total;
  }
  return std::vector<double>(m.begin() + 1, m.end());
}

/// Exact inverse of moments_from_cumulants.
inline std::vector<double> cumulants_from_moments(const std::vector<double>& moments) {
  int n = static_cast<int>(moments.size());
  if (n > 10) throw resource_error("cumulant transforms capped at order 10");
  std::vector<double> kappa;
  std::vector<double> m(static_cast<std::size_t>(n) + 1, 0.0);
  m[0] = 1.0;
  for (int k = 1; k <= n; ++k) m[k] = moments[k - 1];
  for (int k = 1; k <= n; ++k) {
    double rest = 0.0;
    for (int s = 1; s < k; ++s) {
      std::vector<double> conv(static_cast<std::size_t>(k - s) + 1, 0.0);
      conv[0] = 1.0;
      for (int part = 1; part <= s; ++part) {
        std::vector<double> next(conv.size(), 0.0);
        for (int a = 0; a < static_cast<int>(conv.size()); ++a)
          for (int b = 0; a + b < static_cast<int>(conv.size()); ++b)
            next[a + b] += conv[a] * m[b];
        conv = std::move(next);
      }
      rest += kappa[s - 1] * conv[k - s];
    }
    kappa.push_back(m[k] - rest);
  }
  return kappa;
}

enum class PolyExpr { Sum, Anticommutator };

/// Moment of (s_a + s_b)^k or (s_a s_b + s_b s_a)^k by expanding into 2^k
/// words and summing mixed moments.
inline double polynomial_moment(PolyExpr expr, int a, int b, int k, const CovarianceMatrix& K) {
  if (k < 0 || k > 8) throw std::invalid_argument("polynomial_moment: k must be in [0, 8]");
  if (k == 0) return 1.0;
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    MomentWord word;
    for (int j = 0; j < k; ++j) {
      bool second = (mask >> j) & 1u;
      if (expr == PolyExpr::Sum) {
        word.push_back(second ? b : a);
      } else {
        if (second) {
          word.push_back(b);
          word.push_back(a);
        } else {
          word.push_back(a);
          word.push_back(b);
        }
      }
    }
    total += semicircular_mixed_moment(word, K);
  }
  return total;
}

/// Semicircle density of variance K: (1/(2 pi K)) sqrt(4K - x^2)_+ .
inline double semicircle_density(double variance, double x) {
  if (variance <= 0) throw std::invalid_argument("semicircle_density: variance must be positive");
  double disc = 4.0 * variance - x * x;
  if (disc <= 0) return 0.0;
  return std::sqrt(disc) / (2.0 * 3.14159265358979323846 * variance);
}

/// Closed-form CDF: 1/2 + x sqrt(4K - x^2) / (4 pi K) + arcsin(x/(2 sqrt K)) / pi.
inline double semicircle_cdf(double variance, double x) {
  if (variance <= 0) throw std::invalid_argument("semicircle_cdf: variance must be positive");
  double edge = 2.0 * std::sqrt(variance);
  if (x <= -edge) return 0.0;
  if (x >= edge) return 1.0;
  const double pi = 3.14159265358979323846;
  return 0.5 + x * std::sqrt(4.0 * variance - x * x) / (4.0 * pi * variance) +
         std::asin(x / edge) / pi;
}

}  // namespace tel
