#pragma once

#include <vector>

#include "tel/multi_index.hpp"

namespace tel {

/// Variance of an entry with multiplicity pattern lambda |- d under the
/// Gaussian orthogonal tensor ensemble: the inverse multinomial
/// binom(d; b_1..b_N)^{-1} = (prod parts!) / d!.
inline double gote_variance(const IntegerPartition& lambda) {
  int d = lambda.sum();
  double v = 1.0;
  for (int p : lambda.parts) v *= factorial(p);
  return v / factorial(d);
}

/// sigma^2_lambda for every integer partition lambda of d.
class VarianceProfile {
 public:
  VarianceProfile() = default;
  VarianceProfile(int d, std::vector<std::pair<IntegerPartition, double>> table)
      : d_(d), table_(std::move(table)) {
    for (const auto& [lam, v] : table_)
      if (lam.sum() != d) throw std::invalid_argument("variance profile: partition of wrong size");
  }

  static VarianceProfile gote(int d) {
    std::vector<std::pair<IntegerPartition, double>> t;
    for (auto& lam : integer_partitions(d)) {
      double v = gote_variance(lam);
      t.emplace_back(std::move(lam), v);
    }
    return VarianceProfile(d, std::move(t));
  }

  static VarianceProfile constant(int d, double value) {
    std::vector<std::pair<IntegerPartition, double>> t;
    for (auto& lam : integer_partitions(d)) t.emplace_back(std::move(lam), value);
    return VarianceProfile(d, std::move(t));
  }

  int order() const { return d_; }

  double at(const IntegerPartition& lambda) const {
    for (const auto& [lam, v] : table_)
      if (lam == lambda) return v;
    throw std::invalid_argument("variance profile has no entry for the given partition");
  }

  const std::vector<std::pair<IntegerPartition, double>>& table() const { return table_; }

 private:
  int d_ = 0;
  std::vector<std::pair<IntegerPartition, double>> table_;
};

}  // namespace tel
