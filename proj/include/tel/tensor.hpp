#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "tel/common.hpp"
#include "tel/multi_index.hpp"

namespace tel {

inline constexpr std::uint64_t kMaxMaterializedEntries = 100'000'000;

/// Dense real symmetric N x N matrix. Construction paths fill the upper
/// triangle and mirror once, so M(a,b) == M(b,a) holds bit-exactly.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n) : n_(n), v_(static_cast<std::size_t>(n) * n, 0.0) {}

  int dim() const { return n_; }
  double operator()(int a, int b) const { return v_[static_cast<std::size_t>(a) * n_ + b]; }
  double& operator()(int a, int b) { return v_[static_cast<std::size_t>(a) * n_ + b]; }
  const std::vector<double>& data() const { return v_; }
  std::vector<double>& data() { return v_; }

  /// Copies the strict upper triangle over the lower one.
  void mirror_upper() {
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b) (*this)(b, a) = (*this)(a, b);
  }

  double trace() const {
    double t = 0.0;
    for (int a = 0; a < n_; ++a) t += (*this)(a, a);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double x : v_) s += x * x;
    return std::sqrt(s);
  }

  SymMatrix& operator+=(const SymMatrix& o) {
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
  }
  SymMatrix& operator*=(double c) {
    for (double& x : v_) x *= c;
    return *this;
  }

 private:
  int n_ = 0;
  std::vector<double> v_;
};

/// Order-d symmetric tensor stored by canonical (nondecreasing) multi-index,
/// one value per multiset, ranked colexicographically.
class SymmetricTensor {
 public:
  SymmetricTensor() = default;
  SymmetricTensor(int order, std::uint32_t dim) : d_(order), n_(dim) {
    if (order < 1) throw std::invalid_argument("tensor order must be >= 1");
    std::uint64_t count = canonical_count(order, dim);
    if (count > kMaxMaterializedEntries)
      throw resource_error("symmetric tensor with " + std::to_string(count) +
                           " canonical entries exceeds the materialization cap; "
                           "use the streaming contraction instead");
    v_.assign(count, 0.0);
  }

  int order() const { return d_; }
  std::uint32_t dim() const { return n_; }
  std::uint64_t canonical_size() const { return v_.size(); }

  double value_at_rank(std::uint64_t r) const { return v_[r]; }
  double& value_at_rank(std::uint64_t r) { return v_[r]; }

  /// Lookup with any index order; symmetry holds by construction.
  double operator()(std::vector<std::uint32_t> idx) const {
    MultiIndex m = canonicalize(std::move(idx), n_);
    if (m.order() != d_) throw std::invalid_argument("wrong number of indices");
    return v_[canonical_rank(m)];
  }

  void set(std::vector<std::uint32_t> idx, double value) {
    MultiIndex m = canonicalize(std::move(idx), n_);
    if (m.order() != d_) throw std::invalid_argument("wrong number of indices");
    v_[canonical_rank(m)] = value;
  }

  const std::vector<double>& values() const { return v_; }
  std::vector<double>& values() { return v_; }

 private:
  int d_ = 0;
  std::uint32_t n_ = 0;
  std::vector<double> v_;
};

/// Dense order-p tensor with all N^p entries, row-major with the first
/// index slowest. Exists for correctness oracles at small N only.
class GeneralTensor {
 public:
  GeneralTensor() = default;
  GeneralTensor(int order, std::uint32_t dim) : p_(order), n_(dim) {
    if (order < 1) throw std::invalid_argument("tensor order must be >= 1");
    double est = std::pow(static_cast<double>(dim), order);
    if (est > static_cast<double>(kMaxMaterializedEntries))
      throw resource_error("general tensor exceeds the N^p entry cap");
    std::uint64_t count = 1;
    for (int j = 0; j < order; ++j) count *= dim;
    v_.assign(count, 0.0);
  }

  int order() const { return p_; }
  std::uint32_t dim() const { return n_; }

  std::uint64_t offset(const std::uint32_t* idx) const {
    std::uint64_t o = 0;
    for (int j = 0; j < p_; ++j) o = o * n_ + (idx[j] - 1);
    return o;
  }

  double at(const std::uint32_t* idx) const { return v_[offset(idx)]; }
  double& at(const std::uint32_t* idx) { return v_[offset(idx)]; }
  double at(const std::vector<std::uint32_t>& idx) const { return v_[offset(idx.data())]; }

  void set(const std::vector<std::uint32_t>& idx, double value) { v_[offset(idx.data())] = value; }

  const std::vector<double>& values() const { return v_; }
  std::vector<double>& values() { return v_; }

  double euclidean_norm() const {
    double s = 0.0;
    for (double x : v_) s += x * x;
    return std::sqrt(s);
  }

 private:
  int p_ = 0;
  std::uint32_t n_ = 0;
  std::vector<double> v_;
};

/// Iterates all index tuples of [N]^p in row-major order.
inline bool next_tuple(std::uint32_t* idx, int p, std::uint32_t N) {
  for (int j = p - 1; j >= 0; --j) {
    if (idx[j] < N) {
      ++idx[j];
      for (int i = j + 1; i < p; ++i) idx[i] = 1;
      return true;
    }
  }
  return false;
}

/// Average over all index permutations: the orthogonal projection onto
/// symmetric tensors.
inline GeneralTensor symmetrize(const GeneralTensor& t) {
  int p = t.order();
  std::uint32_t N = t.dim();
  GeneralTensor out(p, N);
  double scale = 1.0 / factorial(p);
  std::vector<std::uint32_t> idx(p, 1), perm(p);
  do {
    perm = idx;
    std::sort(perm.begin(), perm.end());
    double s = 0.0;
    // iterate distinct rearrangements once, weighting by their multiplicity
    do {
      s += t.at(perm.data());
    } while (std::next_permutation(perm.begin(), perm.end()));
    // distinct rearrangements each appear (p! / #distinct) times in the
    // full permutation average; equivalently average over all p! by
    // counting duplicates
    MultiIndex m{std::vector<std::uint32_t>(idx)};
    std::sort(m.entries.begin(), m.entries.end());
    IntegerPartition lam = multiplicity_partition(m);
    double dup = 1.0;
    for (int part : lam.parts) dup *= factorial(part);
    out.at(idx.data()) = s * dup * scale;
  } while (next_tuple(idx.data(), p, N));
  return out;
}

inline GeneralTensor to_general(const SymmetricTensor& t) {
  GeneralTensor out(t.order(), t.dim());
  std::vector<std::uint32_t> idx(t.order(), 1);
  do {
    std::vector<std::uint32_t> srt(idx);
    std::sort(srt.begin(), srt.end());
    out.at(idx.data()) = t.value_at_rank(canonical_rank(srt.data(), t.order()));
  } while (next_tuple(idx.data(), t.order(), t.dim()));
  return out;
}

/// Contraction against a general order-p tensor over the trailing p slots.
/// The symmetry of t makes the slot choice immaterial.
inline SymmetricTensor contract_general(const SymmetricTensor& t, const GeneralTensor& b) {
  int d = t.order(), p = b.order();
  if (p >= d) throw std::invalid_argument("contraction must leave at least one free slot");
  if (b.dim() != t.dim()) throw std::invalid_argument("contraction dimension mismatch");
  std::uint32_t N = t.dim();
  int q = d - p;
  SymmetricTensor out(q, N);
  std::vector<std::uint32_t> full(d);
  std::vector<std::uint32_t> outIdx(q, 1);
  std::uint64_t orank = 0;
  do {
    std::vector<std::uint32_t> l(p, 1);
    double s = 0.0;
    do {
      for (int j = 0; j < q; ++j) full[j] = outIdx[j];
      for (int j = 0; j < p; ++j) full[q + j] = l[j];
      std::vector<std::uint32_t> srt(full);
      std::sort(srt.begin(), srt.end());
      s += t.value_at_rank(canonical_rank(srt.data(), d)) * b.at(l.data());
    } while (next_tuple(l.data(), p, N));
    out.value_at_rank(orank++) = s;
  } while (q > 0 && next_canonical(outIdx.data(), q, N));
  return out;
}

inline GeneralTensor pure_tensor(const std::vector<std::vector<double>>& vecs) {
  int p = static_cast<int>(vecs.size());
  std::uint32_t N = static_cast<std::uint32_t>(vecs[0].size());
  for (const auto& v : vecs)
    if (v.size() != N) throw std::invalid_argument("pure tensor: vector dimension mismatch");
  GeneralTensor out(p, N);
  std::vector<std::uint32_t> idx(p, 1);
  do {
    double s = 1.0;
    for (int j = 0; j < p; ++j) s *= vecs[j][idx[j] - 1];
    out.at(idx.data()) = s;
  } while (next_tuple(idx.data(), p, N));
  return out;
}

/// Contraction against a tensor product of vectors, computed directly
/// (no N^p intermediate).
inline SymmetricTensor contract_pure(const SymmetricTensor& t,
                                     const std::vector<std::vector<double>>& vecs) {
  int d = t.order(), p = static_cast<int>(vecs.size());
  if (p >= d) throw std::invalid_argument("contraction must leave at least one free slot");
  std::uint32_t N = t.dim();
  for (const auto& v : vecs)
    if (v.size() != N) throw std::invalid_argument("contraction dimension mismatch");
  int q = d - p;
  SymmetricTensor out(q, N);
  std::vector<std::uint32_t> full(d);
  std::vector<std::uint32_t> outIdx(q, 1);
  std::uint64_t orank = 0;
  do {
    std::vector<std::uint32_t> l(p, 1);
    double s = 0.0;
    do {
      for (int j = 0; j < q; ++j) full[j] = outIdx[j];
      for (int j = 0; j < p; ++j) full[q + j] = l[j];
      std::vector<std::uint32_t> srt(full);
      std::sort(srt.begin(), srt.end());
      double w = t.value_at_rank(canonical_rank(srt.data(), d));
      for (int j = 0; j < p; ++j) w *= vecs[j][l[j] - 1];
      s += w;
    } while (next_tuple(l.data(), p, N));
    out.value_at_rank(orank++) = s;
  } while (q > 0 && next_canonical(outIdx.data(), q, N));
  return out;
}

/// Order-2 symmetric tensor as a dense matrix (exactly symmetric).
inline SymMatrix to_sym_matrix(const SymmetricTensor& t) {
  if (t.order() != 2) throw std::invalid_argument("to_sym_matrix requires an order-2 tensor");
  int N = static_cast<int>(t.dim());
  SymMatrix m(N);
  std::uint32_t idx[2];
  for (int a = 0; a < N; ++a)
    for (int b = a; b < N; ++b) {
      idx[0] = static_cast<std::uint32_t>(a + 1);
      idx[1] = static_cast<std::uint32_t>(b + 1);
      m(a, b) = t.value_at_rank(canonical_rank(idx, 2));
    }
  m.mirror_upper();
  return m;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

inline double tensor_inner(const GeneralTensor& a, const GeneralTensor& b) {
  if (a.order() != b.order() || a.dim() != b.dim())
    throw std::invalid_argument("tensor inner product: shape mismatch");
  double s = 0.0;
  const auto& av = a.values();
  const auto& bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) s += av[i] * bv[i];
  return s;
}

/// || t[u^(d-1)] - lambda u ||_2, cross-checked against the matrix form
/// || t[u^(d-2)] u - lambda u ||_2.
inline double eigen_residual(const SymmetricTensor& t, double lambda,
                             const std::vector<double>& u) {
  std::uint32_t N = t.dim();
  if (u.size() != N) throw std::invalid_argument("eigen_residual: dimension mismatch");
  if (std::abs(norm2(u) - 1.0) > 1e-12)
    throw std::invalid_argument("eigen_residual: u must be a unit vector");
  int d = t.order();
  std::vector<std::vector<double>> reps(static_cast<std::size_t>(d) - 1, u);
  SymmetricTensor vec = contract_pure(t, reps);
  double r1sq = 0.0;
  for (std::uint32_t k = 1; k <= N; ++k) {
    double diff = vec({k}) - lambda * u[k - 1];
    r1sq += diff * diff;
  }
  double r1 = std::sqrt(r1sq);

  std::vector<std::vector<double>> reps2(static_cast<std::size_t>(d) - 2, u);
  SymMatrix m = to_sym_matrix(contract_pure(t, reps2));
  double r2sq = 0.0;
  for (int a = 0; a < static_cast<int>(N); ++a) {
    double row = 0.0;
    for (int b = 0; b < static_cast<int>(N); ++b) row += m(a, b) * u[b];
    double diff = row - lambda * u[a];
    r2sq += diff * diff;
  }
  double r2 = std::sqrt(r2sq);
  if (std::abs(r1 - r2) > 1e-10)
    throw std::logic_error("eigen_residual: vector and matrix routes disagree");
  return r1;
}

}  // namespace tel
