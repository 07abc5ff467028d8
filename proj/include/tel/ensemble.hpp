#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "tel/common.hpp"
#include "tel/multi_index.hpp"
#include "tel/philox.hpp"
#include "tel/tensor.hpp"
#include "tel/variance_profile.hpp"

namespace tel {

enum class EntryFamily { Gaussian, Rademacher, Figure1Mixed };

inline std::string family_name(EntryFamily f) {
  switch (f) {
    case EntryFamily::Gaussian: return "gaussian";
    case EntryFamily::Rademacher: return "rademacher";
    case EntryFamily::Figure1Mixed: return "figure1-mixed";
  }
  return "?";
}

inline EntryFamily family_from_name(const std::string& s) {
  if (s == "gaussian") return EntryFamily::Gaussian;
  if (s == "rademacher") return EntryFamily::Rademacher;
  if (s == "figure1-mixed") return EntryFamily::Figure1Mixed;
  throw config_error("unknown entry family '" + s + "'");
}

/// Distribution of the independent canonical entries of a Wigner tensor.
/// Every entry is centered; the variance is sigma^2_lambda from the
/// profile, including the entries with at most two distinct indices (the
/// GOTE-consistent choice for the cases the ensemble leaves free).
struct EntrySpec {
  EntryFamily family = EntryFamily::Gaussian;
  VarianceProfile profile;
  std::uint64_t seed = 0;
  std::uint64_t tensor_id = 0;
};

namespace detail {

/// Packs a multiplicity partition into a small integer key (4 bits/part).
inline std::uint64_t lambda_key(const int* counts, int q) {
  // counts sorted descending by caller
  std::uint64_t key = 0;
  for (int i = 0; i < q; ++i) key = (key << 4) | static_cast<std::uint64_t>(counts[i]);
  return key;
}

/// Flat sigma -> sqrt(sigma^2) lookup indexed by packed multiplicity key.
struct SigmaTable {
  std::vector<std::pair<std::uint64_t, double>> rows;

  explicit SigmaTable(const VarianceProfile& profile) {
    for (const auto& [lam, v] : profile.table()) {
      std::uint64_t key = 0;
      for (int p : lam.parts) key = (key << 4) | static_cast<std::uint64_t>(p);
      rows.emplace_back(key, std::sqrt(v));
    }
  }

  double sqrt_sigma(std::uint64_t key) const {
    for (const auto& [k, s] : rows)
      if (k == key) return s;
    throw std::invalid_argument("variance profile has no entry for an index pattern");
  }
};

}  // namespace detail

/// The canonical-entry value: a pure function of (seed, tensor id, rank).
/// k must be the sorted tuple for that rank.
inline double entry_value(const EntrySpec& spec, const detail::SigmaTable& sigma,
                          std::uint64_t rank, const std::uint32_t* k, int d) {
  int counts[kMaxTensorOrder];
  int q = 0;
  for (int j = 0; j < d;) {
    int i = j;
    while (j < d && k[j] == k[i]) ++j;
    counts[q++] = j - i;
  }
  std::sort(counts, counts + q, std::greater<int>());
  double s = sigma.sqrt_sigma(detail::lambda_key(counts, q));

  std::uint64_t key = stream_key(spec.seed, spec.tensor_id);
  bool rademacher = spec.family == EntryFamily::Rademacher ||
                    (spec.family == EntryFamily::Figure1Mixed && (k[0] % 2 == 1));
  double xi = rademacher ? counter_rademacher(key, rank) : counter_gaussian(key, rank);
  return s * xi;
}

/// Materializes an order-d Wigner tensor. Caps at 1e8 canonical entries and
/// points callers to the streaming contraction beyond that.
inline SymmetricTensor sample_wigner(int d, std::uint32_t N, const EntrySpec& spec) {
  if (d < 1) throw std::invalid_argument("sample_wigner: order must be >= 1");
  if (spec.profile.order() != d) throw std::invalid_argument("sample_wigner: profile order mismatch");
  SymmetricTensor t(d, N);  // constructor enforces the cap
  detail::SigmaTable sigma(spec.profile);
  std::vector<std::uint32_t> k(d, 1);
  std::uint64_t rank = 0;
  do {
    t.value_at_rank(rank) = entry_value(spec, sigma, rank, k.data(), d);
    ++rank;
  } while (next_canonical(k.data(), d, N));
  return t;
}

namespace detail {

inline constexpr int kScatterChunks = 8;

/// Shared scatter kernel behind both the streaming and the materialized
/// contraction. Iterates canonical entries in rank order; each entry is
/// routed to every matrix cell it touches: for a value pair (a <= b) of
/// the index multiset, the contribution is
///   X * sum over distinct arrangements r of the remaining d-2 values of
///       prod_j u_j(r_j),
/// accumulated into M(a, b). Work is split into a fixed number of rank
/// chunks merged in chunk order, so results do not depend on the thread
/// count. Only the upper triangle is written; it is mirrored at the end,
/// which makes the output bit-exactly symmetric.
template <class EntryFn>
std::vector<SymMatrix> scatter_contract(int d, std::uint32_t N, EntryFn&& entry,
                                        const std::vector<std::vector<std::vector<double>>>& fams,
                                        int n_threads) {
  if (d < 3 || d > kMaxTensorOrder)
    throw std::invalid_argument("contraction kernel requires 3 <= d <= 8");
  int nf = static_cast<int>(fams.size());
  for (const auto& f : fams) {
    if (static_cast<int>(f.size()) != d - 2)
      throw std::invalid_argument("contraction kernel: need d-2 vectors per family");
    for (const auto& u : f)
      if (u.size() != N) throw std::invalid_argument("contraction kernel: dimension mismatch");
  }
  std::uint64_t total = canonical_count(d, N);

  std::vector<std::vector<SymMatrix>> partial(kScatterChunks);
  for (auto& chunk : partial) {
    chunk.reserve(nf);
    for (int f = 0; f < nf; ++f) chunk.emplace_back(static_cast<int>(N));
  }

  // raw pointers for the hot loop
  std::vector<std::vector<const double*>> uf(nf);
  for (int f = 0; f < nf; ++f)
    for (int j = 0; j < d - 2; ++j) uf[f].push_back(fams[f][j].data());

  parallel_for_chunks(kScatterChunks, n_threads, [&](int c) {
    std::uint64_t lo = total * static_cast<std::uint64_t>(c) / kScatterChunks;
    std::uint64_t hi = total * static_cast<std::uint64_t>(c + 1) / kScatterChunks;
    if (lo >= hi) return;
    std::uint32_t k[kMaxTensorOrder];
    canonical_unrank(lo, d, N, k);
    std::uint32_t rem[kMaxTensorOrder];
    std::vector<SymMatrix>& acc = partial[c];
    for (std::uint64_t rank = lo; rank < hi; ++rank) {
      double X = entry(rank, k);
      if (X != 0.0) {
        // distinct values and multiplicities of the sorted tuple
        std::uint32_t vals[kMaxTensorOrder];
        int cnt[kMaxTensorOrder];
        int q = 0;
        for (int j = 0; j < d;) {
          int i = j;
          while (j < d && k[j] == k[i]) ++j;
          vals[q] = k[i];
          cnt[q] = j - i;
          ++q;
        }
        for (int i = 0; i < q; ++i) {
          for (int j = i; j < q; ++j) {
            if (i == j && cnt[i] < 2) continue;
            // remaining multiset after removing one vals[i], one vals[j]
            int w = 0;
            for (int t = 0; t < q; ++t) {
              int keep = cnt[t] - (t == i) - (t == j);
              for (int r = 0; r < keep; ++r) rem[w++] = vals[t];
            }
            int a = static_cast<int>(vals[i]) - 1;
            int b = static_cast<int>(vals[j]) - 1;
            if (d == 3) {
              for (int f = 0; f < nf; ++f) acc[f](a, b) += X * uf[f][0][rem[0] - 1];
            } else {
              // sum over distinct arrangements of the remaining values
              for (int f = 0; f < nf; ++f) {
                double perm = 0.0;
                std::uint32_t arr[kMaxTensorOrder];
                std::copy(rem, rem + (d - 2), arr);
                do {
                  double prod = 1.0;
                  for (int t = 0; t < d - 2; ++t) prod *= uf[f][t][arr[t] - 1];
                  perm += prod;
                } while (std::next_permutation(arr, arr + (d - 2)));
                acc[f](a, b) += X * perm;
              }
            }
          }
        }
      }
      next_canonical(k, d, N);
    }
  });

  std::vector<SymMatrix> out;
  out.reserve(nf);
  for (int f = 0; f < nf; ++f) {
    SymMatrix m(static_cast<int>(N));
    for (int c = 0; c < kScatterChunks; ++c) m += partial[c][f];
    m.mirror_upper();
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace detail

/// Contracted matrices T[u^(1) x ... x u^(d-2)] for several vector families
/// against one entry stream, without materializing the tensor.
/// Memory O(N^2), one pass over the canonical entries.
inline std::vector<SymMatrix> stream_contracted_multi(
    int d, std::uint32_t N, const EntrySpec& spec,
    const std::vector<std::vector<std::vector<double>>>& families, int n_threads = 0) {
  if (spec.profile.order() != d)
    throw std::invalid_argument("stream_contracted: profile order mismatch");
  if (n_threads <= 0) n_threads = hardware_threads();
  detail::SigmaTable sigma(spec.profile);
  return detail::scatter_contract(
      d, N,
      [&](std::uint64_t rank, const std::uint32_t* k) {
        return entry_value(spec, sigma, rank, k, d);
      },
      families, n_threads);
}

inline SymMatrix stream_contracted(int d, std::uint32_t N, const EntrySpec& spec,
                                   const std::vector<std::vector<double>>& vectors,
                                   int n_threads = 0) {
  return std::move(stream_contracted_multi(d, N, spec, {vectors}, n_threads)[0]);
}

/// Materialize-then-contract through the same kernel; bit-identical to the
/// streaming path for identical entries.
inline SymMatrix contract_to_matrix(const SymmetricTensor& t,
                                    const std::vector<std::vector<double>>& vectors,
                                    int n_threads = 1) {
  return std::move(detail::scatter_contract(
      t.order(), t.dim(),
      [&](std::uint64_t rank, const std::uint32_t*) { return t.value_at_rank(rank); },
      {vectors}, n_threads)[0]);
}

enum class VectorKind { Flat, Alternating, PaperU, Basis, RandomUnit };

inline VectorKind vector_kind_from_name(const std::string& s) {
  if (s == "flat") return VectorKind::Flat;
  if (s == "alternating") return VectorKind::Alternating;
  if (s == "paper-u") return VectorKind::PaperU;
  if (s == "basis") return VectorKind::Basis;
  if (s == "random-unit") return VectorKind::RandomUnit;
  throw config_error("unknown vector kind '" + s + "'");
}

/// Named unit vectors used across the experiments.
///  flat         1/sqrt(N) everywhere
///  alternating  (-1)^{k+1}/sqrt(N)
///  paper-u      (0, 0, 1/sqrt 3, 1/sqrt 3, 1/sqrt(3(N-4)), ...)
///  basis        e_arg
///  random-unit  normalized Gaussian vector, seeded by arg
inline std::vector<double> make_vector(VectorKind kind, std::uint32_t N, std::uint64_t arg = 0) {
  std::vector<double> u(N, 0.0);
  switch (kind) {
    case VectorKind::Flat: {
      double v = 1.0 / std::sqrt(static_cast<double>(N));
      for (auto& x : u) x = v;
      break;
    }
    case VectorKind::Alternating: {
      double v = 1.0 / std::sqrt(static_cast<double>(N));
      for (std::uint32_t k = 1; k <= N; ++k) u[k - 1] = (k % 2 == 1) ? v : -v;
      break;
    }
    case VectorKind::PaperU: {
      if (N < 5) throw std::invalid_argument("paper-u vector needs N >= 5");
      double c = 1.0 / std::sqrt(3.0);
      u[2] = c;
      u[3] = c;
      double tail = 1.0 / std::sqrt(3.0 * (N - 4));
      for (std::uint32_t k = 5; k <= N; ++k) u[k - 1] = tail;
      break;
    }
    case VectorKind::Basis: {
      if (arg < 1 || arg > N) throw std::invalid_argument("basis vector index out of range");
      u[arg - 1] = 1.0;
      break;
    }
    case VectorKind::RandomUnit: {
      std::uint64_t key = stream_key(arg, 0x72616E64756E6974ULL);
      for (std::uint32_t k = 0; k < N; ++k) u[k] = counter_gaussian(key, k);
      double nrm = norm2(u);
      for (auto& x : u) x /= nrm;
      break;
    }
  }
  return u;
}

/// m pairwise orthonormal vectors from Gram-Schmidt on random draws.
inline std::vector<std::vector<double>> make_orthonormal_set(int m, std::uint32_t N,
                                                             std::uint64_t seed) {
  if (m < 1 || static_cast<std::uint32_t>(m) > N)
    throw std::invalid_argument("orthonormal set: need 1 <= m <= N");
  std::vector<std::vector<double>> out;
  for (int i = 0; i < m; ++i) {
    std::vector<double> v = make_vector(VectorKind::RandomUnit, N, seed + static_cast<std::uint64_t>(i));
    for (const auto& prev : out) {
      double c = dot(v, prev);
      for (std::uint32_t k = 0; k < N; ++k) v[k] -= c * prev[k];
    }
    double nrm = norm2(v);
    if (nrm < 1e-8) throw std::runtime_error("orthonormal set: degenerate draw");
    for (auto& x : v) x /= nrm;
    out.push_back(std::move(v));
  }
  return out;
}

/// One member of a contraction family: which tensor it contracts and with
/// which unit vectors.
struct FamilyMember {
  std::string name;
  std::uint64_t tensor_id = 0;
  std::vector<std::vector<double>> vectors;  // d-2 unit vectors
};

inline void check_unit_vectors(const std::vector<FamilyMember>& members) {
  for (const auto& m : members)
    for (const auto& v : m.vectors)
      if (std::abs(norm2(v) - 1.0) > 1e-12)
        throw std::invalid_argument("contraction vector of member '" + m.name +
                                    "' is not unit norm");
}

/// Contractions of (possibly) independent Wigner tensors: members with the
/// same tensor id share one entry stream, distinct ids are independent
/// (the id is mixed into the generator key).
inline std::vector<SymMatrix> sample_independent_family(int d, std::uint32_t N,
                                                        EntryFamily family,
                                                        const VarianceProfile& profile,
                                                        std::uint64_t seed,
                                                        const std::vector<FamilyMember>& members,
                                                        int n_threads = 0) {
  check_unit_vectors(members);
  std::vector<SymMatrix> out(members.size());
  // group members by tensor id; one streaming pass per id
  std::vector<std::uint64_t> ids;
  for (const auto& m : members)
    if (std::find(ids.begin(), ids.end(), m.tensor_id) == ids.end()) ids.push_back(m.tensor_id);
  for (std::uint64_t id : ids) {
    std::vector<std::vector<std::vector<double>>> fams;
    std::vector<std::size_t> where;
    for (std::size_t i = 0; i < members.size(); ++i)
      if (members[i].tensor_id == id) {
        fams.push_back(members[i].vectors);
        where.push_back(i);
      }
    EntrySpec spec{family, profile, seed, id};
    auto mats = stream_contracted_multi(d, N, spec, fams, n_threads);
    for (std::size_t j = 0; j < where.size(); ++j) out[where[j]] = std::move(mats[j]);
  }
  return out;
}

/// The 1/sqrt(N) normalization of the ensemble, applied by callers.
inline void normalize_contracted(SymMatrix& m) { m *= 1.0 / std::sqrt(static_cast<double>(m.dim())); }

}  // namespace tel
