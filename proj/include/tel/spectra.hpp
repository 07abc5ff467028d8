#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tel/common.hpp"
#include "tel/tensor.hpp"

namespace tel {

struct SpectrumMeta {
  std::uint64_t seed = 0;
  std::string member;
  std::string normalization;
};

/// Sorted eigenvalues of one matrix plus provenance.
struct Spectrum {
  std::vector<double> lambda;  // nondecreasing
  SpectrumMeta meta;

  int size() const { return static_cast<int>(lambda.size()); }
};

namespace detail {

inline constexpr double kDeflationTol = 1e-12;
inline constexpr int kMaxSweeps = 50;

/// Householder reduction to tridiagonal form. v holds the input on entry;
/// on exit it holds the accumulated orthogonal transform when
/// accumulate is true. d receives the diagonal, e the subdiagonal in
/// e[1..n-1].
inline void tridiagonalize(std::vector<double>& v, int n, std::vector<double>& d,
                           std::vector<double>& e, bool accumulate) {
  auto V = [&](int r, int c) -> double& { return v[static_cast<std::size_t>(r) * n + c]; };
  for (int j = 0; j < n; ++j) d[j] = V(n - 1, j);

  for (int i = n - 1; i > 0; --i) {
    double scale = 0.0, h = 0.0;
    for (int k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (int j = 0; j < i; ++j) {
        d[j] = V(i - 1, j);
        V(i, j) = 0.0;
        V(j, i) = 0.0;
      }
    } else {
      for (int k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = (f > 0) ? -std::sqrt(h) : std::sqrt(h);
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (int j = 0; j < i; ++j) e[j] = 0.0;

      for (int j = 0; j < i; ++j) {
        f = d[j];
        V(j, i) = f;
        g = e[j] + V(j, j) * f;
        for (int k = j + 1; k <= i - 1; ++k) {
          g += V(k, j) * d[k];
          e[k] += V(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (int j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      double hh = f / (h + h);
      for (int j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (int j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (int k = j; k <= i - 1; ++k) V(k, j) -= (f * e[k] + g * d[k]);
        d[j] = V(i - 1, j);
        V(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  if (accumulate) {
    for (int i = 0; i < n - 1; ++i) {
      V(n - 1, i) = V(i, i);
      V(i, i) = 1.0;
      double h = d[i + 1];
      if (h != 0.0) {
        for (int k = 0; k <= i; ++k) d[k] = V(k, i + 1) / h;
        for (int j = 0; j <= i; ++j) {
          double g = 0.0;
          for (int k = 0; k <= i; ++k) g += V(k, i + 1) * V(k, j);
          for (int k = 0; k <= i; ++k) V(k, j) -= g * d[k];
        }
      }
      for (int k = 0; k <= i; ++k) V(k, i + 1) = 0.0;
    }
    for (int j = 0; j < n; ++j) {
      d[j] = V(n - 1, j);
      V(n - 1, j) = 0.0;
    }
    V(n - 1, n - 1) = 1.0;
  } else {
    // the reduced tridiagonal's diagonal sits on the matrix diagonal
    for (int j = 0; j < n; ++j) d[j] = V(j, j);
  }
  e[0] = 0.0;
}

/// QL iteration with implicit shifts on the tridiagonal (d, e).
/// Rotations are applied to v when accumulate is true.
inline void ql_implicit(std::vector<double>& d, std::vector<double>& e, std::vector<double>& v,
                        int n, bool accumulate) {
  auto V = [&](int r, int c) -> double& { return v[static_cast<std::size_t>(r) * n + c]; };
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  double f = 0.0, tst1 = 0.0;
  for (int l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    int m = l;
    while (m < n) {
      if (std::abs(e[m]) <= kDeflationTol * tst1) break;
      ++m;
    }
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > kMaxSweeps)
          throw std::runtime_error("eigensolver: QL sweep limit exceeded");
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        double dl1 = d[l + 1];
        double h = g - d[l];
        for (int i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = c, c3 = c;
        double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (int i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          if (accumulate) {
            for (int k = 0; k < n; ++k) {
              h = V(k, i + 1);
              V(k, i + 1) = s * V(k, i) + c * h;
              V(k, i) = c * V(k, i) - s * h;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > kDeflationTol * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

}  // namespace detail

struct EigenSystem {
  std::vector<double> values;   // sorted nondecreasing
  std::vector<double> vectors;  // column j (row-major rows) pairs with values[j]
  int n = 0;

  double vec(int row, int col) const { return vectors[static_cast<std::size_t>(row) * n + col]; }
};

/// Full symmetric eigendecomposition; used where eigenvector residuals
/// are needed.
inline EigenSystem eigen_system(const SymMatrix& m) {
  int n = m.dim();
  if (n > 4000) throw resource_error("dense eigensolver capped at N <= 4000");
  for (double x : m.data())
    if (!std::isfinite(x)) throw std::invalid_argument("eigensolver: non-finite entry");
  EigenSystem es;
  es.n = n;
  es.vectors = m.data();
  es.values.assign(n, 0.0);
  std::vector<double> e(n, 0.0);
  detail::tridiagonalize(es.vectors, n, es.values, e, true);
  detail::ql_implicit(es.values, e, es.vectors, n, true);
  // sort ascending, permuting columns alongside
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return es.values[a] < es.values[b]; });
  std::vector<double> sval(n);
  std::vector<double> svec(es.vectors.size());
  for (int j = 0; j < n; ++j) {
    sval[j] = es.values[order[j]];
    for (int r = 0; r < n; ++r)
      svec[static_cast<std::size_t>(r) * n + j] = es.vec(r, order[j]);
  }
  es.values = std::move(sval);
  es.vectors = std::move(svec);
  return es;
}

/// Eigenvalues only (no transform accumulation).
inline Spectrum eigenvalues(const SymMatrix& m, SpectrumMeta meta = {}) {
  int n = m.dim();
  if (n > 4000) throw resource_error("dense eigensolver capped at N <= 4000");
  for (double x : m.data())
    if (!std::isfinite(x)) throw std::invalid_argument("eigensolver: non-finite entry");
  std::vector<double> work = m.data();
  std::vector<double> d(n, 0.0), e(n, 0.0);
  detail::tridiagonalize(work, n, d, e, false);
  detail::ql_implicit(d, e, work, n, false);
  std::sort(d.begin(), d.end());
  Spectrum s;
  s.lambda = std::move(d);
  s.meta = std::move(meta);
  return s;
}

inline SymMatrix matmul(const SymMatrix& a, const SymMatrix& b) {
  int n = a.dim();
  if (b.dim() != n) throw std::invalid_argument("matmul: dimension mismatch");
  SymMatrix c(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

/// (1/N) Tr(M^k) by repeated multiplication; k <= 12.
inline double trace_moment(const SymMatrix& m, int k) {
  if (k < 0 || k > 12) throw std::invalid_argument("trace_moment: k must be in [0, 12]");
  int n = m.dim();
  if (k == 0) return 1.0;
  if (k == 1) return m.trace() / n;
  SymMatrix p = m;
  for (int j = 2; j <= k; ++j) p = matmul(p, m);
  return p.trace() / n;
}

/// All of (1/N) Tr(M^j) for j = 1..kmax in one pass of powers.
inline std::vector<double> trace_moments(const SymMatrix& m, int kmax) {
  if (kmax < 1 || kmax > 12) throw std::invalid_argument("trace_moments: kmax must be in [1, 12]");
  int n = m.dim();
  std::vector<double> out;
  out.push_back(m.trace() / n);
  SymMatrix p = m;
  for (int j = 2; j <= kmax; ++j) {
    p = matmul(p, m);
    out.push_back(p.trace() / n);
  }
  return out;
}

/// Kolmogorov-Smirnov distance between the spectrum's empirical step CDF
/// and a reference CDF, exact at the jump points.
inline double ks_distance(const Spectrum& s, const std::function<double(double)>& cdf) {
  int n = s.size();
  if (n == 0) throw std::invalid_argument("ks_distance: empty spectrum");
  double dmax = 0.0;
  for (int i = 1; i <= n; ++i) {
    double F = cdf(s.lambda[i - 1]);
    dmax = std::max(dmax, std::abs(static_cast<double>(i) / n - F));
    dmax = std::max(dmax, std::abs(static_cast<double>(i - 1) / n - F));
  }
  return dmax;
}

}  // namespace tel
