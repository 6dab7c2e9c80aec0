#pragma once

#include "apapr/tensor.hpp"

#include <string>
#include <utility>
#include <vector>

namespace apapr {

struct SingularMetric : TensorError {
  explicit SingularMetric(const std::string& what) : TensorError(what) {}
};

namespace detail {

using Matrix = std::vector<std::vector<Rational>>;

inline Matrix to_matrix(const Tensor& t) {
  if (t.rank() != 2) throw TensorError("expected a rank-2 tensor");
  Matrix m(static_cast<std::size_t>(t.dim()), std::vector<Rational>(static_cast<std::size_t>(t.dim())));
  for (int i = 0; i < t.dim(); ++i)
    for (int j = 0; j < t.dim(); ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = t(i, j);
  return m;
}

inline Rational determinant(Matrix m) {
  const std::size_t n = m.size();
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t row = col + 1; row < n; ++row) {
      if (m[row][col] == 0) continue;
      const Rational f = m[row][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[row][k] -= f * m[col][k];
    }
  }
  return det;
}

inline Matrix inverse(Matrix m) {
  const std::size_t n = m.size();
  Matrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) throw SingularMetric("singular metric: determinant 0");
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational p = m[col][col];
    for (std::size_t k = 0; k < n; ++k) {
      m[col][k] /= p;
      inv[col][k] /= p;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      const Rational f = m[row][col];
      for (std::size_t k = 0; k < n; ++k) {
        m[row][k] -= f * m[col][k];
        inv[row][k] -= f * inv[col][k];
      }
    }
  }
  return inv;
}

}  // namespace detail

inline Rational determinant(const Tensor& m) { return detail::determinant(detail::to_matrix(m)); }

/// Exact inverse of a symmetric nondegenerate (0,2) metric, as a (2,0)
/// tensor. Works for indefinite metrics.
inline Tensor inverse_metric(const Tensor& metric) {
  if (metric.rank() != 2 || metric.covariant_rank() != 2)
    throw TensorError("inverse_metric: expects a (0,2) tensor");
  metric.require_symmetric(0, 1, "inverse_metric");
  const Rational det = determinant(metric);
  if (det == 0) throw SingularMetric("singular metric: determinant 0");
  auto inv = detail::inverse(detail::to_matrix(metric));
  Tensor out(metric.dim(), {Variance::Up, Variance::Up});
  for (int i = 0; i < metric.dim(); ++i)
    for (int j = 0; j < metric.dim(); ++j) out(i, j) = inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return out;
}

/// Sylvester test: every leading principal minor positive.
inline bool is_positive_definite(const Tensor& metric) {
  if (metric.rank() != 2) throw TensorError("is_positive_definite: expects a rank-2 tensor");
  if (!metric.symmetric_in(0, 1)) return false;
  const auto m = detail::to_matrix(metric);
  for (int k = 1; k <= metric.dim(); ++k) {
    detail::Matrix lead(static_cast<std::size_t>(k), std::vector<Rational>(static_cast<std::size_t>(k)));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) lead[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    if (!(detail::determinant(lead) > 0)) return false;
  }
  return true;
}

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

/// Signature of a symmetric matrix by exact congruence elimination,
/// counting pivot signs. Zero leading entries are handled by congruence
/// pivoting (diagonal swap, else adding a row+column to create a pivot).
inline Inertia inertia(const Tensor& metric) {
  if (metric.rank() != 2) throw TensorError("inertia: expects a rank-2 tensor");
  metric.require_symmetric(0, 1, "inertia");
  auto m = detail::to_matrix(metric);
  const std::size_t n = m.size();
  Inertia result;

  auto add_row_col = [&](std::size_t dst, std::size_t src) {
    for (std::size_t k = 0; k < n; ++k) m[dst][k] += m[src][k];
    for (std::size_t k = 0; k < n; ++k) m[k][dst] += m[k][src];
  };
  auto swap_row_col = [&](std::size_t a, std::size_t b) {
    std::swap(m[a], m[b]);
    for (std::size_t k = 0; k < n; ++k) std::swap(m[k][a], m[k][b]);
  };

  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t diag = k + 1;
      while (diag < n && m[diag][diag] == 0) ++diag;
      if (diag < n) {
        swap_row_col(k, diag);
      } else {
        std::size_t off = k + 1;
        while (off < n && m[k][off] == 0) ++off;
        if (off == n) {
          ++result.zero;
          continue;
        }
        add_row_col(k, off);  // pivot becomes 2 m[k][off] != 0
      }
    }
    const Rational pivot = m[k][k];
    if (pivot > 0)
      ++result.positive;
    else
      ++result.negative;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      const Rational f = m[i][k] / pivot;
      for (std::size_t j = 0; j < n; ++j) m[i][j] -= f * m[k][j];
      for (std::size_t j = 0; j < n; ++j) m[j][i] -= f * m[j][k];
    }
  }
  return result;
}

enum class Musical { Raise, Lower };

/// Flips one slot's variance with the metric (Lower) or its exact
/// inverse (Raise). The slot keeps its position, so raising and then
/// lowering the same slot is the exact identity.
inline Tensor raise_lower(const Tensor& t, int slot, const Tensor& metric, Musical direction) {
  if (slot < 0 || slot >= t.rank()) throw TensorError("raise_lower: slot out of range");
  const bool is_down = t.variance()[static_cast<std::size_t>(slot)] == Variance::Down;
  if (direction == Musical::Raise && !is_down) throw TensorError("raise_lower: slot already contravariant");
  if (direction == Musical::Lower && is_down) throw TensorError("raise_lower: slot already covariant");
  const Tensor pairing = direction == Musical::Raise ? inverse_metric(metric) : metric;

  std::vector<Variance> var = t.variance();
  var[static_cast<std::size_t>(slot)] = direction == Musical::Raise ? Variance::Up : Variance::Down;
  Tensor out(t.dim(), var);
  std::vector<int> idx, src;
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    out.unflatten(flat, idx);
    src = idx;
    Rational sum(0);
    for (int m = 0; m < t.dim(); ++m) {
      const Rational& p = pairing(idx[static_cast<std::size_t>(slot)], m);
      if (p == 0) continue;
      src[static_cast<std::size_t>(slot)] = m;
      sum += p * t.at(src);
    }
    out.component(flat) = sum;
  }
  return out;
}

}  // namespace apapr
