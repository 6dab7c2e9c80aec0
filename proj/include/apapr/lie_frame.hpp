#pragma once

#include "apapr/linalg.hpp"
#include "apapr/tensor.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace apapr {

struct LieFrameError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Lie algebra of left-invariant fields on a (2n+1)-dimensional group,
/// given by structure constants C^k_ij with [e_i, e_j] = C^k_ij e_k.
/// All tensors over the frame have constant components, so directional
/// derivatives of components vanish and every formula below is finite
/// exact algebra.
class LieFrame {
 public:
  static LieFrame create(int n, Tensor structure_constants) {
    if (n <= 0) throw LieFrameError("frame parameter n must be positive");
    const int d = 2 * n + 1;
    const Tensor& c = structure_constants;
    if (c.dim() != d || c.rank() != 3 || c.contravariant_rank() != 1 ||
        c.variance()[0] != Variance::Up)
      throw LieFrameError("structure constants must be a (1,2) array over dim 2n+1");
    c.require_antisymmetric(1, 2, "structure constants");
    // Jacobi: sum over cyclic (i,j,l) of C^m_ip C^p_jl = 0, exactly.
    for (int m = 0; m < d; ++m)
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
          for (int l = j + 1; l < d; ++l) {
            Rational s(0);
            for (int p = 0; p < d; ++p)
              s += c(m, i, p) * c(p, j, l) + c(m, j, p) * c(p, l, i) + c(m, l, p) * c(p, i, j);
            if (s != 0)
              throw LieFrameError("Jacobi identity fails at (m,i,j,l)=(" + std::to_string(m) + "," +
                                  std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(l) + ")");
          }
    return LieFrame(n, std::move(structure_constants));
  }

  static LieFrame abelian(int n) {
    return LieFrame(n, Tensor(2 * n + 1, {Variance::Up, Variance::Down, Variance::Down}));
  }

  int n() const { return n_; }
  int dim() const { return 2 * n_ + 1; }
  const Tensor& structure_constants() const { return c_; }
  const Rational& c(int k, int i, int j) const { return c_(k, i, j); }

  Tensor bracket(const Tensor& x, const Tensor& y) const {
    if (x.dim() != dim() || y.dim() != dim()) throw LieFrameError("bracket: dimension mismatch");
    if (x.rank() != 1 || y.rank() != 1 || x.contravariant_rank() != 1 || y.contravariant_rank() != 1)
      throw LieFrameError("bracket: expects vectors");
    Tensor out = Tensor::vector(dim());
    for (int k = 0; k < dim(); ++k) {
      Rational s(0);
      for (int i = 0; i < dim(); ++i) {
        if (x(i) == 0) continue;
        for (int j = 0; j < dim(); ++j) s += x(i) * y(j) * c_(k, i, j);
      }
      out(k) = s;
    }
    return out;
  }

 private:
  LieFrame(int n, Tensor c) : n_(n), c_(std::move(c)) {}

  int n_;
  Tensor c_;  // (1,2)
};

/// Connection coefficients Gamma^k_ij over the frame, nabla_{e_i} e_j =
/// Gamma^k_ij e_k. Stored as raw coefficients: torsion and metricity are
/// derived properties, not invariants (the adapted connections built later
/// carry torsion by design).
class Connection {
 public:
  explicit Connection(Tensor coefficients) : gamma_(std::move(coefficients)) {
    if (gamma_.rank() != 3 || gamma_.contravariant_rank() != 1 || gamma_.variance()[0] != Variance::Up)
      throw LieFrameError("connection coefficients must form a (1,2) array");
  }

  static Connection zero(int dim) {
    return Connection(Tensor(dim, {Variance::Up, Variance::Down, Variance::Down}));
  }

  int dim() const { return gamma_.dim(); }
  const Tensor& coefficients() const { return gamma_; }
  const Rational& coefficient(int k, int i, int j) const { return gamma_(k, i, j); }
  Rational& coefficient(int k, int i, int j) { return gamma_(k, i, j); }

  /// nabla_x y for constant-component fields.
  Tensor derivative(const Tensor& x, const Tensor& y) const {
    Tensor out = Tensor::vector(dim());
    for (int k = 0; k < dim(); ++k) {
      Rational s(0);
      for (int i = 0; i < dim(); ++i) {
        if (x(i) == 0) continue;
        for (int j = 0; j < dim(); ++j) s += x(i) * y(j) * gamma_(k, i, j);
      }
      out(k) = s;
    }
    return out;
  }

  /// Covariant derivative of a constant-component tensor. The derivative
  /// direction becomes the first covariant slot, so for canonical tensors
  /// (all Up slots first) (nabla t)^{a..}_{i b..} = (nabla_{e_i} t)^{a..}_{b..}.
  Tensor covariant_derivative(const Tensor& t) const {
    const int r = t.rank();
    const int cr = t.contravariant_rank();
    for (int s = 0; s < cr; ++s)
      if (t.variance()[static_cast<std::size_t>(s)] != Variance::Up)
        throw LieFrameError("covariant_derivative: tensor slots must be in canonical order");
    std::vector<Variance> var = t.variance();
    var.insert(var.begin() + cr, Variance::Down);
    Tensor out(t.dim(), var);

    std::vector<int> oidx, tidx(static_cast<std::size_t>(r));
    for (std::size_t flat = 0; flat < out.size(); ++flat) {
      out.unflatten(flat, oidx);
      const int dir = oidx[static_cast<std::size_t>(cr)];
      for (int s = 0; s < r; ++s)
        tidx[static_cast<std::size_t>(s)] = oidx[static_cast<std::size_t>(s < cr ? s : s + 1)];
      Rational sum(0);
      for (int s = 0; s < r; ++s) {
        const int orig = tidx[static_cast<std::size_t>(s)];
        for (int m = 0; m < t.dim(); ++m) {
          tidx[static_cast<std::size_t>(s)] = m;
          if (t.variance()[static_cast<std::size_t>(s)] == Variance::Up)
            sum += gamma_(orig, dir, m) * t.at(tidx);
          else
            sum -= gamma_(m, dir, orig) * t.at(tidx);
        }
        tidx[static_cast<std::size_t>(s)] = orig;
      }
      out.component(flat) = sum;
    }
    return out;
  }

  friend bool operator==(const Connection& a, const Connection& b) { return a.gamma_ == b.gamma_; }

 private:
  Tensor gamma_;
};

/// T^k_ij = Gamma^k_ij - Gamma^k_ji - C^k_ij as a (1,2) array.
inline Tensor connection_torsion(const LieFrame& frame, const Connection& conn) {
  const int d = frame.dim();
  Tensor t(d, {Variance::Up, Variance::Down, Variance::Down});
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        t(k, i, j) = conn.coefficient(k, i, j) - conn.coefficient(k, j, i) - frame.c(k, i, j);
  return t;
}

inline bool is_metric_compatible(const Connection& conn, const Tensor& metric) {
  return conn.covariant_derivative(metric).is_zero();
}

/// Levi-Civita connection of a constant metric on the frame:
/// 2 g(nabla_x y, z) = g([x,y],z) - g([y,z],x) + g([z,x],y).
inline Connection koszul_levi_civita(const LieFrame& frame, const Tensor& metric) {
  const int d = frame.dim();
  if (metric.dim() != d || metric.rank() != 2 || metric.covariant_rank() != 2)
    throw LieFrameError("koszul_levi_civita: metric must be a (0,2) tensor over the frame");
  metric.require_symmetric(0, 1, "koszul metric");
  const Tensor metric_inv = inverse_metric(metric);

  Tensor gamma(d, {Variance::Up, Variance::Down, Variance::Down});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int m = 0; m < d; ++m) {
        Rational s(0);
        for (int k = 0; k < d; ++k) {
          if (metric_inv(m, k) == 0) continue;
          Rational t(0);
          for (int l = 0; l < d; ++l)
            t += frame.c(l, i, j) * metric(l, k) - frame.c(l, j, k) * metric(l, i) +
                 frame.c(l, k, i) * metric(l, j);
          s += metric_inv(m, k) * t;
        }
        gamma(m, i, j) = s / 2;
      }
  Connection conn(std::move(gamma));

  if (!connection_torsion(frame, conn).is_zero())
    throw LieFrameError("koszul_levi_civita: torsion check failed");
  if (!is_metric_compatible(conn, metric))
    throw LieFrameError("koszul_levi_civita: metricity check failed");
  return conn;
}

/// d(alpha)(x,y) = (nabla_x alpha)y - (nabla_y alpha)x = -alpha([x,y]) for
/// constant 1-forms; no 1/2 factor in this convention.
inline Tensor d_one_form(const LieFrame& frame, const Tensor& alpha) {
  const int d = frame.dim();
  if (alpha.dim() != d || alpha.rank() != 1 || alpha.covariant_rank() != 1)
    throw LieFrameError("d_one_form: expects a 1-form");
  Tensor out(d, {Variance::Down, Variance::Down});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Rational s(0);
      for (int k = 0; k < d; ++k) s -= alpha(k) * frame.c(k, i, j);
      out(i, j) = s;
    }
  return out;
}

/// (L_xi metric)(x,y) = metric(nabla_x xi, y) + metric(x, nabla_y xi),
/// valid for the Levi-Civita connection of `metric`.
inline Tensor lie_derivative_metric(const LieFrame& frame, const Connection& conn, const Tensor& xi,
                                    const Tensor& metric) {
  const int d = frame.dim();
  Tensor out(d, {Variance::Down, Variance::Down});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Rational s(0);
      for (int k = 0; k < d; ++k)
        for (int m = 0; m < d; ++m)
          s += conn.coefficient(k, i, m) * xi(m) * metric(k, j) +
               conn.coefficient(k, j, m) * xi(m) * metric(i, k);
      out(i, j) = s;
    }
  return out;
}

/// Divergence with respect to (conn, metric). Vectors: metric^ij
/// metric(nabla_{e_i} X, e_j). 1-forms are traced directly, div(alpha) =
/// metric^ij (nabla_{e_i} alpha)(e_j); this equals the dual-vector route
/// whenever conn is compatible with the tracing metric, and is the form
/// the Lee-form trace relations require when it is not.
inline Rational divergence(const LieFrame& frame, const Connection& conn, const Tensor& metric,
                           const Tensor& obj) {
  const int d = frame.dim();
  const Tensor metric_inv = inverse_metric(metric);
  Rational s(0);
  if (obj.rank() != 1) throw LieFrameError("divergence: expects a vector or a 1-form");
  if (obj.contravariant_rank() == 1) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        if (metric_inv(i, j) == 0) continue;
        Rational t(0);
        for (int k = 0; k < d; ++k)
          for (int m = 0; m < d; ++m) t += conn.coefficient(k, i, m) * obj(m) * metric(k, j);
        s += metric_inv(i, j) * t;
      }
  } else {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        if (metric_inv(i, j) == 0) continue;
        Rational t(0);
        for (int k = 0; k < d; ++k) t -= obj(k) * conn.coefficient(k, i, j);
        s += metric_inv(i, j) * t;
      }
  }
  return s;
}

}  // namespace apapr
