#pragma once

#include "apapr/lie_frame.hpp"
#include "apapr/linalg.hpp"
#include "apapr/tensor.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace apapr {

struct StructureError : std::runtime_error {
  explicit StructureError(std::vector<std::string> violations_)
      : std::runtime_error(join(violations_)), violations(std::move(violations_)) {}
  std::vector<std::string> violations;

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s = "invalid structure:";
    for (const auto& x : v) s += " [" + x + "]";
    return s;
  }
};

enum class MetricKind { Riemannian, Associated };

/// A validated almost paracontact almost paracomplex Riemannian structure
/// (phi, xi, eta, g) over a Lie frame, together with the associated metric
/// g~(x,y) = g(x, phi y) + eta(x) eta(y) and both exact inverse metrics.
/// Validation is all-or-nothing: an object of this type cannot exist in an
/// invalid state.
class Manifold {
 public:
  static Manifold build(LieFrame frame, Tensor phi, Tensor xi, Tensor eta, Tensor g) {
    const int d = frame.dim();
    const int n = frame.n();
    std::vector<std::string> bad;

    auto shape_ok = [&](const Tensor& t, int up, int down) {
      return t.dim() == d && t.contravariant_rank() == up && t.covariant_rank() == down &&
             canonical_order(t);
    };
    if (!shape_ok(phi, 1, 1)) bad.push_back("phi must be a (1,1) tensor over the frame");
    if (!shape_ok(xi, 1, 0)) bad.push_back("xi must be a vector over the frame");
    if (!shape_ok(eta, 0, 1)) bad.push_back("eta must be a 1-form over the frame");
    if (!shape_ok(g, 0, 2)) bad.push_back("g must be a (0,2) tensor over the frame");
    if (!bad.empty()) throw StructureError(std::move(bad));

    // Structure axioms, each checked exactly and reported by name.
    Tensor phi_xi = Tensor::vector(d);
    for (int k = 0; k < d; ++k) {
      Rational s(0);
      for (int m = 0; m < d; ++m) s += phi(k, m) * xi(m);
      phi_xi(k) = s;
    }
    if (!phi_xi.is_zero()) bad.push_back("phi(xi) != 0");

    Tensor phi2(d, {Variance::Up, Variance::Down});
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j) {
        Rational s(0);
        for (int m = 0; m < d; ++m) s += phi(k, m) * phi(m, j);
        phi2(k, j) = s;
      }
    bool phi2_ok = true;
    for (int k = 0; k < d && phi2_ok; ++k)
      for (int j = 0; j < d && phi2_ok; ++j) {
        const Rational expected = Rational(k == j ? 1 : 0) - eta(j) * xi(k);
        if (phi2(k, j) != expected) phi2_ok = false;
      }
    if (!phi2_ok) bad.push_back("phi^2 != I - eta (x) xi");

    bool eta_phi_ok = true;
    for (int j = 0; j < d; ++j) {
      Rational s(0);
      for (int m = 0; m < d; ++m) s += eta(m) * phi(m, j);
      if (s != 0) eta_phi_ok = false;
    }
    if (!eta_phi_ok) bad.push_back("eta o phi != 0");

    {
      Rational s(0);
      for (int m = 0; m < d; ++m) s += eta(m) * xi(m);
      if (s != 1) bad.push_back("eta(xi) != 1");
    }
    {
      Rational tr(0);
      for (int m = 0; m < d; ++m) tr += phi(m, m);
      if (tr != 0) bad.push_back("tr phi != 0");
    }

    if (!g.symmetric_in(0, 1)) bad.push_back("g not symmetric");

    bool compat_ok = true;
    for (int i = 0; i < d && compat_ok; ++i)
      for (int j = 0; j < d && compat_ok; ++j) {
        Rational s(0);
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) s += g(a, b) * phi(a, i) * phi(b, j);
        if (s != g(i, j) - eta(i) * eta(j)) compat_ok = false;
      }
    if (!compat_ok) bad.push_back("g(phi x, phi y) != g(x,y) - eta(x) eta(y)");

    bool dual_ok = true;
    for (int i = 0; i < d; ++i) {
      Rational s(0);
      for (int m = 0; m < d; ++m) s += g(i, m) * xi(m);
      if (s != eta(i)) dual_ok = false;
    }
    if (!dual_ok) bad.push_back("g(x, xi) != eta(x)");

    if (g.symmetric_in(0, 1) && !is_positive_definite(g)) bad.push_back("g not positive definite");

    if (!bad.empty()) throw StructureError(std::move(bad));

    // Associated metric and its verified signature (n+1, n).
    Tensor g_tilde(d, {Variance::Down, Variance::Down});
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Rational s = eta(i) * eta(j);
        for (int m = 0; m < d; ++m) s += g(i, m) * phi(m, j);
        g_tilde(i, j) = s;
      }
    if (!g_tilde.symmetric_in(0, 1)) bad.push_back("associated metric not symmetric");
    if (determinant(g_tilde) == 0) bad.push_back("associated metric degenerate");
    if (bad.empty()) {
      const Inertia sig = inertia(g_tilde);
      if (sig.positive != n + 1 || sig.negative != n || sig.zero != 0)
        bad.push_back("associated metric signature is not (n+1, n)");
      // compatibility of the associated metric, re-derived rather than assumed
      bool tilde_compat = true;
      for (int i = 0; i < d && tilde_compat; ++i)
        for (int j = 0; j < d && tilde_compat; ++j) {
          Rational s(0);
          for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) s += g_tilde(a, b) * phi(a, i) * phi(b, j);
          if (s != g_tilde(i, j) - eta(i) * eta(j)) tilde_compat = false;
        }
      if (!tilde_compat) bad.push_back("g~(phi x, phi y) != g~(x,y) - eta(x) eta(y)");
    }
    if (!bad.empty()) throw StructureError(std::move(bad));

    Tensor g_inv = inverse_metric(g);
    Tensor g_tilde_inv = inverse_metric(g_tilde);
    return Manifold(std::move(frame), std::move(phi), std::move(phi2), std::move(xi), std::move(eta),
                    std::move(g), std::move(g_tilde), std::move(g_inv), std::move(g_tilde_inv));
  }

  const LieFrame& frame() const { return frame_; }
  int n() const { return frame_.n(); }
  int dim() const { return frame_.dim(); }

  const Tensor& phi() const { return phi_; }
  const Tensor& phi_squared() const { return phi2_; }
  const Tensor& xi() const { return xi_; }
  const Tensor& eta() const { return eta_; }

  const Tensor& metric(MetricKind kind = MetricKind::Riemannian) const {
    return kind == MetricKind::Riemannian ? g_ : g_tilde_;
  }
  const Tensor& metric_inverse(MetricKind kind = MetricKind::Riemannian) const {
    return kind == MetricKind::Riemannian ? g_inv_ : g_tilde_inv_;
  }
  const Tensor& associated_metric() const { return g_tilde_; }

  Rational eta_of(const Tensor& x) const {
    Rational s(0);
    for (int m = 0; m < dim(); ++m) s += eta_(m) * x(m);
    return s;
  }

  Tensor apply_phi(const Tensor& x) const { return apply(phi_, x); }

  /// x^h = phi^2 x.
  Tensor horizontal(const Tensor& x) const { return apply(phi2_, x); }

  /// x^v = eta(x) xi.
  Tensor vertical(const Tensor& x) const {
    Tensor out = xi_;
    return out *= eta_of(x);
  }

  Tensor basis_vector(int i) const {
    Tensor e = Tensor::vector(dim());
    e(i) = 1;
    return e;
  }

  Rational inner(const Tensor& x, const Tensor& y, MetricKind kind = MetricKind::Riemannian) const {
    const Tensor& m = metric(kind);
    Rational s(0);
    for (int i = 0; i < dim(); ++i) {
      if (x(i) == 0) continue;
      for (int j = 0; j < dim(); ++j) s += x(i) * y(j) * m(i, j);
    }
    return s;
  }

 private:
  Manifold(LieFrame frame, Tensor phi, Tensor phi2, Tensor xi, Tensor eta, Tensor g, Tensor g_tilde,
           Tensor g_inv, Tensor g_tilde_inv)
      : frame_(std::move(frame)),
        phi_(std::move(phi)),
        phi2_(std::move(phi2)),
        xi_(std::move(xi)),
        eta_(std::move(eta)),
        g_(std::move(g)),
        g_tilde_(std::move(g_tilde)),
        g_inv_(std::move(g_inv)),
        g_tilde_inv_(std::move(g_tilde_inv)) {}

  static bool canonical_order(const Tensor& t) {
    bool seen_down = false;
    for (auto v : t.variance()) {
      if (v == Variance::Down)
        seen_down = true;
      else if (seen_down)
        return false;
    }
    return true;
  }

  static Tensor apply(const Tensor& endo, const Tensor& x) {
    Tensor out = Tensor::vector(x.dim());
    for (int k = 0; k < x.dim(); ++k) {
      Rational s(0);
      for (int m = 0; m < x.dim(); ++m) s += endo(k, m) * x(m);
      out(k) = s;
    }
    return out;
  }

  LieFrame frame_;
  Tensor phi_, phi2_, xi_, eta_, g_, g_tilde_, g_inv_, g_tilde_inv_;
};

}  // namespace apapr
