#pragma once

#include "apapr/lie_frame.hpp"
#include "apapr/structure.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace apapr {

struct IdentityViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// F(x,y,z) = metric((nabla_x phi) y, z), the classifying (0,3) tensor of
/// the structure. Works for either metric of the pair; the caller supplies
/// the Levi-Civita connection of the chosen metric. The structural
/// identities
///   F(x,y,z) = F(x,z,y) = -F(x,phi y,phi z) + eta(y) F(x,xi,z) + eta(z) F(x,y,xi)
/// are verified exactly on construction.
inline Tensor compute_fundamental_tensor(const Manifold& m, const Connection& nabla, MetricKind kind) {
  const int d = m.dim();
  const Tensor& phi = m.phi();
  const Tensor& metric = m.metric(kind);

  Tensor nabla_phi = nabla.covariant_derivative(phi);  // (1,2): (k; dir, arg)
  Tensor f(d, {Variance::Down, Variance::Down, Variance::Down});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int z = 0; z < d; ++z) {
        Rational s(0);
        for (int k = 0; k < d; ++k) s += nabla_phi(k, i, j) * metric(k, z);
        f(i, j, z) = s;
      }

  if (!f.symmetric_in(1, 2))
    throw IdentityViolation("fundamental tensor: F(x,y,z) != F(x,z,y)");

  const Tensor& eta = m.eta();
  const Tensor& xi = m.xi();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int z = 0; z < d; ++z) {
        Rational fpp(0);
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) fpp += f(i, a, b) * phi(a, j) * phi(b, z);
        Rational fxz(0), fyx(0);
        for (int a = 0; a < d; ++a) {
          fxz += f(i, a, z) * xi(a);
          fyx += f(i, j, a) * xi(a);
        }
        if (f(i, j, z) != -fpp + eta(j) * fxz + eta(z) * fyx)
          throw IdentityViolation("fundamental tensor: phi-compatibility identity fails");
      }
  return f;
}

/// The three trace 1-forms of F with respect to the chosen metric:
/// theta(z) = m^ij F(e_i,e_j,z), theta*(z) = m^ij F(e_i,phi e_j,z),
/// omega(z) = F(xi,xi,z).
struct LeeForms {
  Tensor theta;
  Tensor theta_star;
  Tensor omega;
};

inline LeeForms lee_forms(const Manifold& m, const Tensor& f, MetricKind kind) {
  const int d = m.dim();
  const Tensor& minv = m.metric_inverse(kind);
  const Tensor& phi = m.phi();
  const Tensor& xi = m.xi();
  LeeForms out{Tensor::one_form(d), Tensor::one_form(d), Tensor::one_form(d)};
  for (int z = 0; z < d; ++z) {
    Rational th(0), ths(0), om(0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        if (minv(i, j) != 0) {
          th += minv(i, j) * f(i, j, z);
          for (int a = 0; a < d; ++a) ths += minv(i, j) * phi(a, j) * f(i, a, z);
        }
        om += xi(i) * xi(j) * f(i, j, z);
      }
    out.theta(z) = th;
    out.theta_star(z) = ths;
    out.omega(z) = om;
  }
  // omega(xi) = 0 is forced by the identities; keep it as a cheap sentinel.
  Rational om_xi(0);
  for (int z = 0; z < d; ++z) om_xi += out.omega(z) * xi(z);
  if (om_xi != 0) throw IdentityViolation("lee forms: omega(xi) != 0");
  return out;
}

inline Rational pair_form(const Tensor& form, const Tensor& x) {
  Rational s(0);
  for (int i = 0; i < x.dim(); ++i) s += form(i) * x(i);
  return s;
}

/// The trace relations tying the Lee forms of F to divergences of eta:
/// theta(xi) = -(other-metric trace of nabla eta), theta*(xi) = -(own-metric
/// trace of nabla eta), with nabla the Levi-Civita connection F was built
/// from.
inline bool lee_divergence_relations_hold(const Manifold& m, const LeeForms& lee,
                                          const Connection& nabla, MetricKind kind) {
  const MetricKind other =
      kind == MetricKind::Riemannian ? MetricKind::Associated : MetricKind::Riemannian;
  const Rational div_own = divergence(m.frame(), nabla, m.metric(kind), m.eta());
  const Rational div_other = divergence(m.frame(), nabla, m.metric(other), m.eta());
  return pair_form(lee.theta, m.xi()) == -div_other && pair_form(lee.theta_star, m.xi()) == -div_own;
}

/// A quantity the text determines twice: by its definition and by an
/// expansion in F. Both results are kept; the exact-agreement certificate
/// is reported, not silently asserted.
struct RoutePair {
  Tensor direct;
  Tensor expanded;
  bool agree = false;
};

/// Potential of the second Levi-Civita connection with respect to the
/// first, as a (1,2) array: Phi(x,y) = nabla~_x y - nabla_x y.
inline Tensor potential_vector(const Connection& nabla, const Connection& nabla_tilde) {
  Tensor out = nabla_tilde.coefficients();
  out -= nabla.coefficients();
  return out;
}

namespace detail {

inline Tensor basis_vec(int dim, int i) {
  Tensor e = Tensor::vector(dim);
  e(i) = 1;
  return e;
}

inline Tensor apply_endo(const Tensor& endo, const Tensor& x) {
  Tensor out = Tensor::vector(x.dim());
  for (int k = 0; k < x.dim(); ++k) {
    Rational s(0);
    for (int m = 0; m < x.dim(); ++m) s += endo(k, m) * x(m);
    out(k) = s;
  }
  return out;
}

inline Rational eval3(const Tensor& t, const Tensor& x, const Tensor& y, const Tensor& z) {
  Rational s(0);
  for (int a = 0; a < t.dim(); ++a) {
    if (x(a) == 0) continue;
    for (int b = 0; b < t.dim(); ++b) {
      if (y(b) == 0) continue;
      for (int c = 0; c < t.dim(); ++c) {
        if (z(c) == 0) continue;
        s += x(a) * y(b) * z(c) * t(a, b, c);
      }
    }
  }
  return s;
}

}  // namespace detail

/// Phi as a (0,3) tensor, Phi(x,y,z) = g(Phi(x,y), z), computed two ways:
/// route A from the connection difference, route B from the displayed
/// expansion of 2 Phi in F.
inline RoutePair compute_potential(const Manifold& m, const Connection& nabla,
                                   const Connection& nabla_tilde, const Tensor& f,
                                   const LeeForms& lee) {
  const int d = m.dim();
  const Tensor& g = m.metric(MetricKind::Riemannian);
  const Tensor& phi = m.phi();
  const Tensor& eta = m.eta();
  const Tensor& xi = m.xi();

  const Tensor phi_vec = potential_vector(nabla, nabla_tilde);
  Tensor direct(d, {Variance::Down, Variance::Down, Variance::Down});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int z = 0; z < d; ++z) {
        Rational s(0);
        for (int k = 0; k < d; ++k) s += phi_vec(k, i, j) * g(k, z);
        direct(i, j, z) = s;
      }

  using detail::eval3;
  std::vector<Tensor> e;
  e.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) e.push_back(detail::basis_vec(d, i));

  Tensor expanded(d, {Variance::Down, Variance::Down, Variance::Down});
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z) {
        const Tensor px = detail::apply_endo(phi, e[static_cast<std::size_t>(x)]);
        const Tensor py = detail::apply_endo(phi, e[static_cast<std::size_t>(y)]);
        const Tensor pz = detail::apply_endo(phi, e[static_cast<std::size_t>(z)]);
        const Tensor& ex = e[static_cast<std::size_t>(x)];
        const Tensor& ey = e[static_cast<std::size_t>(y)];
        const Tensor& ez = e[static_cast<std::size_t>(z)];
        Rational two_phi = eval3(f, ex, ey, pz) + eval3(f, ey, ex, pz) - eval3(f, pz, ex, ey);
        two_phi -= eta(x) * (eval3(f, ey, ez, xi) - eval3(f, pz, py, xi));
        two_phi -= eta(y) * (eval3(f, ex, ez, xi) - eval3(f, pz, px, xi));
        two_phi -= eta(z) * (eval3(f, xi, ex, ey) - eval3(f, ex, ey, xi) + eval3(f, ex, py, xi) -
                             pair_form(lee.omega, px) * eta(y) - eval3(f, ey, ex, xi) +
                             eval3(f, ey, px, xi) - pair_form(lee.omega, py) * eta(x));
        expanded(x, y, z) = two_phi / 2;
      }

  RoutePair out{std::move(direct), std::move(expanded), false};
  out.agree = out.direct == out.expanded;
  return out;
}

/// The fundamental tensor of the associated metric, two ways: route A from
/// its own Levi-Civita connection, route B from the displayed expansion of
/// 2 F~ in F.
inline RoutePair compute_fundamental_tilde(const Manifold& m, const Connection& nabla_tilde,
                                           const Tensor& f) {
  const int d = m.dim();
  const Tensor& phi = m.phi();
  const Tensor& eta = m.eta();
  const Tensor& xi = m.xi();

  Tensor direct = compute_fundamental_tensor(m, nabla_tilde, MetricKind::Associated);

  using detail::eval3;
  std::vector<Tensor> e;
  e.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) e.push_back(detail::basis_vec(d, i));

  Tensor expanded(d, {Variance::Down, Variance::Down, Variance::Down});
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z) {
        const Tensor px = detail::apply_endo(phi, e[static_cast<std::size_t>(x)]);
        const Tensor py = detail::apply_endo(phi, e[static_cast<std::size_t>(y)]);
        const Tensor pz = detail::apply_endo(phi, e[static_cast<std::size_t>(z)]);
        const Tensor& ex = e[static_cast<std::size_t>(x)];
        const Tensor& ey = e[static_cast<std::size_t>(y)];
        const Tensor& ez = e[static_cast<std::size_t>(z)];
        Rational two_ft =
            eval3(f, py, ez, ex) - eval3(f, ey, pz, ex) + eval3(f, pz, ey, ex) - eval3(f, ez, py, ex);
        two_ft += eta(x) * (eval3(f, ey, ez, xi) - eval3(f, pz, py, xi) + eval3(f, ez, ey, xi) -
                            eval3(f, py, pz, xi));
        two_ft += eta(y) * (eval3(f, ex, ez, xi) - eval3(f, pz, px, xi) + eval3(f, ex, pz, xi));
        two_ft += eta(z) * (eval3(f, ex, ey, xi) - eval3(f, py, px, xi) + eval3(f, ex, py, xi));
        expanded(x, y, z) = two_ft / 2;
      }

  RoutePair out{std::move(direct), std::move(expanded), false};
  out.agree = out.direct == out.expanded;
  return out;
}

/// F and everything derived from it that the downstream machinery needs,
/// with the route-agreement certificates carried along.
struct FundamentalData {
  Tensor f;           // F of (g, nabla)
  Tensor f_tilde;     // F~ of (g~, nabla~), route A
  Tensor phi_pot;     // Phi (0,3), route A
  Tensor phi_vec;     // Phi as (1,2)
  LeeForms lee;        // of F with g
  LeeForms lee_tilde;  // of F~ with g~
  bool phi_routes_agree = false;
  bool f_tilde_routes_agree = false;
  bool lee_relations_hold = false;
  bool lee_tilde_relations_hold = false;
};

inline FundamentalData compute_fundamental(const Manifold& m, const Connection& nabla,
                                           const Connection& nabla_tilde) {
  Tensor f = compute_fundamental_tensor(m, nabla, MetricKind::Riemannian);
  LeeForms lee = lee_forms(m, f, MetricKind::Riemannian);
  const bool lee_ok = lee_divergence_relations_hold(m, lee, nabla, MetricKind::Riemannian);

  RoutePair pot = compute_potential(m, nabla, nabla_tilde, f, lee);
  Tensor phi_vec = potential_vector(nabla, nabla_tilde);

  RoutePair ft = compute_fundamental_tilde(m, nabla_tilde, f);
  LeeForms lee_tilde = lee_forms(m, ft.direct, MetricKind::Associated);
  const bool lee_tilde_ok =
      lee_divergence_relations_hold(m, lee_tilde, nabla_tilde, MetricKind::Associated);

  return FundamentalData{std::move(f),
                         std::move(ft.direct),
                         std::move(pot.direct),
                         std::move(phi_vec),
                         std::move(lee),
                         std::move(lee_tilde),
                         pot.agree,
                         ft.agree,
                         lee_ok,
                         lee_tilde_ok};
}

}  // namespace apapr
