#pragma once

#include "apapr/classify.hpp"
#include "apapr/fundamental.hpp"
#include "apapr/structure.hpp"

#include <map>
#include <string>
#include <utility>

namespace apapr {

/// The adapted connection pair built from the two Levi-Civita connections
/// by projecting covariant derivatives onto the horizontal and vertical
/// distributions, with their potentials, torsions and shape operators.
struct SvkPair {
  Connection nabla_par;
  Connection nabla_tilde_par;
  Tensor q_par, q_tilde_par;          // (1,2) potentials
  Tensor t_par, t_tilde_par;          // (1,2) torsions
  Tensor shape, shape_tilde;          // (1,1): S(x) = -nabla_x xi
  Tensor shape_flat, shape_tilde_flat;  // (0,2): own-metric lowering
  bool projector_route_agrees = false;   // projector definition vs closed form
  bool torsion_formula_agrees = false;   // displayed torsion vs coefficient antisymmetrization
  bool shape_flat_is_minus_nabla_eta = false;
};

namespace detail {

/// Closed form: nabla||_x y = nabla_x y - eta(y) nabla_x xi + (nabla_x eta)(y) xi.
inline Connection svk_closed_form(const Manifold& m, const Connection& nabla) {
  const int d = m.dim();
  const Tensor& eta = m.eta();
  const Tensor& xi = m.xi();
  Tensor gamma = nabla.coefficients();
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Rational nabla_xi_k(0), deta(0);
        for (int p = 0; p < d; ++p) {
          nabla_xi_k += nabla.coefficient(k, i, p) * xi(p);
          deta -= eta(p) * nabla.coefficient(p, i, j);
        }
        gamma(k, i, j) += -eta(j) * nabla_xi_k + deta * xi(k);
      }
  return Connection(std::move(gamma));
}

/// Projector definition: nabla||_x y = (nabla_x y^h)^h + (nabla_x y^v)^v.
inline Connection svk_projector_form(const Manifold& m, const Connection& nabla) {
  const int d = m.dim();
  Tensor gamma(d, {Variance::Up, Variance::Down, Variance::Down});
  for (int i = 0; i < d; ++i) {
    Tensor ei = m.basis_vector(i);
    for (int j = 0; j < d; ++j) {
      Tensor ej = m.basis_vector(j);
      Tensor horiz = m.horizontal(nabla.derivative(ei, m.horizontal(ej)));
      Tensor vert = m.vertical(nabla.derivative(ei, m.vertical(ej)));
      for (int k = 0; k < d; ++k) gamma(k, i, j) = horiz(k) + vert(k);
    }
  }
  return Connection(std::move(gamma));
}

inline Tensor shape_operator(const Manifold& m, const Connection& nabla) {
  const int d = m.dim();
  Tensor s(d, {Variance::Up, Variance::Down});
  for (int k = 0; k < d; ++k)
    for (int j = 0; j < d; ++j) {
      Rational v(0);
      for (int p = 0; p < d; ++p) v -= nabla.coefficient(k, j, p) * m.xi()(p);
      s(k, j) = v;
    }
  return s;
}

inline Tensor lower_last(const Tensor& endo, const Tensor& metric) {
  const int d = endo.dim();
  Tensor out(d, {Variance::Down, Variance::Down});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Rational s(0);
      for (int k = 0; k < d; ++k) s += endo(k, i) * metric(k, j);
      out(i, j) = s;
    }
  return out;
}

}  // namespace detail

inline SvkPair build_svk(const Manifold& m, const Connection& nabla, const Connection& nabla_tilde) {
  const int d = m.dim();
  Connection npar = detail::svk_closed_form(m, nabla);
  Connection ntpar = detail::svk_closed_form(m, nabla_tilde);
  const bool proj_ok = npar == detail::svk_projector_form(m, nabla) &&
                       ntpar == detail::svk_projector_form(m, nabla_tilde);

  Tensor q_par = npar.coefficients();
  q_par -= nabla.coefficients();
  Tensor q_tilde_par = ntpar.coefficients();
  q_tilde_par -= nabla_tilde.coefficients();

  // Displayed torsion: T||(x,y) = eta(x) nabla_y xi - eta(y) nabla_x xi + d eta(x,y) xi.
  auto torsion_displayed = [&](const Connection& lc) {
    Tensor t(d, {Variance::Up, Variance::Down, Variance::Down});
    const Tensor d_eta = d_one_form(m.frame(), m.eta());
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          Rational nyx(0), nxx(0);
          for (int p = 0; p < d; ++p) {
            nyx += lc.coefficient(k, j, p) * m.xi()(p);
            nxx += lc.coefficient(k, i, p) * m.xi()(p);
          }
          t(k, i, j) = m.eta()(i) * nyx - m.eta()(j) * nxx + d_eta(i, j) * m.xi()(k);
        }
    return t;
  };
  Tensor t_par = torsion_displayed(nabla);
  Tensor t_tilde_par = torsion_displayed(nabla_tilde);
  const bool torsion_ok = t_par == connection_torsion(m.frame(), npar) &&
                          t_tilde_par == connection_torsion(m.frame(), ntpar);

  Tensor shape = detail::shape_operator(m, nabla);
  Tensor shape_tilde = detail::shape_operator(m, nabla_tilde);
  Tensor shape_flat = detail::lower_last(shape, m.metric(MetricKind::Riemannian));
  Tensor shape_tilde_flat = detail::lower_last(shape_tilde, m.metric(MetricKind::Associated));

  // S_flat == -nabla eta (and the tilde twin), checked exactly.
  auto minus_nabla_eta = [&](const Connection& lc) {
    Tensor out(d, {Variance::Down, Variance::Down});
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Rational s(0);
        for (int p = 0; p < d; ++p) s += m.eta()(p) * lc.coefficient(p, i, j);
        out(i, j) = s;
      }
    return out;
  };
  const bool sflat_ok =
      shape_flat == minus_nabla_eta(nabla) && shape_tilde_flat == minus_nabla_eta(nabla_tilde);

  // The shape operators take values in the horizontal distribution.
  for (int j = 0; j < d; ++j) {
    Rational s(0), st(0);
    for (int k = 0; k < d; ++k) {
      s += m.eta()(k) * shape(k, j);
      st += m.eta()(k) * shape_tilde(k, j);
    }
    if (s != 0 || st != 0) throw IdentityViolation("shape operator leaves the horizontal distribution");
  }

  return SvkPair{std::move(npar),      std::move(ntpar),          std::move(q_par),
                 std::move(q_tilde_par), std::move(t_par),        std::move(t_tilde_par),
                 std::move(shape),     std::move(shape_tilde),    std::move(shape_flat),
                 std::move(shape_tilde_flat), proj_ok,            torsion_ok,
                 sflat_ok};
}

/// T(x,y,z) = Q(x,y,z) - Q(y,x,z).
inline Tensor cartan_torsion_from_potential(const Tensor& q) {
  if (q.rank() != 3 || q.covariant_rank() != 3)
    throw TensorError("cartan: expects a (0,3) potential");
  Tensor t(q.dim(), q.variance());
  for (int x = 0; x < q.dim(); ++x)
    for (int y = 0; y < q.dim(); ++y)
      for (int z = 0; z < q.dim(); ++z) t(x, y, z) = q(x, y, z) - q(y, x, z);
  return t;
}

/// 2Q(x,y,z) = T(x,y,z) - T(y,z,x) + T(z,x,y); requires T antisymmetric in
/// its first two slots.
inline Tensor cartan_potential_from_torsion(const Tensor& t) {
  if (t.rank() != 3 || t.covariant_rank() != 3)
    throw TensorError("cartan: expects a (0,3) torsion");
  t.require_antisymmetric(0, 1, "cartan torsion");
  Tensor q(t.dim(), t.variance());
  const Rational half(1, 2);
  for (int x = 0; x < t.dim(); ++x)
    for (int y = 0; y < t.dim(); ++y)
      for (int z = 0; z < t.dim(); ++z) q(x, y, z) = half * (t(x, y, z) - t(y, z, x) + t(z, x, y));
  return q;
}

/// Lowers the value slot of a (1,2) array with the given metric, value
/// slot last: out(x,y,z) = metric(T(x,y), z).
inline Tensor lower_value_slot(const Tensor& t12, const Tensor& metric) {
  const int d = t12.dim();
  Tensor out(d, {Variance::Down, Variance::Down, Variance::Down});
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z) {
        Rational s(0);
        for (int k = 0; k < d; ++k) s += t12(k, x, y) * metric(k, z);
        out(x, y, z) = s;
      }
  return out;
}

/// Horizontal and vertical components of the potentials and torsions, and
/// the displayed identities expressing them through the shape operators.
struct HvReport {
  Tensor q_h, q_v, t_h, t_v;
  Tensor qt_h, qt_v, tt_h, tt_v;
  std::map<std::string, bool> identities;
};

inline HvReport hv_components(const Manifold& m, const SvkPair& pair, const FundamentalData& fd) {
  const int d = m.dim();
  const Tensor& eta = m.eta();
  const Tensor& xi = m.xi();

  auto horizontal_part = [&](const Tensor& t12) { return compose_up_slot(t12, 0, m.phi_squared()); };
  auto vertical_part = [&](const Tensor& t12) {
    Tensor out(d, {Variance::Up, Variance::Down, Variance::Down});
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          Rational s(0);
          for (int p = 0; p < d; ++p) s += eta(p) * t12(p, i, j);
          out(k, i, j) = s * xi(k);
        }
    return out;
  };

  HvReport out{horizontal_part(pair.q_par),      vertical_part(pair.q_par),
               horizontal_part(pair.t_par),      vertical_part(pair.t_par),
               horizontal_part(pair.q_tilde_par), vertical_part(pair.q_tilde_par),
               horizontal_part(pair.t_tilde_par), vertical_part(pair.t_tilde_par),
               {}};

  auto tensor_like = [&]() { return Tensor(d, {Variance::Up, Variance::Down, Variance::Down}); };

  auto s_otimes_eta = [&](const Tensor& s) {
    Tensor t = tensor_like();
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) t(k, i, j) = s(k, i) * eta(j);
    return t;
  };
  auto flat_otimes_xi = [&](const Tensor& sf, const Rational& scale) {
    Tensor t = tensor_like();
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) t(k, i, j) = scale * sf(i, j) * xi(k);
    return t;
  };
  auto eta_wedge_s = [&](const Tensor& s) {
    // (eta ^ S)(x,y) = eta(x) S(y) - eta(y) S(x)
    Tensor t = tensor_like();
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) t(k, i, j) = eta(i) * s(k, j) - eta(j) * s(k, i);
    return t;
  };

  const Tensor alt_flat = sym_alt(pair.shape_flat, SymMode::Antisymmetric);
  const Tensor alt_tilde_flat = sym_alt(pair.shape_tilde_flat, SymMode::Antisymmetric);

  out.identities["q_h_eq_shape_tensor_eta"] = out.q_h == s_otimes_eta(pair.shape);
  out.identities["q_v_eq_minus_shape_flat_tensor_xi"] =
      out.q_v == flat_otimes_xi(pair.shape_flat, Rational(-1));
  out.identities["t_h_eq_minus_eta_wedge_shape"] = out.t_h == -eta_wedge_s(pair.shape);
  out.identities["t_v_eq_minus_two_alt_shape_flat_tensor_xi"] =
      out.t_v == flat_otimes_xi(alt_flat, Rational(-2));
  out.identities["qt_h_eq_shape_tilde_tensor_eta"] = out.qt_h == s_otimes_eta(pair.shape_tilde);
  out.identities["qt_v_eq_minus_shape_tilde_flat_tensor_xi"] =
      out.qt_v == flat_otimes_xi(pair.shape_tilde_flat, Rational(-1));
  out.identities["tt_h_eq_minus_eta_wedge_shape_tilde"] = out.tt_h == -eta_wedge_s(pair.shape_tilde);
  out.identities["tt_v_eq_minus_two_alt_shape_tilde_flat_tensor_xi"] =
      out.tt_v == flat_otimes_xi(alt_tilde_flat, Rational(-2));

  // Shape-operator transfer: S~(x) = S(x) - Phi(x, xi).
  {
    Tensor rhs(d, {Variance::Up, Variance::Down});
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i) {
        Rational s = pair.shape(k, i);
        for (int p = 0; p < d; ++p) s -= fd.phi_vec(k, i, p) * xi(p);
        rhs(k, i) = s;
      }
    out.identities["shape_tilde_eq_shape_minus_potential_xi"] = pair.shape_tilde == rhs;
  }
  // S~_flat(x,y) = S_flat(x, phi y) - Phi(xi, x, phi y).
  {
    Tensor rhs(d, {Variance::Down, Variance::Down});
    for (int x = 0; x < d; ++x)
      for (int y = 0; y < d; ++y) {
        Rational s(0);
        for (int p = 0; p < d; ++p) {
          if (m.phi()(p, y) == 0) continue;
          Rational phixp(0);
          for (int q = 0; q < d; ++q) phixp += xi(q) * fd.phi_pot(q, x, p);
          s += m.phi()(p, y) * (pair.shape_flat(x, p) - phixp);
        }
        rhs(x, y) = s;
      }
    out.identities["shape_tilde_flat_transfer"] = pair.shape_tilde_flat == rhs;
  }
  // Component transfer through the potential:
  //   Q~h = Qh - (xi . Phi) (x) eta,  Q~v = Qv - (eta o Phi) (x) xi,
  //   T~h = Th + eta ^ (xi . Phi),    T~v = Tv.
  {
    Tensor phi_xi(d, {Variance::Up, Variance::Down});  // (xi . Phi)(x) = Phi(x, xi)
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i) {
        Rational s(0);
        for (int p = 0; p < d; ++p) s += fd.phi_vec(k, i, p) * xi(p);
        phi_xi(k, i) = s;
      }
    Tensor eta_phi(d, {Variance::Down, Variance::Down});  // (eta o Phi)(x,y)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Rational s(0);
        for (int p = 0; p < d; ++p) s += eta(p) * fd.phi_vec(p, i, j);
        eta_phi(i, j) = s;
      }
    Tensor q_h_shift = out.q_h;
    q_h_shift -= s_otimes_eta(phi_xi);
    out.identities["qt_h_transfer"] = out.qt_h == q_h_shift;
    Tensor q_v_shift = out.q_v;
    q_v_shift -= flat_otimes_xi(eta_phi, Rational(1));
    out.identities["qt_v_transfer"] = out.qt_v == q_v_shift;
    Tensor t_h_shift = out.t_h;
    t_h_shift += eta_wedge_s(phi_xi);
    out.identities["tt_h_transfer"] = out.tt_h == t_h_shift;
    out.identities["tt_v_eq_t_v"] = out.tt_v == out.t_v;
  }
  return out;
}

/// Covariant derivatives of phi under the adapted pair, with closed forms
/// cross-checked against the direct coefficient computation, plus the
/// naturality and coincidence predicates they decide.
struct PhiDerivativeReport {
  Tensor nabla_par_phi;        // (0,3): g((nabla||_x phi)y, z)
  Tensor nabla_tilde_par_phi;  // (0,3): g~((nabla~||_x phi)y, z)
  bool closed_form_agrees = false;
  bool tilde_closed_form_agrees = false;
  bool nabla_par_phi_zero = false;
  bool nabla_tilde_par_phi_zero = false;
  bool derivatives_coincide = false;  // (nabla||_x phi) y == (nabla~||_x phi) y as endomorphisms
  bool potential_condition_printed = false;    // Phi(x,p2y,p2z) == -Phi(x,py,pz)
  bool potential_condition_corrected = false;  // Phi(x,p2y,p2z) == +Phi(x,py,pz)
};

inline PhiDerivativeReport svk_phi_derivative(const Manifold& m, const SvkPair& pair,
                                              const Connection& nabla, const FundamentalData& fd) {
  const int d = m.dim();
  const Tensor& phi = m.phi();
  const Tensor& eta = m.eta();
  const Tensor& xi = m.xi();

  const Tensor direct_par = pair.nabla_par.covariant_derivative(phi);        // (1,2)
  const Tensor direct_tilde = pair.nabla_tilde_par.covariant_derivative(phi);  // (1,2)

  // Closed form: (nabla||_x phi) y = (nabla_x phi) y + eta(y) phi nabla_x xi - eta(nabla_x phi y) xi.
  const Tensor nabla_phi = nabla.covariant_derivative(phi);
  Tensor closed(d, {Variance::Up, Variance::Down, Variance::Down});
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Rational s = nabla_phi(k, i, j);
        Rational phi_nxi(0);
        for (int p = 0; p < d; ++p)
          for (int q = 0; q < d; ++q) phi_nxi += phi(k, p) * nabla.coefficient(p, i, q) * xi(q);
        s += eta(j) * phi_nxi;
        Rational eta_nphiy(0);
        for (int p = 0; p < d; ++p)
          for (int q = 0; q < d; ++q) eta_nphiy += eta(p) * nabla.coefficient(p, i, q) * phi(q, j);
        s -= eta_nphiy * xi(k);
        closed(k, i, j) = s;
      }
  const bool closed_ok = closed == direct_par;

  // Tilde closed form through the potential:
  // (nabla~||_x phi) y = (nabla||_x phi) y + Phi(x, phi y) - phi Phi(x,y)
  //                      + eta(y) phi Phi(x, xi) - eta(Phi(x, phi y)) xi.
  Tensor closed_tilde(d, {Variance::Up, Variance::Down, Variance::Down});
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Rational s = direct_par(k, i, j);
        for (int p = 0; p < d; ++p) {
          s += fd.phi_vec(k, i, p) * phi(p, j);             // Phi(x, phi y)
          s -= phi(k, p) * fd.phi_vec(p, i, j);             // phi Phi(x, y)
          for (int q = 0; q < d; ++q) {
            s += eta(j) * phi(k, p) * fd.phi_vec(p, i, q) * xi(q);  // eta(y) phi Phi(x, xi)
            s -= eta(p) * fd.phi_vec(p, i, q) * phi(q, j) * xi(k);  // eta(Phi(x, phi y)) xi
          }
        }
        closed_tilde(k, i, j) = s;
      }
  const bool closed_tilde_ok = closed_tilde == direct_tilde;

  PhiDerivativeReport out{lower_value_slot(direct_par, m.metric(MetricKind::Riemannian)),
                          lower_value_slot(direct_tilde, m.metric(MetricKind::Associated)),
                          closed_ok,
                          closed_tilde_ok,
                          direct_par.is_zero(),
                          direct_tilde.is_zero(),
                          direct_par == direct_tilde,
                          potential_phi_condition_holds(m, fd.phi_pot, -1),
                          potential_phi_condition_holds(m, fd.phi_pot, +1)};
  return out;
}

/// Coefficient-level coincidences among the four connections.
inline std::map<std::string, bool> coincidence_predicates(const Manifold& m, const Connection& nabla,
                                                          const Connection& nabla_tilde,
                                                          const SvkPair& pair) {
  std::map<std::string, bool> out;
  out["nabla_par_eq_nabla"] = pair.nabla_par == nabla;
  out["nabla_tilde_par_eq_nabla_tilde"] = pair.nabla_tilde_par == nabla_tilde;
  out["nabla_par_eq_nabla_tilde_par"] = pair.nabla_par == pair.nabla_tilde_par;
  out["nabla_eq_nabla_tilde"] = nabla == nabla_tilde;
  out["nabla_par_eq_nabla_tilde"] = pair.nabla_par == nabla_tilde;
  out["nabla_tilde_par_eq_nabla"] = pair.nabla_tilde_par == nabla;
  out["all_four_coincide"] = out["nabla_par_eq_nabla"] && out["nabla_tilde_par_eq_nabla_tilde"] &&
                             out["nabla_eq_nabla_tilde"];

  // nabla xi == 0 and the tilde twin, from the coefficients directly.
  auto xi_parallel = [&](const Connection& c) {
    for (int k = 0; k < m.dim(); ++k)
      for (int i = 0; i < m.dim(); ++i) {
        Rational s(0);
        for (int p = 0; p < m.dim(); ++p) s += c.coefficient(k, i, p) * m.xi()(p);
        if (s != 0) return false;
      }
    return true;
  };
  out["nabla_xi_zero"] = xi_parallel(nabla);
  out["nabla_tilde_xi_zero"] = xi_parallel(nabla_tilde);
  return out;
}

}  // namespace apapr
