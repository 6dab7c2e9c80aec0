#pragma once

#include "apapr/lie_frame.hpp"
#include "apapr/structure.hpp"
#include "apapr/svk.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace apapr {

/// Curvature of a connection on the frame, sign convention
/// R(x,y)z = nabla_x nabla_y z - nabla_y nabla_x z - nabla_[x,y] z,
/// with the (0,4) form R(x,y,z,w) = metric(R(x,y)z, w), Ricci
/// rho(y,z) = m^ij R(e_i,y,z,e_j) and scalar tau = m^ij rho(e_i,e_j).
struct CurvatureData {
  Tensor r13;    // (1,3): R^l_ijk at (l,i,j,k)
  Tensor r04;    // (0,4): R(e_i,e_j,e_k,e_w)
  Tensor ricci;  // (0,2)
  Rational tau;
};

inline CurvatureData riemann(const LieFrame& frame, const Connection& conn, const Tensor& metric,
                             const Tensor& metric_inv) {
  const int d = frame.dim();
  Tensor r13(d, {Variance::Up, Variance::Down, Variance::Down, Variance::Down});
  for (int l = 0; l < d; ++l)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          Rational s(0);
          for (int p = 0; p < d; ++p)
            s += conn.coefficient(p, j, k) * conn.coefficient(l, i, p) -
                 conn.coefficient(p, i, k) * conn.coefficient(l, j, p) -
                 frame.c(p, i, j) * conn.coefficient(l, p, k);
          r13(l, i, j, k) = s;
        }
  Tensor r04(d, {Variance::Down, Variance::Down, Variance::Down, Variance::Down});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int w = 0; w < d; ++w) {
          Rational s(0);
          for (int l = 0; l < d; ++l) s += r13(l, i, j, k) * metric(l, w);
          r04(i, j, k, w) = s;
        }
  Tensor ricci(d, {Variance::Down, Variance::Down});
  for (int y = 0; y < d; ++y)
    for (int z = 0; z < d; ++z) {
      Rational s(0);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          if (metric_inv(i, j) != 0) s += metric_inv(i, j) * r04(i, y, z, j);
      ricci(y, z) = s;
    }
  Rational tau(0);
  for (int y = 0; y < d; ++y)
    for (int z = 0; z < d; ++z)
      if (metric_inv(y, z) != 0) tau += metric_inv(y, z) * ricci(y, z);
  return CurvatureData{std::move(r13), std::move(r04), std::move(ricci), std::move(tau)};
}

struct RelationCheck {
  std::string name;
  bool holds = false;
  std::string detail;  // filled with both sides on failure
};

namespace detail {

inline Rational pi1(const Tensor& metric, const Tensor& x, const Tensor& y, const Tensor& z,
                    const Tensor& w) {
  auto ip = [&](const Tensor& u, const Tensor& v) {
    Rational s(0);
    for (int i = 0; i < metric.dim(); ++i) {
      if (u(i) == 0) continue;
      for (int j = 0; j < metric.dim(); ++j) s += u(i) * v(j) * metric(i, j);
    }
    return s;
  };
  return ip(y, z) * ip(x, w) - ip(x, z) * ip(y, w);
}

inline Tensor endo_apply(const Tensor& endo, const Tensor& x) {
  Tensor out = Tensor::vector(x.dim());
  for (int k = 0; k < x.dim(); ++k) {
    Rational s(0);
    for (int m = 0; m < x.dim(); ++m) s += endo(k, m) * x(m);
    out(k) = s;
  }
  return out;
}

inline Rational frame_trace(const Tensor& endo) {
  Rational s(0);
  for (int i = 0; i < endo.dim(); ++i) s += endo(i, i);
  return s;
}

inline Tensor endo_square(const Tensor& endo) {
  const int d = endo.dim();
  Tensor out(d, {Variance::Up, Variance::Down});
  for (int k = 0; k < d; ++k)
    for (int j = 0; j < d; ++j) {
      Rational s(0);
      for (int p = 0; p < d; ++p) s += endo(k, p) * endo(p, j);
      out(k, j) = s;
    }
  return out;
}

/// (nabla_{e_dir} S) as an endomorphism, for constant-component S.
inline Tensor endo_cov_derivative(const Connection& conn, const Tensor& endo, int dir) {
  const int d = endo.dim();
  Tensor out(d, {Variance::Up, Variance::Down});
  for (int k = 0; k < d; ++k)
    for (int j = 0; j < d; ++j) {
      Rational s(0);
      for (int p = 0; p < d; ++p)
        s += conn.coefficient(k, dir, p) * endo(p, j) - endo(k, p) * conn.coefficient(p, dir, j);
      out(k, j) = s;
    }
  return out;
}

}  // namespace detail

/// Every displayed relation between the curvatures of a Levi-Civita
/// connection and its adapted companion, evaluated exactly on all frame
/// tuples with both sides computed independently. `tilde` selects the
/// metric side.
inline std::vector<RelationCheck> svk_curvature_relations_side(
    const Manifold& m, const Connection& lc, const Connection& adapted, const Tensor& shape,
    const CurvatureData& curv_lc, const CurvatureData& curv_adapted, MetricKind kind,
    const std::string& suffix) {
  const int d = m.dim();
  const Tensor& metric = m.metric(kind);
  const Tensor& minv = m.metric_inverse(kind);
  const Tensor& phi2 = m.phi_squared();
  const Tensor& eta = m.eta();
  const Tensor& xi = m.xi();
  std::vector<RelationCheck> out;

  auto fail_detail = [](const Rational& lhs, const Rational& rhs, const std::string& where) {
    return "lhs=" + to_string(lhs) + " rhs=" + to_string(rhs) + " at " + where;
  };

  // R||(x,y,z,w) = R(x,y,phi^2 z, phi^2 w) + pi1(S x, S y, z, w)
  {
    RelationCheck rc{"curvature_projection_identity" + suffix, true, ""};
    Tensor proj = compose_down_slot(compose_down_slot(curv_lc.r04, 2, phi2), 3, phi2);
    for (int i = 0; i < d && rc.holds; ++i)
      for (int j = 0; j < d && rc.holds; ++j)
        for (int k = 0; k < d && rc.holds; ++k)
          for (int w = 0; w < d && rc.holds; ++w) {
            const Tensor sx = detail::endo_apply(shape, m.basis_vector(i));
            const Tensor sy = detail::endo_apply(shape, m.basis_vector(j));
            const Rational rhs =
                proj(i, j, k, w) +
                detail::pi1(metric, sx, sy, m.basis_vector(k), m.basis_vector(w));
            if (curv_adapted.r04(i, j, k, w) != rhs) {
              rc.holds = false;
              rc.detail = fail_detail(curv_adapted.r04(i, j, k, w), rhs,
                                      std::to_string(i) + std::to_string(j) + std::to_string(k) +
                                          std::to_string(w));
            }
          }
    out.push_back(std::move(rc));
  }

  const Tensor shape_sq = detail::endo_square(shape);
  const Rational tr_shape = detail::frame_trace(shape);

  // rho||(y,z) = rho(y,z) - eta(z) rho(y,xi) - R(xi,y,z,xi) - m(S^2 y, z) + tr(S) m(S y, z)
  {
    RelationCheck rc{"ricci_projection_identity" + suffix, true, ""};
    for (int y = 0; y < d && rc.holds; ++y)
      for (int z = 0; z < d && rc.holds; ++z) {
        Rational rho_y_xi(0), r_xi(0);
        for (int p = 0; p < d; ++p) rho_y_xi += curv_lc.ricci(y, p) * xi(p);
        for (int p = 0; p < d; ++p)
          for (int q = 0; q < d; ++q) r_xi += xi(p) * xi(q) * curv_lc.r04(p, y, z, q);
        Rational m_s2(0), m_s(0);
        for (int p = 0; p < d; ++p) {
          m_s2 += shape_sq(p, y) * metric(p, z);
          m_s += shape(p, y) * metric(p, z);
        }
        const Rational rhs = curv_lc.ricci(y, z) - eta(z) * rho_y_xi - r_xi - m_s2 + tr_shape * m_s;
        if (curv_adapted.ricci(y, z) != rhs) {
          rc.holds = false;
          rc.detail = fail_detail(curv_adapted.ricci(y, z), rhs, std::to_string(y) + std::to_string(z));
        }
      }
    out.push_back(std::move(rc));
  }

  // tau|| = tau - 2 rho(xi,xi) - tr(S^2) + (tr S)^2
  {
    RelationCheck rc{"scalar_projection_identity" + suffix, true, ""};
    Rational rho_xi_xi(0);
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) rho_xi_xi += xi(p) * xi(q) * curv_lc.ricci(p, q);
    const Rational rhs =
        curv_lc.tau - 2 * rho_xi_xi - detail::frame_trace(detail::endo_square(shape)) + tr_shape * tr_shape;
    rc.holds = curv_adapted.tau == rhs;
    if (!rc.holds) rc.detail = fail_detail(curv_adapted.tau, rhs, "tau");
    out.push_back(std::move(rc));
  }

  // rho(xi,xi) = tr(nabla_xi S) - div(S xi) - tr(S^2)
  {
    RelationCheck rc{"ricci_xi_xi_trace_formula" + suffix, true, ""};
    Rational rho_xi_xi(0);
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) rho_xi_xi += xi(p) * xi(q) * curv_lc.ricci(p, q);
    Tensor nabla_xi_shape(d, {Variance::Up, Variance::Down});
    {
      Tensor acc(d, {Variance::Up, Variance::Down});
      for (int dir = 0; dir < d; ++dir) {
        if (xi(dir) == 0) continue;
        Tensor t = detail::endo_cov_derivative(lc, shape, dir);
        t *= xi(dir);
        acc += t;
      }
      nabla_xi_shape = std::move(acc);
    }
    Tensor shape_xi = detail::endo_apply(shape, m.xi());
    const Rational rhs = detail::frame_trace(nabla_xi_shape) -
                         divergence(m.frame(), lc, metric, shape_xi) -
                         detail::frame_trace(shape_sq);
    rc.holds = rho_xi_xi == rhs;
    if (!rc.holds) rc.detail = fail_detail(rho_xi_xi, rhs, "rho(xi,xi)");
    out.push_back(std::move(rc));
  }

  // R(x,y)xi = -(nabla_x S)y + (nabla_y S)x
  {
    RelationCheck rc{"curvature_xi_shape_identity" + suffix, true, ""};
    for (int i = 0; i < d && rc.holds; ++i)
      for (int j = 0; j < d && rc.holds; ++j) {
        const Tensor dx = detail::endo_cov_derivative(lc, shape, i);
        const Tensor dy = detail::endo_cov_derivative(lc, shape, j);
        for (int l = 0; l < d && rc.holds; ++l) {
          Rational lhs(0);
          for (int p = 0; p < d; ++p) lhs += curv_lc.r13(l, i, j, p) * xi(p);
          const Rational rhs = -dx(l, j) + dy(l, i);
          if (lhs != rhs) {
            rc.holds = false;
            rc.detail = fail_detail(lhs, rhs, std::to_string(i) + std::to_string(j) + std::to_string(l));
          }
        }
      }
    out.push_back(std::move(rc));
  }

  // First Bianchi identity for the Levi-Civita curvature.
  {
    RelationCheck rc{"first_bianchi" + suffix, true, ""};
    for (int l = 0; l < d && rc.holds; ++l)
      for (int i = 0; i < d && rc.holds; ++i)
        for (int j = 0; j < d && rc.holds; ++j)
          for (int k = 0; k < d && rc.holds; ++k) {
            const Rational s =
                curv_lc.r13(l, i, j, k) + curv_lc.r13(l, j, k, i) + curv_lc.r13(l, k, i, j);
            if (s != 0) {
              rc.holds = false;
              rc.detail = "cyclic sum " + to_string(s) + " at " + std::to_string(l) +
                          std::to_string(i) + std::to_string(j) + std::to_string(k);
            }
          }
    out.push_back(std::move(rc));
  }

  (void)adapted;
  (void)minv;
  return out;
}

/// Both metric sides plus the shared trace identity tr S = tr~ S~ = -div eta.
inline std::vector<RelationCheck> svk_curvature_relations(const Manifold& m, const Connection& nabla,
                                                          const Connection& nabla_tilde,
                                                          const SvkPair& pair,
                                                          const CurvatureData& curv_g,
                                                          const CurvatureData& curv_g_par,
                                                          const CurvatureData& curv_t,
                                                          const CurvatureData& curv_t_par) {
  std::vector<RelationCheck> out = svk_curvature_relations_side(
      m, nabla, pair.nabla_par, pair.shape, curv_g, curv_g_par, MetricKind::Riemannian, "");
  std::vector<RelationCheck> tilde = svk_curvature_relations_side(
      m, nabla_tilde, pair.nabla_tilde_par, pair.shape_tilde, curv_t, curv_t_par,
      MetricKind::Associated, "_tilde");
  out.insert(out.end(), tilde.begin(), tilde.end());

  RelationCheck tr{"shape_trace_identity", true, ""};
  const Rational tr_s = detail::frame_trace(pair.shape);
  const Rational tr_st = detail::frame_trace(pair.shape_tilde);
  const Rational div_eta = divergence(m.frame(), nabla, m.metric(MetricKind::Riemannian), m.eta());
  tr.holds = tr_s == tr_st && tr_s == -div_eta;
  if (!tr.holds)
    tr.detail = "tr S=" + to_string(tr_s) + " tr~ S~=" + to_string(tr_st) + " -div eta=" + to_string(-div_eta);
  out.push_back(std::move(tr));
  return out;
}

enum class SectionType { XiSection, PhiHolomorphic, PhiTotallyReal, Generic };

inline const char* to_string(SectionType t) {
  switch (t) {
    case SectionType::XiSection: return "xi_section";
    case SectionType::PhiHolomorphic: return "phi_holomorphic";
    case SectionType::PhiTotallyReal: return "phi_totally_real";
    case SectionType::Generic: return "generic";
  }
  return "?";
}

/// Sectional curvatures of the plane spanned by {x, y} for all four
/// connections, with section-type classification and the displayed
/// curvature relation re-verified on the plane. Degenerate planes (zero
/// plane form for a metric) leave that curvature undefined.
struct SectionReport {
  Tensor x, y;
  SectionType type = SectionType::Generic;
  std::optional<Rational> k, k_par, k_tilde, k_tilde_par;
  bool relation_holds = true;        // k|| relation where defined
  bool relation_tilde_holds = true;  // k~|| relation where defined
  bool xi_specialization_holds = true;  // k||(xi-section) = k~||(xi-section) = 0
};

inline SectionReport section_analysis(const Manifold& m, const SvkPair& pair,
                                      const CurvatureData& curv_g, const CurvatureData& curv_g_par,
                                      const CurvatureData& curv_t, const CurvatureData& curv_t_par,
                                      const Tensor& x, const Tensor& y) {
  const int d = m.dim();

  // Linear independence, exact: some 2x2 minor of (x|y) is nonzero.
  bool independent = false;
  for (int i = 0; i < d && !independent; ++i)
    for (int j = i + 1; j < d && !independent; ++j)
      if (x(i) * y(j) - x(j) * y(i) != 0) independent = true;
  if (!independent) throw TensorError("section_analysis: plane basis is linearly dependent");

  SectionReport out{x, y};

  // xi in span{x,y}?
  const Tensor& xi = m.xi();
  bool xi_in_plane = false;
  {
    // rank of (x | y | xi) stays 2
    bool rank3 = false;
    for (int i = 0; i < d && !rank3; ++i)
      for (int j = i + 1; j < d && !rank3; ++j)
        for (int k = j + 1; k < d && !rank3; ++k) {
          const Rational det = x(i) * (y(j) * xi(k) - y(k) * xi(j)) -
                               y(i) * (x(j) * xi(k) - x(k) * xi(j)) +
                               xi(i) * (x(j) * y(k) - x(k) * y(j));
          if (det != 0) rank3 = true;
        }
    xi_in_plane = !rank3;
  }

  auto in_plane = [&](const Tensor& v) {
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
          const Rational det = x(i) * (y(j) * v(k) - y(k) * v(j)) -
                               y(i) * (x(j) * v(k) - x(k) * v(j)) +
                               v(i) * (x(j) * y(k) - x(k) * y(j));
          if (det != 0) return false;
        }
    return true;
  };

  const Tensor phix = detail::endo_apply(m.phi(), x);
  const Tensor phiy = detail::endo_apply(m.phi(), y);
  if (xi_in_plane) {
    out.type = SectionType::XiSection;
  } else if (in_plane(phix) && in_plane(phiy)) {
    out.type = SectionType::PhiHolomorphic;
  } else {
    // alpha orthogonal to phi(alpha) with respect to g
    const bool tot_real = m.inner(x, phix) == 0 && m.inner(x, phiy) == 0 &&
                          m.inner(y, phix) == 0 && m.inner(y, phiy) == 0;
    out.type = tot_real ? SectionType::PhiTotallyReal : SectionType::Generic;
  }

  auto r_eval = [&](const CurvatureData& curv, const Tensor& a, const Tensor& b, const Tensor& c,
                    const Tensor& e) {
    Rational s(0);
    for (int i = 0; i < d; ++i) {
      if (a(i) == 0) continue;
      for (int j = 0; j < d; ++j) {
        if (b(j) == 0) continue;
        for (int k = 0; k < d; ++k) {
          if (c(k) == 0) continue;
          for (int w = 0; w < d; ++w) {
            if (e(w) == 0) continue;
            s += a(i) * b(j) * c(k) * e(w) * curv.r04(i, j, k, w);
          }
        }
      }
    }
    return s;
  };

  auto sectional = [&](const CurvatureData& curv, MetricKind kind) -> std::optional<Rational> {
    const Rational denom = detail::pi1(m.metric(kind), x, y, y, x);
    if (denom == 0) return std::nullopt;
    return r_eval(curv, x, y, y, x) / denom;
  };

  out.k = sectional(curv_g, MetricKind::Riemannian);
  out.k_par = sectional(curv_g_par, MetricKind::Riemannian);
  out.k_tilde = sectional(curv_t, MetricKind::Associated);
  out.k_tilde_par = sectional(curv_t_par, MetricKind::Associated);

  // k||(alpha) = k(alpha) + [pi1(Sx,Sy,y,x) - eta(x) R(x,y,y,xi) - eta(y) R(x,y,xi,x)] / pi1(x,y,y,x)
  auto relation = [&](const Tensor& shape, const CurvatureData& curv, MetricKind kind,
                      const std::optional<Rational>& k_lc,
                      const std::optional<Rational>& k_ad) -> bool {
    if (!k_lc.has_value() || !k_ad.has_value()) return true;
    const Rational denom = detail::pi1(m.metric(kind), x, y, y, x);
    const Tensor sx = detail::endo_apply(shape, x);
    const Tensor sy = detail::endo_apply(shape, y);
    const Rational num = detail::pi1(m.metric(kind), sx, sy, y, x) -
                         m.eta_of(x) * r_eval(curv, x, y, y, xi) -
                         m.eta_of(y) * r_eval(curv, x, y, xi, x);
    return *k_ad == *k_lc + num / denom;
  };
  out.relation_holds = relation(pair.shape, curv_g, MetricKind::Riemannian, out.k, out.k_par);
  out.relation_tilde_holds =
      relation(pair.shape_tilde, curv_t, MetricKind::Associated, out.k_tilde, out.k_tilde_par);

  if (out.type == SectionType::XiSection) {
    if (out.k_par.has_value() && *out.k_par != 0) out.xi_specialization_holds = false;
    if (out.k_tilde_par.has_value() && *out.k_tilde_par != 0) out.xi_specialization_holds = false;
  }
  return out;
}

}  // namespace apapr
