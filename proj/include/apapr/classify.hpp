#pragma once

#include "apapr/fundamental.hpp"
#include "apapr/structure.hpp"

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace apapr {

/// Componentwise decomposition of F against the basic classes. The
/// vertical content of F splits into the buckets below; the horizontal
/// content splits into the trace part (class 1) and a combined remainder
/// q23 living in classes 2 + 3, which this library does not separate
/// further (membership predicates for each side are provided instead).
///
/// Writing A(x,y) = F(x^h, y^h, xi) and B(y,z) = F(xi, y^h, z^h), exact
/// multilinearity of F gives
///   F = F_hhh + [A(x,y) eta(z) + A(x,z) eta(y)] + eta(x) B(y,z)
///       + eta(x){eta(y) omega(z) + eta(z) omega(y)},
/// so reconstruction is exact by construction once A is split into its
/// trace / symmetric / antisymmetric / phi-commuting pieces:
///   a4 = (theta(xi)/2n) g(phi., phi.)          symmetric, phi-commuting, g-trace part
///   a5 = (theta*(xi)/2n) g(., phi.)            symmetric, phi-commuting, phi-trace part
///   a6 = sym,  phi-commuting, both traces zero
///   a7 = skew, phi-commuting
///   a8 = sym,  phi-anticommuting
///   a9 = skew, phi-anticommuting
struct FDecomposition {
  Tensor comp_f1;   // (0,3) horizontal trace part
  Tensor q23;       // (0,3) horizontal remainder, classes 2+3
  Tensor a;         // (0,2) raw A
  Tensor a4, a5, a6, a7, a8, a9;  // (0,2) buckets of A
  Tensor comp_f10;  // (0,3) eta(x) B(y,z)
  Tensor comp_f11;  // (0,3) pure omega part
};

namespace detail {

inline Tensor project3(const Tensor& f, const Tensor& phi2) {
  Tensor out = compose_down_slot(f, 0, phi2);
  out = compose_down_slot(out, 1, phi2);
  return compose_down_slot(out, 2, phi2);
}

/// lift(A)(x,y,z) = A(x,y) eta(z) + A(x,z) eta(y).
inline Tensor lift_bilinear(const Tensor& a, const Tensor& eta) {
  const int d = a.dim();
  Tensor out(d, {Variance::Down, Variance::Down, Variance::Down});
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z) out(x, y, z) = a(x, y) * eta(z) + a(x, z) * eta(y);
  return out;
}

}  // namespace detail

inline FDecomposition decompose(const Manifold& m, const Tensor& f, const LeeForms& lee,
                                MetricKind kind) {
  const int d = m.dim();
  const int n = m.n();
  const Tensor& phi = m.phi();
  const Tensor& phi2 = m.phi_squared();
  const Tensor& eta = m.eta();
  const Tensor& xi = m.xi();
  const Tensor& g = m.metric(kind);
  const Tensor& ginv = m.metric_inverse(kind);

  // omega part (class 11)
  Tensor comp_f11(d, {Variance::Down, Variance::Down, Variance::Down});
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z)
        comp_f11(x, y, z) = eta(x) * (eta(y) * lee.omega(z) + eta(z) * lee.omega(y));

  // B(y,z) = F(xi, phi^2 y, phi^2 z); class 10 is eta(x) B(y,z).
  Tensor b(d, {Variance::Down, Variance::Down});
  for (int y = 0; y < d; ++y)
    for (int z = 0; z < d; ++z) {
      Rational s(0);
      for (int i = 0; i < d; ++i)
        for (int a = 0; a < d; ++a)
          for (int c = 0; c < d; ++c) s += xi(i) * phi2(a, y) * phi2(c, z) * f(i, a, c);
      b(y, z) = s;
    }
  Tensor comp_f10(d, {Variance::Down, Variance::Down, Variance::Down});
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z) comp_f10(x, y, z) = eta(x) * b(y, z);

  // A(x,y) = F(x^h, y^h, xi) and its six buckets.
  Tensor a(d, {Variance::Down, Variance::Down});
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) {
      Rational s(0);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          for (int c = 0; c < d; ++c) s += phi2(i, x) * phi2(j, y) * xi(c) * f(i, j, c);
      a(x, y) = s;
    }

  const Rational theta_xi = pair_form(lee.theta, xi);
  const Rational theta_star_xi = pair_form(lee.theta_star, xi);
  const Rational inv2n(1, 2 * n);

  Tensor a4(d, {Variance::Down, Variance::Down});
  Tensor a5(d, {Variance::Down, Variance::Down});
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) {
      Rational gphiphi(0), gphi(0);
      for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q) gphiphi += g(p, q) * phi(p, x) * phi(q, y);
      for (int q = 0; q < d; ++q) gphi += g(x, q) * phi(q, y);
      a4(x, y) = theta_xi * inv2n * gphiphi;
      a5(x, y) = theta_star_xi * inv2n * gphi;
    }

  // Split A by transpose symmetry and by conjugation with phi.
  Tensor a_phi(d, {Variance::Down, Variance::Down});  // A(phi x, phi y)
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) {
      Rational s(0);
      for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q) s += phi(p, x) * phi(q, y) * a(p, q);
      a_phi(x, y) = s;
    }
  const Rational quarter(1, 4);
  Tensor a_sp(d, {Variance::Down, Variance::Down});
  Tensor a_ap(d, {Variance::Down, Variance::Down});
  Tensor a_sm(d, {Variance::Down, Variance::Down});
  Tensor a_am(d, {Variance::Down, Variance::Down});
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) {
      const Rational s = a(x, y) + a(y, x);
      const Rational w = a(x, y) - a(y, x);
      const Rational sp = a_phi(x, y) + a_phi(y, x);
      const Rational wp = a_phi(x, y) - a_phi(y, x);
      a_sp(x, y) = quarter * (s + sp);
      a_ap(x, y) = quarter * (w + wp);
      a_sm(x, y) = quarter * (s - sp);
      a_am(x, y) = quarter * (w - wp);
    }
  Tensor a6 = a_sp;
  a6 -= a4;
  a6 -= a5;
  {
    Tensor buckets = a4;
    buckets += a5;
    buckets += a6;
    buckets += a_ap;
    buckets += a_sm;
    buckets += a_am;
    if (!(buckets == a)) throw IdentityViolation("bucket split does not reassemble A");
  }

  // Horizontal part; its own theta trace feeds the class-1 projection.
  // Using the raw theta of F here would leak the omega part of a class-11
  // component into comp_f1 and break idempotency.
  Tensor f_h = detail::project3(f, phi2);
  Tensor theta_h = Tensor::one_form(d);
  for (int z = 0; z < d; ++z) {
    Rational s(0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) s += ginv(i, j) * f_h(i, j, z);
    theta_h(z) = s;
  }

  Tensor comp_f1(d, {Variance::Down, Variance::Down, Variance::Down});
  {
    // theta_h(phi^2 .) and theta_h(phi .)
    Tensor th_p2 = Tensor::one_form(d), th_p = Tensor::one_form(d);
    for (int z = 0; z < d; ++z) {
      Rational s2(0), s1(0);
      for (int a_ = 0; a_ < d; ++a_) {
        s2 += phi2(a_, z) * theta_h(a_);
        s1 += phi(a_, z) * theta_h(a_);
      }
      th_p2(z) = s2;
      th_p(z) = s1;
    }
    Tensor gphiphi(d, {Variance::Down, Variance::Down});
    Tensor gphi(d, {Variance::Down, Variance::Down});
    for (int x = 0; x < d; ++x)
      for (int y = 0; y < d; ++y) {
        Rational s(0), t(0);
        for (int p = 0; p < d; ++p) {
          for (int q = 0; q < d; ++q) s += g(p, q) * phi(p, x) * phi(q, y);
          t += g(x, p) * phi(p, y);
        }
        gphiphi(x, y) = s;
        gphi(x, y) = t;
      }
    for (int x = 0; x < d; ++x)
      for (int y = 0; y < d; ++y)
        for (int z = 0; z < d; ++z)
          comp_f1(x, y, z) = inv2n * (gphiphi(x, y) * th_p2(z) + gphiphi(x, z) * th_p2(y) -
                                      gphi(x, y) * th_p(z) - gphi(x, z) * th_p(y));
  }
  Tensor q23 = f_h;
  q23 -= comp_f1;

  // Exact reconstruction is the sentinel for the whole decomposition.
  Tensor rebuilt = comp_f1;
  rebuilt += q23;
  rebuilt += detail::lift_bilinear(a, eta);
  rebuilt += comp_f10;
  rebuilt += comp_f11;
  if (!(rebuilt == f)) throw IdentityViolation("decomposition does not reconstruct F");

  return FDecomposition{std::move(comp_f1), std::move(q23), std::move(a),    std::move(a4),
                        std::move(a5),      std::move(a6),  std::move(a_ap), std::move(a_sm),
                        std::move(a_am),    std::move(comp_f10), std::move(comp_f11)};
}

enum class Q23Status { Zero, F2Only, F3Only, Mixed };

inline const char* to_string(Q23Status s) {
  switch (s) {
    case Q23Status::Zero: return "zero";
    case Q23Status::F2Only: return "F2_only";
    case Q23Status::F3Only: return "F3_only";
    case Q23Status::Mixed: return "mixed";
  }
  return "?";
}

/// Cyclic-sum predicates separating the two horizontal classes inside q23:
/// the class-2 condition is cyclic_sum of q23(x,y,phi z) = 0 and the
/// class-3 condition is cyclic_sum of q23 = 0.
inline bool q23_satisfies_f2(const Manifold& m, const Tensor& q23) {
  return cyclic_sum(compose_down_slot(q23, 2, m.phi())).is_zero();
}
inline bool q23_satisfies_f3(const Tensor& q23) { return cyclic_sum(q23).is_zero(); }

inline Q23Status q23_status(const Manifold& m, const Tensor& q23) {
  if (q23.is_zero()) return Q23Status::Zero;
  const bool f2 = q23_satisfies_f2(m, q23);
  const bool f3 = q23_satisfies_f3(q23);
  if (f2 && f3) throw IdentityViolation("q23 claims both pure classes while nonzero");
  if (f2) return Q23Status::F2Only;
  if (f3) return Q23Status::F3Only;
  return Q23Status::Mixed;
}

/// Membership of F in the direct sum of the given basic classes (subset of
/// 1..11), decided purely from the decomposition: every component outside
/// the sum must vanish, with q23 judged by the cyclic predicates when the
/// sum contains only one of classes 2 and 3.
inline bool in_class_sum(const Manifold& m, const FDecomposition& dec, const std::set<int>& classes) {
  auto member = [&](int c) { return classes.count(c) > 0; };
  if (!member(1) && !dec.comp_f1.is_zero()) return false;
  if (member(2) && member(3)) {
    // q23 unconstrained
  } else if (member(2)) {
    if (!q23_satisfies_f2(m, dec.q23)) return false;
  } else if (member(3)) {
    if (!q23_satisfies_f3(dec.q23)) return false;
  } else {
    if (!dec.q23.is_zero()) return false;
  }
  if (!member(4) && !dec.a4.is_zero()) return false;
  if (!member(5) && !dec.a5.is_zero()) return false;
  if (!member(6) && !dec.a6.is_zero()) return false;
  if (!member(7) && !dec.a7.is_zero()) return false;
  if (!member(8) && !dec.a8.is_zero()) return false;
  if (!member(9) && !dec.a9.is_zero()) return false;
  if (!member(10) && !dec.comp_f10.is_zero()) return false;
  if (!member(11) && !dec.comp_f11.is_zero()) return false;
  return true;
}

struct ClassMembership {
  bool f0 = false;                          // F == 0, the intersection of all classes
  std::array<bool, 12> in_basic{};          // [1..11]: whole F lies in that single class
  std::array<bool, 12> component_nonzero{}; // [1..11]: that component is present
  Q23Status q23 = Q23Status::Zero;
  std::vector<int> nonzero_classes;         // sorted list of present components
};

inline ClassMembership basic_membership(const Manifold& m, const FDecomposition& dec, const Tensor& f) {
  ClassMembership out;
  out.f0 = f.is_zero();
  out.q23 = q23_status(m, dec.q23);

  out.component_nonzero[1] = !dec.comp_f1.is_zero();
  out.component_nonzero[2] = !cyclic_sum(dec.q23).is_zero();
  out.component_nonzero[3] = !cyclic_sum(compose_down_slot(dec.q23, 2, m.phi())).is_zero();
  out.component_nonzero[4] = !dec.a4.is_zero();
  out.component_nonzero[5] = !dec.a5.is_zero();
  out.component_nonzero[6] = !dec.a6.is_zero();
  out.component_nonzero[7] = !dec.a7.is_zero();
  out.component_nonzero[8] = !dec.a8.is_zero();
  out.component_nonzero[9] = !dec.a9.is_zero();
  out.component_nonzero[10] = !dec.comp_f10.is_zero();
  out.component_nonzero[11] = !dec.comp_f11.is_zero();

  for (int c = 1; c <= 11; ++c) {
    out.in_basic[static_cast<std::size_t>(c)] = in_class_sum(m, dec, {c});
    if (out.component_nonzero[static_cast<std::size_t>(c)]) out.nonzero_classes.push_back(c);
  }
  return out;
}

/// The class sums named by the statements in the text, with both routes:
/// membership via the decomposition and, where available, the equivalent
/// analytic condition evaluated from its own definition. Disagreement is
/// reported data.
struct CompositeEntry {
  std::string name;
  bool via_components = false;
  std::optional<bool> via_condition;
  bool consistent = true;
};

namespace detail {

inline std::string class_sum_name(const std::set<int>& classes) {
  std::string s;
  for (int c : classes) {
    if (!s.empty()) s += "+";
    s += "F" + std::to_string(c);
  }
  return s;
}

}  // namespace detail

/// The identity F(x,y,z) = F(x,y,xi) eta(z) + F(x,z,xi) eta(y), which
/// carves out the purely vertical classes 4..9 + 11.
inline bool vertical_lift_identity_holds(const Manifold& m, const Tensor& f) {
  const int d = m.dim();
  const Tensor& eta = m.eta();
  const Tensor& xi = m.xi();
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z) {
        Rational fy(0), fz(0);
        for (int c = 0; c < d; ++c) {
          fy += f(x, y, c) * xi(c);
          fz += f(x, z, c) * xi(c);
        }
        if (f(x, y, z) != fy * eta(z) + fz * eta(y)) return false;
      }
  return true;
}

/// Phi(x, phi^2 y, phi^2 z) == sign * Phi(x, phi y, phi z) for all frame
/// triples; sign=-1 is the condition as displayed in the text, sign=+1 the
/// corrected one (see the phi-derivative coincidence entry).
inline bool potential_phi_condition_holds(const Manifold& m, const Tensor& phi_pot, int sign) {
  Tensor lhs = compose_down_slot(compose_down_slot(phi_pot, 1, m.phi_squared()), 2, m.phi_squared());
  Tensor rhs = compose_down_slot(compose_down_slot(phi_pot, 1, m.phi()), 2, m.phi());
  if (sign < 0) rhs = -rhs;
  return lhs == rhs;
}

inline std::vector<CompositeEntry> composite_membership(const Manifold& m, const Tensor& f,
                                                        const FDecomposition& dec,
                                                        const Connection& nabla,
                                                        const Tensor* phi_pot) {
  std::vector<CompositeEntry> out;
  auto push = [&](const std::set<int>& classes, std::optional<bool> condition) {
    CompositeEntry e;
    e.name = detail::class_sum_name(classes);
    e.via_components = in_class_sum(m, dec, classes);
    e.via_condition = condition;
    e.consistent = !condition.has_value() || *condition == e.via_components;
    out.push_back(std::move(e));
  };

  // nabla xi = 0  <=>  classes 1+2+3+10
  Tensor nabla_xi = Tensor(m.dim(), {Variance::Up, Variance::Down});
  for (int k = 0; k < m.dim(); ++k)
    for (int i = 0; i < m.dim(); ++i) {
      Rational s(0);
      for (int j = 0; j < m.dim(); ++j) s += nabla.coefficient(k, i, j) * m.xi()(j);
      nabla_xi(k, i) = s;
    }
  push({1, 2, 3, 10}, nabla_xi.is_zero());

  // vertical-lift identity  <=>  classes 4..9 + 11
  push({4, 5, 6, 7, 8, 9, 11}, vertical_lift_identity_holds(m, f));

  // d eta = 0  <=>  classes 1..6 + 9 + 10
  push({1, 2, 3, 4, 5, 6, 9, 10}, d_one_form(m.frame(), m.eta()).is_zero());

  // Killing xi  <=>  classes 1+2+3+7+8+10
  push({1, 2, 3, 7, 8, 10},
       lie_derivative_metric(m.frame(), nabla, m.xi(), m.metric(MetricKind::Riemannian)).is_zero());

  // Phi condition (corrected, plus sign)  <=>  classes 3+4+5+6+7+11
  if (phi_pot != nullptr)
    push({3, 4, 5, 6, 7, 11}, potential_phi_condition_holds(m, *phi_pot, +1));
  else
    push({3, 4, 5, 6, 7, 11}, std::nullopt);

  return out;
}

}  // namespace apapr
