#pragma once

#include "apapr/classify.hpp"
#include "apapr/curvature.hpp"
#include "apapr/fundamental.hpp"
#include "apapr/structure.hpp"
#include "apapr/svk.hpp"

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace apapr {

/// Everything computed for one structure: connections, fundamental data,
/// both classifications, the adapted pair, all curvatures, and the
/// relation checks. Pure data; the theorem suite and the reports read it.
struct Pipeline {
  Manifold manifold;
  Connection nabla;
  Connection nabla_tilde;
  FundamentalData fundamental;
  FDecomposition dec;
  FDecomposition dec_tilde;
  ClassMembership membership;
  ClassMembership membership_tilde;
  std::vector<CompositeEntry> composites;
  SvkPair svk;
  HvReport hv;
  PhiDerivativeReport phi_derivative;
  CurvatureData curv_g, curv_g_par, curv_t, curv_t_par;
  std::vector<RelationCheck> curvature_relations;
  std::map<std::string, bool> coincidences;
};

inline Pipeline run_pipeline(Manifold m) {
  Connection nabla = koszul_levi_civita(m.frame(), m.metric(MetricKind::Riemannian));
  Connection nabla_tilde = koszul_levi_civita(m.frame(), m.metric(MetricKind::Associated));
  FundamentalData fd = compute_fundamental(m, nabla, nabla_tilde);
  FDecomposition dec = decompose(m, fd.f, fd.lee, MetricKind::Riemannian);
  FDecomposition dec_tilde = decompose(m, fd.f_tilde, fd.lee_tilde, MetricKind::Associated);
  ClassMembership membership = basic_membership(m, dec, fd.f);
  ClassMembership membership_tilde = basic_membership(m, dec_tilde, fd.f_tilde);
  std::vector<CompositeEntry> composites = composite_membership(m, fd.f, dec, nabla, &fd.phi_pot);
  SvkPair svk = build_svk(m, nabla, nabla_tilde);
  HvReport hv = hv_components(m, svk, fd);
  PhiDerivativeReport phi_derivative = svk_phi_derivative(m, svk, nabla, fd);
  CurvatureData curv_g = riemann(m.frame(), nabla, m.metric(), m.metric_inverse());
  CurvatureData curv_g_par = riemann(m.frame(), svk.nabla_par, m.metric(), m.metric_inverse());
  CurvatureData curv_t = riemann(m.frame(), nabla_tilde, m.metric(MetricKind::Associated),
                                 m.metric_inverse(MetricKind::Associated));
  CurvatureData curv_t_par = riemann(m.frame(), svk.nabla_tilde_par, m.metric(MetricKind::Associated),
                                     m.metric_inverse(MetricKind::Associated));
  std::vector<RelationCheck> curvature_relations =
      svk_curvature_relations(m, nabla, nabla_tilde, svk, curv_g, curv_g_par, curv_t, curv_t_par);
  std::map<std::string, bool> coincidences = coincidence_predicates(m, nabla, nabla_tilde, svk);

  return Pipeline{std::move(m),           std::move(nabla),      std::move(nabla_tilde),
                  std::move(fd),          std::move(dec),        std::move(dec_tilde),
                  std::move(membership),  std::move(membership_tilde), std::move(composites),
                  std::move(svk),         std::move(hv),         std::move(phi_derivative),
                  std::move(curv_g),      std::move(curv_g_par), std::move(curv_t),
                  std::move(curv_t_par),  std::move(curvature_relations), std::move(coincidences)};
}

/// The dimension-3 classification table over a parameter grid: for every
/// (a1, a2) pair the classifier's label is matched against the sign-case
/// prediction.
inline std::vector<PropositionRow> proposition_table(const std::vector<Rational>& grid) {
  std::vector<PropositionRow> out;
  for (const auto& a1 : grid)
    for (const auto& a2 : grid) {
      Pipeline p = run_pipeline(build_family(FamilyParams{1, {a1, a2}}));
      std::string actual = "F0";
      if (!p.membership.f0) {
        actual.clear();
        for (int c : p.membership.nonzero_classes)
          actual += (actual.empty() ? "F" : "+F") + std::to_string(c);
      }
      PropositionRow row{a1, a2, family3_expected_class(a1, a2), actual, false};
      row.match = row.expected == row.actual;
      out.push_back(std::move(row));
    }
  return out;
}

/// Deterministic plane sampler for the section sweeps: frame pairs plus
/// rational combinations drawn from a fixed seeded generator.
inline std::vector<std::pair<Tensor, Tensor>> sample_planes(const Manifold& m, std::uint64_t seed,
                                                            int count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, m.dim() - 1);
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 3);
  std::vector<std::pair<Tensor, Tensor>> out;
  while (static_cast<int>(out.size()) < count) {
    Tensor x = Tensor::vector(m.dim());
    Tensor y = Tensor::vector(m.dim());
    x(pick(rng)) = 1;
    y(pick(rng)) = 1;
    for (int i = 0; i < m.dim(); ++i) {
      x(i) += Rational(num(rng), den(rng));
      y(i) += Rational(num(rng), den(rng));
    }
    bool independent = false;
    for (int i = 0; i < m.dim() && !independent; ++i)
      for (int j = i + 1; j < m.dim() && !independent; ++j)
        if (x(i) * y(j) - x(j) * y(i) != 0) independent = true;
    if (independent) out.emplace_back(std::move(x), std::move(y));
  }
  return out;
}

}  // namespace apapr
