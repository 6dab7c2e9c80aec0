// Acceptance suite: one checked criterion per numbered entry, each printing
// a single pass/fail line. Every tolerance here is exact (zero): the whole
// stack is rational arithmetic.
//
// Usage: acceptance [N]   runs criterion N (1..10), or all when omitted.

#include "apapr/apapr.hpp"

#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace apapr;

namespace {

std::vector<Rational> grid() {
  return {Rational(-2), Rational(-1), Rational(-1, 2), Rational(0),
          Rational(1, 2), Rational(1), Rational(2)};
}

std::vector<FamilyParams> grid_instances() {
  std::vector<FamilyParams> out;
  for (const auto& a1 : grid())
    for (const auto& a2 : grid()) out.push_back(FamilyParams{1, {a1, a2}});
  return out;
}

std::vector<FamilyParams> seeded_n2_instances(int count) {
  std::mt19937_64 rng(0xacce97edULL);
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  std::vector<FamilyParams> out;
  for (int s = 0; s < count; ++s) {
    FamilyParams p{2, {}};
    for (int i = 0; i < 4; ++i) p.a.push_back(Rational(num(rng), den(rng)));
    out.push_back(std::move(p));
  }
  return out;
}

Connection family3_table(const Rational& a1, const Rational& a2) {
  Tensor gamma(3, {Variance::Up, Variance::Down, Variance::Down});
  gamma(1, 1, 0) = a1;
  gamma(2, 1, 0) = a2;
  gamma(1, 2, 0) = a2;
  gamma(2, 2, 0) = -a1;
  gamma(0, 1, 1) = -a1;
  gamma(0, 2, 2) = a1;
  gamma(0, 1, 2) = -a2;
  gamma(0, 2, 1) = -a2;
  return Connection(std::move(gamma));
}

Tensor family3_f_table(const Rational& a1, const Rational& a2) {
  Tensor f(3, {Variance::Down, Variance::Down, Variance::Down});
  f(1, 0, 1) = f(1, 1, 0) = f(2, 0, 2) = f(2, 2, 0) = -a2;
  f(1, 0, 2) = f(1, 2, 0) = -a1;
  f(2, 0, 1) = f(2, 1, 0) = a1;
  return f;
}

// ---------------------------------------------------------------------------

bool criterion_1(std::string& why) {
  for (const auto& params : grid_instances()) {
    Manifold m = build_family(params);
    Connection nabla = koszul_levi_civita(m.frame(), m.metric());
    if (!(nabla == family3_table(params.a[0], params.a[1]))) {
      why = "connection table mismatch at a=(" + to_string(params.a[0]) + "," +
            to_string(params.a[1]) + ")";
      return false;
    }
  }
  return true;
}

bool criterion_2(std::string& why) {
  for (const auto& params : grid_instances()) {
    Manifold m = build_family(params);
    Connection nabla = koszul_levi_civita(m.frame(), m.metric());
    Tensor f = compute_fundamental_tensor(m, nabla, MetricKind::Riemannian);
    if (!(f == family3_f_table(params.a[0], params.a[1]))) {
      why = "fundamental tensor mismatch at a=(" + to_string(params.a[0]) + "," +
            to_string(params.a[1]) + ")";
      return false;
    }
  }
  return true;
}

bool criterion_3(std::string& why) {
  for (const auto& row : proposition_table(grid())) {
    if (!row.match) {
      why = "classification mismatch at a=(" + to_string(row.a1) + "," + to_string(row.a2) +
            "): expected " + row.expected + ", classified " + row.actual;
      return false;
    }
  }
  return true;
}

bool criterion_4(std::string& why) {
  std::vector<FamilyParams> all = grid_instances();
  for (auto& p : seeded_n2_instances(20)) all.push_back(std::move(p));
  bool ok = true;
  int tilde_nonzero = 0;
  std::string first;
  for (const auto& params : all) {
    Pipeline p = run_pipeline(build_family(params));
    std::ostringstream where;
    where << "n=" << params.n << " a=(";
    for (std::size_t i = 0; i < params.a.size(); ++i)
      where << (i ? "," : "") << to_string(params.a[i]);
    where << ")";
    if (!p.svk.nabla_par.coefficients().is_zero()) {
      ok = false;
      if (first.empty()) first = "nabla|| nonzero at " + where.str();
    }
    if (!p.svk.nabla_tilde_par.coefficients().is_zero()) {
      ok = false;
      ++tilde_nonzero;
      if (first.empty()) {
        // name one offending coefficient exactly
        std::string coeff;
        p.svk.nabla_tilde_par.coefficients().for_each(
            [&](const std::vector<int>& idx, const Rational& v) {
              if (coeff.empty() && v != 0)
                coeff = "coefficient (" + std::to_string(idx[0]) + "," + std::to_string(idx[1]) +
                        "," + std::to_string(idx[2]) + ") = " + to_string(v);
            });
        first = "nabla~|| nonzero at " + where.str() + ": " + coeff;
      }
    }
    if (!p.curv_g_par.r04.is_zero() || !p.curv_t_par.r04.is_zero()) {
      ok = false;
      if (first.empty()) first = "adapted curvature nonzero at " + where.str();
    }
    for (int k = 0; k < p.manifold.dim(); ++k)
      for (int i = 0; i < p.manifold.dim(); ++i)
        for (int j = 0; j < p.manifold.dim(); ++j)
          if (p.svk.t_par(k, i, j) != -p.manifold.frame().c(k, i, j)) {
            ok = false;
            if (first.empty()) first = "T|| != -[.,.] at " + where.str();
          }
  }
  if (!ok) {
    std::ostringstream os;
    os << first;
    if (tilde_nonzero > 0)
      os << "  [the second adapted connection is not the flat frame connection whenever some a_i"
            " (i <= n) is nonzero: " << tilde_nonzero << "/" << all.size()
         << " instances; its curvature still vanishes]";
    why = os.str();
  }
  return ok;
}

bool criterion_5(std::string& why) {
  std::vector<FamilyParams> all = grid_instances();
  for (auto& p : seeded_n2_instances(20)) all.push_back(std::move(p));
  for (const auto& params : all) {
    Pipeline p = run_pipeline(build_family(params));
    const Manifold& m = p.manifold;
    const bool preserved = p.svk.nabla_par.covariant_derivative(m.xi()).is_zero() &&
                           p.svk.nabla_par.covariant_derivative(m.eta()).is_zero() &&
                           p.svk.nabla_par.covariant_derivative(m.metric()).is_zero() &&
                           p.svk.nabla_tilde_par.covariant_derivative(m.xi()).is_zero() &&
                           p.svk.nabla_tilde_par.covariant_derivative(m.eta()).is_zero() &&
                           p.svk.nabla_tilde_par.covariant_derivative(m.metric(MetricKind::Associated))
                               .is_zero();
    Tensor q03 = lower_value_slot(p.svk.q_par, m.metric());
    Tensor t03 = lower_value_slot(p.svk.t_par, m.metric());
    Tensor qt03 = lower_value_slot(p.svk.q_tilde_par, m.metric(MetricKind::Associated));
    Tensor tt03 = lower_value_slot(p.svk.t_tilde_par, m.metric(MetricKind::Associated));
    const bool cartan = cartan_torsion_from_potential(q03) == t03 &&
                        cartan_potential_from_torsion(t03) == q03 &&
                        cartan_torsion_from_potential(qt03) == tt03 &&
                        cartan_potential_from_torsion(tt03) == qt03;
    if (!preserved || !cartan) {
      why = std::string(!preserved ? "structure tensor not parallel" : "round trip failed") +
            " at n=" + std::to_string(params.n);
      return false;
    }
  }
  return true;
}

bool criterion_6(std::string& why) {
  std::vector<FamilyParams> all = grid_instances();
  for (auto& p : seeded_n2_instances(20)) all.push_back(std::move(p));
  for (const auto& params : all) {
    Manifold m = build_family(params);
    Connection n1 = koszul_levi_civita(m.frame(), m.metric());
    Connection n2 = koszul_levi_civita(m.frame(), m.associated_metric());
    FundamentalData fd = compute_fundamental(m, n1, n2);
    if (!fd.phi_routes_agree || !fd.f_tilde_routes_agree) {
      why = std::string(!fd.phi_routes_agree ? "potential" : "tilde fundamental tensor") +
            " routes disagree at n=" + std::to_string(params.n);
      return false;
    }
  }
  return true;
}

bool criterion_7(std::string& why) {
  for (const auto& params : grid_instances()) {
    Pipeline p = run_pipeline(build_family(params));
    for (const auto& r : p.curvature_relations)
      if (!r.holds) {
        why = "relation " + r.name + " fails: " + r.detail;
        return false;
      }
    const Rational norm = params.a[0] * params.a[0] + params.a[1] * params.a[1];
    if (p.curv_g.tau != -2 * norm || p.curv_g.ricci(0, 0) != -2 * norm || p.curv_g_par.tau != 0) {
      why = "explicit scalar values mismatch at a=(" + to_string(params.a[0]) + "," +
            to_string(params.a[1]) + ")";
      return false;
    }
  }
  for (const auto& params : seeded_n2_instances(20)) {
    Pipeline p = run_pipeline(build_family(params));
    for (const auto& r : p.curvature_relations)
      if (!r.holds) {
        why = "relation " + r.name + " fails at n=2: " + r.detail;
        return false;
      }
  }
  return true;
}

bool criterion_8(std::string& why) {
  for (const auto& params : grid_instances()) {
    Pipeline p = run_pipeline(build_family(params));
    const Manifold& m = p.manifold;
    for (int i = 1; i < m.dim(); ++i) {
      SectionReport r = section_analysis(m, p.svk, p.curv_g, p.curv_g_par, p.curv_t, p.curv_t_par,
                                         m.basis_vector(i), m.xi());
      if (r.type != SectionType::XiSection || !r.xi_specialization_holds ||
          (r.k_par.has_value() && *r.k_par != 0) ||
          (r.k_tilde_par.has_value() && *r.k_tilde_par != 0)) {
        why = "xi-section specialization fails";
        return false;
      }
    }
  }
  Pipeline p12 = run_pipeline(build_family(FamilyParams{1, {Rational(1), Rational(2)}}));
  SectionReport holo =
      section_analysis(p12.manifold, p12.svk, p12.curv_g, p12.curv_g_par, p12.curv_t, p12.curv_t_par,
                       p12.manifold.basis_vector(1), p12.manifold.basis_vector(2));
  if (holo.type != SectionType::PhiHolomorphic || !holo.k.has_value() || *holo.k != Rational(5) ||
      !holo.k_par.has_value() || *holo.k_par != 0) {
    why = "holomorphic plane values mismatch at a=(1,2)";
    return false;
  }
  return true;
}

bool criterion_9(std::string& why) {
  const std::vector<std::string> equivalences = {
      "closed_eta_equivalences",       "killing_xi_equivalences",       "parallel_xi_equivalences",
      "closed_eta_equivalences_tilde", "killing_xi_equivalences_tilde", "parallel_xi_equivalences_tilde"};
  std::vector<FamilyParams> all = grid_instances();
  for (auto& p : seeded_n2_instances(20)) all.push_back(std::move(p));
  for (const auto& params : all) {
    Pipeline p = run_pipeline(build_family(params));
    std::vector<TheoremEntry> suite = theorem_suite(p, params);
    for (const auto& name : equivalences) {
      const TheoremEntry* entry = nullptr;
      for (const auto& e : suite)
        if (e.name == name) entry = &e;
      if (entry == nullptr || !entry->consistent) {
        why = "entry " + name + " inconsistent at n=" + std::to_string(params.n);
        return false;
      }
      // the printed tilde class lists must deviate exactly on the known
      // misprint locus in dimension 3 (classes 9 and 10 interchanged)
      if (params.n == 1 && !entry->printed_variants.empty()) {
        const bool deviates = entry->printed_variants.front().value != entry->items.front().value;
        const bool expected = params.a[1] == 0 && params.a[0] != 0;
        if (deviates != expected) {
          why = "printed-variant deviation pattern unexpected for " + name;
          return false;
        }
      }
    }
  }
  return true;
}

bool criterion_10(std::string& why) {
  auto render = [](const std::string& text) {
    Manifest man = parse_manifest(text);
    Pipeline p = run_pipeline(manifold_from_manifest(man));
    std::vector<TheoremEntry> th = theorem_suite(p, man.family);
    return report_json(man, p, th).dump(2);
  };
  const std::string manifest = R"({"family": {"n": 1, "a": ["1", "1"]}})";
  if (render(manifest) != render(manifest)) {
    why = "full reports differ between runs";
    return false;
  }
  const std::string manifest2 = R"({"family": {"n": 2, "a": ["1/2", "0", "-2", "3"]}})";
  if (render(manifest2) != render(manifest2)) {
    why = "n=2 reports differ between runs";
    return false;
  }
  return true;
}

struct Criterion {
  int number;
  const char* label;
  std::function<bool(std::string&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "Levi-Civita table reproduction on the grid", criterion_1},
      {2, "fundamental tensor reproduction on the grid", criterion_2},
      {3, "classification truth table on the grid", criterion_3},
      {4, "flat-frame degeneration of the adapted pair", criterion_4},
      {5, "structure preservation and torsion-potential round trips", criterion_5},
      {6, "two-route agreement for the potential and the tilde tensor", criterion_6},
      {7, "curvature relations and explicit scalar values", criterion_7},
      {8, "sectional specializations", criterion_8},
      {9, "equivalence-list consistency", criterion_9},
      {10, "byte-identical reports", criterion_10},
  };

  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  if (argc > 1 && (only < 1 || only > 10)) {
    std::cerr << "usage: acceptance [1..10]\n";
    return 2;
  }

  int failures = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.number != only) continue;
    std::string why;
    bool ok = false;
    try {
      ok = c.run(why);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    std::cout << "criterion " << c.number << " (" << c.label << "): " << (ok ? "PASS" : "FAIL");
    if (!ok) std::cout << "  [" << why << "]";
    std::cout << "\n";
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
