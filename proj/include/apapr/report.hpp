#pragma once

#include "apapr/manifest.hpp"
#include "apapr/pipeline.hpp"
#include "apapr/theorems.hpp"

#include <json.hpp>

#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace apapr {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json tensor_to_json(const Tensor& t) {
  if (t.rank() == 0) return to_string(t.scalar_value());
  std::function<Json(std::vector<int>&, int)> build = [&](std::vector<int>& idx, int depth) -> Json {
    Json arr = Json::array();
    for (int i = 0; i < t.dim(); ++i) {
      idx[static_cast<std::size_t>(depth)] = i;
      if (depth + 1 == t.rank())
        arr.push_back(to_string(t.at(idx)));
      else
        arr.push_back(build(idx, depth + 1));
    }
    return arr;
  };
  std::vector<int> idx(static_cast<std::size_t>(t.rank()));
  return build(idx, 0);
}

/// Nonzero entries as {"indices": [...], "value": "p/q"}, sorted by index.
inline Json nonzero_to_json(const Tensor& t) {
  Json arr = Json::array();
  t.for_each([&](const std::vector<int>& idx, const Rational& v) {
    if (v == 0) return;
    Json e;
    e["indices"] = idx;
    e["value"] = to_string(v);
    arr.push_back(std::move(e));
  });
  return arr;
}

inline Json connection_to_json(const Connection& c) { return nonzero_to_json(c.coefficients()); }

inline std::string classes_label(const ClassMembership& cm) {
  if (cm.f0) return "F0";
  std::string s;
  for (int c : cm.nonzero_classes) {
    if (!s.empty()) s += "+";
    s += "F" + std::to_string(c);
  }
  return s;
}

inline Json membership_to_json(const ClassMembership& cm) {
  Json j;
  j["classes"] = Json::array();
  for (int c : cm.nonzero_classes) j["classes"].push_back("F" + std::to_string(c));
  j["label"] = classes_label(cm);
  j["f0"] = cm.f0;
  j["q23_status"] = to_string(cm.q23);
  Json nonzero;
  for (int c = 1; c <= 11; ++c)
    nonzero["F" + std::to_string(c)] = cm.component_nonzero[static_cast<std::size_t>(c)];
  j["components_nonzero"] = std::move(nonzero);
  Json basic;
  for (int c = 1; c <= 11; ++c)
    basic["F" + std::to_string(c)] = cm.in_basic[static_cast<std::size_t>(c)];
  j["basic_membership"] = std::move(basic);
  return j;
}

inline Json decomposition_to_json(const FDecomposition& dec) {
  Json j;
  j["F1"] = nonzero_to_json(dec.comp_f1);
  j["q23"] = nonzero_to_json(dec.q23);
  j["A4"] = nonzero_to_json(dec.a4);
  j["A5"] = nonzero_to_json(dec.a5);
  j["A6"] = nonzero_to_json(dec.a6);
  j["A7"] = nonzero_to_json(dec.a7);
  j["A8"] = nonzero_to_json(dec.a8);
  j["A9"] = nonzero_to_json(dec.a9);
  j["F10"] = nonzero_to_json(dec.comp_f10);
  j["F11"] = nonzero_to_json(dec.comp_f11);
  return j;
}

}  // namespace detail

/// Which report sections a run emits; empty selection means all.
inline bool section_enabled(const std::set<std::string>& checks, const std::string& name) {
  return checks.empty() || checks.count(name) > 0;
}

inline Json report_json(const Manifest& manifest, const Pipeline& p,
                        const std::vector<TheoremEntry>& theorems) {
  const std::set<std::string>& checks = manifest.checks;
  Json j;
  j["schema"] = "1";

  {
    Json in;
    if (manifest.family.has_value()) {
      Json fam;
      fam["n"] = manifest.family->n;
      fam["a"] = Json::array();
      for (const auto& a : manifest.family->a) fam["a"].push_back(to_string(a));
      in["family"] = std::move(fam);
    } else {
      in["explicit"] = Json::object();
      in["explicit"]["dimension"] = manifest.explicit_data->dimension;
    }
    j["input"] = std::move(in);
  }

  if (section_enabled(checks, "validate")) {
    Json v;
    v["valid"] = true;
    v["dimension"] = p.manifold.dim();
    v["n"] = p.manifold.n();
    const Inertia sig = inertia(p.manifold.associated_metric());
    v["associated_metric_signature"] = {sig.positive, sig.negative};
    j["validation"] = std::move(v);
    j["structure"] = Json::object();
    j["structure"]["phi"] = detail::tensor_to_json(p.manifold.phi());
    j["structure"]["xi"] = detail::tensor_to_json(p.manifold.xi());
    j["structure"]["eta"] = detail::tensor_to_json(p.manifold.eta());
    j["structure"]["g"] = detail::tensor_to_json(p.manifold.metric());
    j["structure"]["g_tilde"] = detail::tensor_to_json(p.manifold.associated_metric());
  }

  if (section_enabled(checks, "connections")) {
    Json c;
    c["levi_civita"] = detail::connection_to_json(p.nabla);
    c["levi_civita_tilde"] = detail::connection_to_json(p.nabla_tilde);
    c["svk"] = detail::connection_to_json(p.svk.nabla_par);
    c["svk_tilde"] = detail::connection_to_json(p.svk.nabla_tilde_par);
    j["connections"] = std::move(c);
  }

  if (section_enabled(checks, "classify")) {
    Json f;
    f["F"] = detail::nonzero_to_json(p.fundamental.f);
    f["F_tilde"] = detail::nonzero_to_json(p.fundamental.f_tilde);
    f["Phi"] = detail::nonzero_to_json(p.fundamental.phi_pot);
    f["theta"] = detail::tensor_to_json(p.fundamental.lee.theta);
    f["theta_star"] = detail::tensor_to_json(p.fundamental.lee.theta_star);
    f["omega"] = detail::tensor_to_json(p.fundamental.lee.omega);
    f["potential_routes_agree"] = p.fundamental.phi_routes_agree;
    f["f_tilde_routes_agree"] = p.fundamental.f_tilde_routes_agree;
    f["lee_divergence_relations"] = p.fundamental.lee_relations_hold;
    f["lee_divergence_relations_tilde"] = p.fundamental.lee_tilde_relations_hold;
    j["fundamental"] = std::move(f);

    Json cl;
    cl["metric"] = detail::membership_to_json(p.membership);
    cl["metric_decomposition"] = detail::decomposition_to_json(p.dec);
    cl["associated"] = detail::membership_to_json(p.membership_tilde);
    cl["associated_decomposition"] = detail::decomposition_to_json(p.dec_tilde);
    Json comps = Json::array();
    for (const auto& e : p.composites) {
      Json ce;
      ce["name"] = e.name;
      ce["via_components"] = e.via_components;
      if (e.via_condition.has_value()) ce["via_condition"] = *e.via_condition;
      ce["consistent"] = e.consistent;
      comps.push_back(std::move(ce));
    }
    cl["composite"] = std::move(comps);
    j["classification"] = std::move(cl);
  }

  if (section_enabled(checks, "svk")) {
    Json s;
    s["q"] = detail::nonzero_to_json(p.svk.q_par);
    s["q_tilde"] = detail::nonzero_to_json(p.svk.q_tilde_par);
    s["torsion"] = detail::nonzero_to_json(p.svk.t_par);
    s["torsion_tilde"] = detail::nonzero_to_json(p.svk.t_tilde_par);
    s["shape"] = detail::tensor_to_json(p.svk.shape);
    s["shape_tilde"] = detail::tensor_to_json(p.svk.shape_tilde);
    s["projector_route_agrees"] = p.svk.projector_route_agrees;
    s["torsion_formula_agrees"] = p.svk.torsion_formula_agrees;
    s["shape_flat_is_minus_nabla_eta"] = p.svk.shape_flat_is_minus_nabla_eta;
    Json hv;
    for (const auto& [k, v] : p.hv.identities) hv[k] = v;
    s["component_identities"] = std::move(hv);
    Json pd;
    pd["svk_phi_derivative_zero"] = p.phi_derivative.nabla_par_phi_zero;
    pd["svk_tilde_phi_derivative_zero"] = p.phi_derivative.nabla_tilde_par_phi_zero;
    pd["derivatives_coincide"] = p.phi_derivative.derivatives_coincide;
    pd["closed_form_agrees"] = p.phi_derivative.closed_form_agrees;
    pd["tilde_closed_form_agrees"] = p.phi_derivative.tilde_closed_form_agrees;
    s["phi_derivative"] = std::move(pd);
    Json co;
    for (const auto& [k, v] : p.coincidences) co[k] = v;
    s["coincidences"] = std::move(co);
    j["svk"] = std::move(s);
  }

  if (section_enabled(checks, "curvature")) {
    Json c;
    c["tau"] = to_string(p.curv_g.tau);
    c["tau_svk"] = to_string(p.curv_g_par.tau);
    c["tau_tilde"] = to_string(p.curv_t.tau);
    c["tau_svk_tilde"] = to_string(p.curv_t_par.tau);
    c["ricci"] = detail::tensor_to_json(p.curv_g.ricci);
    c["ricci_tilde"] = detail::tensor_to_json(p.curv_t.ricci);
    c["svk_curvature_zero"] = p.curv_g_par.r04.is_zero();
    c["svk_tilde_curvature_zero"] = p.curv_t_par.r04.is_zero();
    Json rels = Json::array();
    for (const auto& r : p.curvature_relations) {
      Json e;
      e["name"] = r.name;
      e["holds"] = r.holds;
      if (!r.holds) e["detail"] = r.detail;
      rels.push_back(std::move(e));
    }
    c["relations"] = std::move(rels);
    j["curvature"] = std::move(c);
  }

  if (section_enabled(checks, "sections")) {
    Json sec;
    sec["seed"] = 0x5eed5eedULL;
    Json planes = Json::array();
    auto emit_plane = [&](const Tensor& x, const Tensor& y) {
      SectionReport r =
          section_analysis(p.manifold, p.svk, p.curv_g, p.curv_g_par, p.curv_t, p.curv_t_par, x, y);
      Json e;
      e["x"] = detail::tensor_to_json(x);
      e["y"] = detail::tensor_to_json(y);
      e["type"] = to_string(r.type);
      e["k"] = r.k.has_value() ? Json(to_string(*r.k)) : Json(nullptr);
      e["k_svk"] = r.k_par.has_value() ? Json(to_string(*r.k_par)) : Json(nullptr);
      e["k_tilde"] = r.k_tilde.has_value() ? Json(to_string(*r.k_tilde)) : Json(nullptr);
      e["k_svk_tilde"] = r.k_tilde_par.has_value() ? Json(to_string(*r.k_tilde_par)) : Json(nullptr);
      e["relation_holds"] = r.relation_holds;
      e["relation_tilde_holds"] = r.relation_tilde_holds;
      e["xi_specialization_holds"] = r.xi_specialization_holds;
      planes.push_back(std::move(e));
    };
    for (int i = 1; i < p.manifold.dim(); ++i) emit_plane(p.manifold.basis_vector(i), p.manifold.xi());
    for (int i = 1; i < p.manifold.dim(); ++i)
      for (int k = i + 1; k < p.manifold.dim(); ++k)
        emit_plane(p.manifold.basis_vector(i), p.manifold.basis_vector(k));
    for (auto& [x, y] : sample_planes(p.manifold, 0x5eed5eedULL, 8)) emit_plane(x, y);
    sec["planes"] = std::move(planes);
    j["sections"] = std::move(sec);
  }

  if (section_enabled(checks, "theorems")) {
    Json th = Json::array();
    int inconsistent = 0;
    for (const auto& e : theorems) {
      Json te;
      te["name"] = e.name;
      te["applicable"] = e.applicable;
      Json items = Json::array();
      for (const auto& it : e.items) {
        Json ie;
        ie["name"] = it.name;
        ie["value"] = it.value;
        items.push_back(std::move(ie));
      }
      te["items"] = std::move(items);
      if (!e.printed_variants.empty()) {
        Json pv = Json::array();
        for (const auto& it : e.printed_variants) {
          Json ie;
          ie["name"] = it.name;
          ie["value"] = it.value;
          pv.push_back(std::move(ie));
        }
        te["as_printed"] = std::move(pv);
      }
      te["consistent"] = e.consistent;
      if (!e.note.empty()) te["note"] = e.note;
      th.push_back(std::move(te));
      if (e.applicable && !e.consistent) ++inconsistent;
    }
    j["theorems"] = std::move(th);
    Json summary;
    summary["entries"] = theorems.size();
    summary["inconsistent"] = inconsistent;
    j["summary"] = std::move(summary);
  }

  return j;
}

inline std::string report_text(const Manifest& manifest, const Pipeline& p,
                               const std::vector<TheoremEntry>& theorems) {
  const std::set<std::string>& checks = manifest.checks;
  std::ostringstream os;
  auto yn = [](bool b) { return b ? "yes" : "NO"; };

  os << "structure: dim " << p.manifold.dim() << " (n=" << p.manifold.n() << ")";
  if (manifest.family.has_value()) {
    os << ", family a=(";
    for (std::size_t i = 0; i < manifest.family->a.size(); ++i)
      os << (i ? "," : "") << to_string(manifest.family->a[i]);
    os << ")";
  }
  os << "\n";

  if (section_enabled(checks, "validate")) {
    const Inertia sig = inertia(p.manifold.associated_metric());
    os << "validation: ok; associated metric signature (" << sig.positive << "," << sig.negative
       << ")\n";
  }
  if (section_enabled(checks, "classify")) {
    os << "class: " << detail::classes_label(p.membership)
       << "   associated-metric class: " << detail::classes_label(p.membership_tilde) << "\n";
    os << "route agreements: potential " << yn(p.fundamental.phi_routes_agree) << ", F-tilde "
       << yn(p.fundamental.f_tilde_routes_agree) << ", lee traces "
       << yn(p.fundamental.lee_relations_hold && p.fundamental.lee_tilde_relations_hold) << "\n";
    for (const auto& e : p.composites)
      os << "  composite " << e.name << ": components " << (e.via_components ? "in" : "out")
         << (e.via_condition.has_value()
                 ? std::string(", condition ") + (*e.via_condition ? "in" : "out") +
                       (e.consistent ? "" : "  <- routes disagree")
                 : "")
         << "\n";
  }
  if (section_enabled(checks, "connections")) {
    auto count_nonzero = [](const Connection& c) {
      int k = 0;
      c.coefficients().for_each([&](const std::vector<int>&, const Rational& v) {
        if (v != 0) ++k;
      });
      return k;
    };
    os << "connections: nonzero coefficients lc=" << count_nonzero(p.nabla)
       << " lc~=" << count_nonzero(p.nabla_tilde) << " svk=" << count_nonzero(p.svk.nabla_par)
       << " svk~=" << count_nonzero(p.svk.nabla_tilde_par) << "\n";
  }
  if (section_enabled(checks, "curvature")) {
    os << "curvature: tau=" << to_string(p.curv_g.tau) << " tau_svk=" << to_string(p.curv_g_par.tau)
       << " tau~=" << to_string(p.curv_t.tau) << " tau_svk~=" << to_string(p.curv_t_par.tau) << "\n";
    for (const auto& r : p.curvature_relations)
      if (!r.holds) os << "  relation " << r.name << " FAILS: " << r.detail << "\n";
  }
  if (section_enabled(checks, "theorems")) {
    int bad = 0;
    for (const auto& e : theorems) {
      if (!e.applicable) continue;
      if (!e.consistent) {
        ++bad;
        os << "theorem " << e.name << ": INCONSISTENT (";
        for (std::size_t i = 0; i < e.items.size(); ++i)
          os << (i ? ", " : "") << e.items[i].name << "=" << (e.items[i].value ? "1" : "0");
        os << ")" << (e.note.empty() ? "" : "  note: " + e.note) << "\n";
      } else if (!e.note.empty()) {
        os << "theorem " << e.name << ": consistent; " << e.note << "\n";
      }
    }
    os << "theorems: " << (theorems.size() - static_cast<std::size_t>(bad)) << "/" << theorems.size()
       << " consistent\n";
  }
  return os.str();
}

}  // namespace apapr
