// Command-line front end: validates manifests, runs the pipeline and the
// theorem suite, and emits deterministic JSON or text reports.

#include "apapr/apapr.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace apapr;

struct CommonOptions {
  std::string manifest_path;
  std::string family_spec;
  std::string output = "text";
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--manifest", opts.manifest_path, "Manifest file (JSON or TOML); '-' for stdin");
  cmd->add_option("--family", opts.family_spec,
                  "Inline family, e.g. n=1,a=1/2:-3 (colon-separated rationals)");
  cmd->add_option("--output", opts.output, "Report format")
      ->check(CLI::IsMember({"json", "text"}));
}

Manifest manifest_from_options(const CommonOptions& opts) {
  if (opts.manifest_path.empty() == opts.family_spec.empty())
    throw ManifestError("provide exactly one of --manifest or --family");
  if (!opts.family_spec.empty()) {
    FamilyParams p;
    std::stringstream ss(opts.family_spec);
    std::string field;
    bool have_n = false, have_a = false;
    while (std::getline(ss, field, ',')) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) throw ManifestError("family spec: expected key=value");
      const std::string key = field.substr(0, eq);
      const std::string value = field.substr(eq + 1);
      if (key == "n") {
        p.n = std::stoi(value);
        have_n = true;
      } else if (key == "a") {
        std::stringstream as(value);
        std::string item;
        while (std::getline(as, item, ':')) p.a.push_back(parse_rational(item));
        have_a = true;
      } else {
        throw ManifestError("family spec: unknown key '" + key + "'");
      }
    }
    if (!have_n || !have_a) throw ManifestError("family spec: need n=... and a=...");
    Manifest man;
    man.family = std::move(p);
    return man;
  }
  std::string text;
  if (opts.manifest_path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  } else {
    std::ifstream in(opts.manifest_path);
    if (!in) throw ManifestError("cannot open manifest: " + opts.manifest_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  return parse_manifest(text);
}

struct RunResult {
  Manifest manifest;
  Pipeline pipeline;
  std::vector<TheoremEntry> theorems;
};

RunResult run(const CommonOptions& opts, std::set<std::string> checks) {
  Manifest man = manifest_from_options(opts);
  if (!checks.empty()) man.checks = std::move(checks);
  if (opts.output == "json") man.output = "json";
  Manifold m = manifold_from_manifest(man);
  Pipeline p = run_pipeline(std::move(m));
  std::vector<TheoremEntry> th = theorem_suite(p, man.family);
  return RunResult{std::move(man), std::move(p), std::move(th)};
}

// Exit code 2 signals an inconsistency among the checks the run reported.
int exit_code(const RunResult& r) {
  const auto& checks = r.manifest.checks;
  const Pipeline& p = r.pipeline;
  bool ok = true;
  if (section_enabled(checks, "classify")) {
    ok = ok && p.fundamental.phi_routes_agree && p.fundamental.f_tilde_routes_agree &&
         p.fundamental.lee_relations_hold && p.fundamental.lee_tilde_relations_hold;
    for (const auto& e : p.composites) ok = ok && e.consistent;
  }
  if (section_enabled(checks, "svk")) {
    ok = ok && p.svk.projector_route_agrees && p.svk.torsion_formula_agrees &&
         p.svk.shape_flat_is_minus_nabla_eta && p.phi_derivative.closed_form_agrees &&
         p.phi_derivative.tilde_closed_form_agrees;
    for (const auto& [name, holds] : p.hv.identities) ok = ok && holds;
  }
  if (section_enabled(checks, "curvature")) {
    for (const auto& rel : p.curvature_relations) ok = ok && rel.holds;
  }
  if (section_enabled(checks, "theorems")) {
    for (const auto& e : r.theorems) ok = ok && (!e.applicable || e.consistent);
  }
  return ok ? 0 : 2;
}

int emit(const RunResult& r) {
  if (r.manifest.output == "json")
    std::cout << report_json(r.manifest, r.pipeline, r.theorems).dump(2) << "\n";
  else
    std::cout << report_text(r.manifest, r.pipeline, r.theorems);
  return exit_code(r);
}

int run_sections(const CommonOptions& opts, const std::string& plane_spec) {
  RunResult r = run(opts, {"validate", "sections"});
  if (!plane_spec.empty()) {
    const auto comma = plane_spec.find(',');
    if (comma == std::string::npos) throw ManifestError("--plane expects i,j");
    const int i = std::stoi(plane_spec.substr(0, comma));
    const int j = std::stoi(plane_spec.substr(comma + 1));
    const Manifold& m = r.pipeline.manifold;
    if (i < 0 || j < 0 || i >= m.dim() || j >= m.dim() || i == j)
      throw ManifestError("--plane indices out of range");
    SectionReport rep =
        section_analysis(m, r.pipeline.svk, r.pipeline.curv_g, r.pipeline.curv_g_par,
                         r.pipeline.curv_t, r.pipeline.curv_t_par, m.basis_vector(i), m.basis_vector(j));
    Json out;
    out["schema"] = "1";
    out["plane"] = {i, j};
    out["type"] = to_string(rep.type);
    out["k"] = rep.k ? Json(to_string(*rep.k)) : Json(nullptr);
    out["k_svk"] = rep.k_par ? Json(to_string(*rep.k_par)) : Json(nullptr);
    out["k_tilde"] = rep.k_tilde ? Json(to_string(*rep.k_tilde)) : Json(nullptr);
    out["k_svk_tilde"] = rep.k_tilde_par ? Json(to_string(*rep.k_tilde_par)) : Json(nullptr);
    out["relation_holds"] = rep.relation_holds;
    out["relation_tilde_holds"] = rep.relation_tilde_holds;
    if (r.manifest.output == "json")
      std::cout << out.dump(2) << "\n";
    else
      std::cout << "plane {" << i << "," << j << "}: " << to_string(rep.type)
                << " k=" << (rep.k ? to_string(*rep.k) : "undefined")
                << " k_svk=" << (rep.k_par ? to_string(*rep.k_par) : "undefined")
                << " k~=" << (rep.k_tilde ? to_string(*rep.k_tilde) : "undefined")
                << " k_svk~=" << (rep.k_tilde_par ? to_string(*rep.k_tilde_par) : "undefined") << "\n";
    return rep.relation_holds && rep.relation_tilde_holds ? 0 : 2;
  }
  return emit(r);
}

int run_sweep(int n, const std::string& grid_spec, int seeds, std::uint64_t seed,
              const std::string& output) {
  std::vector<Rational> grid;
  {
    std::stringstream ss(grid_spec);
    std::string item;
    while (std::getline(ss, item, ',')) grid.push_back(parse_rational(item));
  }
  if (grid.empty() && seeds == 0) throw ManifestError("sweep: provide --grid and/or --seeds");

  std::vector<FamilyParams> runs;
  if (!grid.empty()) {
    if (n == 1) {
      for (const auto& a1 : grid)
        for (const auto& a2 : grid) runs.push_back(FamilyParams{1, {a1, a2}});
    } else {
      // full grid in 2n dimensions grows fast; sweep the axes instead
      for (int slot = 0; slot < 2 * n; ++slot)
        for (const auto& v : grid) {
          FamilyParams p{n, std::vector<Rational>(static_cast<std::size_t>(2 * n), Rational(0))};
          p.a[static_cast<std::size_t>(slot)] = v;
          runs.push_back(std::move(p));
        }
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  for (int s = 0; s < seeds; ++s) {
    FamilyParams p{n, {}};
    for (int i = 0; i < 2 * n; ++i) p.a.push_back(Rational(num(rng), den(rng)));
    runs.push_back(std::move(p));
  }

  Json out;
  out["schema"] = "1";
  out["seed"] = seed;
  out["runs"] = Json::array();
  int worst = 0;
  for (const auto& params : runs) {
    Pipeline p = run_pipeline(build_family(params));
    std::vector<TheoremEntry> th = theorem_suite(p, params);
    Json e;
    Json a = Json::array();
    for (const auto& v : params.a) a.push_back(to_string(v));
    e["a"] = std::move(a);
    e["class"] = apapr::detail::classes_label(p.membership);
    e["class_tilde"] = apapr::detail::classes_label(p.membership_tilde);
    Json bad = Json::array();
    for (const auto& t : th)
      if (t.applicable && !t.consistent) bad.push_back(t.name);
    if (!bad.empty()) worst = 2;
    e["inconsistent"] = std::move(bad);
    out["runs"].push_back(std::move(e));
  }
  if (output == "json") {
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& e : out["runs"]) {
      std::cout << "a=(";
      bool first = true;
      for (const auto& v : e["a"]) {
        std::cout << (first ? "" : ",") << v.get<std::string>();
        first = false;
      }
      std::cout << ") class=" << e["class"].get<std::string>()
                << " tilde=" << e["class_tilde"].get<std::string>();
      if (!e["inconsistent"].empty()) {
        std::cout << " inconsistent:";
        for (const auto& t : e["inconsistent"]) std::cout << " " << t.get<std::string>();
      }
      std::cout << "\n";
    }
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verifier for almost paracontact almost paracomplex Riemannian structures "
               "on Lie groups and their adapted connection pair"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string plane_spec;
  int sweep_n = 1;
  std::string grid_spec;
  int sweep_seeds = 0;
  std::uint64_t sweep_seed = 20240101ULL;

  auto* validate = app.add_subcommand("validate", "Validate the structure axioms");
  add_common(validate, opts);
  auto* classify = app.add_subcommand("classify", "Fundamental tensor, Lee forms, class membership");
  add_common(classify, opts);
  auto* connections = app.add_subcommand("connections", "Levi-Civita pair and adapted pair");
  add_common(connections, opts);
  auto* svk = app.add_subcommand("svk", "Potentials, torsions, shape operators, coincidences");
  add_common(svk, opts);
  auto* curvature = app.add_subcommand("curvature", "Curvature stack and displayed relations");
  add_common(curvature, opts);
  auto* sections = app.add_subcommand("sections", "Sectional curvature analysis");
  add_common(sections, opts);
  sections->add_option("--plane", plane_spec, "Frame plane i,j (default: seeded sweep)");
  auto* theorems = app.add_subcommand("theorems", "Run the full statement suite");
  add_common(theorems, opts);
  auto* run_all = app.add_subcommand("run", "Full report (all sections)");
  add_common(run_all, opts);
  auto* sweep = app.add_subcommand("sweep", "Family parameter sweep");
  sweep->add_option("--n", sweep_n, "Family parameter n")->check(CLI::PositiveNumber);
  sweep->add_option("--grid", grid_spec, "Comma-separated rational grid values");
  sweep->add_option("--seeds", sweep_seeds, "Number of random rational parameter vectors");
  sweep->add_option("--seed", sweep_seed, "Generator seed (recorded in the report)");
  sweep->add_option("--output", opts.output, "Report format")->check(CLI::IsMember({"json", "text"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return emit(run(opts, {"validate"}));
    if (classify->parsed()) return emit(run(opts, {"validate", "classify"}));
    if (connections->parsed()) return emit(run(opts, {"validate", "connections"}));
    if (svk->parsed()) return emit(run(opts, {"validate", "svk"}));
    if (curvature->parsed()) return emit(run(opts, {"validate", "curvature"}));
    if (sections->parsed()) return run_sections(opts, plane_spec);
    if (theorems->parsed()) return emit(run(opts, {"validate", "theorems"}));
    if (run_all->parsed()) return emit(run(opts, {}));
    if (sweep->parsed()) return run_sweep(sweep_n, grid_spec, sweep_seeds, sweep_seed, opts.output);
  } catch (const ManifestError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const StructureError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const LieFrameError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
