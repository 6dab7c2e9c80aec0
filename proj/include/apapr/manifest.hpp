#pragma once

#include "apapr/family.hpp"
#include "apapr/structure.hpp"

#include <json.hpp>

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace apapr {

struct ManifestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Explicit structure data: dimension 2n+1, sparse structure constants
/// {i, j, k, value} with i < j, and the four structure tensors as nested
/// arrays of "p/q" scalars.
struct ExplicitData {
  int dimension = 3;
  std::vector<std::tuple<int, int, int, Rational>> structure_constants;
  Tensor phi{3, {Variance::Up, Variance::Down}};
  Tensor xi{3, {Variance::Up}};
  Tensor eta{3, {Variance::Down}};
  Tensor g{3, {Variance::Down, Variance::Down}};
};

struct Manifest {
  std::optional<FamilyParams> family;
  std::optional<ExplicitData> explicit_data;
  std::set<std::string> checks;  // empty = run everything
  std::string output = "text";
};

namespace detail {

inline Rational scalar_from_json(const nlohmann::json& j, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float())
    throw ManifestError(where + ": decimal floats are refused; use \"p/q\" strings");
  throw ManifestError(where + ": expected an exact scalar");
}

inline Tensor tensor_from_json(const nlohmann::json& j, int dim, std::vector<Variance> var,
                               const std::string& where) {
  Tensor t(dim, std::move(var));
  std::vector<int> idx(static_cast<std::size_t>(t.rank()));
  std::function<void(const nlohmann::json&, int)> fill = [&](const nlohmann::json& node, int depth) {
    if (depth == t.rank()) {
      t.at(idx) = scalar_from_json(node, where);
      return;
    }
    if (!node.is_array() || static_cast<int>(node.size()) != dim)
      throw ManifestError(where + ": expected nested arrays of extent " + std::to_string(dim));
    for (int i = 0; i < dim; ++i) {
      idx[static_cast<std::size_t>(depth)] = i;
      fill(node[static_cast<std::size_t>(i)], depth + 1);
    }
  };
  fill(j, 0);
  return t;
}

}  // namespace detail

inline Manifest manifest_from_json(const nlohmann::json& j) {
  Manifest out;
  if (!j.is_object()) throw ManifestError("manifest: expected a JSON object");
  const bool has_family = j.contains("family");
  const bool has_explicit = j.contains("explicit");
  if (has_family == has_explicit)
    throw ManifestError("manifest: exactly one of 'family' or 'explicit' must be present");

  if (has_family) {
    const auto& fam = j.at("family");
    FamilyParams p;
    if (!fam.contains("n") || !fam.at("n").is_number_integer())
      throw ManifestError("family: integer field 'n' required");
    p.n = fam.at("n").get<int>();
    if (p.n <= 0) throw ManifestError("family: n must be positive");
    if (!fam.contains("a") || !fam.at("a").is_array())
      throw ManifestError("family: array field 'a' required");
    for (std::size_t i = 0; i < fam.at("a").size(); ++i)
      p.a.push_back(detail::scalar_from_json(fam.at("a")[i], "family.a[" + std::to_string(i) + "]"));
    if (static_cast<int>(p.a.size()) != 2 * p.n)
      throw ManifestError("family: expected exactly 2n entries in 'a'");
    out.family = std::move(p);
  } else {
    const auto& ex = j.at("explicit");
    ExplicitData e;
    if (!ex.contains("dimension") || !ex.at("dimension").is_number_integer())
      throw ManifestError("explicit: integer field 'dimension' required");
    e.dimension = ex.at("dimension").get<int>();
    if (e.dimension < 3 || e.dimension % 2 == 0)
      throw ManifestError("explicit: dimension must be odd and at least 3");
    const int d = e.dimension;
    if (ex.contains("structure_constants")) {
      for (const auto& entry : ex.at("structure_constants")) {
        const int i = entry.at("i").get<int>();
        const int jj = entry.at("j").get<int>();
        const int k = entry.at("k").get<int>();
        if (i < 0 || jj < 0 || k < 0 || i >= d || jj >= d || k >= d)
          throw ManifestError("structure_constants: index out of range");
        if (i >= jj) throw ManifestError("structure_constants: entries require i < j");
        e.structure_constants.emplace_back(i, jj, k,
                                           detail::scalar_from_json(entry.at("value"), "structure_constants"));
      }
    }
    e.phi = detail::tensor_from_json(ex.at("phi"), d, {Variance::Up, Variance::Down}, "phi");
    e.xi = detail::tensor_from_json(ex.at("xi"), d, {Variance::Up}, "xi");
    e.eta = detail::tensor_from_json(ex.at("eta"), d, {Variance::Down}, "eta");
    e.g = detail::tensor_from_json(ex.at("g"), d, {Variance::Down, Variance::Down}, "g");
    out.explicit_data = std::move(e);
  }

  if (j.contains("checks")) {
    for (const auto& c : j.at("checks")) out.checks.insert(c.get<std::string>());
  }
  if (j.contains("output")) {
    out.output = j.at("output").get<std::string>();
    if (out.output != "json" && out.output != "text")
      throw ManifestError("output: expected 'json' or 'text'");
  }
  return out;
}

namespace detail {

/// Minimal TOML subset good for manifests: [table] and [[nothing]],
/// key = value with strings, integers, booleans and flat arrays. Dotted
/// keys and nested inline tables are not accepted.
inline nlohmann::json toml_subset_to_json(const std::string& text) {
  nlohmann::json root = nlohmann::json::object();
  nlohmann::json* current = &root;
  std::size_t pos = 0;
  auto fail = [](const std::string& msg, std::size_t line) {
    throw ManifestError("toml line " + std::to_string(line) + ": " + msg);
  };
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      bool in_str = false;
      for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_str = !in_str;
        if (line[i] == '#' && !in_str) {
          line = line.substr(0, i);
          break;
        }
      }
    }
    auto trim = [](std::string s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
      return s;
    };
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated table header", line_no);
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (name.empty() || name.front() == '[') fail("unsupported table header", line_no);
      current = &root[name];
      if (current->is_null()) *current = nlohmann::json::object();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) fail("expected key = value", line_no);

    std::function<nlohmann::json(const std::string&)> parse_value =
        [&](const std::string& v) -> nlohmann::json {
      if (v.front() == '"') {
        if (v.size() < 2 || v.back() != '"') fail("unterminated string", line_no);
        return v.substr(1, v.size() - 2);
      }
      if (v.front() == '[') {
        if (v.back() != ']') fail("unterminated array", line_no);
        nlohmann::json arr = nlohmann::json::array();
        std::string inner = v.substr(1, v.size() - 2);
        std::string item;
        int depth = 0;
        bool in_str = false;
        for (char ch : inner) {
          if (ch == '"') in_str = !in_str;
          if (!in_str) {
            if (ch == '[') ++depth;
            if (ch == ']') --depth;
            if (ch == ',' && depth == 0) {
              if (!trim(item).empty()) arr.push_back(parse_value(trim(item)));
              item.clear();
              continue;
            }
          }
          item += ch;
        }
        if (!trim(item).empty()) arr.push_back(parse_value(trim(item)));
        return arr;
      }
      if (v == "true") return true;
      if (v == "false") return false;
      // bare integer only; anything else must be quoted
      const std::string digits = (v.front() == '-' || v.front() == '+') ? v.substr(1) : v;
      if (digits.empty()) fail("bad value", line_no);
      for (char ch : digits)
        if (!std::isdigit(static_cast<unsigned char>(ch))) fail("unsupported value '" + v + "'", line_no);
      return std::stoll(v);
    };
    (*current)[key] = parse_value(value);
  }
  return root;
}

}  // namespace detail

/// Parses a manifest from JSON text, or from the TOML subset when the
/// content does not start with '{'.
inline Manifest parse_manifest(const std::string& text) {
  std::size_t first = 0;
  while (first < text.size() && std::isspace(static_cast<unsigned char>(text[first]))) ++first;
  if (first < text.size() && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ManifestError(std::string("manifest JSON parse error: ") + e.what());
    }
    return manifest_from_json(j);
  }
  return manifest_from_json(detail::toml_subset_to_json(text));
}

/// Builds the validated structure a manifest describes.
inline Manifold manifold_from_manifest(const Manifest& man) {
  if (man.family.has_value()) return build_family(*man.family);
  const ExplicitData& e = *man.explicit_data;
  const int d = e.dimension;
  const int n = (d - 1) / 2;
  Tensor c(d, {Variance::Up, Variance::Down, Variance::Down});
  for (const auto& [i, j, k, v] : e.structure_constants) {
    c(k, i, j) = v;
    c(k, j, i) = -v;
  }
  LieFrame frame = LieFrame::create(n, std::move(c));
  return Manifold::build(std::move(frame), e.phi, e.xi, e.eta, e.g);
}

}  // namespace apapr
