#pragma once

#include "apapr/lie_frame.hpp"
#include "apapr/structure.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace apapr {

/// Parameters of the Lie-group example family: dimension 2n+1 and the 2n
/// real constants a_1,...,a_2n (exact rationals here).
struct FamilyParams {
  int n = 1;
  std::vector<Rational> a;
};

/// Brackets of the family: [E_0, E_i] = -a_i E_i - a_{n+i} E_{n+i} and
/// [E_0, E_{n+i}] = -a_{n+i} E_i + a_i E_{n+i} for i = 1..n; all other
/// brackets vanish.
inline LieFrame family_frame(const FamilyParams& params) {
  if (params.n <= 0) throw LieFrameError("family: n must be positive");
  if (static_cast<int>(params.a.size()) != 2 * params.n)
    throw LieFrameError("family: expected exactly 2n constants");
  const int n = params.n;
  const int d = 2 * n + 1;
  Tensor c(d, {Variance::Up, Variance::Down, Variance::Down});
  auto set = [&](int k, int i, int j, const Rational& v) {
    c(k, i, j) = v;
    c(k, j, i) = -v;
  };
  for (int i = 1; i <= n; ++i) {
    const Rational& ai = params.a[static_cast<std::size_t>(i - 1)];
    const Rational& ani = params.a[static_cast<std::size_t>(n + i - 1)];
    set(i, 0, i, -ai);
    set(n + i, 0, i, -ani);
    set(i, 0, n + i, -ani);
    set(n + i, 0, n + i, ai);
  }
  return LieFrame::create(n, std::move(c));
}

/// The structure (phi E_i = E_{n+i}, phi E_{n+i} = E_i, xi = E_0, eta dual,
/// g the identity metric) on the family frame, fully validated.
inline Manifold build_family(const FamilyParams& params) {
  LieFrame frame = family_frame(params);
  const int n = params.n;
  const int d = frame.dim();
  Tensor phi(d, {Variance::Up, Variance::Down});
  for (int i = 1; i <= n; ++i) {
    phi(n + i, i) = 1;
    phi(i, n + i) = 1;
  }
  Tensor xi = Tensor::vector(d);
  xi(0) = 1;
  Tensor eta = Tensor::one_form(d);
  eta(0) = 1;
  Tensor g(d, {Variance::Down, Variance::Down});
  for (int i = 0; i < d; ++i) g(i, i) = 1;
  return Manifold::build(std::move(frame), std::move(phi), std::move(xi), std::move(eta), std::move(g));
}

/// Expected class label of a dimension-3 family member by the signs of
/// its two parameters.
inline std::string family3_expected_class(const Rational& a1, const Rational& a2) {
  if (a1 == 0 && a2 == 0) return "F0";
  if (a1 == 0) return "F4";
  if (a2 == 0) return "F9";
  return "F4+F9";
}

struct PropositionRow {
  Rational a1, a2;
  std::string expected;
  std::string actual;
  bool match = false;
};

}  // namespace apapr
