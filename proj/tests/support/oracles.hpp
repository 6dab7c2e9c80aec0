#pragma once

// Test-only oracles, kept independent of the library implementation paths
// they check. The connection oracle resolves the defining identity
// 2 g(nabla_x y, z) componentwise instead of assembling Christoffel
// symbols; the curvature and table oracles are literal transcriptions of
// hand expansions.

#include "apapr/apapr.hpp"

#include <random>
#include <vector>

namespace oracles {

using apapr::Connection;
using apapr::LieFrame;
using apapr::Rational;
using apapr::Tensor;
using apapr::Variance;

/// Solves 2 g(nabla_{e_i} e_j, e_k) = g([e_i,e_j],e_k) - g([e_j,e_k],e_i)
/// + g([e_k,e_i],e_j) for the coefficient vector via the inverse metric,
/// one (i,j) pair at a time.
inline Connection levi_civita_by_linear_solve(const LieFrame& frame, const Tensor& metric) {
  const int d = frame.dim();
  const Tensor minv = apapr::inverse_metric(metric);
  Tensor gamma(d, {Variance::Up, Variance::Down, Variance::Down});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      std::vector<Rational> rhs(static_cast<std::size_t>(d), Rational(0));
      for (int k = 0; k < d; ++k) {
        Rational s(0);
        for (int l = 0; l < d; ++l)
          s += frame.c(l, i, j) * metric(l, k) - frame.c(l, j, k) * metric(l, i) +
               frame.c(l, k, i) * metric(l, j);
        rhs[static_cast<std::size_t>(k)] = s / 2;
      }
      for (int m = 0; m < d; ++m) {
        Rational v(0);
        for (int k = 0; k < d; ++k) v += minv(m, k) * rhs[static_cast<std::size_t>(k)];
        gamma(m, i, j) = v;
      }
    }
  return Connection(std::move(gamma));
}

/// The dimension-3 family's Levi-Civita table, transcribed by hand:
/// nabla_{E1}E0 = a1 E1 + a2 E2, nabla_{E2}E0 = a2 E1 - a1 E2,
/// nabla_{E1}E1 = -nabla_{E2}E2 = -a1 E0, nabla_{E1}E2 = nabla_{E2}E1 = -a2 E0,
/// all other coefficients zero.
inline Connection family3_connection_table(const Rational& a1, const Rational& a2) {
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

/// The dimension-3 family's fundamental tensor, transcribed by hand:
/// F101 = F110 = F202 = F220 = -a2, F102 = F120 = -F201 = -F210 = -a1.
inline Tensor family3_fundamental_table(const Rational& a1, const Rational& a2) {
  Tensor f(3, {Variance::Down, Variance::Down, Variance::Down});
  f(1, 0, 1) = -a2;
  f(1, 1, 0) = -a2;
  f(2, 0, 2) = -a2;
  f(2, 2, 0) = -a2;
  f(1, 0, 2) = -a1;
  f(1, 2, 0) = -a1;
  f(2, 0, 1) = a1;
  f(2, 1, 0) = a1;
  return f;
}

/// Deterministic rational generator for property-style tests.
class RationalGen {
 public:
  explicit RationalGen(std::uint64_t seed) : rng_(seed) {}
  Rational operator()() {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 9);
    return Rational(num(rng_), den(rng_));
  }
  Rational nonzero() {
    Rational r = (*this)();
    while (r == 0) r = (*this)();
    return r;
  }
  std::uint64_t raw() { return rng_(); }

 private:
  std::mt19937_64 rng_;
};

inline Tensor random_tensor(RationalGen& gen, int dim, std::vector<Variance> var) {
  Tensor t(dim, std::move(var));
  for (std::size_t i = 0; i < t.size(); ++i) t.component(i) = gen();
  return t;
}

/// The seven-value grid used across the verification runs.
inline std::vector<Rational> standard_grid() {
  return {Rational(-2), Rational(-1), Rational(-1, 2), Rational(0),
          Rational(1, 2), Rational(1), Rational(2)};
}

}  // namespace oracles
