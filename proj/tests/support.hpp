#pragma once

// Shared generators and independent oracles for the unit and property tests.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "ntkms/coeff_algebra.hpp"

namespace testing {

using ntkms::CoefficientElement;
using ntkms::Complex;
using ntkms::EngineKind;
using ntkms::EngineSpec;
using ntkms::Monomial;

inline std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline Monomial random_monomial(std::mt19937_64& rng, EngineSpec engine, int max_exp = 3) {
  switch (engine.kind) {
    case EngineKind::Toeplitz:
      return Monomial::toeplitz(uniform_int(rng, 0, max_exp), uniform_int(rng, 0, max_exp));
    case EngineKind::Laurent: {
      std::array<std::int64_t, ntkms::kMaxLaurentDim> g{};
      for (int i = 0; i < engine.dim; ++i) g[i] = uniform_int(rng, -max_exp, max_exp);
      return Monomial::laurent(std::span(g.data(), engine.dim));
    }
    case EngineKind::Scalar:
      break;
  }
  return Monomial::unit(engine);
}

inline Complex random_gaussian_integer(std::mt19937_64& rng) {
  Complex c;
  while (c == Complex{}) {
    c = Complex(static_cast<double>(uniform_int(rng, -3, 3)), static_cast<double>(uniform_int(rng, -3, 3)));
  }
  return c;
}

inline CoefficientElement random_element(std::mt19937_64& rng, EngineSpec engine, int terms = 3,
                                         int max_exp = 3) {
  CoefficientElement out(engine);
  for (int i = 0; i < terms; ++i) out.add_term(random_monomial(rng, engine, max_exp), random_gaussian_integer(rng));
  return out;
}

// S as the unilateral shift on span{e_0 .. e_{n-1}}, truncated.
inline Eigen::MatrixXcd shift_matrix(int n) {
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) s(i + 1, i) = 1.0;
  return s;
}

// Truncated matrix of a Toeplitz element. Entries (i, j) with i, j < n - depth
// agree with the untruncated operator when every monomial has m + n <= depth.
inline Eigen::MatrixXcd toeplitz_matrix(const CoefficientElement& a, int n) {
  // S^m S*^n e_j = e_{j - n + m} for j >= n, cut off at the matrix size
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& [m, c] : a.terms()) {
    for (std::int64_t j = m.exps[1]; j < n; ++j) {
      const std::int64_t i = j - m.exps[1] + m.exps[0];
      if (i < n) out(i, j) += c;
    }
  }
  return out;
}

// Value of a Laurent element at exp(i theta).
inline Complex laurent_value(const CoefficientElement& a, const std::vector<double>& theta) {
  Complex out = 0.0;
  for (const auto& [m, c] : a.terms()) {
    double phase = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) phase += static_cast<double>(m.exps[i]) * theta[i];
    out += c * std::polar(1.0, phase);
  }
  return out;
}

}  // namespace testing
