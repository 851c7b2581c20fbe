#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "ntkms/errors.hpp"
#include "ntkms/trace_spec.hpp"
#include "support.hpp"

using namespace ntkms;
using namespace testing;

namespace {

// Riemann sum of exp(i k theta) over the circle; exact for |k| < points.
Complex circle_average(std::int64_t k, int points = 64) {
  Complex total = 0.0;
  for (int p = 0; p < points; ++p) {
    total += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k * p) / points);
  }
  return total / static_cast<double>(points);
}

}  // namespace

TEST_SUITE("trace-spec") {

TEST_CASE("haar moments on toeplitz monomials") {
  const auto tau = TraceSpec::haar(EngineSpec::toeplitz());
  for (std::int64_t m = 0; m <= 6; ++m) {
    for (std::int64_t n = 0; n <= 6; ++n) {
      const auto got = tau.moment(Monomial::toeplitz(m, n));
      CHECK(std::abs(got - circle_average(m - n)) < 1e-12);
      CHECK(got == Complex(m == n ? 1.0 : 0.0));
    }
  }
  CHECK(tau.tracial());
}

TEST_CASE("point masses evaluate at the point") {
  const auto at_one = TraceSpec::point_mass(EngineSpec::toeplitz(), 0.0);
  for (std::int64_t m = 0; m <= 4; ++m) {
    for (std::int64_t n = 0; n <= 4; ++n) CHECK(at_one.moment(Monomial::toeplitz(m, n)) == Complex(1.0));
  }
  const auto tau = TraceSpec::point_mass(EngineSpec::laurent(2), std::vector<double>{0.3, -1.1});
  std::mt19937_64 rng(31);
  for (int i = 0; i < 50; ++i) {
    const auto a = random_element(rng, EngineSpec::laurent(2));
    CHECK(std::abs(tau.evaluate(a) - laurent_value(a, {0.3, -1.1})) < 1e-12);
  }
}

TEST_CASE("identity on scalars") {
  const auto tau = TraceSpec::identity();
  CHECK(tau.evaluate(CoefficientElement::scalar(EngineSpec::scalar(), Complex(2, 3))) == Complex(2, 3));
}

TEST_CASE("traces are tracial on random products") {
  std::mt19937_64 rng(32);
  for (const auto& tau : {TraceSpec::haar(EngineSpec::toeplitz()),
                          TraceSpec::point_mass(EngineSpec::toeplitz(), 0.7),
                          TraceSpec::haar(EngineSpec::laurent(1))}) {
    for (int i = 0; i < 100; ++i) {
      const auto x = random_element(rng, tau.engine());
      const auto y = random_element(rng, tau.engine());
      CHECK(std::abs(tau.evaluate(mul(x, y)) - tau.evaluate(mul(y, x))) < 1e-12);
      const auto xx = mul(adjoint(x), x);
      CHECK(tau.evaluate(xx).real() >= -1e-12);
    }
  }
}

TEST_CASE("vacuum is a state but not a trace") {
  const auto v = TraceSpec::vacuum();
  CHECK_FALSE(v.tracial());
  const CoefficientElement s(Monomial::toeplitz(1, 0));
  CHECK(v.evaluate(mul(s, adjoint(s))) == Complex(0.0));
  CHECK(v.evaluate(mul(adjoint(s), s)) == Complex(1.0));
}

TEST_CASE("moment data must be positive definite") {
  CHECK_NOTHROW(TraceSpec::toeplitz_moments([](std::int64_t k) { return Complex(std::pow(0.5, std::abs(k))); },
                                            "poisson"));
  CHECK_THROWS_AS(TraceSpec::toeplitz_moments([](std::int64_t k) { return Complex(k == 0 ? 1.0 : 2.0); },
                                              "bad"),
                  ConstructionError);
  CHECK_THROWS_AS(TraceSpec::toeplitz_moments([](std::int64_t k) { return Complex(k == 0 ? 2.0 : 0.0); },
                                              "unnormalized"),
                  ConstructionError);
}

}
