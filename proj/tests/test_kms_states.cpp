#include "doctest.h"

#include <cmath>
#include <numbers>

#include "ntkms/builtin_systems.hpp"
#include "ntkms/errors.hpp"
#include "ntkms/kms_states.hpp"
#include "ntkms/verify.hpp"
#include "support.hpp"

using namespace ntkms;
using namespace testing;

namespace {

// Induced-state value of i_e(S^m S*^n) for a circle measure with moments c,
// via the quotient symbol: Tr_s(z^g) = s [s | g] z^{g/s}.
template <class Moment>
Complex toeplitz_state_oracle(std::int64_t m, std::int64_t n, double beta, std::uint64_t bound,
                              Moment c) {
  const std::int64_t g = m - n;
  Complex num = 0.0;
  double zeta = 0.0;
  for (std::uint64_t s = 1; s <= bound; ++s) {
    const double w = std::pow(static_cast<double>(s), 1.0 - beta);
    zeta += w;
    if (g % static_cast<std::int64_t>(s) == 0) num += w * c(g / static_cast<std::int64_t>(s));
  }
  return num / zeta;
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("kms-states") {

TEST_CASE("truncated zeta") {
  const auto sys = make_affine_toeplitz();
  NtAlgebra alg(sys);
  KmsEvaluator ev(alg, default_parameters(*sys, 2.0 + 1.0, 100000, TraceSpec::haar(sys->engine())));
  const auto z = ev.zeta();
  CHECK(z.value.real() == doctest::Approx(std::numbers::pi * std::numbers::pi / 6).epsilon(1e-5));
  CHECK(std::abs(z.value.real() - std::numbers::pi * std::numbers::pi / 6) <= z.tail);
  CHECK(z.truncation == 100000);

  const auto cuntz = make_cuntz(2);
  NtAlgebra calg(cuntz);
  KmsEvaluator cev(calg, default_parameters(*cuntz, 3.0, 48, TraceSpec::identity()));
  CHECK(cev.zeta().value.real() == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(cev.critical_exponent() == doctest::Approx(1.0));
}

TEST_CASE("unit and alpha weights") {
  const auto sys = make_affine_toeplitz();
  NtAlgebra alg(sys);
  const double beta = 3.0;
  const std::uint64_t bound = 2000;
  KmsEvaluator ev(alg, default_parameters(*sys, beta, bound, TraceSpec::haar(sys->engine())));
  CHECK(ev.kms_state(alg.unit()).value == Complex(1.0));
  for (std::uint64_t p : {2, 3, 4, 6}) {
    double num = 0.0, zeta = 0.0;
    for (std::uint64_t s = 1; s <= bound; ++s) {
      const double w = std::pow(static_cast<double>(s), 1.0 - beta);
      zeta += w;
      if (s % p == 0) num += w;
    }
    const auto got = ev.kms_state(alg.alpha(sys->element(p), alg.unit()));
    CHECK(got.value.real() == doctest::Approx(num / zeta).epsilon(1e-12));
    // the untruncated value is p^{1 - beta}
    CHECK(std::abs(got.value.real() - std::pow(static_cast<double>(p), 1.0 - beta)) <= got.tail);
  }
}

TEST_CASE("coefficient monomials against the symbol oracle") {
  const auto sys = make_affine_toeplitz();
  NtAlgebra alg(sys);
  const double beta = 4.0;
  const std::uint64_t bound = 300;
  const double theta = 0.7;
  KmsEvaluator haar(alg, default_parameters(*sys, beta, bound, TraceSpec::haar(sys->engine())));
  KmsEvaluator point(alg, default_parameters(*sys, beta, bound, TraceSpec::point_mass(sys->engine(), theta)));
  for (std::int64_t m = 0; m <= 8; ++m) {
    for (std::int64_t n = 0; n <= 8; ++n) {
      const auto x = alg.i_e(CoefficientElement(Monomial::toeplitz(m, n)));
      const auto h = toeplitz_state_oracle(m, n, beta, bound, [](std::int64_t g) { return Complex(g == 0 ? 1.0 : 0.0); });
      const auto p = toeplitz_state_oracle(m, n, beta, bound, [&](std::int64_t g) { return std::polar(1.0, theta * g); });
      CHECK(std::abs(haar.kms_state(x).value - h) < 1e-13);
      CHECK(std::abs(point.kms_state(x).value - p) < 1e-13);
    }
  }
}

TEST_CASE("off-diagonal and nondiagonal-index terms vanish") {
  const auto sys = make_affine_toeplitz();
  NtAlgebra alg(sys);
  KmsEvaluator ev(alg, default_parameters(*sys, 3.0, 500, TraceSpec::haar(sys->engine())));
  const auto one = CoefficientElement::unit(sys->engine());
  CHECK(ev.kms_state(alg.term(sys->element(2), 0, one, sys->element(3), 0)).value == Complex(0.0));
  CHECK(ev.kms_state(alg.term(sys->element(3), 0, one, sys->element(3), 1)).value == Complex(0.0));
  CHECK(ev.kms_state(alg.term(sys->element(3), 1, one, sys->element(3), 1)).value != Complex(0.0));
}

TEST_CASE("positivity on random elements") {
  for (const auto& sys : {make_affine_toeplitz(), make_cuntz(3), make_lattice_dilation(2, "diagonal")}) {
    INFO(sys->name());
    NtAlgebra alg(sys);
    const std::uint64_t bound = sys->semigroup() == SemigroupKind::NatAdd ? 30 : 200;
    const auto tau = sys->engine().kind == EngineKind::Scalar ? TraceSpec::identity() : TraceSpec::haar(sys->engine());
    KmsEvaluator ev(alg, default_parameters(*sys, 3.5, bound, tau));
    Sampler sampler(alg, 61, 3);
    for (int i = 0; i < 30; ++i) {
      const auto x = sampler.term() + sampler.term() + sampler.term();
      const auto v = ev.kms_state(alg.multiply(alg.adjoint(x), x)).value;
      CHECK(v.real() >= -1e-12);
      CHECK(std::abs(v.imag()) < 1e-12);
    }
  }
}

TEST_CASE("tails cover the truncation error") {
  const auto sys = make_affine_toeplitz();
  NtAlgebra alg(sys);
  const auto tau = TraceSpec::point_mass(sys->engine(), 0.3);
  KmsEvaluator coarse(alg, default_parameters(*sys, 3.0, 200, tau));
  KmsEvaluator fine(alg, default_parameters(*sys, 3.0, 50000, tau));
  Sampler sampler(alg, 62, 4);
  for (int i = 0; i < 30; ++i) {
    const auto x = sampler.core_term();
    const auto a = coarse.kms_state(x);
    const auto b = fine.kms_state(x);
    CHECK(std::abs(a.value - b.value) <= a.tail + b.tail);
  }
}

TEST_CASE("domain errors") {
  const auto sys = make_affine_toeplitz();
  NtAlgebra alg(sys);
  CHECK_THROWS_AS(KmsEvaluator(alg, default_parameters(*sys, 2.0, 100, TraceSpec::haar(sys->engine()))), DomainError);
  CHECK_THROWS_AS(KmsEvaluator(alg, default_parameters(*sys, 3.0, 100, TraceSpec::vacuum())), DomainError);
  CHECK_THROWS_AS(KmsEvaluator(alg, default_parameters(*sys, 3.0, 100, TraceSpec::identity())), MismatchError);
  KmsEvaluator ev(alg, default_parameters(*sys, 3.0, 100, TraceSpec::haar(sys->engine())));
  CHECK_THROWS_AS(ev.omega_tau(alg.term(sys->element(2), 0, CoefficientElement::unit(sys->engine()),
                                        sys->element(1), 0)),
                  DomainError);
}

TEST_CASE("ground states") {
  const auto sys = make_affine_toeplitz();
  NtAlgebra alg(sys);
  const auto vac = TraceSpec::vacuum();
  CHECK(ground_state(alg, alg.unit(), vac) == Complex(1.0));
  CHECK(ground_state(alg, alg.i_e(CoefficientElement(Monomial::toeplitz(1, 0))), vac) == Complex(0.0));
  CHECK(ground_state(alg, alg.i_e(CoefficientElement(Monomial::toeplitz(1, 1))), vac) == Complex(0.0));
  CHECK(ground_state(alg, alg.alpha(sys->element(2), alg.unit()), vac) == Complex(0.0));
  const auto pm = TraceSpec::point_mass(sys->engine(), 0.5);
  CHECK(std::abs(ground_state(alg, alg.i_e(CoefficientElement(Monomial::toeplitz(2, 0))), pm) -
                 std::polar(1.0, 1.0)) < 1e-15);
}

TEST_CASE("euler product") {
  CHECK(euler_product(3.0, 2) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  for (double beta : {3.0, 4.0, 5.5}) {
    double expected = 1.0;
    for (std::uint64_t p = 2; p <= 500; ++p) {
      if (is_prime(p)) expected /= 1.0 - std::pow(static_cast<double>(p), 1.0 - beta);
    }
    CHECK(euler_product(beta, 500) == doctest::Approx(expected).epsilon(1e-13));
  }
  CHECK(euler_product(4.0, 100) == doctest::Approx(1.2020569).epsilon(1e-4));
  CHECK_THROWS_AS(euler_product(2.0, 100), DomainError);
}

}
