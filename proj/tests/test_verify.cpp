#include "doctest.h"

#include <cmath>

#include "json.hpp"
#include "ntkms/builtin_systems.hpp"
#include "ntkms/verify.hpp"
#include "support.hpp"

using namespace ntkms;
using namespace testing;

namespace {

std::vector<std::uint64_t> values(const std::vector<SemigroupElement>& xs) {
  std::vector<std::uint64_t> out;
  for (const auto& x : xs) out.push_back(x.value);
  return out;
}

TraceSpec default_trace(const ProductSystem& sys) {
  return sys.engine().kind == EngineKind::Scalar ? TraceSpec::identity() : TraceSpec::haar(sys.engine());
}

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("binding sample") {
  ReportBuilder b("demo", 9);
  b.sample(1.0, 10.0, [] { return "a"; });
  b.sample(5.0, 6.0, [] { return "b"; });
  auto r = b.finish();
  CHECK(r.pass);
  CHECK(r.max_deviation == 5.0);
  CHECK(r.tolerance == 6.0);
  CHECK(r.samples == 2);
  b.sample(0.5, 0.1, [] { return "c"; });
  b.sample(0.9, 0.1, [] { return "d"; });
  r = b.finish();
  CHECK_FALSE(r.pass);
  CHECK(r.witness == "c");
  CHECK(r.max_deviation == 0.9);
  CHECK(r.largest_deviation == 5.0);

  const auto j = nlohmann::json::parse(to_json(r));
  CHECK(j["check"] == "demo");
  CHECK(j["pass"] == false);
  CHECK(j["seed"] == 9);

  const auto merged = merge_reports("both", {b.finish(), ReportBuilder("x", 1).finish()});
  CHECK_FALSE(merged.pass);
  CHECK(merged.samples == 4);
}

TEST_CASE("checks pass on the builtin systems") {
  for (const auto& sys : {make_affine_toeplitz(), make_additive_toeplitz(), make_cuntz(2),
                          make_lattice_dilation(2, "first-axis")}) {
    INFO(sys->name());
    NtAlgebra alg(sys);
    const std::uint64_t bound = sys->semigroup() == SemigroupKind::NatAdd ? 40 : 2000;
    KmsEvaluator ev(alg, default_parameters(*sys, 3.0, bound, default_trace(*sys)));
    for (const auto& r : {check_kms(ev, 3, 60), check_core_trace(ev, 4, 60), check_scaling(ev, 4),
                          check_alpha_lattice(alg, 4), check_commutation(alg, 4),
                          check_ground(alg, default_trace(*sys), 5, 30)}) {
      INFO(to_json(r));
      CHECK(r.pass);
      CHECK(r.samples > 0);
    }
  }
}

TEST_CASE("structure checks catch a corrupted index map") {
  const auto sys = make_affine_toeplitz();
  const auto trunc = enumerate(SemigroupKind::NatMult, 12);
  for (const auto& r : check_structure(*sys, trunc)) CHECK(r.pass);
  const auto bad = make_corrupted(sys, sys->element(2), sys->element(3), 0, 1);
  bool any_fail = false;
  for (const auto& r : check_structure(*bad, trunc)) {
    if (!r.pass) {
      any_fail = true;
      CHECK_FALSE(r.witness.empty());
    }
  }
  CHECK(any_fail);
}

TEST_CASE("euler check") {
  const auto r = check_euler(3.0, 100, 1000000);
  CHECK(r.pass);
  CHECK(r.max_deviation == doctest::Approx(2.99e-3).epsilon(1e-2));
  CHECK(check_euler(4.0, 1000, 100000).pass);
}

TEST_CASE("lambda weights") {
  const auto sys = make_affine_toeplitz();
  const auto ctx = make_reconstruction_context(sys, Monomial::unit(sys->engine()),
                                               TraceSpec::haar(sys->engine()), 3.0, 1000);
  CHECK(lambda_weight(ctx, sys->element(2)).real() == doctest::Approx(0.25));
  CHECK(lambda_weight(ctx, sys->element(1)).real() == doctest::Approx(1.0));
  // Tr_s(S^6) is nonzero exactly for s | 6
  const auto c6 = make_reconstruction_context(sys, Monomial::toeplitz(6, 0),
                                              TraceSpec::point_mass(sys->engine(), 0.0), 3.0, 1000);
  CHECK(values(c6.primes) == std::vector<std::uint64_t>{2, 3});
  CHECK(lambda_weight(c6, sys->element(4)) == Complex(0.0));
  CHECK(lambda_weight(c6, sys->element(6)).real() == doctest::Approx(6.0 * std::pow(6.0, -3.0)));
}

TEST_CASE("inclusion-exclusion") {
  const auto sys = make_affine_toeplitz();
  const auto pm = TraceSpec::point_mass(sys->engine(), 0.0);
  const auto c6 = make_reconstruction_context(sys, Monomial::toeplitz(6, 0), pm, 3.0, 1000);
  const auto c30 = make_reconstruction_context(sys, Monomial::toeplitz(30, 0), pm, 3.0, 1000);
  CHECK(values(c30.primes) == std::vector<std::uint64_t>{2, 3, 5});
  CHECK(c30.closure.size() == 7);
  CHECK(check_inclusion_exclusion(c6).pass);
  CHECK(check_inclusion_exclusion(c30).pass);
}

TEST_CASE("reconstruction recovers tau") {
  const auto sys = make_affine_toeplitz();
  NtAlgebra alg(sys);
  for (double theta : {0.0, 0.4}) {
    const auto tau = TraceSpec::point_mass(sys->engine(), theta);
    KmsEvaluator ev(alg, default_parameters(*sys, 4.0, 10000, tau));
    for (auto a : {Monomial::toeplitz(2, 0), Monomial::toeplitz(0, 6), Monomial::toeplitz(3, 3),
                   Monomial::toeplitz(1, 0)}) {
      const auto ctx = make_reconstruction_context(sys, a, tau, 4.0, 10000);
      const auto res = reconstruct_trace(ctx, ev);
      REQUIRE(res.applicable);
      CHECK(std::abs(res.value - tau.moment(a)) <= res.tail + 1e-9);
    }
  }
  const auto haar = TraceSpec::haar(sys->engine());
  KmsEvaluator ev(alg, default_parameters(*sys, 4.0, 10000, haar));
  const auto res = reconstruct_trace(make_reconstruction_context(sys, Monomial::toeplitz(1, 0), haar, 4.0, 10000), ev);
  CHECK(std::abs(res.value) < 1e-12);
  CHECK(check_reconstruction(ev, {Monomial::toeplitz(2, 0), Monomial::toeplitz(4, 1)}).pass);
}

TEST_CASE("reconstruction on cuntz") {
  const auto sys = make_cuntz(2);
  NtAlgebra alg(sys);
  KmsEvaluator ev(alg, default_parameters(*sys, 2.5, 48, TraceSpec::identity()));
  const auto ctx = make_reconstruction_context(sys, Monomial::unit(sys->engine()), TraceSpec::identity(), 2.5, 48);
  const auto res = reconstruct_trace(ctx, ev);
  REQUIRE(res.applicable);
  CHECK(res.value.real() == doctest::Approx(1.0).epsilon(1e-9));
}

}
