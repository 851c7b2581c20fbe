// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ntkms/builtin_systems.hpp"
#include "ntkms/fock_oracle.hpp"
#include "ntkms/kms_states.hpp"
#include "ntkms/suites.hpp"
#include "ntkms/verify.hpp"

using namespace ntkms;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Folds a report into the outcome, keeping the worst deviation seen.
struct Tally {
  bool pass = true;
  double worst = 0.0;
  double worst_tol = 0.0;
  std::size_t samples = 0;
  std::string witness;

  void add(const CheckReport& r) {
    samples += r.samples;
    if (r.max_deviation >= worst) {
      worst = r.max_deviation;
      worst_tol = r.tolerance;
    }
    if (!r.pass && pass) witness = r.name + ": " + r.witness;
    pass = pass && r.pass;
  }
  void add(bool ok, double dev, double tol, const std::function<std::string()>& w) {
    ++samples;
    if (dev >= worst) {
      worst = dev;
      worst_tol = tol;
    }
    if (!ok && pass) witness = w();
    pass = pass && ok;
  }
  Outcome outcome(const std::string& extra = "") const {
    char buf[160];
    std::snprintf(buf, sizeof buf, "samples=%zu max_dev=%.3g tol=%.3g", samples, worst, worst_tol);
    std::string d = buf;
    if (!extra.empty()) d += " " + extra;
    if (!witness.empty()) d += " witness: " + witness;
    return {pass, d};
  }
};

TraceSpec trace_for(const ProductSystem& sys) {
  return sys.engine().kind == EngineKind::Scalar ? TraceSpec::identity() : TraceSpec::haar(sys.engine());
}

std::string seconds_since(std::chrono::steady_clock::time_point t0) {
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

Outcome structural() {
  Tally t;
  std::string times;
  const std::vector<std::pair<SystemPtr, std::uint64_t>> cases = {
      {make_affine_toeplitz(), 12}, {make_additive_toeplitz(), 12}, {make_cuntz(2), 6},
      {make_lattice_dilation(1, "diagonal"), 12}};
  for (const auto& [sys, bound] : cases) {
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& r : check_structure(*sys, enumerate(sys->semigroup(), bound))) t.add(r);
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    t.add(sec < 30.0, 0.0, 0.0, [&] { return sys->name() + " took " + std::to_string(sec) + "s"; });
    times += sys->name() + "=" + seconds_since(t0) + " ";
  }
  return t.outcome(times);
}

Outcome closed_form_values() {
  Tally t;
  const auto sys = make_affine_toeplitz();
  NtAlgebra alg(sys);
  for (double beta : {3.0, 4.0}) {
    KmsEvaluator ev(alg, default_parameters(*sys, beta, 10000, TraceSpec::haar(sys->engine())));
    for (std::uint64_t r : {2, 3, 5}) {
      const auto s = sys->element(r);
      for (std::uint64_t n = 0; n < r; ++n) {
        for (std::uint64_t m = 0; m < r; ++m) {
          const auto v = ev.kms_state(alg.multiply(alg.i_basis(s, n), alg.adjoint(alg.i_basis(s, m))));
          const double expected = n == m ? std::pow(static_cast<double>(r), -beta) : 0.0;
          const double dev = std::abs(v.value - expected);
          t.add(dev <= v.tail && v.tail <= 1e-3, dev, v.tail, [&] {
            return "r=" + std::to_string(r) + " n=" + std::to_string(n) + " m=" + std::to_string(m) +
                   " beta=" + std::to_string(beta) + " value=" + format_complex(v.value);
          });
        }
      }
      const auto a = ev.kms_state(alg.alpha(s, alg.unit()));
      const double dev = std::abs(a.value - std::pow(static_cast<double>(r), 1.0 - beta));
      t.add(dev <= a.tail && a.tail <= 1e-3, dev, a.tail,
            [&] { return "alpha_" + std::to_string(r) + "(1) = " + format_complex(a.value); });
    }
  }
  return t.outcome();
}

struct Instance {
  SystemPtr sys;
  double beta;
  TraceSpec tau;
  std::uint64_t bound;
};

std::vector<Instance> kms_instances() {
  std::vector<Instance> out;
  for (const auto& sys : {make_affine_toeplitz(), make_additive_toeplitz()}) {
    for (double beta : {3.0, 4.0}) {
      out.push_back({sys, beta, TraceSpec::haar(sys->engine()), 10000});
      out.push_back({sys, beta, TraceSpec::point_mass(sys->engine(), 0.0), 10000});
    }
  }
  const auto cuntz = make_cuntz(2);
  // beta = 2 is above the critical exponent 1 of cuntz(2)
  for (double beta : {2.0, 3.0}) out.push_back({cuntz, beta, TraceSpec::identity(), 48});
  return out;
}

Outcome normalization() {
  Tally t;
  for (const auto& inst : kms_instances()) {
    NtAlgebra alg(inst.sys);
    KmsEvaluator ev(alg, default_parameters(*inst.sys, inst.beta, inst.bound, inst.tau));
    const auto v = ev.kms_state(alg.unit()).value;
    t.add(v == Complex(1.0), std::abs(v - 1.0), 0.0,
          [&] { return inst.sys->name() + " " + inst.tau.label() + ": " + format_complex(v); });
  }
  return t.outcome();
}

Outcome kms_condition(bool core) {
  Tally t;
  const auto t0 = std::chrono::steady_clock::now();
  std::uint64_t seed = core ? 500 : 400;
  for (const auto& inst : kms_instances()) {
    NtAlgebra alg(inst.sys);
    KmsEvaluator ev(alg, default_parameters(*inst.sys, inst.beta, inst.bound, inst.tau));
    t.add(core ? check_core_trace(ev, ++seed, 200, 4) : check_kms(ev, ++seed, 200, 4));
  }
  return t.outcome("time=" + seconds_since(t0));
}

Outcome scaling_identity() {
  Tally t;
  for (const auto& inst : kms_instances()) {
    NtAlgebra alg(inst.sys);
    KmsEvaluator ev(alg, default_parameters(*inst.sys, inst.beta, inst.bound, inst.tau));
    t.add(check_scaling(ev, inst.sys->semigroup() == SemigroupKind::NatAdd ? 4 : 6));
  }
  return t.outcome();
}

Outcome ground_states() {
  Tally t;
  for (const auto& sys : {make_affine_toeplitz(), make_additive_toeplitz(), make_cuntz(2)}) {
    NtAlgebra alg(sys);
    t.add(check_ground(alg, trace_for(*sys), 700, 100, 4));
    if (sys->engine().kind == EngineKind::Toeplitz) t.add(check_ground(alg, TraceSpec::vacuum(), 701, 100, 4));
  }
  return t.outcome();
}

Outcome euler() {
  Tally t;
  const double prod = euler_product(3.0, 10000);
  double sum = 0.0;
  for (std::uint64_t s = 1000000; s >= 1; --s) sum += 1.0 / (static_cast<double>(s) * static_cast<double>(s));
  const double dev = std::abs(prod - sum);
  t.add(dev <= 1e-3 && std::abs(prod - 1.6449) < 5e-3 && std::abs(sum - 1.6449) < 5e-3, dev, 1e-3,
        [&] { return "product " + std::to_string(prod) + " sum " + std::to_string(sum); });
  char buf[96];
  std::snprintf(buf, sizeof buf, "product=%.7f sum=%.7f", prod, sum);
  return t.outcome(buf);
}

Outcome inclusion_exclusion() {
  Tally t;
  std::mt19937_64 rng(900);
  const std::vector<std::uint64_t> pool = {2, 3, 5, 7};
  const auto toeplitz = make_affine_toeplitz();
  const auto laurent = make_additive_toeplitz();
  std::size_t sizes[4] = {0, 0, 0, 0};
  for (int i = 0; i < 50; ++i) {
    // random nonempty subset of at most three primes, and g divisible only by them
    std::vector<std::uint64_t> chosen;
    while (chosen.empty() || chosen.size() > 3) {
      chosen.clear();
      for (auto p : pool) {
        if (rng() % 2) chosen.push_back(p);
      }
    }
    std::int64_t g = 1;
    for (auto p : chosen) {
      g *= static_cast<std::int64_t>(p);
      if (rng() % 3 == 0) g *= static_cast<std::int64_t>(p);
    }
    const bool use_toeplitz = i % 2 == 0;
    const auto& sys = use_toeplitz ? toeplitz : laurent;
    const double theta = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
    const auto tau = rng() % 2 ? TraceSpec::haar(sys->engine()) : TraceSpec::point_mass(sys->engine(), theta);
    Monomial a = Monomial::unit(sys->engine());
    if (use_toeplitz) {
      const auto n = static_cast<std::int64_t>(rng() % 4);
      a = rng() % 2 ? Monomial::toeplitz(n + g, n) : Monomial::toeplitz(n, n + g);
    } else {
      const std::int64_t exps[1] = {rng() % 2 ? g : -g};
      a = Monomial::laurent(std::span<const std::int64_t>(exps, 1));
    }
    const auto ctx = make_reconstruction_context(sys, a, tau, 3.0 + (rng() % 2), 10000);
    t.add(ctx.primes.size() == chosen.size(), 0.0, 0.0,
          [&] { return "F' size " + std::to_string(ctx.primes.size()) + " for " + to_string(a); });
    ++sizes[std::min<std::size_t>(ctx.primes.size(), 3)];
    t.add(check_inclusion_exclusion(ctx));
  }
  return t.outcome("sizes(1,2,3)=" + std::to_string(sizes[1]) + "," + std::to_string(sizes[2]) + "," +
                   std::to_string(sizes[3]));
}

Outcome reconstruction() {
  Tally t;
  const auto t0 = std::chrono::steady_clock::now();
  const auto sys = make_affine_toeplitz();
  NtAlgebra alg(sys);
  std::vector<Monomial> monomials;
  for (std::int64_t m = 0; m <= 12; ++m) {
    for (std::int64_t n = 0; n <= 12; ++n) monomials.push_back(Monomial::toeplitz(m, n));
  }
  for (const auto& tau : {TraceSpec::haar(sys->engine()), TraceSpec::point_mass(sys->engine(), 0.0)}) {
    KmsEvaluator ev(alg, default_parameters(*sys, 4.0, 10000, tau));
    for (const auto& a : monomials) {
      const auto res = reconstruct_trace(make_reconstruction_context(sys, a, tau, 4.0, 10000), ev);
      const double dev = std::abs(res.value - tau.moment(a));
      t.add(res.applicable && dev <= 1e-2, dev, 1e-2,
            [&] { return tau.label() + " " + to_string(a) + ": " + (res.applicable ? format_complex(res.value) : res.reason); });
    }
  }
  return t.outcome("time=" + seconds_since(t0));
}

Outcome oracle_equivalence() {
  Tally t;
  const auto sys = make_cuntz(2);
  NtAlgebra alg(sys);
  FockOracle fock(alg, 5);
  KmsEvaluator ev(alg, default_parameters(*sys, 3.0, 5, TraceSpec::identity()));
  auto mult = check_fock_multiplicative(fock, 1100, 100, 2);
  auto state = check_oracle_state(fock, ev, 1101, 100, 2);
  for (const auto& r : {mult, state}) {
    t.add(r);
    t.add(r.largest_deviation <= 1e-12, r.largest_deviation, 1e-12, [&] { return r.name + " " + r.witness; });
  }
  return t.outcome("dim=" + std::to_string(fock.dimension()));
}

Outcome kms_limit() {
  Tally t;
  for (const auto& sys : {make_affine_toeplitz(), make_cuntz(2)}) {
    NtAlgebra alg(sys);
    const auto tau = trace_for(*sys);
    const std::uint64_t bound = sys->semigroup() == SemigroupKind::NatAdd ? 48 : 10000;
    t.add(check_kms_limit(alg, tau, limit_elements(alg), 20.0, bound, 1e-4));
  }
  return t.outcome();
}

Outcome commutation() {
  Tally t;
  const auto sys = make_affine_toeplitz();
  NtAlgebra alg(sys);
  for (const auto& a : {Monomial::toeplitz(1, 0), Monomial::toeplitz(0, 1)}) {
    for (std::uint64_t s = 1; s <= 6; ++s) {
      const auto c = alg.commutator(alg.i_e(CoefficientElement(a)), alg.alpha(sys->element(s), alg.unit()));
      t.add(c.is_zero(), static_cast<double>(c.size()), 0.0, [&] { return to_string(c); });
    }
  }
  return t.outcome();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"structural validation", structural},
      {"closed-form state values", closed_form_values},
      {"normalization", normalization},
      {"KMS condition", [] { return kms_condition(false); }},
      {"trace on the core", [] { return kms_condition(true); }},
      {"scaling identity", scaling_identity},
      {"ground states", ground_states},
      {"Euler product", euler},
      {"inclusion-exclusion", inclusion_exclusion},
      {"trace reconstruction", reconstruction},
      {"Fock oracle equivalence", oracle_equivalence},
      {"KMS_infinity limit", kms_limit},
      {"commutation", commutation},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2d %-26s %s\n", o.pass ? "PASS" : "FAIL", index, name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
