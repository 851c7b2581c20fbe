#include "ntkms/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "ntkms/errors.hpp"

namespace ntkms {

std::string to_json(const CheckReport& report) {
  nlohmann::ordered_json j;
  j["check"] = report.name;
  j["samples"] = report.samples;
  j["max_deviation"] = report.max_deviation;
  j["tolerance"] = report.tolerance;
  j["largest_deviation"] = report.largest_deviation;
  j["pass"] = report.pass;
  j["witness"] = report.witness;
  j["seed"] = report.seed;
  if (!report.note.empty()) j["note"] = report.note;
  return j.dump();
}

CheckReport merge_reports(std::string name, const std::vector<CheckReport>& parts) {
  CheckReport out;
  out.name = std::move(name);
  double slack = -std::numeric_limits<double>::infinity();
  for (const auto& part : parts) {
    out.samples += part.samples;
    out.largest_deviation = std::max(out.largest_deviation, part.largest_deviation);
    if (out.seed == 0) out.seed = part.seed;
    if (part.samples > 0 && part.max_deviation - part.tolerance > slack) {
      slack = part.max_deviation - part.tolerance;
      out.max_deviation = part.max_deviation;
      out.tolerance = part.tolerance;
    }
    if (!part.pass && out.pass) {
      out.pass = false;
      out.witness = part.witness;
    }
  }
  out.note = "parts=" + std::to_string(parts.size());
  return out;
}

ReportBuilder::ReportBuilder(std::string name, std::uint64_t seed) {
  report_.name = std::move(name);
  report_.seed = seed;
}

void ReportBuilder::sample(double deviation, double tolerance,
                           const std::function<std::string()>& witness) {
  ++report_.samples;
  report_.largest_deviation = std::max(report_.largest_deviation, deviation);
  const double slack = deviation - tolerance;
  if (slack > slack_ || report_.samples == 1) {
    slack_ = slack;
    report_.max_deviation = deviation;
    report_.tolerance = tolerance;
  }
  if (!(deviation <= tolerance) && report_.pass) {
    report_.pass = false;
    report_.witness = witness();
  }
}

Sampler::Sampler(const NtAlgebra& algebra, std::uint64_t seed, std::uint64_t max_fiber)
    : algebra_(algebra), rng_(seed) {
  fibers_ = enumerate(algebra.system().semigroup(), max_fiber).elements();
}

std::uint64_t Sampler::uniform(std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
}

SemigroupElement Sampler::fiber() { return fibers_[uniform(0, fibers_.size() - 1)]; }

std::uint64_t Sampler::index(SemigroupElement s) {
  return uniform(0, algebra_.system().basis_count(s) - 1);
}

Monomial Sampler::coefficient_monomial() {
  const auto engine = algebra_.engine();
  switch (engine.kind) {
    case EngineKind::Toeplitz:
      return Monomial::toeplitz(static_cast<std::int64_t>(uniform(0, 3)),
                                static_cast<std::int64_t>(uniform(0, 3)));
    case EngineKind::Laurent: {
      std::array<std::int64_t, kMaxLaurentDim> g{};
      for (int i = 0; i < engine.dim; ++i) g[i] = static_cast<std::int64_t>(uniform(0, 6)) - 3;
      return Monomial::laurent(std::span(g.data(), engine.dim));
    }
    case EngineKind::Scalar:
      break;
  }
  return Monomial::unit(engine);
}

CoefficientElement Sampler::coefficient() {
  CoefficientElement out(algebra_.engine());
  while (out.is_zero()) {
    const auto count = uniform(1, 2);
    for (std::uint64_t i = 0; i < count; ++i) {
      Complex c;
      while (c == Complex{}) {
        c = Complex(static_cast<double>(uniform(0, 4)) - 2.0, static_cast<double>(uniform(0, 4)) - 2.0);
      }
      out.add_term(coefficient_monomial(), c);
    }
  }
  return out;
}

NTElement Sampler::term() {
  const auto s = fiber();
  const auto r = fiber();
  const auto j = index(s);
  const auto k = index(r);
  return algebra_.term(s, j, coefficient(), r, k);
}

NTElement Sampler::core_term() {
  const auto s = fiber();
  const auto j = index(s);
  const auto k = index(s);
  return algebra_.term(s, j, coefficient(), s, k);
}

namespace {

std::string describe(const StateValue& v) {
  return format_complex(v.value) + " (tail " + std::to_string(v.tail) + ")";
}

const TermKey& only_key(const NTElement& x) { return x.terms().begin()->first; }

}  // namespace

CheckReport check_kms(const KmsEvaluator& ev, std::uint64_t seed, std::size_t samples,
                      std::uint64_t max_fiber) {
  const auto& alg = ev.algebra();
  Sampler sampler(alg, seed, max_fiber);
  ReportBuilder report("kms-condition", seed);
  std::size_t nontrivial = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const auto y1 = sampler.term();
    NTElement y2 = sampler.term();
    if (i % 2 == 0) {
      const auto& k1 = only_key(y1);
      y2 = alg.term(k1.r, k1.k, adjoint(y1.terms().begin()->second), k1.s, k1.j);
    }
    const auto lhs = ev.kms_state(alg.multiply(y1, y2));
    const auto rhs =
        ev.kms_state(alg.multiply(y2, alg.sigma_i_beta(ev.beta(), y1, ev.params().scaling)));
    if (lhs.value != Complex{}) ++nontrivial;
    report.sample(std::abs(lhs.value - rhs.value), lhs.tail + rhs.tail + 1e-9, [&] {
      return "y1 = " + to_string(y1) + "; y2 = " + to_string(y2) + "; omega(y1 y2) = " +
             describe(lhs) + ", omega(y2 sigma(y1)) = " + describe(rhs);
    });
  }
  report.note("beta=" + std::to_string(ev.beta()) + " trace=" + ev.params().tau.label() +
              " nonzero_samples=" + std::to_string(nontrivial));
  return report.finish();
}

CheckReport check_core_trace(const KmsEvaluator& ev, std::uint64_t seed, std::size_t samples,
                             std::uint64_t max_fiber) {
  const auto& alg = ev.algebra();
  const auto& sys = alg.system();
  Sampler sampler(alg, seed, max_fiber);
  ReportBuilder report("core-trace", seed);
  std::array<std::size_t, 4> hits{};
  std::size_t coprime = 0;
  std::size_t nontrivial = 0;
  const bool force_coprime = sys.semigroup() == SemigroupKind::NatMult && max_fiber >= 3;

  auto component = [&](std::uint64_t index, SemigroupElement fiber, SemigroupElement t) {
    return sys.split_index(t, quotient(fiber, t), index).first;
  };

  for (std::size_t i = 0; i < samples; ++i) {
    const bool forced = force_coprime && i % 5 == 4;
    const int target = static_cast<int>(i % 4);
    SemigroupElement s, r;
    std::uint64_t j = 0, k = 0, m = 0, n = 0;
    int which = 0;
    for (int attempt = 0; attempt < 256; ++attempt) {
      s = forced ? sys.element(2) : sampler.fiber();
      r = forced ? sys.element(3) : sampler.fiber();
      j = sampler.index(s);
      k = sampler.index(s);
      m = sampler.index(r);
      n = sampler.index(r);
      const auto t = glb(s, r);
      which = (component(k, s, t) == component(m, r, t) ? 0 : 2) +
              (component(n, r, t) == component(j, s, t) ? 0 : 1);
      if (forced || which == target) break;
    }
    ++hits[which];
    if (is_identity(glb(s, r))) ++coprime;
    // a b* with b = a on every other sample, so that tau sees a unit component
    auto positive_ish = [&] {
      const auto a = sampler.coefficient();
      return mul(a, adjoint(sampler.uniform(0, 1) == 0 ? a : sampler.coefficient()));
    };
    const auto y1 = alg.term(s, j, positive_ish(), s, k);
    const auto y2 = alg.term(r, m, positive_ish(), r, n);
    const auto lhs = ev.omega_tau(alg.multiply(y1, y2));
    const auto rhs = ev.omega_tau(alg.multiply(y2, y1));
    if (lhs.value != Complex{}) ++nontrivial;
    report.sample(std::abs(lhs.value - rhs.value), lhs.tail + rhs.tail + 1e-9, [&] {
      return "case " + std::to_string(which + 1) + ": y1 = " + to_string(y1) + "; y2 = " +
             to_string(y2) + "; omega(y1 y2) = " + describe(lhs) + ", omega(y2 y1) = " +
             describe(rhs);
    });
  }
  for (int c = 0; c < 4; ++c) {
    report.sample(hits[c] > 0 ? 0.0 : 1.0, 0.0,
                  [&] { return "index case " + std::to_string(c + 1) + " never sampled"; });
  }
  report.note("cases=" + std::to_string(hits[0]) + "/" + std::to_string(hits[1]) + "/" +
              std::to_string(hits[2]) + "/" + std::to_string(hits[3]) +
              " coprime_pairs=" + std::to_string(coprime) +
              " nonzero_samples=" + std::to_string(nontrivial) + " beta=" + std::to_string(ev.beta()) +
              " trace=" + ev.params().tau.label());
  return report.finish();
}

CheckReport check_ground(const NtAlgebra& alg, const TraceSpec& tau, std::uint64_t seed,
                         std::size_t samples, std::uint64_t max_fiber) {
  const auto& sys = alg.system();
  const auto e = sys.unit_fiber();
  const auto scaling = sys.default_scaling();
  Sampler sampler(alg, seed, max_fiber);
  ReportBuilder report("ground-state", seed);

  auto fiber_above_e = [&] {
    auto s = sampler.fiber();
    while (s == e) s = sampler.fiber();
    return s;
  };

  for (std::size_t i = 0; i < samples; ++i) {
    {
      const auto s = fiber_above_e();
      const auto x = alg.term(s, sampler.index(s), sampler.coefficient(), s, sampler.index(s));
      const auto v = ground_state(alg, x, tau);
      report.sample(std::abs(v), 0.0, [&] { return "B_s element " + to_string(x); });
    }
    {
      auto x = sampler.term();
      while (only_key(x).diagonal()) x = sampler.term();
      const auto v = ground_state(alg, x, tau);
      report.sample(std::abs(v), 0.0, [&] { return "mixed degree " + to_string(x); });
    }
    {
      const auto a = sampler.coefficient();
      const auto b = sampler.coefficient();
      const auto x = alg.multiply(alg.i_e(a), alg.adjoint(alg.i_e(b)));
      const auto v = ground_state(alg, x, tau);
      const auto want = tau.evaluate(mul(a, adjoint(b)));
      report.sample(std::abs(v - want), 0.0, [&] {
        return "a = " + to_string(a) + ", b = " + to_string(b) + ": " + format_complex(v) +
               " vs tau(ab*) = " + format_complex(want);
      });
    }
    {
      // omega(y sigma_z(y')) = sum over terms t of y' of (N(g)/N(h))^{iz} omega(y t),
      // bounded on the upper half-plane iff N(g) >= N(h) whenever omega(y t) != 0.
      const auto y = sampler.term();
      const auto yp = sampler.term() + sampler.term();
      double violations = 0.0;
      for (const auto& [key, c] : yp.terms()) {
        NTElement t(alg.engine());
        t.add_term(key, c);
        const auto v = ground_state(alg, alg.multiply(y, t), tau);
        if (v != Complex{} && scaling(key.s) < scaling(key.r)) violations += 1.0;
      }
      report.sample(violations, 0.0, [&] {
        return "unbounded growth for y = " + to_string(y) + ", y' = " + to_string(yp);
      });
    }
  }
  report.note("trace=" + tau.label());
  return report.finish();
}

CheckReport check_scaling(const KmsEvaluator& ev, std::uint64_t max_s) {
  const auto& alg = ev.algebra();
  const auto& sys = alg.system();
  ReportBuilder report("scaling-identity", 0);
  auto gens = sys.generators();
  const auto unit = Monomial::unit(sys.engine());
  if (std::find(gens.begin(), gens.end(), unit) == gens.end()) gens.push_back(unit);
  std::size_t exact_zeros = 0;
  for (const auto& a : gens) {
    const CoefficientElement ca(a);
    const auto base = ev.omega_tau(alg.i_e(ca));
    for (auto s : enumerate(sys.semigroup(), max_s)) {
      const double w = ev.params().scaling.weight(s, ev.beta());
      const auto n = sys.basis_count(s);
      for (std::uint64_t j = 0; j < n; ++j) {
        for (std::uint64_t l = 0; l < n; ++l) {
          const auto v = ev.omega_tau(alg.term(s, j, ca, s, l));
          if (j != l) {
            if (v.value == Complex{}) ++exact_zeros;
            report.sample(std::abs(v.value), 0.0, [&] {
              return "s=" + to_string(s) + " j=" + std::to_string(j) + " l=" + std::to_string(l) +
                     " a=" + to_string(a) + ": " + describe(v) + " (expected exactly 0)";
            });
            continue;
          }
          const Complex want = w * base.value;
          report.sample(std::abs(v.value - want), v.tail + w * base.tail + 1e-9, [&] {
            return "s=" + to_string(s) + " j=" + std::to_string(j) + " a=" + to_string(a) + ": " +
                   describe(v) + " vs N(s)^-beta omega(i_e(a)) = " + format_complex(want);
          });
        }
      }
    }
  }
  report.note("exact_off_diagonal_zeros=" + std::to_string(exact_zeros));
  return report.finish();
}

CheckReport check_alpha_lattice(const NtAlgebra& alg, std::uint64_t max_s) {
  const auto& sys = alg.system();
  ReportBuilder report("alpha-lattice", 0);
  const auto fibers = enumerate(sys.semigroup(), max_s).elements();
  std::map<SemigroupElement, NTElement> alpha1;
  auto alpha_unit = [&](SemigroupElement s) -> const NTElement& {
    auto it = alpha1.find(s);
    if (it == alpha1.end()) it = alpha1.emplace(s, alg.alpha(s, alg.unit())).first;
    return it->second;
  };
  for (auto s : fibers) {
    for (auto r : fibers) {
      const auto prod = alg.multiply(alpha_unit(s), alpha_unit(r));
      report.sample(prod == alpha_unit(lub(s, r)) ? 0.0 : 1.0, 0.0, [&] {
        return "alpha_" + to_string(s) + "(1) alpha_" + to_string(r) + "(1) != alpha_" +
               to_string(lub(s, r)) + "(1)";
      });
      const auto nested = alg.alpha(s, alpha_unit(r));
      report.sample(nested == alpha_unit(multiply(s, r)) ? 0.0 : 1.0, 0.0, [&] {
        return "alpha_" + to_string(s) + "(alpha_" + to_string(r) + "(1)) != alpha_" +
               to_string(multiply(s, r)) + "(1)";
      });
    }
  }
  return report.finish();
}

CheckReport check_commutation(const NtAlgebra& alg, std::uint64_t max_s) {
  const auto& sys = alg.system();
  ReportBuilder report("commutation", 0);
  for (const auto& a : sys.generators()) {
    for (auto s : enumerate(sys.semigroup(), max_s)) {
      const auto c = alg.commutator(alg.i_e(CoefficientElement(a)), alg.alpha(s, alg.unit()));
      report.sample(static_cast<double>(c.size()), 0.0, [&] {
        return "[i_e(" + to_string(a) + "), alpha_" + to_string(s) + "(1)] = " + to_string(c);
      });
    }
  }
  return report.finish();
}

CheckReport check_kms_limit(const NtAlgebra& alg, const TraceSpec& tau,
                            const std::vector<NTElement>& ys, double beta, std::uint64_t bound,
                            double tolerance) {
  KmsEvaluator ev(alg, default_parameters(alg.system(), beta, bound, tau));
  ReportBuilder report("kms-limit", 0);
  for (const auto& y : ys) {
    const auto k = ev.kms_state(y);
    const auto g = ground_state(alg, y, tau);
    report.sample(std::abs(k.value - g), tolerance, [&] {
      return to_string(y) + ": kms = " + describe(k) + ", ground = " + format_complex(g);
    });
  }
  report.note("beta=" + std::to_string(beta) + " trace=" + tau.label());
  return report.finish();
}

CheckReport check_euler(double beta, std::uint64_t primes_bound, std::uint64_t sum_bound) {
  ReportBuilder report("euler-product", 0);
  const double product = euler_product(beta, primes_bound);
  double sum = 0.0;
  for (std::uint64_t s = 1; s <= sum_bound; ++s) sum += std::pow(static_cast<double>(s), 1.0 - beta);
  // Both sides undershoot zeta(beta - 1): the product misses integers with a
  // prime factor above the bound, the sum misses integers above its bound.
  const double tol = (std::pow(static_cast<double>(primes_bound), 2.0 - beta) +
                      std::pow(static_cast<double>(sum_bound), 2.0 - beta)) /
                     (beta - 2.0);
  report.sample(std::abs(product - sum), tol, [&] {
    std::ostringstream w;
    w.precision(17);
    w << "product " << product << " vs partial sum " << sum;
    return w.str();
  });
  std::ostringstream note;
  note.precision(17);
  note << "beta=" << beta << " primes<=" << primes_bound << " sum<=" << sum_bound
       << " product=" << product << " sum=" << sum;
  report.note(note.str());
  return report.finish();
}

std::vector<CheckReport> check_structure(const ProductSystem& sys, const TruncationSet& trunc) {
  std::vector<CheckReport> out;
  const auto validation = validate(sys, trunc, sys.generators());
  for (const auto& entry : validation.entries) {
    CheckReport r;
    r.name = "structure: " + entry.check;
    r.samples = entry.cases;
    r.max_deviation = r.largest_deviation = entry.pass ? 0.0 : 1.0;
    r.pass = entry.pass;
    r.witness = entry.witness;
    r.note = sys.name() + " bound=" + std::to_string(trunc.bound());
    out.push_back(r);
  }
  const auto coprime = check_coprime_pairs(sys, trunc);
  CheckReport r;
  r.name = "structure: co-prime pairs respected";
  r.samples = coprime.pairs_checked;
  r.max_deviation = r.largest_deviation = static_cast<double>(coprime.witnesses.size());
  r.pass = coprime.holds;
  if (!coprime.witnesses.empty()) r.witness = coprime.witnesses.front();
  r.note = sys.name() + " bound=" + std::to_string(trunc.bound());
  out.push_back(r);
  return out;
}

namespace {

void build_closure(ReconstructionContext& ctx) {
  auto& primes = ctx.primes;
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  if (!ctx.full_support && primes.size() > 20) {
    throw DomainError("F_a' too large for explicit inclusion-exclusion");
  }
  ctx.closure.clear();
  // Depth-first over subsets; when the support is full, branches leaving the
  // truncation are cut since every later join only grows.
  auto dfs = [&](auto&& self, std::size_t start, SemigroupElement join, int size) -> void {
    for (std::size_t i = start; i < primes.size(); ++i) {
      const auto next = size == 0 ? primes[i] : lub(join, primes[i]);
      if (ctx.full_support && !ctx.trunc.contains(next)) {
        if (ctx.system->semigroup() == SemigroupKind::NatMult) break;
        continue;
      }
      ctx.closure.emplace_back(next, size + 1);
      self(self, i + 1, next, size + 1);
    }
  };
  dfs(dfs, 0, ctx.system->unit_fiber(), 0);
  std::sort(ctx.closure.begin(), ctx.closure.end());
}

}  // namespace

ReconstructionContext make_reconstruction_context(SystemPtr system, const Monomial& a,
                                                  TraceSpec tau, double beta,
                                                  std::uint64_t bound,
                                                  std::vector<SemigroupElement> primes) {
  const auto kind = system->semigroup();
  ReconstructionContext ctx{system,
                            beta,
                            system->default_scaling(),
                            std::move(tau),
                            a,
                            std::move(primes),
                            false,
                            {},
                            enumerate(kind, bound)};
  build_closure(ctx);
  return ctx;
}

ReconstructionContext make_reconstruction_context(SystemPtr system, const Monomial& a,
                                                  TraceSpec tau, double beta,
                                                  std::uint64_t bound) {
  const auto kind = system->semigroup();
  std::vector<SemigroupElement> primes;
  bool full = false;
  if (kind == SemigroupKind::NatAdd) {
    primes.push_back(make_element(kind, 1));
  } else {
    for (auto p : primes_up_to(bound)) {
      const auto s = make_element(kind, p);
      if (!system->fiberwise_trace_vanishes(s, a)) primes.push_back(s);
    }
    full = primes.size() > 20;
  }
  ReconstructionContext ctx{system,      beta, system->default_scaling(), std::move(tau), a,
                            std::move(primes), full, {}, enumerate(kind, bound)};
  build_closure(ctx);
  return ctx;
}

Complex lambda_weight(const ReconstructionContext& ctx, SemigroupElement s) {
  const auto& sys = *ctx.system;
  if (sys.fiberwise_trace_vanishes(s, ctx.a)) return 0.0;
  return ctx.scaling.weight(s, ctx.beta) * sys.traced_diagonal(s, ctx.a, ctx.tau);
}

std::vector<std::pair<SemigroupElement, Complex>> lambda_weights(const ReconstructionContext& ctx) {
  std::vector<std::pair<SemigroupElement, Complex>> out;
  for (const auto& [s, size] : ctx.closure) out.emplace_back(s, lambda_weight(ctx, s));
  return out;
}

CheckReport check_inclusion_exclusion(const ReconstructionContext& ctx) {
  ReportBuilder report("inclusion-exclusion", 0);
  const auto lambdas = lambda_weights(ctx);
  Complex first = 0.0;
  for (const auto& [s, l] : lambdas) first += l;
  Complex second = 0.0;
  for (const auto& [pj, size] : ctx.closure) {
    Complex inner = 0.0;
    for (const auto& [s, l] : lambdas) {
      if (leq(pj, s)) inner += l;
    }
    second += (size % 2 == 0 ? 1.0 : -1.0) * inner;
  }
  report.sample(std::abs(first + second), 1e-9, [&] {
    return "a = " + to_string(ctx.a) + ": first sum " + format_complex(first) + ", second sum " +
           format_complex(second);
  });
  report.note("a=" + to_string(ctx.a) + " |F_a'|=" + std::to_string(ctx.primes.size()) +
              " |F_a|=" + std::to_string(ctx.closure.size()) + " trace=" + ctx.tau.label());
  return report.finish();
}

namespace {

// sum over s in trunc with r <= s of values[index_of(s)], ascending
Complex sum_over_multiples(const TruncationSet& trunc, const std::vector<Complex>& values,
                           SemigroupElement r) {
  Complex total = 0.0;
  if (!trunc.contains(r)) return total;
  if (trunc.kind() == SemigroupKind::NatMult) {
    for (std::uint64_t s = r.value; s <= trunc.bound(); s += r.value) total += values[s - 1];
  } else {
    for (std::uint64_t s = r.value; s <= trunc.bound(); ++s) total += values[s];
  }
  return total;
}

std::vector<Complex> lambda_table(const ReconstructionContext& ctx) {
  std::vector<Complex> out;
  out.reserve(ctx.trunc.size());
  for (auto s : ctx.trunc) out.push_back(lambda_weight(ctx, s));
  return out;
}

}  // namespace

Complex omega_ie_alpha(const ReconstructionContext& ctx, const KmsEvaluator& ev,
                       SemigroupElement r) {
  return sum_over_multiples(ctx.trunc, lambda_table(ctx), r) / ev.zeta().value.real();
}

ReconstructionResult reconstruct_trace(const ReconstructionContext& ctx, const KmsEvaluator& ev) {
  ReconstructionResult out;
  const auto& sys = *ctx.system;
  out.minimal_elements = sys.has_minimal_elements();
  if (&ev.algebra().system() != ctx.system.get()) {
    out.reason = "evaluator belongs to a different product system";
    return out;
  }
  if (ev.beta() != ctx.beta || ev.params().trunc.bound() != ctx.trunc.bound()) {
    out.reason = "evaluator beta or truncation differs from the reconstruction context";
    return out;
  }
  if (ev.params().scaling.parameter() != sys.growth().parameter) {
    out.reason = "reconstruction requires N(s) = N_s";
    return out;
  }
  const auto lambdas = lambda_table(ctx);
  for (auto s : ctx.trunc) {
    if (is_identity(s) || lambdas[ctx.trunc.index_of(s)] == Complex{}) continue;
    if (sys.fiberwise_trace_vanishes(s, ctx.a)) continue;
    const bool covered = std::any_of(ctx.primes.begin(), ctx.primes.end(),
                                     [&](SemigroupElement p) { return leq(p, s); });
    if (!covered) {
      out.reason = "fiberwise trace of " + to_string(ctx.a) + " does not vanish at s = " +
                   to_string(s) + ", which lies above no element of F_a'";
      return out;
    }
  }
  const double zeta = ev.zeta().value.real();
  // J = {} contributes omega(i_e(a)) itself.
  Complex total = sum_over_multiples(ctx.trunc, lambdas, sys.unit_fiber()) / zeta;
  std::size_t terms = 1;
  for (const auto& [pj, size] : ctx.closure) {
    const Complex omega = sum_over_multiples(ctx.trunc, lambdas, pj) / zeta;
    total += (size % 2 == 0 ? 1.0 : -1.0) * omega;
    ++terms;
  }
  out.applicable = true;
  out.value = zeta * total;
  out.tail = static_cast<double>(terms) * ev.zeta_tail();
  return out;
}

CheckReport check_reconstruction(const KmsEvaluator& ev, const std::vector<Monomial>& monomials) {
  ReportBuilder report("trace-reconstruction", 0);
  const auto& params = ev.params();
  std::size_t not_applicable = 0;
  for (const auto& a : monomials) {
    const auto ctx = make_reconstruction_context(ev.algebra().system_ptr(), a, params.tau,
                                                 params.beta, params.trunc.bound());
    const auto res = reconstruct_trace(ctx, ev);
    if (!res.applicable) {
      ++not_applicable;
      report.sample(1.0, 0.0, [&] { return to_string(a) + ": not applicable: " + res.reason; });
      continue;
    }
    const Complex want = params.tau.moment(a);
    report.sample(std::abs(res.value - want), res.tail + 1e-9, [&] {
      return to_string(a) + ": reconstructed " + format_complex(res.value) + " vs tau(a) = " +
             format_complex(want);
    });
  }
  report.note("beta=" + std::to_string(params.beta) + " trace=" + params.tau.label() +
              " not_applicable=" + std::to_string(not_applicable) +
              (ev.algebra().system().has_minimal_elements()
                   ? " hypothesis 'no non-trivial minimal elements' does not hold for this semigroup"
                   : ""));
  return report.finish();
}

}  // namespace ntkms
