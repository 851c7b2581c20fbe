#include "ntkms/suites.hpp"

#include <algorithm>
#include <cstdlib>

#include "ntkms/builtin_systems.hpp"
#include "ntkms/errors.hpp"
#include "ntkms/fock_oracle.hpp"
#include "ntkms/kms_states.hpp"

namespace ntkms {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"structure", "kms",         "trace",
                                                 "ground",    "reconstruct", "euler"};
  return names;
}

std::vector<Monomial> reconstruction_monomials(EngineSpec engine) {
  std::vector<Monomial> out;
  switch (engine.kind) {
    case EngineKind::Toeplitz:
      for (std::int64_t m = 0; m <= 12; ++m) {
        for (std::int64_t n = 0; n <= 12; ++n) out.push_back(Monomial::toeplitz(m, n));
      }
      break;
    case EngineKind::Laurent: {
      const std::int64_t r = engine.dim == 1 ? 12 : 3;
      std::array<std::int64_t, kMaxLaurentDim> g{};
      auto rec = [&](auto&& self, int axis) -> void {
        if (axis == engine.dim) {
          out.push_back(Monomial::laurent(std::span(g.data(), engine.dim)));
          return;
        }
        for (std::int64_t v = -r; v <= r; ++v) {
          g[axis] = v;
          self(self, axis + 1);
        }
      };
      rec(rec, 0);
      break;
    }
    case EngineKind::Scalar:
      out.push_back(Monomial::unit(engine));
      break;
  }
  return out;
}

std::vector<NTElement> limit_elements(const NtAlgebra& alg) {
  const auto& sys = alg.system();
  const auto small = enumerate(sys.semigroup(), 4);
  const auto first =
      *std::find_if(small.begin(), small.end(), [](SemigroupElement s) { return !is_identity(s); });
  std::vector<NTElement> out;
  out.push_back(alg.unit());
  for (const auto& g : sys.generators()) {
    if (out.size() >= 3) break;
    out.push_back(alg.i_e(CoefficientElement(g)));
  }
  out.push_back(alg.alpha(first, alg.unit()));
  out.push_back(alg.multiply(alg.i_basis(first, 0), alg.adjoint(alg.i_basis(first, 0))));
  Sampler sampler(alg, 20, 4);
  while (out.size() < 10) out.push_back(sampler.core_term());
  return out;
}

std::uint64_t fock_bound(const ProductSystem& sys) {
  std::uint64_t n = 0;
  std::size_t dim = 0;
  for (std::uint64_t m = 0; m <= 5; ++m) {
    dim += sys.basis_count(sys.element(sys.semigroup() == SemigroupKind::NatAdd ? m : m + 1));
    if (dim > FockOracle::kMaxDimension) break;
    n = m;
  }
  return sys.semigroup() == SemigroupKind::NatAdd ? n : n + 1;
}

namespace {

struct Context {
  SystemPtr system;
  NtAlgebra algebra;
  TraceSpec tau;
  std::uint64_t bound;
};

std::vector<CheckReport> structure_suite(const Context& c, const RunConfig& cfg) {
  const auto& sys = *c.system;
  const bool add = sys.semigroup() == SemigroupKind::NatAdd;
  auto out = check_structure(sys, enumerate(sys.semigroup(), add ? 6 : 12));
  out.push_back(check_alpha_lattice(c.algebra, add ? 4 : 6));
  out.push_back(check_commutation(c.algebra, 6));
  if (sys.engine().kind == EngineKind::Scalar) {
    FockOracle oracle(c.algebra, fock_bound(sys));
    out.push_back(check_fock_multiplicative(oracle, cfg.seed, std::max<std::uint64_t>(cfg.samples / 2, 1)));
    out.push_back(check_nica_covariance(oracle, add ? 2 : 4));
    if (c.tau.tracial()) {
      KmsEvaluator small(c.algebra, default_parameters(sys, cfg.beta, oracle.truncation().bound(), c.tau));
      out.push_back(check_oracle_state(oracle, small, cfg.seed, std::max<std::uint64_t>(cfg.samples / 2, 1)));
    }
  }
  return out;
}

std::vector<CheckReport> reconstruct_suite(const Context& c, const KmsEvaluator& ev) {
  const auto monomials = reconstruction_monomials(c.system->engine());
  std::vector<CheckReport> out{check_reconstruction(ev, monomials)};
  std::vector<CheckReport> parts;
  for (const auto& a : monomials) {
    const auto ctx = make_reconstruction_context(c.system, a, c.tau, ev.beta(), c.bound);
    if (ctx.full_support || ctx.primes.empty()) continue;
    parts.push_back(check_inclusion_exclusion(ctx));
  }
  auto merged = merge_reports("inclusion-exclusion", parts);
  merged.note += " trace=" + c.tau.label();
  out.push_back(merged);
  return out;
}

}  // namespace

std::vector<CheckReport> run_suites(const RunConfig& cfg, const SuiteOptions& opt) {
  const auto& names = suite_names();
  if (opt.suite != "all" && std::find(names.begin(), names.end(), opt.suite) == names.end()) {
    throw ConstructionError("unknown suite '" + opt.suite + "'");
  }
  auto wants = [&](const std::string& s) { return opt.suite == "all" || opt.suite == s; };

  SystemPtr sys = make_system(cfg.system);
  if (opt.corrupt) {
    const bool add = sys->semigroup() == SemigroupKind::NatAdd;
    sys = make_corrupted(sys, sys->element(add ? 1 : 2), sys->element(add ? 1 : 3), 0, 1);
  }
  Context c{sys, NtAlgebra(sys, cfg.budget), build_trace(cfg, sys->engine()),
            resolved_bound(cfg, sys->semigroup())};

  std::vector<CheckReport> out;
  auto append = [&](std::vector<CheckReport> more) {
    out.insert(out.end(), more.begin(), more.end());
  };
  if (wants("structure")) append(structure_suite(c, cfg));

  const bool needs_kms = wants("kms") || wants("trace") || wants("reconstruct");
  if (needs_kms && !c.tau.tracial() && opt.suite != "all") {
    throw DomainError("suite '" + opt.suite + "' needs a tracial state; '" + c.tau.label() +
                      "' is only usable for ground states");
  }
  if (needs_kms && c.tau.tracial()) {
    KmsEvaluator ev(c.algebra, default_parameters(*sys, cfg.beta, c.bound, c.tau));
    if (wants("kms")) {
      out.push_back(check_kms(ev, cfg.seed, cfg.samples));
      out.push_back(check_scaling(ev, 6));
    }
    if (wants("trace")) out.push_back(check_core_trace(ev, cfg.seed, cfg.samples));
    if (wants("reconstruct")) append(reconstruct_suite(c, ev));
  }
  if (wants("ground")) {
    out.push_back(check_ground(c.algebra, c.tau, cfg.seed, std::max<std::uint64_t>(cfg.samples / 4, 1)));
    if (c.tau.tracial()) {
      out.push_back(check_kms_limit(c.algebra, c.tau, limit_elements(c.algebra), 20.0, c.bound, 1e-4));
    }
  }
  if (wants("euler") && (opt.suite == "euler" || cfg.beta > 2.0)) {
    out.push_back(check_euler(cfg.beta, opt.primes, opt.sum_bound));
  }
  return out;
}

}  // namespace ntkms
