// ntkms: evaluate KMS and ground states on Nica-Toeplitz algebras, sweep beta,
// and run the verification suites.

#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ntkms/builtin_systems.hpp"
#include "ntkms/config.hpp"
#include "ntkms/dsl.hpp"
#include "ntkms/errors.hpp"
#include "ntkms/kms_states.hpp"
#include "ntkms/suites.hpp"

using namespace ntkms;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

struct Flags {
  std::string config_path;
  std::string system;
  int k = 0;
  int d = 0;
  std::string style;
  std::string trace;
  std::vector<double> theta;
  double beta = 0.0;
  std::vector<double> betas;
  std::uint64_t bound = 0;
  std::uint64_t seed = 0;
  std::string format;
  std::uint64_t budget = 0;
  std::uint64_t samples = 0;
  std::vector<std::string> observables;

  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> setters;
};

void add_common(CLI::App* app, Flags& f) {
  auto add = [&](CLI::Option* opt, std::function<void(RunConfig&)> set) {
    f.setters.emplace_back(opt, std::move(set));
  };
  app->add_option("--config", f.config_path, "JSON run configuration; flags override it");
  add(app->add_option("--system", f.system, "built-in instance (see `ntkms systems`)"),
      [&f](RunConfig& c) { c.system.name = f.system; });
  add(app->add_option("--k", f.k, "cuntz: number of generators"),
      [&f](RunConfig& c) { c.system.k = f.k; });
  add(app->add_option("--d", f.d, "lattice-dilation: dimension"),
      [&f](RunConfig& c) { c.system.d = f.d; });
  add(app->add_option("--style", f.style, "lattice-dilation: diagonal | first-axis"),
      [&f](RunConfig& c) { c.system.style = f.style; });
  add(app->add_option("--trace", f.trace, "auto | haar | point_mass | vacuum | identity"),
      [&f](RunConfig& c) { c.trace = f.trace; });
  add(app->add_option("--theta", f.theta, "point_mass angle(s)")->delimiter(','),
      [&f](RunConfig& c) { c.theta = f.theta; });
  add(app->add_option("--beta", f.beta, "inverse temperature"),
      [&f](RunConfig& c) { c.beta = f.beta; });
  add(app->add_option("-B,--bound", f.bound, "truncation bound"),
      [&f](RunConfig& c) { c.bound = f.bound; });
  add(app->add_option("--seed", f.seed, "sampler seed"), [&f](RunConfig& c) { c.seed = f.seed; });
  add(app->add_option("--format", f.format, "auto | json | csv"),
      [&f](RunConfig& c) { c.format = f.format; });
  add(app->add_option("--budget", f.budget, "term budget for symbolic products"),
      [&f](RunConfig& c) { c.budget = f.budget; });
  add(app->add_option("--samples", f.samples, "random samples per check"),
      [&f](RunConfig& c) { c.samples = f.samples; });
}

RunConfig resolve(const Flags& f) {
  RunConfig c = f.config_path.empty() ? RunConfig{} : load_config(f.config_path);
  for (const auto& [opt, set] : f.setters) {
    if (opt->count() > 0) set(c);
  }
  validate(c);
  return c;
}

std::string csv_number(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_complex(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void print_state(const StateValue& v, const std::string& format) {
  if (format == "csv") {
    std::cout << "value,tail,truncation\n"
              << csv_complex(v.value) << "," << csv_number(v.tail) << "," << v.truncation << "\n";
  } else {
    std::cout << to_json(v) << "\n";
  }
}

int cmd_eval(const RunConfig& cfg, const std::string& expression, bool ground) {
  const auto sys = make_system(cfg.system);
  const NtAlgebra alg(sys, cfg.budget);
  const auto tau = build_trace(cfg, sys->engine());
  const auto x = parse_element(alg, expression);
  const auto format = cfg.format == "auto" ? "json" : cfg.format;
  if (ground) {
    print_state({ground_state(alg, x, tau), 0.0, 0}, format);
    return kOk;
  }
  KmsEvaluator ev(alg, default_parameters(*sys, cfg.beta, resolved_bound(cfg, sys->semigroup()), tau));
  print_state(ev.kms_state(x), format);
  return kOk;
}

int cmd_sweep(const RunConfig& cfg) {
  const auto sys = make_system(cfg.system);
  const NtAlgebra alg(sys, cfg.budget);
  const auto tau = build_trace(cfg, sys->engine());
  const auto bound = resolved_bound(cfg, sys->semigroup());
  auto names = cfg.observables;
  if (names.empty()) {
    names = {"1", sys->semigroup() == SemigroupKind::NatMult ? "alpha[2](1)" : "alpha[1](1)"};
  }
  std::vector<NTElement> observables;
  for (const auto& n : names) observables.push_back(parse_element(alg, n));
  const auto betas = cfg.betas.empty() ? std::vector<double>{cfg.beta} : cfg.betas;
  std::vector<std::unique_ptr<KmsEvaluator>> evaluators;
  for (double b : betas) {
    evaluators.push_back(std::make_unique<KmsEvaluator>(alg, default_parameters(*sys, b, bound, tau)));
  }
  const bool json = cfg.format == "json";
  if (!json) {
    std::cout << "beta,zeta,tail";
    for (const auto& n : names) std::cout << "," << csv_quote(n) << "," << csv_quote("tail(" + n + ")");
    std::cout << "\n";
  }
  for (std::size_t i = 0; i < betas.size(); ++i) {
    const auto& ev = *evaluators[i];
    const auto zeta = ev.zeta();
    if (json) {
      std::cout << "{\"beta\":" << csv_number(betas[i]) << ",\"zeta\":" << csv_number(zeta.value.real())
                << ",\"tail\":" << csv_number(zeta.tail) << ",\"observables\":[";
      for (std::size_t o = 0; o < observables.size(); ++o) {
        if (o) std::cout << ",";
        std::cout << to_json(ev.kms_state(observables[o]));
      }
      std::cout << "]}\n";
      continue;
    }
    std::cout << csv_number(betas[i]) << "," << csv_number(zeta.value.real()) << ","
              << csv_number(zeta.tail);
    for (const auto& x : observables) {
      const auto v = ev.kms_state(x);
      std::cout << "," << csv_complex(v.value) << "," << csv_number(v.tail);
    }
    std::cout << "\n";
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg, const SuiteOptions& opt) {
  const auto reports = run_suites(cfg, opt);
  bool all_pass = true;
  for (const auto& r : reports) {
    std::cout << to_json(r) << "\n";
    all_pass = all_pass && r.pass;
  }
  std::fprintf(stderr, "%-48s %8s %12s %12s  %s\n", "check", "samples", "deviation", "tolerance",
               "result");
  for (const auto& r : reports) {
    std::fprintf(stderr, "%-48s %8zu %12.3e %12.3e  %s\n", r.name.c_str(), r.samples,
                 r.max_deviation, r.tolerance, r.pass ? "pass" : "FAIL");
  }
  std::fprintf(stderr, "%zu checks, %s\n", reports.size(), all_pass ? "all pass" : "failures");
  return all_pass ? kOk : kCheckFailed;
}

int cmd_systems(const std::string& format) {
  for (const auto& b : builtin_systems()) {
    if (format == "json") {
      std::cout << "{\"name\":\"" << b.name << "\",\"semigroup\":\"" << b.semigroup
                << "\",\"coefficients\":\"" << b.engine << "\",\"parameters\":\"" << b.parameters
                << "\"}\n";
    } else {
      std::printf("%-20s %-9s %-10s %-40s %s\n", b.name.c_str(), b.semigroup.c_str(),
                  b.engine.c_str(), b.parameters.c_str(), b.description.c_str());
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"KMS and ground states of Nica-Toeplitz algebras of finite-type product systems"};
  app.require_subcommand(1);

  Flags eval_flags, sweep_flags, verify_flags, parse_flags;
  std::string expression;
  bool ground = false;
  SuiteOptions suite;
  std::string systems_format = "text";

  auto* eval = app.add_subcommand("eval", "evaluate kms_state (or ground_state) of an expression");
  add_common(eval, eval_flags);
  eval->add_flag("--ground", ground, "ground state instead of the KMS state");
  eval->add_option("expression", expression, "element in the expression DSL")->required();

  auto* sweep = app.add_subcommand("sweep", "tabulate observables over a beta grid");
  add_common(sweep, sweep_flags);
  auto* betas_opt = sweep->add_option("--betas", sweep_flags.betas, "comma-separated beta grid")
                        ->delimiter(',');
  auto* obs_opt = sweep->add_option("--observable", sweep_flags.observables,
                                    "DSL expression, repeatable");
  sweep_flags.setters.emplace_back(betas_opt, [&](RunConfig& c) { c.betas = sweep_flags.betas; });
  sweep_flags.setters.emplace_back(obs_opt,
                                   [&](RunConfig& c) { c.observables = sweep_flags.observables; });

  auto* verify = app.add_subcommand("verify", "run verification suites, one JSON line per check");
  add_common(verify, verify_flags);
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  verify->add_option("--suite", suite.suite, "structure | kms | trace | ground | reconstruct | euler | all")
      ->check(CLI::IsMember(suites));
  verify->add_option("--primes", suite.primes, "prime bound of the Euler product");
  verify->add_flag("--corrupt", suite.corrupt, "swap two index-map values (fault fixture)");

  auto* systems = app.add_subcommand("systems", "list built-in product systems");
  systems->add_option("--format", systems_format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));

  auto* parse = app.add_subcommand("parse", "print the canonical normal form of an expression");
  add_common(parse, parse_flags);
  parse->add_option("expression", expression, "element in the expression DSL")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*eval) return cmd_eval(resolve(eval_flags), expression, ground);
    if (*sweep) return cmd_sweep(resolve(sweep_flags));
    if (*verify) return cmd_verify(resolve(verify_flags), suite);
    if (*systems) return cmd_systems(systems_format);
    if (*parse) {
      const auto cfg = resolve(parse_flags);
      const NtAlgebra alg(make_system(cfg.system), cfg.budget);
      std::cout << to_string(parse_element(alg, expression)) << "\n";
      return kOk;
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
