#include "ntkms/kms_states.hpp"

#include <cmath>
#include <vector>

#include "json.hpp"

#include "ntkms/errors.hpp"
#include "ntkms/parallel.hpp"

namespace ntkms {

std::string to_json(const StateValue& v) {
  nlohmann::json j;
  j["value"] = {v.value.real(), v.value.imag()};
  j["tail"] = v.tail;
  j["truncation"] = v.truncation;
  return j.dump();
}

KmsParameters default_parameters(const ProductSystem& sys, double beta, std::uint64_t bound,
                                 TraceSpec tau) {
  return {beta, sys.default_scaling(), enumerate(sys.semigroup(), bound), std::move(tau)};
}

namespace {

// Elements s = r q of the truncation set, ascending.
std::vector<SemigroupElement> multiples_in(const TruncationSet& trunc, SemigroupElement r) {
  std::vector<SemigroupElement> out;
  for (auto s : trunc) {
    if (leq(r, s)) out.push_back(s);
  }
  return out;
}

}  // namespace

KmsEvaluator::KmsEvaluator(const NtAlgebra& algebra, KmsParameters params)
    : algebra_(algebra), params_(std::move(params)) {
  const auto& sys = algebra_.system();
  if (params_.tau.engine() != sys.engine()) {
    throw MismatchError("trace on " + to_string(params_.tau.engine()) + " used with a " +
                        to_string(sys.engine()) + " system");
  }
  if (!params_.tau.tracial()) {
    throw DomainError("KMS states need a tracial state on the coefficient algebra; '" +
                      params_.tau.label() + "' is only usable for ground states");
  }
  if (params_.trunc.kind() != sys.semigroup() || params_.scaling.kind() != sys.semigroup()) {
    throw MismatchError("truncation set or scaling from a different semigroup instance");
  }
  beta_c_ = ntkms::critical_exponent(params_.scaling, sys.growth());
  if (!(params_.beta > beta_c_)) {
    throw DomainError("beta = " + std::to_string(params_.beta) +
                      " is not above the critical exponent " + std::to_string(beta_c_));
  }
  zeta_tail_ = tail_bound(params_.scaling, sys.growth(), params_.beta, params_.trunc.bound());

  const auto& elems = params_.trunc.elements();
  std::vector<double> parts(elems.size());
  parallel_for(elems.size(), [&](std::size_t i) {
    parts[i] = params_.scaling.weight(elems[i], params_.beta) *
               static_cast<double>(sys.basis_count(elems[i]));
  });
  for (double p : parts) zeta_trunc_ += p;
}

StateValue KmsEvaluator::zeta() const {
  return {zeta_trunc_, zeta_tail_, params_.trunc.bound()};
}

double KmsEvaluator::tail_for_mass(double mass) const {
  // Truncating the numerator costs at most mass * tail; replacing the exact
  // zeta by the truncated one costs at most as much again.
  return 2.0 * zeta_tail_ * mass / zeta_trunc_;
}

Complex KmsEvaluator::weighted_trace_sum(SemigroupElement r, const Monomial& a) const {
  const auto key = std::make_pair(r, a);
  {
    std::lock_guard lock(cache_mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  const auto& sys = algebra_.system();
  const auto fibers = multiples_in(params_.trunc, r);
  std::vector<Complex> parts(fibers.size());
  parallel_for(fibers.size(), [&](std::size_t i) {
    const auto s = fibers[i];
    const auto q = quotient(s, r);
    if (sys.fiberwise_trace_vanishes(q, a)) return;
    parts[i] = params_.scaling.weight(s, params_.beta) * sys.traced_diagonal(q, a, params_.tau);
  });
  Complex total = 0.0;
  for (const auto& p : parts) total += p;
  std::lock_guard lock(cache_mutex_);
  cache_.emplace(key, total);
  return total;
}

StateValue KmsEvaluator::omega_tau(const NTElement& y) const {
  if (!y.is_core()) {
    throw DomainError("omega_tau is defined on the core; use kms_state for general elements");
  }
  if (y.engine() != algebra_.engine()) throw MismatchError("NT element from a different engine");
  Complex value = 0.0;
  double mass = 0.0;
  for (const auto& [key, c] : y.terms()) {
    if (key.j != key.k) continue;  // orthogonal basis vectors: exactly zero
    for (const auto& [m, coef] : c.terms()) value += coef * weighted_trace_sum(key.r, m);
    mass += c.one_norm();
  }
  return {value / zeta_trunc_, tail_for_mass(mass), params_.trunc.bound()};
}

StateValue KmsEvaluator::kms_state(const NTElement& x) const {
  return omega_tau(algebra_.cond_expectation(x));
}

Complex ground_state(const NtAlgebra& algebra, const NTElement& x, const TraceSpec& tau) {
  if (tau.engine() != algebra.engine()) {
    throw MismatchError("trace on " + to_string(tau.engine()) + " used with a " +
                        to_string(algebra.engine()) + " system");
  }
  const auto e = algebra.system().unit_fiber();
  Complex total = 0.0;
  for (const auto& [key, c] : x.terms()) {
    if (key.s == e && key.r == e) total += tau.evaluate(c);
  }
  return total;
}

double euler_product(double beta, std::uint64_t primes_bound) {
  if (!(beta > 2.0)) throw DomainError("Euler product needs beta - 1 > 1");
  double out = 1.0;
  for (auto p : primes_up_to(primes_bound)) {
    out /= 1.0 - std::pow(static_cast<double>(p), -(beta - 1.0));
  }
  return out;
}

}  // namespace ntkms
