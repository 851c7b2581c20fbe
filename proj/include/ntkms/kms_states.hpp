#pragma once

// KMS_beta states omega_tau o Phi and ground states induced from a state tau
// on the coefficient algebra.
//
// For a core term i_r(1_a) c i_r(1_b)* the induced state is
//   delta_{ab} sum_{s >= r} N(s)^{-beta} tau(Tr_{r^{-1}s}(c)) / zeta,
// where Tr_q(c) = sum_j L_q(c)[j][j]. Sums run over the truncation set in
// ascending order and are normalized by the truncated zeta of the same set, so
// the unit is sent to exactly 1.

#include <cstdint>
#include <map>
#include <mutex>
#include <string>

#include "ntkms/nt_element.hpp"
#include "ntkms/trace_spec.hpp"

namespace ntkms {

struct StateValue {
  Complex value;
  double tail = 0.0;
  std::uint64_t truncation = 0;
};

// {"value": [re, im], "tail": t, "truncation": B}
std::string to_json(const StateValue& v);

struct KmsParameters {
  double beta = 3.0;
  ScalingHomomorphism scaling;
  TruncationSet trunc;
  TraceSpec tau;
};

// Builds parameters with the system's default scaling N(s) = N_s.
KmsParameters default_parameters(const ProductSystem& sys, double beta, std::uint64_t bound,
                                 TraceSpec tau);

class KmsEvaluator {
 public:
  // Throws DomainError for beta <= beta_c or a non-tracial tau, MismatchError
  // for a trace on the wrong engine.
  KmsEvaluator(const NtAlgebra& algebra, KmsParameters params);

  const NtAlgebra& algebra() const { return algebra_; }
  const KmsParameters& params() const { return params_; }
  double beta() const { return params_.beta; }
  double critical_exponent() const { return beta_c_; }
  // sum over s outside the truncation of N(s)^{-beta} N_s
  double zeta_tail() const { return zeta_tail_; }

  StateValue zeta() const;
  StateValue omega_tau(const NTElement& y) const;   // core input only
  StateValue kms_state(const NTElement& x) const;   // omega_tau o Phi

  // sum_{s in trunc, r <= s} N(s)^{-beta} tau(Tr_{r^{-1}s}(a)), unnormalized
  Complex weighted_trace_sum(SemigroupElement r, const Monomial& a) const;
  // Rigorous bound on the truncation error of omega_tau(x) given the coefficient
  // one-norm mass of its contributing terms.
  double tail_for_mass(double mass) const;

 private:
  const NtAlgebra& algebra_;
  KmsParameters params_;
  double beta_c_ = 0.0;
  double zeta_trunc_ = 0.0;
  double zeta_tail_ = 0.0;

  mutable std::mutex cache_mutex_;
  mutable std::map<std::pair<SemigroupElement, Monomial>, Complex> cache_;
};

// tau applied to the s = r = e part: sum of tau(c) over terms i_e(c).
// tau need not be tracial.
Complex ground_state(const NtAlgebra& algebra, const NTElement& x, const TraceSpec& tau);

// prod_{p <= bound} (1 - p^{-(beta - 1)})^{-1}; requires beta > 2.
double euler_product(double beta, std::uint64_t primes_bound);

}  // namespace ntkms
