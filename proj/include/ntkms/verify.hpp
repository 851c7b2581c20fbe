#pragma once

// Executable checks of the KMS condition, the trace property on the core,
// ground states, the scaling identity, the alpha_s lattice relations,
// reconstruction of tau from the KMS state and the inclusion-exclusion lemma.
//
// Every check returns a CheckReport. Its max_deviation and tolerance come from
// the sample with the least slack (deviation - tolerance), so pass holds iff
// max_deviation <= tolerance; largest_deviation is the raw maximum.

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ntkms/kms_states.hpp"
#include "ntkms/nt_element.hpp"

namespace ntkms {

struct CheckReport {
  std::string name;
  std::size_t samples = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  double largest_deviation = 0.0;
  bool pass = true;
  std::string witness;
  std::uint64_t seed = 0;
  std::string note;
};

std::string to_json(const CheckReport& report);

// One report over the samples of several: pass iff all pass, binding sample
// and first witness carried over.
CheckReport merge_reports(std::string name, const std::vector<CheckReport>& parts);

class ReportBuilder {
 public:
  ReportBuilder(std::string name, std::uint64_t seed);

  // The witness callback runs only for the first failing sample.
  void sample(double deviation, double tolerance, const std::function<std::string()>& witness);
  void note(std::string text) { report_.note = std::move(text); }
  CheckReport finish() const { return report_; }

 private:
  CheckReport report_;
  double slack_ = -std::numeric_limits<double>::infinity();
};

// Seeded random terms i_s(1_j) i_e(c) i_r(1_k)* with fibers in enumerate(max_fiber).
class Sampler {
 public:
  Sampler(const NtAlgebra& algebra, std::uint64_t seed, std::uint64_t max_fiber = 4);

  SemigroupElement fiber();
  std::uint64_t index(SemigroupElement s);
  Monomial coefficient_monomial();
  // One or two monomials with small Gaussian-integer coefficients.
  CoefficientElement coefficient();
  NTElement term();
  NTElement core_term();
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);
  std::mt19937_64& engine() { return rng_; }

 private:
  const NtAlgebra& algebra_;
  std::mt19937_64 rng_;
  std::vector<SemigroupElement> fibers_;
};

// kms(y1 y2) against kms(y2 sigma_{i beta}(y1)); half the pairs have
// complementary gauge degree so that neither side vanishes trivially.
CheckReport check_kms(const KmsEvaluator& ev, std::uint64_t seed, std::size_t samples,
                      std::uint64_t max_fiber = 4);
// omega(y1 y2) against omega(y2 y1) on core monomials, steering the sampler
// through the four index cases at s ^ r and forcing co-prime fibers (2, 3)
// on nat-mult.
CheckReport check_core_trace(const KmsEvaluator& ev, std::uint64_t seed, std::size_t samples,
                             std::uint64_t max_fiber = 4);
// Exact zeros on B_s for s > e and on mixed degrees, exactness of
// tau(a b*) on i_e(a) i_e(b)*, and boundedness of z -> omega(y sigma_z(y')).
CheckReport check_ground(const NtAlgebra& algebra, const TraceSpec& tau, std::uint64_t seed,
                         std::size_t samples, std::uint64_t max_fiber = 4);
// omega(i_s(1_j) i_e(a) i_s(1_l)*) = delta_{jl} N(s)^{-beta} omega(i_e(a)) for
// s <= max_s, all j, l and a in the generators and the unit. Off-diagonal
// values must be exactly 0.
CheckReport check_scaling(const KmsEvaluator& ev, std::uint64_t max_s = 6);
// alpha_s(1) alpha_r(1) = alpha_{s v r}(1) and alpha_s(alpha_r(1)) = alpha_{sr}(1).
CheckReport check_alpha_lattice(const NtAlgebra& algebra, std::uint64_t max_s = 6);
// [i_e(a), alpha_s(1)] = 0 exactly for generator monomials a, s <= max_s.
CheckReport check_commutation(const NtAlgebra& algebra, std::uint64_t max_s = 6);
// |kms_beta(y) - ground(y)| for the given elements.
CheckReport check_kms_limit(const NtAlgebra& algebra, const TraceSpec& tau,
                            const std::vector<NTElement>& ys, double beta, std::uint64_t bound,
                            double tolerance);
// |prod_{p <= primes} (1 - p^{1-beta})^{-1} - sum_{s <= sum_bound} s^{1-beta}|
// against the integral bounds on both truncations.
CheckReport check_euler(double beta, std::uint64_t primes_bound, std::uint64_t sum_bound);
// validate() and check_coprime_pairs() as reports.
std::vector<CheckReport> check_structure(const ProductSystem& sys, const TruncationSet& trunc);

struct ReconstructionContext {
  SystemPtr system;
  double beta = 0.0;
  ScalingHomomorphism scaling;
  TraceSpec tau;
  Monomial a;
  std::vector<SemigroupElement> primes;   // F_a'
  bool full_support = false;              // closure pruned to the truncation
  // (p_J, |J|) for nonempty J, ascending in p_J; pruned to the truncation
  // when full_support.
  std::vector<std::pair<SemigroupElement, int>> closure;
  TruncationSet trunc;
};

// F_a' is {1} on nat-add. On nat-mult it is the set of primes p of the
// truncation with Tr_p(a) != 0: the divisors of |m - n| for S^m S*^n, of the
// gcd of the dilated exponents for z^g. When that set is large (a has full
// support) the subset closure is pruned to the truncation.
ReconstructionContext make_reconstruction_context(SystemPtr system, const Monomial& a,
                                                  TraceSpec tau, double beta,
                                                  std::uint64_t bound);
ReconstructionContext make_reconstruction_context(SystemPtr system, const Monomial& a,
                                                  TraceSpec tau, double beta,
                                                  std::uint64_t bound,
                                                  std::vector<SemigroupElement> primes);

// lambda_s = N(s)^{-beta} tau(Tr_s(a))
Complex lambda_weight(const ReconstructionContext& ctx, SemigroupElement s);
std::vector<std::pair<SemigroupElement, Complex>> lambda_weights(const ReconstructionContext& ctx);

// Both double sums of the inclusion-exclusion identity; must cancel.
CheckReport check_inclusion_exclusion(const ReconstructionContext& ctx);

struct ReconstructionResult {
  bool applicable = false;
  std::string reason;
  Complex value;
  double tail = 0.0;
  bool minimal_elements = false;  // the semigroup has non-trivial minimal elements
};

// omega(i_e(a) alpha_r(1)) = sum_{s in trunc, r <= s} lambda_s / zeta_trunc
Complex omega_ie_alpha(const ReconstructionContext& ctx, const KmsEvaluator& ev,
                       SemigroupElement r);
// zeta * sum_J (-1)^{|J|} omega(i_e(a) alpha_{p_J}(1)), J over subsets of F_a'
// including the empty one.
ReconstructionResult reconstruct_trace(const ReconstructionContext& ctx, const KmsEvaluator& ev);

// |reconstruct_trace(a) - tau(a)| over the given monomials, each against its
// own truncation tail.
CheckReport check_reconstruction(const KmsEvaluator& ev, const std::vector<Monomial>& monomials);

}  // namespace ntkms
