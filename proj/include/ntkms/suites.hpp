#pragma once

// Verification suites as run by `ntkms verify`.
//
//   structure    validate + co-prime pairs, alpha_s lattice, commutation, and
//                the Fock oracle on scalar systems
//   kms          KMS condition and the scaling identity
//   trace        trace property on the core
//   ground       ground-state checks and the beta -> infinity limit
//   reconstruct  trace reconstruction and inclusion-exclusion
//   euler        Euler product against the zeta partial sum

#include <cstdint>
#include <string>
#include <vector>

#include "ntkms/config.hpp"
#include "ntkms/nt_element.hpp"
#include "ntkms/verify.hpp"

namespace ntkms {

struct SuiteOptions {
  std::string suite = "all";
  std::uint64_t primes = 10000;      // Euler product bound
  std::uint64_t sum_bound = 1000000; // zeta partial sum bound
  bool corrupt = false;              // swap two index-map values of the instance
};

const std::vector<std::string>& suite_names();  // without "all"

// Throws DomainError / ConstructionError for unusable configurations.
std::vector<CheckReport> run_suites(const RunConfig& config, const SuiteOptions& options);

// Reconstruction test monomials: S^m S*^n with m, n <= 12 on Toeplitz, z^g
// with small exponents on Laurent, the unit on scalars.
std::vector<Monomial> reconstruction_monomials(EngineSpec engine);
// Ten fixed core elements used for the beta -> infinity limit.
std::vector<NTElement> limit_elements(const NtAlgebra& algebra);
// Largest word length whose Fock space stays under the oracle's cap, at most 5.
std::uint64_t fock_bound(const ProductSystem& sys);

}  // namespace ntkms
