#pragma once

// Truncated Fock representation of the Nica-Toeplitz algebra of a scalar
// product system, used as an independent oracle.
//
// The space has orthonormal basis e(s, j) for s in a truncation set and
// j < N_s. Creation by i_s(1^s_j) sends e(r, k) to e(sr, m_{s,r}(j, k)) when sr
// stays in the truncation and to 0 otherwise. Products are faithful on the
// columns e(q, .) whose fibers leave enough room above them.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/SparseCore>

#include "ntkms/kms_states.hpp"
#include "ntkms/nt_element.hpp"
#include "ntkms/verify.hpp"

namespace ntkms {

using SparseOperator = Eigen::SparseMatrix<Complex>;

class FockOracle {
 public:
  static constexpr std::size_t kMaxDimension = 5000;

  // MismatchError unless the coefficient algebra is C; DomainError when the
  // space would exceed kMaxDimension.
  FockOracle(const NtAlgebra& algebra, std::uint64_t bound);

  const NtAlgebra& algebra() const { return algebra_; }
  const TruncationSet& truncation() const { return trunc_; }
  std::size_t dimension() const { return dim_; }
  std::size_t offset(SemigroupElement s) const { return offsets_.at(trunc_.index_of(s)); }

  SparseOperator creation(SemigroupElement s, std::uint64_t j) const;
  SparseOperator represent(const NTElement& x) const;

  // Basis positions e(q, k) with q * reach in the truncation.
  std::vector<std::size_t> interior(SemigroupElement reach) const;

  // Tr(D pi(x)) / Tr(D) with D e(s, j) = N(s)^{-beta} e(s, j).
  Complex oracle_state(const NTElement& x, double beta) const;

 private:
  const NtAlgebra& algebra_;
  TruncationSet trunc_;
  std::vector<std::size_t> offsets_;
  std::size_t dim_ = 0;
};

// Largest entry of (a - b) restricted to the given columns.
double column_deviation(const SparseOperator& a, const SparseOperator& b,
                        const std::vector<std::size_t>& columns);

// pi(x y) against pi(x) pi(y) on interior columns for random terms.
CheckReport check_fock_multiplicative(const FockOracle& oracle, std::uint64_t seed,
                                      std::size_t samples, std::uint64_t max_fiber = 3);
// pi(i_s(1_j))* pi(i_r(1_k)) against pi of the normal form of i_s(1_j)* i_r(1_k).
CheckReport check_nica_covariance(const FockOracle& oracle, std::uint64_t max_s);
// oracle_state(x) against kms_state(x) on random sums of terms.
CheckReport check_oracle_state(const FockOracle& oracle, const KmsEvaluator& ev,
                               std::uint64_t seed, std::size_t samples,
                               std::uint64_t max_fiber = 3);

}  // namespace ntkms
