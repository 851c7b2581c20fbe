#pragma once

// Normal forms in the dense spanning subspace of NT(X).
//
// Every i_s(xi) i_r(eta)* expands over the bases as a finite sum of terms
//   i_s(1^s_j) i_e(c) i_r(1^r_k)*,   c in A,
// and an NTElement stores exactly that expansion: a map (s, j, r, k) -> c.
// Scalars and the i_e factors are absorbed into c, so two elements are equal
// iff their maps are equal.

#include <cstddef>
#include <map>
#include <string>

#include "ntkms/coeff_algebra.hpp"
#include "ntkms/product_system.hpp"
#include "ntkms/semigroup.hpp"

namespace ntkms {

struct TermKey {
  SemigroupElement s;
  std::uint64_t j = 0;
  SemigroupElement r;
  std::uint64_t k = 0;

  auto operator<=>(const TermKey&) const = default;
  bool diagonal() const { return s == r; }
};

class NTElement {
 public:
  explicit NTElement(EngineSpec engine = EngineSpec::scalar()) : engine_(engine) {}

  EngineSpec engine() const { return engine_; }
  const std::map<TermKey, CoefficientElement>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  // All terms have s = r.
  bool is_core() const;

  void add_term(const TermKey& key, const CoefficientElement& c);

  NTElement& operator+=(const NTElement& other);
  NTElement& operator-=(const NTElement& other);
  NTElement& operator*=(Complex c);

  friend NTElement operator+(NTElement a, const NTElement& b) { return a += b; }
  friend NTElement operator-(NTElement a, const NTElement& b) { return a -= b; }
  friend NTElement operator*(Complex c, NTElement a) { return a *= c; }

  bool operator==(const NTElement& other) const;

 private:
  EngineSpec engine_;
  std::map<TermKey, CoefficientElement> terms_;
};

// Canonical DSL text, e.g. "i[2]((1+0i)@0) adj(i[3]((1+0i)@1))"; "0" for zero.
std::string to_string(const NTElement& x);

// Arithmetic tied to one product system. Products that would exceed the term
// budget throw BudgetExceeded.
class NtAlgebra {
 public:
  static constexpr std::size_t kDefaultBudget = 1'000'000;

  explicit NtAlgebra(SystemPtr system, std::size_t term_budget = kDefaultBudget);

  const ProductSystem& system() const { return *system_; }
  const SystemPtr& system_ptr() const { return system_; }
  std::size_t term_budget() const { return budget_; }
  EngineSpec engine() const { return system_->engine(); }

  NTElement zero() const { return NTElement(engine()); }
  NTElement unit() const;
  NTElement i_e(const CoefficientElement& a) const;
  // i_s(1^s_j . a)
  NTElement i_basis(SemigroupElement s, std::uint64_t j, const CoefficientElement& a) const;
  NTElement i_basis(SemigroupElement s, std::uint64_t j) const;
  NTElement i(const ModuleVector& xi) const;
  // i_s(xi) i_r(eta)*
  NTElement monomial(const ModuleVector& xi, const ModuleVector& eta) const;
  // i_s(1^s_j) i_e(c) i_r(1^r_k)*
  NTElement term(SemigroupElement s, std::uint64_t j, const CoefficientElement& c,
                 SemigroupElement r, std::uint64_t k) const;

  NTElement adjoint(const NTElement& x) const;
  // i_r(eta)* i_g(zeta)
  NTElement star_product(const ModuleVector& eta, const ModuleVector& zeta) const;
  NTElement multiply(const NTElement& x, const NTElement& y) const;
  NTElement commutator(const NTElement& x, const NTElement& y) const;
  NTElement cond_expectation(const NTElement& x) const;
  // sum_j i_s(1_j) y i_s(1_j)*; y must lie in the core.
  NTElement alpha(SemigroupElement s, const NTElement& y) const;
  // Each term scaled by (N(s)/N(r))^{iz}; core terms are returned untouched.
  NTElement apply_dynamics(Complex z, const NTElement& x, const ScalingHomomorphism& n) const;
  // sigma_{i beta}: factor (N(s)/N(r))^{-beta}
  NTElement sigma_i_beta(double beta, const NTElement& x, const ScalingHomomorphism& n) const;

 private:
  void check_budget(const NTElement& x) const;
  void check_engine(const NTElement& x) const;

  SystemPtr system_;
  std::size_t budget_;
};

}  // namespace ntkms
