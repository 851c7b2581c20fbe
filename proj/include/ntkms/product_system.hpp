#pragma once

// Finite-type product systems of Hilbert bimodules over a lattice-ordered
// semigroup.
//
// Each fiber X_s carries an orthonormal right basis 1^s_0 .. 1^s_{N_s - 1}; a
// vector is stored by its coordinates, xi = sum_j 1^s_j . a_j with a_j in A.
// The left action of a in A is the N_s x N_s matrix with entries
//   L_s(a)[nu][j] = <1^s_nu, phi_s(a) 1^s_j>,
// and the basis is coherent across fibers through the index maps
//   1^s_j (x) 1^r_k = 1^{sr}_{m_{s,r}(j, k)}.
//
// Concrete systems implement basis counts, index maps and left-action columns
// on monomials. Full left-action matrices are memoized per (fiber, monomial);
// the cache tolerates concurrent readers and idempotent concurrent fills.

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "ntkms/coeff_algebra.hpp"
#include "ntkms/semigroup.hpp"
#include "ntkms/trace_spec.hpp"

namespace ntkms {

struct ActionEntry {
  std::uint64_t row = 0;
  CoefficientElement value;
};
using ActionColumn = std::vector<ActionEntry>;

// Sparse square matrix over A, stored by columns with ascending rows.
class ActionMatrix {
 public:
  ActionMatrix(EngineSpec engine, std::uint64_t dim) : engine_(engine), columns_(dim) {}

  std::uint64_t dim() const { return columns_.size(); }
  EngineSpec engine() const { return engine_; }
  const ActionColumn& column(std::uint64_t j) const { return columns_.at(j); }
  ActionColumn& column(std::uint64_t j) { return columns_.at(j); }
  CoefficientElement entry(std::uint64_t row, std::uint64_t col) const;

  static ActionMatrix identity(EngineSpec engine, std::uint64_t dim);

  bool operator==(const ActionMatrix& other) const;

 private:
  EngineSpec engine_;
  std::vector<ActionColumn> columns_;
};

ActionMatrix operator*(const ActionMatrix& a, const ActionMatrix& b);
ActionMatrix adjoint(const ActionMatrix& a);
// Adds c * value at (row, col), keeping rows sorted and dropping cancellations.
void accumulate(ActionColumn& column, std::uint64_t row, const CoefficientElement& value);

class ProductSystem {
 public:
  virtual ~ProductSystem() = default;
  ProductSystem(const ProductSystem&) = delete;
  ProductSystem& operator=(const ProductSystem&) = delete;

  virtual std::string name() const = 0;
  virtual SemigroupKind semigroup() const = 0;
  virtual EngineSpec engine() const = 0;
  virtual BasisGrowth growth() const = 0;
  virtual std::vector<Monomial> generators() const = 0;

  virtual std::uint64_t basis_count(SemigroupElement s) const = 0;
  // m_{s,r}(j, k)
  virtual std::uint64_t index_map(SemigroupElement s, SemigroupElement r, std::uint64_t j,
                                  std::uint64_t k) const = 0;
  // Inverse of m_{s,r}: i -> (j, k).
  virtual std::pair<std::uint64_t, std::uint64_t> split_index(SemigroupElement s,
                                                              SemigroupElement r,
                                                              std::uint64_t i) const = 0;
  // Column j of L_s(a) for a monomial a.
  virtual ActionColumn left_action_column(SemigroupElement s, const Monomial& a,
                                          std::uint64_t j) const = 0;

  // tau(sum_j L_s(a)[j][j]); the default walks the columns.
  virtual Complex traced_diagonal(SemigroupElement s, const Monomial& a,
                                  const TraceSpec& tau) const;
  // Whether sum_j L_s(a)[j][j] = 0 in A.
  virtual bool fiberwise_trace_vanishes(SemigroupElement s, const Monomial& a) const;

  // Z with 1^s_j = phi_s(Z^j) 1^s_0, when the system is singly generated.
  virtual std::optional<Monomial> single_generator() const { return std::nullopt; }

  struct SelfCheck {
    std::string name;
    bool pass = true;
    std::string witness;
    std::size_t cases = 0;
  };
  // System-specific structural checks run by validate().
  virtual std::vector<SelfCheck> self_checks(const TruncationSet&) const { return {}; }

  // Whether P has non-trivial minimal elements (true for both ℕ^× and ℕ).
  bool has_minimal_elements() const { return true; }

  ScalingHomomorphism default_scaling() const { return ScalingHomomorphism::from_growth(growth()); }
  SemigroupElement element(std::uint64_t value) const { return make_element(semigroup(), value); }
  SemigroupElement unit_fiber() const { return identity(semigroup()); }

  // Memoized L_s(a) for a monomial.
  std::shared_ptr<const ActionMatrix> left_action(SemigroupElement s, const Monomial& a) const;
  // Column j of L_s(a) for a coefficient element.
  ActionColumn left_action_column(SemigroupElement s, const CoefficientElement& a,
                                  std::uint64_t j) const;
  ActionMatrix left_action(SemigroupElement s, const CoefficientElement& a) const;

 protected:
  ProductSystem() = default;

 private:
  mutable std::shared_mutex cache_mutex_;
  mutable std::map<std::pair<SemigroupElement, Monomial>, std::shared_ptr<const ActionMatrix>>
      cache_;
};

using SystemPtr = std::shared_ptr<const ProductSystem>;

// xi = sum_j 1^s_j . coords[j]
struct ModuleVector {
  SemigroupElement fiber;
  std::vector<CoefficientElement> coords;

  static ModuleVector zero(const ProductSystem& sys, SemigroupElement s);
  static ModuleVector basis(const ProductSystem& sys, SemigroupElement s, std::uint64_t j,
                            const CoefficientElement& a);
  static ModuleVector basis(const ProductSystem& sys, SemigroupElement s, std::uint64_t j);

  bool operator==(const ModuleVector&) const = default;
};

CoefficientElement inner_product(const ProductSystem& sys, const ModuleVector& xi,
                                 const ModuleVector& eta);
ModuleVector left_act(const ProductSystem& sys, const CoefficientElement& a,
                      const ModuleVector& xi);
ModuleVector right_act(const ModuleVector& xi, const CoefficientElement& a);
ModuleVector module_product(const ProductSystem& sys, const ModuleVector& xi,
                            const ModuleVector& eta);
CoefficientElement fiberwise_trace(const ProductSystem& sys, SemigroupElement s,
                                   const CoefficientElement& a);

struct ValidationEntry {
  std::string check;
  bool pass = true;
  std::size_t cases = 0;
  std::string witness;  // first failure
};

struct ValidationReport {
  std::vector<ValidationEntry> entries;

  bool ok() const;
  const ValidationEntry* first_failure() const;
};

// Checks basis-count multiplicativity, bijectivity/unitality/associativity of
// the index maps, that each L_s is a unital *-homomorphism on the generators,
// fiber coherence L_{sr}(a)[m(nu,mu)][m(j,k)] = L_r(L_s(a)[nu][j])[mu][k], and
// the system's own self checks, over trunc x generators.
ValidationReport validate(const ProductSystem& sys, const TruncationSet& trunc,
                          const std::vector<Monomial>& generators);

struct CoprimeReport {
  bool holds = true;
  std::size_t pairs_checked = 0;
  std::vector<std::string> witnesses;
};

// For every s, r in trunc with s ^ r = e: m_{s,r}(j,m) = m_{r,s}(l,g) and
// m_{s,r}(j,n) = m_{r,s}(l,h) imply m = n and g = h.
CoprimeReport check_coprime_pairs(const ProductSystem& sys, const TruncationSet& trunc);

}  // namespace ntkms
