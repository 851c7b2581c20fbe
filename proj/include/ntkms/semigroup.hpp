#pragma once

// Lattice-ordered semigroups used as index sets for product systems.
//
// Two instances are built in:
//   nat-mult  the positive integers under multiplication, positive cone of
//             (Q*_+, N^x); order is divisibility, lub = lcm, glb = gcd.
//   nat-add   the nonnegative integers under addition, positive cone of
//             (Z, N); order is the usual one, lub = max, glb = min.
//
// Elements are canonical integers. Group elements are never materialized;
// a gauge degree s r^{-1} is carried as the ordered pair (s, r).

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ntkms {

enum class SemigroupKind : std::uint8_t { NatMult, NatAdd };

std::string_view semigroup_name(SemigroupKind kind);
SemigroupKind parse_semigroup_kind(std::string_view name);

struct SemigroupElement {
  SemigroupKind kind = SemigroupKind::NatMult;
  std::uint64_t value = 1;

  auto operator<=>(const SemigroupElement&) const = default;
};

SemigroupElement identity(SemigroupKind kind);
SemigroupElement make_element(SemigroupKind kind, std::uint64_t value);
bool is_identity(SemigroupElement s);

SemigroupElement multiply(SemigroupElement s, SemigroupElement r);
SemigroupElement lub(SemigroupElement s, SemigroupElement r);
SemigroupElement glb(SemigroupElement s, SemigroupElement r);
bool leq(SemigroupElement s, SemigroupElement r);
// s^{-1} r, defined when s <= r.
SemigroupElement quotient(SemigroupElement r, SemigroupElement s);

std::string to_string(SemigroupElement s);

// Finite divisor-complete subset of P in ascending canonical order.
class TruncationSet {
 public:
  TruncationSet(SemigroupKind kind, std::uint64_t bound);

  SemigroupKind kind() const { return kind_; }
  std::uint64_t bound() const { return bound_; }
  const std::vector<SemigroupElement>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool contains(SemigroupElement s) const;
  // Position of s in elements(); s must be contained.
  std::size_t index_of(SemigroupElement s) const;

  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

 private:
  SemigroupKind kind_;
  std::uint64_t bound_;
  std::vector<SemigroupElement> elements_;
};

TruncationSet enumerate(SemigroupKind kind, std::uint64_t bound);

// Power-law description of basis counts N_s: s^degree for nat-mult,
// base^n for nat-add.
struct BasisGrowth {
  SemigroupKind kind = SemigroupKind::NatMult;
  double parameter = 1.0;

  double count(SemigroupElement s) const;
};

// Multiplicative map N: P -> (0, inf), extended to the group by N(s r^{-1}) =
// N(s)/N(r). Stored as a rule: s^exponent on nat-mult, base^n on nat-add.
class ScalingHomomorphism {
 public:
  static ScalingHomomorphism power(double exponent);       // nat-mult
  static ScalingHomomorphism exponential(double base);     // nat-add
  static ScalingHomomorphism from_growth(const BasisGrowth& growth);

  SemigroupKind kind() const { return kind_; }
  double parameter() const { return parameter_; }

  double operator()(SemigroupElement s) const;
  double log(SemigroupElement s) const;
  // N(s)^{-beta}
  double weight(SemigroupElement s, double beta) const;

  // Injectivity of N on the enumerated set (and N(e) = 1).
  bool injective_on(const TruncationSet& set) const;

 private:
  ScalingHomomorphism(SemigroupKind kind, double parameter)
      : kind_(kind), parameter_(parameter) {}

  SemigroupKind kind_;
  double parameter_;
};

// Infimum of beta for which sum_s N(s)^{-beta} N_s converges.
double critical_exponent(const ScalingHomomorphism& n, const BasisGrowth& growth);

struct TailEstimate {
  double value = 0.0;
  bool rigorous = true;
};

// Upper bound on sum over s outside enumerate(bound) of N(s)^{-beta} N_s.
// Throws DomainError when beta is at or below the critical exponent.
double tail_bound(const ScalingHomomorphism& n, const BasisGrowth& growth, double beta,
                  std::uint64_t bound);

// Sums the block enumerate(4B) \ enumerate(B) and doubles it. Not rigorous;
// usable for rules without a closed form.
TailEstimate heuristic_tail(const ScalingHomomorphism& n, const BasisGrowth& growth,
                            double beta, std::uint64_t bound);

// Primes p <= bound, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);
// Distinct prime divisors of n > 0, ascending.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

}  // namespace ntkms
