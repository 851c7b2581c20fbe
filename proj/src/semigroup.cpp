#include "ntkms/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "ntkms/errors.hpp"

namespace ntkms {

namespace {

void require_same(SemigroupElement s, SemigroupElement r) {
  if (s.kind != r.kind) {
    throw MismatchError("semigroup instance mismatch: " + std::string(semigroup_name(s.kind)) +
                        " vs " + std::string(semigroup_name(r.kind)));
  }
}

}  // namespace

std::string_view semigroup_name(SemigroupKind kind) {
  return kind == SemigroupKind::NatMult ? "nat-mult" : "nat-add";
}

SemigroupKind parse_semigroup_kind(std::string_view name) {
  if (name == "nat-mult") return SemigroupKind::NatMult;
  if (name == "nat-add") return SemigroupKind::NatAdd;
  throw ConstructionError("unknown semigroup instance '" + std::string(name) + "'");
}

SemigroupElement identity(SemigroupKind kind) {
  return {kind, kind == SemigroupKind::NatMult ? 1u : 0u};
}

SemigroupElement make_element(SemigroupKind kind, std::uint64_t value) {
  if (kind == SemigroupKind::NatMult && value == 0) {
    throw DomainError("0 is not an element of nat-mult");
  }
  return {kind, value};
}

bool is_identity(SemigroupElement s) { return s == identity(s.kind); }

SemigroupElement multiply(SemigroupElement s, SemigroupElement r) {
  require_same(s, r);
  std::uint64_t out = 0;
  bool overflow = s.kind == SemigroupKind::NatMult
                      ? __builtin_mul_overflow(s.value, r.value, &out)
                      : __builtin_add_overflow(s.value, r.value, &out);
  if (overflow) throw DomainError("semigroup product overflows 64 bits");
  return {s.kind, out};
}

SemigroupElement lub(SemigroupElement s, SemigroupElement r) {
  require_same(s, r);
  if (s.kind == SemigroupKind::NatAdd) return {s.kind, std::max(s.value, r.value)};
  std::uint64_t g = std::gcd(s.value, r.value);
  return multiply({s.kind, s.value / g}, r);
}

SemigroupElement glb(SemigroupElement s, SemigroupElement r) {
  require_same(s, r);
  if (s.kind == SemigroupKind::NatAdd) return {s.kind, std::min(s.value, r.value)};
  return {s.kind, std::gcd(s.value, r.value)};
}

bool leq(SemigroupElement s, SemigroupElement r) {
  require_same(s, r);
  if (s.kind == SemigroupKind::NatAdd) return s.value <= r.value;
  return r.value % s.value == 0;
}

SemigroupElement quotient(SemigroupElement r, SemigroupElement s) {
  if (!leq(s, r)) {
    throw DomainError("quotient: " + to_string(s) + " does not divide " + to_string(r));
  }
  if (s.kind == SemigroupKind::NatAdd) return {s.kind, r.value - s.value};
  return {s.kind, r.value / s.value};
}

std::string to_string(SemigroupElement s) { return std::to_string(s.value); }

TruncationSet::TruncationSet(SemigroupKind kind, std::uint64_t bound)
    : kind_(kind), bound_(bound) {
  if (bound == 0 && kind == SemigroupKind::NatMult) {
    throw DomainError("enumerate: bound must be >= 1");
  }
  std::uint64_t first = kind == SemigroupKind::NatMult ? 1 : 0;
  elements_.reserve(bound - first + 1);
  for (std::uint64_t v = first; v <= bound; ++v) elements_.push_back({kind, v});
}

bool TruncationSet::contains(SemigroupElement s) const {
  if (s.kind != kind_) return false;
  return s.value <= bound_ && (kind_ == SemigroupKind::NatAdd || s.value >= 1);
}

std::size_t TruncationSet::index_of(SemigroupElement s) const {
  if (!contains(s)) throw DomainError("element " + to_string(s) + " outside truncation set");
  return kind_ == SemigroupKind::NatMult ? s.value - 1 : s.value;
}

TruncationSet enumerate(SemigroupKind kind, std::uint64_t bound) {
  return TruncationSet(kind, bound);
}

double BasisGrowth::count(SemigroupElement s) const {
  if (kind == SemigroupKind::NatMult) return std::pow(static_cast<double>(s.value), parameter);
  return std::pow(parameter, static_cast<double>(s.value));
}

ScalingHomomorphism ScalingHomomorphism::power(double exponent) {
  if (!(exponent > 0)) throw ConstructionError("scaling exponent must be positive");
  return {SemigroupKind::NatMult, exponent};
}

ScalingHomomorphism ScalingHomomorphism::exponential(double base) {
  if (!(base > 1)) throw ConstructionError("scaling base must exceed 1");
  return {SemigroupKind::NatAdd, base};
}

ScalingHomomorphism ScalingHomomorphism::from_growth(const BasisGrowth& growth) {
  return growth.kind == SemigroupKind::NatMult ? power(growth.parameter)
                                               : exponential(growth.parameter);
}

double ScalingHomomorphism::log(SemigroupElement s) const {
  if (s.kind != kind_) throw MismatchError("scaling homomorphism applied to wrong instance");
  if (kind_ == SemigroupKind::NatMult) return parameter_ * std::log(static_cast<double>(s.value));
  return static_cast<double>(s.value) * std::log(parameter_);
}

double ScalingHomomorphism::operator()(SemigroupElement s) const {
  if (s.kind != kind_) throw MismatchError("scaling homomorphism applied to wrong instance");
  if (kind_ == SemigroupKind::NatMult) return std::pow(static_cast<double>(s.value), parameter_);
  return std::pow(parameter_, static_cast<double>(s.value));
}

double ScalingHomomorphism::weight(SemigroupElement s, double beta) const {
  if (s.kind != kind_) throw MismatchError("scaling homomorphism applied to wrong instance");
  if (kind_ == SemigroupKind::NatMult) {
    return std::pow(static_cast<double>(s.value), -beta * parameter_);
  }
  return std::pow(parameter_, -beta * static_cast<double>(s.value));
}

bool ScalingHomomorphism::injective_on(const TruncationSet& set) const {
  if ((*this)(identity(kind_)) != 1.0) return false;
  std::set<double> seen;
  for (auto s : set) {
    if (!seen.insert((*this)(s)).second) return false;
  }
  return true;
}

double critical_exponent(const ScalingHomomorphism& n, const BasisGrowth& growth) {
  if (n.kind() != growth.kind) throw MismatchError("scaling and growth on different instances");
  if (n.kind() == SemigroupKind::NatMult) {
    // sum s^{degree - exponent*beta} converges iff exponent*beta - degree > 1
    return (growth.parameter + 1.0) / n.parameter();
  }
  // sum (base_growth / base_N^beta)^n converges iff ratio < 1
  return std::log(growth.parameter) / std::log(n.parameter());
}

double tail_bound(const ScalingHomomorphism& n, const BasisGrowth& growth, double beta,
                  std::uint64_t bound) {
  double bc = critical_exponent(n, growth);
  if (!(beta > bc)) {
    throw DomainError("beta = " + std::to_string(beta) +
                      " is not above the critical exponent " + std::to_string(bc));
  }
  const double b = static_cast<double>(bound);
  if (n.kind() == SemigroupKind::NatMult) {
    // integral comparison: sum_{s>B} s^{-q} <= int_B^inf x^{-q} dx, q > 1
    double q = n.parameter() * beta - growth.parameter;
    return std::pow(b, 1.0 - q) / (q - 1.0);
  }
  // geometric: sum_{n>=B} rho^n = rho^B / (1 - rho)
  double rho = growth.parameter * std::pow(n.parameter(), -beta);
  return std::pow(rho, b) / (1.0 - rho);
}

TailEstimate heuristic_tail(const ScalingHomomorphism& n, const BasisGrowth& growth,
                            double beta, std::uint64_t bound) {
  TruncationSet outer(n.kind(), 4 * bound);
  double block = 0.0;
  for (auto s : outer) {
    if (s.value <= bound) continue;
    block += n.weight(s, beta) * growth.count(s);
  }
  return {2.0 * block, false};
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> primes;
  if (bound < 2) return primes;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t p = 2; p <= bound; ++p) {
    if (composite[p]) continue;
    primes.push_back(p);
    for (std::uint64_t m = p * p; m <= bound; m += p) composite[m] = true;
  }
  return primes;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace ntkms
