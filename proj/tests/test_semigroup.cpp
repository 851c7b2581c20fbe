#include "doctest.h"

#include <cmath>
#include <random>

#include "ntkms/errors.hpp"
#include "ntkms/semigroup.hpp"

using namespace ntkms;

namespace {

SemigroupElement m(std::uint64_t v) { return make_element(SemigroupKind::NatMult, v); }
SemigroupElement a(std::uint64_t v) { return make_element(SemigroupKind::NatAdd, v); }

std::uint64_t brute_lcm(std::uint64_t x, std::uint64_t y) {
  for (std::uint64_t c = std::max(x, y);; ++c) {
    if (c % x == 0 && c % y == 0) return c;
  }
}

std::uint64_t brute_gcd(std::uint64_t x, std::uint64_t y) {
  for (std::uint64_t c = std::min(x, y); c > 1; --c) {
    if (x % c == 0 && y % c == 0) return c;
  }
  return 1;
}

bool is_prime_by_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("semigroup") {

TEST_CASE("products") {
  CHECK(multiply(m(4), m(6)) == m(24));
  CHECK(multiply(m(1), m(7)) == m(7));
  CHECK(multiply(a(2), a(3)) == a(5));
  CHECK(is_identity(identity(SemigroupKind::NatMult)));
  CHECK(identity(SemigroupKind::NatAdd) == a(0));
}

TEST_CASE("lattice operations") {
  CHECK(lub(m(4), m(6)) == m(12));
  CHECK(glb(m(4), m(6)) == m(2));
  CHECK(quotient(m(12), m(4)) == m(3));
  CHECK(lub(a(2), a(5)) == a(5));
  CHECK(glb(a(2), a(5)) == a(2));
  CHECK(quotient(a(5), a(2)) == a(3));
  CHECK_THROWS_AS(quotient(m(12), m(5)), DomainError);
  CHECK_THROWS_AS(quotient(a(2), a(5)), DomainError);
}

TEST_CASE("instances do not mix") {
  CHECK_THROWS_AS(multiply(m(2), a(2)), MismatchError);
  CHECK_THROWS_AS(make_element(SemigroupKind::NatMult, 0), DomainError);
}

TEST_CASE("lcm and gcd against brute force") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint64_t> pick(1, 60);
  for (int i = 0; i < 300; ++i) {
    const auto x = pick(rng), y = pick(rng);
    CHECK(lub(m(x), m(y)).value == brute_lcm(x, y));
    CHECK(glb(m(x), m(y)).value == brute_gcd(x, y));
  }
}

TEST_CASE("lattice laws hold on random triples") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::uint64_t> pick(1, 40);
  for (auto kind : {SemigroupKind::NatMult, SemigroupKind::NatAdd}) {
    for (int i = 0; i < 200; ++i) {
      const auto s = make_element(kind, pick(rng));
      const auto r = make_element(kind, pick(rng));
      const auto t = make_element(kind, pick(rng));
      CHECK(lub(s, lub(r, t)) == lub(lub(s, r), t));
      CHECK(glb(s, glb(r, t)) == glb(glb(s, r), t));
      CHECK(lub(s, glb(s, r)) == s);
      CHECK(leq(s, lub(s, r)));
      CHECK(leq(glb(s, r), r));
      CHECK(multiply(s, r) == multiply(r, s));
      // translation invariance of the order
      CHECK(lub(multiply(t, s), multiply(t, r)) == multiply(t, lub(s, r)));
      CHECK(quotient(multiply(s, r), s) == r);
    }
  }
}

TEST_CASE("enumerate is ascending and divisor complete") {
  const auto six = enumerate(SemigroupKind::NatMult, 6);
  std::vector<std::uint64_t> values;
  for (auto s : six) values.push_back(s.value);
  CHECK(values == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6});
  CHECK(enumerate(SemigroupKind::NatMult, 1).size() == 1);
  const auto three = enumerate(SemigroupKind::NatAdd, 3);
  CHECK(three.size() == 4);
  CHECK(three.elements().front() == a(0));
  const auto big = enumerate(SemigroupKind::NatMult, 200);
  for (auto s : big) {
    for (auto r : big) {
      if (leq(r, s)) CHECK(big.contains(r));
    }
  }
  CHECK(big.index_of(m(17)) == 16);
}

TEST_CASE("tail bounds cover the brute-force tail") {
  // N(s) = s, N_s = s: tail = sum_{s > B} s^{1 - beta}.
  const auto n = ScalingHomomorphism::power(1.0);
  const BasisGrowth g{SemigroupKind::NatMult, 1.0};
  CHECK(tail_bound(n, g, 3.0, 1000) == doctest::Approx(1e-3));
  CHECK(tail_bound(n, g, 4.0, 100) == doctest::Approx(5e-5));
  for (double beta : {2.5, 3.0, 4.0}) {
    for (std::uint64_t b : {10u, 100u, 1000u}) {
      double brute = 0.0;
      for (std::uint64_t s = b + 1; s <= 2'000'000; ++s) brute += std::pow(static_cast<double>(s), 1.0 - beta);
      const double bound = tail_bound(n, g, beta, b);
      CHECK(brute <= bound);
      const double complete = brute + std::pow(2e6 + 1.0, 2.0 - beta) / (beta - 2.0);
      CHECK(bound <= complete * std::pow(1.0 + 1.0 / static_cast<double>(b), beta - 2.0) * (1 + 1e-9));
    }
  }
  // N(n) = 2^n, N_n = 2^n on nat-add: geometric tail.
  const auto e = ScalingHomomorphism::exponential(2.0);
  const BasisGrowth ga{SemigroupKind::NatAdd, 2.0};
  double brute = 0.0;
  for (int k = 21; k < 200; ++k) brute += std::pow(2.0, -2.0 * k);
  CHECK(tail_bound(e, ga, 3.0, 20) == doctest::Approx(std::pow(2.0, -40.0) / (1.0 - 0.25)));
  CHECK(brute <= tail_bound(e, ga, 3.0, 20) * (1 + 1e-12));
  CHECK_THROWS_AS(tail_bound(n, g, 2.0, 100), DomainError);
}

TEST_CASE("critical exponents") {
  CHECK(critical_exponent(ScalingHomomorphism::power(1.0), {SemigroupKind::NatMult, 1.0}) ==
        doctest::Approx(2.0));
  CHECK(critical_exponent(ScalingHomomorphism::power(1.0), {SemigroupKind::NatMult, 2.0}) ==
        doctest::Approx(3.0));
  CHECK(critical_exponent(ScalingHomomorphism::exponential(2.0), {SemigroupKind::NatAdd, 2.0}) ==
        doctest::Approx(1.0));
  CHECK(critical_exponent(ScalingHomomorphism::exponential(4.0), {SemigroupKind::NatAdd, 2.0}) ==
        doctest::Approx(0.5));
}

TEST_CASE("scaling homomorphisms") {
  const auto n = ScalingHomomorphism::power(1.0);
  CHECK(n(m(6)) == doctest::Approx(n(m(2)) * n(m(3))));
  CHECK(n.weight(m(2), 3.0) == doctest::Approx(0.125));
  CHECK(n.injective_on(enumerate(SemigroupKind::NatMult, 50)));
  CHECK(ScalingHomomorphism::exponential(3.0)(a(2)) == doctest::Approx(9.0));
}

TEST_CASE("primes against trial division") {
  const auto ps = primes_up_to(500);
  std::vector<std::uint64_t> want;
  for (std::uint64_t n = 2; n <= 500; ++n) {
    if (is_prime_by_trial(n)) want.push_back(n);
  }
  CHECK(ps == want);
  CHECK(prime_divisors(360) == std::vector<std::uint64_t>{2, 3, 5});
  CHECK(prime_divisors(1).empty());
  CHECK(prime_divisors(97) == std::vector<std::uint64_t>{97});
}

}
