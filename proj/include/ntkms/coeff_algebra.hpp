#pragma once

// Exact arithmetic in monomial-spanned dense *-subalgebras of the coefficient
// algebra A. Three engines:
//
//   Toeplitz  monomials S^m S*^n of the Toeplitz algebra, S an isometry
//   Laurent   monomials z^g, g in Z^d, of C(T^d)
//   Scalar    the complex numbers, single monomial 1
//
// Every monomial has C*-norm at most 1, so the coefficient one-norm bounds
// the operator norm.

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>

namespace ntkms {

using Complex = std::complex<double>;

enum class EngineKind : std::uint8_t { Toeplitz, Laurent, Scalar };

inline constexpr int kMaxLaurentDim = 4;

struct EngineSpec {
  EngineKind kind = EngineKind::Scalar;
  int dim = 0;  // Laurent only

  auto operator<=>(const EngineSpec&) const = default;

  static EngineSpec toeplitz() { return {EngineKind::Toeplitz, 0}; }
  static EngineSpec laurent(int d);
  static EngineSpec scalar() { return {EngineKind::Scalar, 0}; }
};

std::string to_string(EngineSpec engine);

struct Monomial {
  EngineSpec engine;
  // Toeplitz: exps[0] = m, exps[1] = n for S^m S*^n. Laurent: exps[0..dim).
  std::array<std::int64_t, kMaxLaurentDim> exps{};

  auto operator<=>(const Monomial&) const = default;

  static Monomial unit(EngineSpec engine);
  static Monomial toeplitz(std::int64_t m, std::int64_t n);
  static Monomial laurent(std::span<const std::int64_t> gamma);
  static Monomial laurent1(std::int64_t k) { return laurent(std::span(&k, 1)); }

  bool is_unit() const;
};

Monomial mul(const Monomial& a, const Monomial& b);
Monomial adjoint(const Monomial& a);
std::string to_string(const Monomial& a);

class CoefficientElement {
 public:
  CoefficientElement() = default;
  explicit CoefficientElement(EngineSpec engine) : engine_(engine) {}
  CoefficientElement(const Monomial& m, Complex c = 1.0);

  static CoefficientElement unit(EngineSpec engine) { return {Monomial::unit(engine)}; }
  static CoefficientElement scalar(EngineSpec engine, Complex c) {
    return {Monomial::unit(engine), c};
  }

  EngineSpec engine() const { return engine_; }
  const std::map<Monomial, Complex>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  double one_norm() const;

  // Adds c * m; drops the entry when it cancels exactly.
  void add_term(const Monomial& m, Complex c);

  CoefficientElement& operator+=(const CoefficientElement& other);
  CoefficientElement& operator-=(const CoefficientElement& other);
  CoefficientElement& operator*=(Complex c);

  friend CoefficientElement operator+(CoefficientElement a, const CoefficientElement& b) {
    return a += b;
  }
  friend CoefficientElement operator-(CoefficientElement a, const CoefficientElement& b) {
    return a -= b;
  }
  friend CoefficientElement operator*(Complex c, CoefficientElement a) { return a *= c; }

  bool operator==(const CoefficientElement& other) const;

 private:
  EngineSpec engine_;
  std::map<Monomial, Complex> terms_;
};

CoefficientElement mul(const CoefficientElement& a, const CoefficientElement& b);
CoefficientElement adjoint(const CoefficientElement& a);

// Canonical text form, re-parsable by parse_coefficient (see dsl.hpp).
std::string to_string(const CoefficientElement& a);
std::string format_complex(Complex c);

}  // namespace ntkms
