#include "ntkms/coeff_algebra.hpp"

#include <algorithm>
#include <cstdio>

#include "ntkms/errors.hpp"

namespace ntkms {

namespace {

void require_same(EngineSpec a, EngineSpec b) {
  if (a != b) throw MismatchError("engine mismatch: " + to_string(a) + " vs " + to_string(b));
}

}  // namespace

EngineSpec EngineSpec::laurent(int d) {
  if (d < 1 || d > kMaxLaurentDim) {
    throw ConstructionError("Laurent dimension must lie in [1, " + std::to_string(kMaxLaurentDim) +
                            "]");
  }
  return {EngineKind::Laurent, d};
}

std::string to_string(EngineSpec engine) {
  switch (engine.kind) {
    case EngineKind::Toeplitz:
      return "toeplitz";
    case EngineKind::Laurent:
      return "laurent(" + std::to_string(engine.dim) + ")";
    case EngineKind::Scalar:
      return "scalar";
  }
  return "?";
}

Monomial Monomial::unit(EngineSpec engine) { return Monomial{engine, {}}; }

Monomial Monomial::toeplitz(std::int64_t m, std::int64_t n) {
  if (m < 0 || n < 0) throw DomainError("Toeplitz exponents must be nonnegative");
  Monomial out{EngineSpec::toeplitz(), {}};
  out.exps[0] = m;
  out.exps[1] = n;
  return out;
}

Monomial Monomial::laurent(std::span<const std::int64_t> gamma) {
  Monomial out{EngineSpec::laurent(static_cast<int>(gamma.size())), {}};
  std::copy(gamma.begin(), gamma.end(), out.exps.begin());
  return out;
}

bool Monomial::is_unit() const { return exps == std::array<std::int64_t, kMaxLaurentDim>{}; }

Monomial mul(const Monomial& a, const Monomial& b) {
  require_same(a.engine, b.engine);
  Monomial out{a.engine, {}};
  switch (a.engine.kind) {
    case EngineKind::Toeplitz: {
      // (S^m S*^n)(S^p S*^q) via S*S = 1
      const auto m = a.exps[0], n = a.exps[1], p = b.exps[0], q = b.exps[1];
      if (p >= n) {
        out.exps[0] = m + p - n;
        out.exps[1] = q;
      } else {
        out.exps[0] = m;
        out.exps[1] = q + n - p;
      }
      break;
    }
    case EngineKind::Laurent:
      for (int i = 0; i < a.engine.dim; ++i) out.exps[i] = a.exps[i] + b.exps[i];
      break;
    case EngineKind::Scalar:
      break;
  }
  return out;
}

Monomial adjoint(const Monomial& a) {
  Monomial out = a;
  switch (a.engine.kind) {
    case EngineKind::Toeplitz:
      std::swap(out.exps[0], out.exps[1]);
      break;
    case EngineKind::Laurent:
      for (int i = 0; i < a.engine.dim; ++i) out.exps[i] = -a.exps[i];
      break;
    case EngineKind::Scalar:
      break;
  }
  return out;
}

std::string to_string(const Monomial& a) {
  if (a.is_unit()) return "1";
  std::string out;
  auto append = [&](const std::string& piece) {
    if (!out.empty()) out += ' ';
    out += piece;
  };
  switch (a.engine.kind) {
    case EngineKind::Toeplitz:
      append("S^" + std::to_string(a.exps[0]));
      append("S*^" + std::to_string(a.exps[1]));
      break;
    case EngineKind::Laurent:
      for (int i = 0; i < a.engine.dim; ++i) {
        if (a.exps[i] != 0) append("z" + std::to_string(i + 1) + "^" + std::to_string(a.exps[i]));
      }
      break;
    case EngineKind::Scalar:
      break;
  }
  return out;
}

CoefficientElement::CoefficientElement(const Monomial& m, Complex c) : engine_(m.engine) {
  add_term(m, c);
}

double CoefficientElement::one_norm() const {
  double total = 0.0;
  for (const auto& [m, c] : terms_) total += std::abs(c);
  return total;
}

void CoefficientElement::add_term(const Monomial& m, Complex c) {
  require_same(engine_, m.engine);
  if (c == Complex{}) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second == Complex{}) terms_.erase(it);
}

CoefficientElement& CoefficientElement::operator+=(const CoefficientElement& other) {
  require_same(engine_, other.engine_);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

CoefficientElement& CoefficientElement::operator-=(const CoefficientElement& other) {
  require_same(engine_, other.engine_);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

CoefficientElement& CoefficientElement::operator*=(Complex c) {
  if (c == Complex{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, value] : terms_) value *= c;
  std::erase_if(terms_, [](const auto& kv) { return kv.second == Complex{}; });
  return *this;
}

bool CoefficientElement::operator==(const CoefficientElement& other) const {
  return engine_ == other.engine_ && terms_ == other.terms_;
}

CoefficientElement mul(const CoefficientElement& a, const CoefficientElement& b) {
  require_same(a.engine(), b.engine());
  CoefficientElement out(a.engine());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) out.add_term(mul(ma, mb), ca * cb);
  }
  return out;
}

CoefficientElement adjoint(const CoefficientElement& a) {
  CoefficientElement out(a.engine());
  for (const auto& [m, c] : a.terms()) out.add_term(adjoint(m), std::conj(c));
  return out;
}

std::string format_complex(Complex c) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", c.real() + 0.0, c.imag() + 0.0);
  return buf;
}

std::string to_string(const CoefficientElement& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : a.terms()) {
    if (!out.empty()) out += " + ";
    out += format_complex(c);
    if (!m.is_unit()) out += " " + to_string(m);
  }
  return out;
}

}  // namespace ntkms
