#include "ntkms/nt_element.hpp"

#include <cmath>

#include "ntkms/errors.hpp"

namespace ntkms {

bool NTElement::is_core() const {
  for (const auto& [key, c] : terms_) {
    if (!key.diagonal()) return false;
  }
  return true;
}

void NTElement::add_term(const TermKey& key, const CoefficientElement& c) {
  if (c.engine() != engine_) throw MismatchError("NT term: coefficient engine mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

NTElement& NTElement::operator+=(const NTElement& other) {
  for (const auto& [key, c] : other.terms_) add_term(key, c);
  return *this;
}

NTElement& NTElement::operator-=(const NTElement& other) {
  for (const auto& [key, c] : other.terms_) add_term(key, Complex(-1.0) * c);
  return *this;
}

NTElement& NTElement::operator*=(Complex c) {
  if (c == Complex{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, value] : terms_) value *= c;
  std::erase_if(terms_, [](const auto& kv) { return kv.second.is_zero(); });
  return *this;
}

bool NTElement::operator==(const NTElement& other) const {
  return engine_ == other.engine_ && terms_ == other.terms_;
}

std::string to_string(const NTElement& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [key, c] : x.terms()) {
    if (!out.empty()) out += " + ";
    out += "i[" + to_string(key.s) + "](" + to_string(c) + "@" + std::to_string(key.j) + ")";
    out += " adj(i[" + to_string(key.r) + "](1@" + std::to_string(key.k) + "))";
  }
  return out;
}

NtAlgebra::NtAlgebra(SystemPtr system, std::size_t term_budget)
    : system_(std::move(system)), budget_(term_budget) {
  if (!system_) throw ConstructionError("NtAlgebra needs a product system");
}

void NtAlgebra::check_budget(const NTElement& x) const {
  if (x.size() > budget_) {
    throw BudgetExceeded("normal form exceeded the term budget of " + std::to_string(budget_) +
                         " terms");
  }
}

void NtAlgebra::check_engine(const NTElement& x) const {
  if (x.engine() != engine()) throw MismatchError("NT element from a different coefficient engine");
}

NTElement NtAlgebra::unit() const { return i_e(CoefficientElement::unit(engine())); }

NTElement NtAlgebra::term(SemigroupElement s, std::uint64_t j, const CoefficientElement& c,
                          SemigroupElement r, std::uint64_t k) const {
  if (s.kind != system_->semigroup() || r.kind != system_->semigroup()) {
    throw MismatchError("fiber from a different semigroup instance");
  }
  if (j >= system_->basis_count(s) || k >= system_->basis_count(r)) {
    throw DomainError("basis index out of range");
  }
  NTElement out(engine());
  out.add_term({s, j, r, k}, c);
  return out;
}

NTElement NtAlgebra::i_e(const CoefficientElement& a) const {
  const auto e = system_->unit_fiber();
  return term(e, 0, a, e, 0);
}

NTElement NtAlgebra::i_basis(SemigroupElement s, std::uint64_t j,
                             const CoefficientElement& a) const {
  return term(s, j, a, system_->unit_fiber(), 0);
}

NTElement NtAlgebra::i_basis(SemigroupElement s, std::uint64_t j) const {
  return i_basis(s, j, CoefficientElement::unit(engine()));
}

NTElement NtAlgebra::i(const ModuleVector& xi) const {
  NTElement out(engine());
  for (std::uint64_t j = 0; j < xi.coords.size(); ++j) {
    out.add_term({xi.fiber, j, system_->unit_fiber(), 0}, xi.coords[j]);
  }
  return out;
}

NTElement NtAlgebra::monomial(const ModuleVector& xi, const ModuleVector& eta) const {
  NTElement out(engine());
  for (std::uint64_t j = 0; j < xi.coords.size(); ++j) {
    if (xi.coords[j].is_zero()) continue;
    for (std::uint64_t k = 0; k < eta.coords.size(); ++k) {
      if (eta.coords[k].is_zero()) continue;
      out.add_term({xi.fiber, j, eta.fiber, k}, mul(xi.coords[j], ntkms::adjoint(eta.coords[k])));
    }
  }
  return out;
}

NTElement NtAlgebra::adjoint(const NTElement& x) const {
  check_engine(x);
  NTElement out(engine());
  for (const auto& [key, c] : x.terms()) {
    out.add_term({key.r, key.k, key.s, key.j}, ntkms::adjoint(c));
  }
  return out;
}

NTElement NtAlgebra::star_product(const ModuleVector& eta, const ModuleVector& zeta) const {
  return multiply(adjoint(i(eta)), i(zeta));
}

NTElement NtAlgebra::multiply(const NTElement& x, const NTElement& y) const {
  check_engine(x);
  check_engine(y);
  const auto& sys = *system_;
  NTElement out(engine());
  for (const auto& [kx, c] : x.terms()) {
    for (const auto& [ky, d] : y.terms()) {
      // i_s(1_j) c [i_r(1_k)* i_g(1_l)] d i_h(1_m)*, with the bracket expanded
      // over t = r v g: the surviving indices i of X_t have r-part k and g-part l.
      const auto r = kx.r, g = ky.s;
      const auto t = lub(r, g);
      const auto g2 = quotient(t, r);
      const auto r2 = quotient(t, g);
      const auto dstar = ntkms::adjoint(d);
      for (std::uint64_t p = 0; p < sys.basis_count(g2); ++p) {
        const auto idx = sys.index_map(r, g2, kx.k, p);
        const auto [ig, q] = sys.split_index(g, r2, idx);
        if (ig != ky.j) continue;
        const auto left = sys.left_action_column(g2, c, p);
        if (left.empty()) continue;
        const auto right = sys.left_action_column(r2, dstar, q);
        const auto s_out = ntkms::multiply(kx.s, g2);
        const auto h_out = ntkms::multiply(ky.r, r2);
        for (const auto& lv : left) {
          for (const auto& rv : right) {
            out.add_term({s_out, sys.index_map(kx.s, g2, kx.j, lv.row), h_out,
                          sys.index_map(ky.r, r2, ky.k, rv.row)},
                         mul(lv.value, ntkms::adjoint(rv.value)));
          }
        }
        check_budget(out);
      }
    }
  }
  return out;
}

NTElement NtAlgebra::commutator(const NTElement& x, const NTElement& y) const {
  return multiply(x, y) - multiply(y, x);
}

NTElement NtAlgebra::cond_expectation(const NTElement& x) const {
  check_engine(x);
  NTElement out(engine());
  for (const auto& [key, c] : x.terms()) {
    if (key.diagonal()) out.add_term(key, c);
  }
  return out;
}

NTElement NtAlgebra::alpha(SemigroupElement s, const NTElement& y) const {
  if (!y.is_core()) throw DomainError("alpha_s is defined on the core only");
  NTElement out(engine());
  for (std::uint64_t j = 0; j < system_->basis_count(s); ++j) {
    const auto v = i_basis(s, j);
    out += multiply(multiply(v, y), adjoint(v));
    check_budget(out);
  }
  return out;
}

NTElement NtAlgebra::apply_dynamics(Complex z, const NTElement& x,
                                    const ScalingHomomorphism& n) const {
  check_engine(x);
  if (x.is_core()) return x;
  NTElement out(engine());
  for (const auto& [key, c] : x.terms()) {
    if (key.diagonal()) {
      out.add_term(key, c);
      continue;
    }
    const double log_ratio = n.log(key.s) - n.log(key.r);
    out.add_term(key, std::exp(Complex(0.0, 1.0) * z * log_ratio) * c);
  }
  return out;
}

NTElement NtAlgebra::sigma_i_beta(double beta, const NTElement& x,
                                  const ScalingHomomorphism& n) const {
  return apply_dynamics(Complex(0.0, beta), x, n);
}

}  // namespace ntkms
