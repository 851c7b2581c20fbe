#include "ntkms/fock_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "ntkms/errors.hpp"

namespace ntkms {

FockOracle::FockOracle(const NtAlgebra& algebra, std::uint64_t bound)
    : algebra_(algebra), trunc_(enumerate(algebra.system().semigroup(), bound)) {
  const auto& sys = algebra_.system();
  if (sys.engine().kind != EngineKind::Scalar) {
    throw MismatchError("the Fock oracle needs a product system over C, got " +
                        to_string(sys.engine()));
  }
  for (auto s : trunc_) {
    offsets_.push_back(dim_);
    dim_ += sys.basis_count(s);
    if (dim_ > kMaxDimension) {
      throw DomainError("Fock space over bound " + std::to_string(bound) + " exceeds " +
                        std::to_string(kMaxDimension) + " basis vectors");
    }
  }
}

SparseOperator FockOracle::creation(SemigroupElement s, std::uint64_t j) const {
  const auto& sys = algebra_.system();
  std::vector<Eigen::Triplet<Complex>> entries;
  for (auto r : trunc_) {
    const auto sr = multiply(s, r);
    if (!trunc_.contains(sr)) continue;
    const auto base = offset(r);
    const auto target = offset(sr);
    for (std::uint64_t k = 0; k < sys.basis_count(r); ++k) {
      entries.emplace_back(static_cast<int>(target + sys.index_map(s, r, j, k)),
                           static_cast<int>(base + k), 1.0);
    }
  }
  SparseOperator out(static_cast<int>(dim_), static_cast<int>(dim_));
  out.setFromTriplets(entries.begin(), entries.end());
  return out;
}

SparseOperator FockOracle::represent(const NTElement& x) const {
  if (x.engine() != algebra_.engine()) throw MismatchError("NT element from a different engine");
  SparseOperator out(static_cast<int>(dim_), static_cast<int>(dim_));
  for (const auto& [key, c] : x.terms()) {
    Complex scalar = 0.0;
    for (const auto& [m, coef] : c.terms()) scalar += coef;
    SparseOperator left = creation(key.s, key.j);
    SparseOperator right = creation(key.r, key.k).adjoint();
    out += scalar * SparseOperator(left * right);
  }
  out.prune(Complex(0.0));
  return out;
}

std::vector<std::size_t> FockOracle::interior(SemigroupElement reach) const {
  const auto& sys = algebra_.system();
  std::vector<std::size_t> out;
  for (auto q : trunc_) {
    if (!trunc_.contains(multiply(q, reach))) continue;
    for (std::uint64_t k = 0; k < sys.basis_count(q); ++k) out.push_back(offset(q) + k);
  }
  return out;
}

Complex FockOracle::oracle_state(const NTElement& x, double beta) const {
  const auto& sys = algebra_.system();
  const auto scaling = sys.default_scaling();
  const SparseOperator pi = represent(x);
  Complex num = 0.0;
  double den = 0.0;
  for (auto s : trunc_) {
    const double w = scaling.weight(s, beta);
    Complex diag = 0.0;
    for (std::uint64_t j = 0; j < sys.basis_count(s); ++j) {
      const auto p = static_cast<int>(offset(s) + j);
      diag += pi.coeff(p, p);
    }
    num += w * diag;
    den += w * static_cast<double>(sys.basis_count(s));
  }
  return num / den;
}

double column_deviation(const SparseOperator& a, const SparseOperator& b,
                        const std::vector<std::size_t>& columns) {
  const SparseOperator diff = a - b;
  double worst = 0.0;
  for (auto c : columns) {
    for (SparseOperator::InnerIterator it(diff, static_cast<int>(c)); it; ++it) {
      worst = std::max(worst, std::abs(it.value()));
    }
  }
  return worst;
}

CheckReport check_fock_multiplicative(const FockOracle& oracle, std::uint64_t seed,
                                      std::size_t samples, std::uint64_t max_fiber) {
  const auto& alg = oracle.algebra();
  Sampler sampler(alg, seed, max_fiber);
  ReportBuilder report("fock-multiplicative", seed);
  std::size_t columns = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const auto x = sampler.term();
    const auto y = sampler.term();
    const auto& kx = x.terms().begin()->first;
    const auto& ky = y.terms().begin()->first;
    const auto reach = multiply(multiply(kx.s, kx.r), multiply(ky.s, ky.r));
    const auto cols = oracle.interior(reach);
    columns += cols.size();
    const auto lhs = oracle.represent(alg.multiply(x, y));
    const SparseOperator rhs = oracle.represent(x) * oracle.represent(y);
    report.sample(column_deviation(lhs, rhs, cols), 1e-12, [&] {
      return "x = " + to_string(x) + "; y = " + to_string(y);
    });
  }
  report.note("dimension=" + std::to_string(oracle.dimension()) +
              " interior_columns=" + std::to_string(columns));
  return report.finish();
}

CheckReport check_nica_covariance(const FockOracle& oracle, std::uint64_t max_s) {
  const auto& alg = oracle.algebra();
  const auto& sys = alg.system();
  ReportBuilder report("nica-covariance", 0);
  for (auto s : enumerate(sys.semigroup(), max_s)) {
    for (auto r : enumerate(sys.semigroup(), max_s)) {
      const auto cols = oracle.interior(multiply(s, r));
      for (std::uint64_t j = 0; j < sys.basis_count(s); ++j) {
        const SparseOperator vs = oracle.creation(s, j).adjoint();
        for (std::uint64_t k = 0; k < sys.basis_count(r); ++k) {
          const SparseOperator lhs = vs * oracle.creation(r, k);
          const auto nf = alg.multiply(alg.adjoint(alg.i_basis(s, j)), alg.i_basis(r, k));
          report.sample(column_deviation(lhs, oracle.represent(nf), cols), 1e-12, [&] {
            return "i_" + to_string(s) + "(1_" + std::to_string(j) + ")* i_" + to_string(r) +
                   "(1_" + std::to_string(k) + ") vs " + to_string(nf);
          });
        }
      }
    }
  }
  report.note("dimension=" + std::to_string(oracle.dimension()));
  return report.finish();
}

CheckReport check_oracle_state(const FockOracle& oracle, const KmsEvaluator& ev,
                               std::uint64_t seed, std::size_t samples, std::uint64_t max_fiber) {
  const auto& alg = oracle.algebra();
  if (ev.params().trunc.bound() != oracle.truncation().bound()) {
    throw MismatchError("oracle and evaluator use different truncations");
  }
  Sampler sampler(alg, seed, max_fiber);
  ReportBuilder report("fock-oracle-state", seed);
  for (std::size_t i = 0; i < samples; ++i) {
    NTElement x = sampler.term();
    if (i % 2 == 0) x += sampler.core_term();
    if (i % 3 == 0) x = alg.multiply(x, alg.adjoint(x));
    const auto want = ev.kms_state(x);
    const auto got = oracle.oracle_state(x, ev.beta());
    report.sample(std::abs(got - want.value), 1e-12, [&] {
      return to_string(x) + ": oracle " + format_complex(got) + " vs kms " +
             format_complex(want.value);
    });
  }
  report.note("dimension=" + std::to_string(oracle.dimension()) +
              " beta=" + std::to_string(ev.beta()));
  return report.finish();
}

}  // namespace ntkms
