#include "ntkms/product_system.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "ntkms/errors.hpp"

namespace ntkms {

CoefficientElement ActionMatrix::entry(std::uint64_t row, std::uint64_t col) const {
  for (const auto& e : columns_.at(col)) {
    if (e.row == row) return e.value;
  }
  return CoefficientElement(engine_);
}

ActionMatrix ActionMatrix::identity(EngineSpec engine, std::uint64_t dim) {
  ActionMatrix out(engine, dim);
  for (std::uint64_t j = 0; j < dim; ++j) {
    out.columns_[j].push_back({j, CoefficientElement::unit(engine)});
  }
  return out;
}

bool ActionMatrix::operator==(const ActionMatrix& other) const {
  if (engine_ != other.engine_ || dim() != other.dim()) return false;
  for (std::uint64_t j = 0; j < dim(); ++j) {
    const auto& a = columns_[j];
    const auto& b = other.columns_[j];
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].row != b[i].row || !(a[i].value == b[i].value)) return false;
    }
  }
  return true;
}

void accumulate(ActionColumn& column, std::uint64_t row, const CoefficientElement& value) {
  if (value.is_zero()) return;
  auto it = std::lower_bound(column.begin(), column.end(), row,
                             [](const ActionEntry& e, std::uint64_t r) { return e.row < r; });
  if (it != column.end() && it->row == row) {
    it->value += value;
    if (it->value.is_zero()) column.erase(it);
    return;
  }
  column.insert(it, ActionEntry{row, value});
}

ActionMatrix operator*(const ActionMatrix& a, const ActionMatrix& b) {
  if (a.dim() != b.dim()) throw MismatchError("action matrix dimension mismatch");
  ActionMatrix out(a.engine(), a.dim());
  for (std::uint64_t j = 0; j < b.dim(); ++j) {
    for (const auto& bk : b.column(j)) {
      for (const auto& ak : a.column(bk.row)) {
        accumulate(out.column(j), ak.row, mul(ak.value, bk.value));
      }
    }
  }
  return out;
}

ActionMatrix adjoint(const ActionMatrix& a) {
  ActionMatrix out(a.engine(), a.dim());
  for (std::uint64_t j = 0; j < a.dim(); ++j) {
    for (const auto& e : a.column(j)) accumulate(out.column(e.row), j, adjoint(e.value));
  }
  return out;
}

Complex ProductSystem::traced_diagonal(SemigroupElement s, const Monomial& a,
                                       const TraceSpec& tau) const {
  Complex total = 0.0;
  const std::uint64_t n = basis_count(s);
  for (std::uint64_t j = 0; j < n; ++j) {
    for (const auto& e : left_action_column(s, a, j)) {
      if (e.row == j) total += tau.evaluate(e.value);
    }
  }
  return total;
}

bool ProductSystem::fiberwise_trace_vanishes(SemigroupElement s, const Monomial& a) const {
  return fiberwise_trace(*this, s, CoefficientElement(a)).is_zero();
}

std::shared_ptr<const ActionMatrix> ProductSystem::left_action(SemigroupElement s,
                                                               const Monomial& a) const {
  const auto key = std::make_pair(s, a);
  {
    std::shared_lock lock(cache_mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  auto built = std::make_shared<ActionMatrix>(engine(), basis_count(s));
  for (std::uint64_t j = 0; j < built->dim(); ++j) built->column(j) = left_action_column(s, a, j);
  std::unique_lock lock(cache_mutex_);
  auto [it, inserted] = cache_.try_emplace(key, std::move(built));
  return it->second;
}

ActionColumn ProductSystem::left_action_column(SemigroupElement s, const CoefficientElement& a,
                                               std::uint64_t j) const {
  ActionColumn out;
  for (const auto& [m, c] : a.terms()) {
    for (const auto& e : left_action(s, m)->column(j)) accumulate(out, e.row, c * e.value);
  }
  return out;
}

ActionMatrix ProductSystem::left_action(SemigroupElement s, const CoefficientElement& a) const {
  ActionMatrix out(engine(), basis_count(s));
  for (std::uint64_t j = 0; j < out.dim(); ++j) out.column(j) = left_action_column(s, a, j);
  return out;
}

ModuleVector ModuleVector::zero(const ProductSystem& sys, SemigroupElement s) {
  return {s, std::vector<CoefficientElement>(sys.basis_count(s), CoefficientElement(sys.engine()))};
}

ModuleVector ModuleVector::basis(const ProductSystem& sys, SemigroupElement s, std::uint64_t j,
                                 const CoefficientElement& a) {
  auto out = zero(sys, s);
  out.coords.at(j) = a;
  return out;
}

ModuleVector ModuleVector::basis(const ProductSystem& sys, SemigroupElement s, std::uint64_t j) {
  return basis(sys, s, j, CoefficientElement::unit(sys.engine()));
}

CoefficientElement inner_product(const ProductSystem& sys, const ModuleVector& xi,
                                 const ModuleVector& eta) {
  if (xi.fiber != eta.fiber) throw MismatchError("inner product across different fibers");
  CoefficientElement out(sys.engine());
  for (std::size_t j = 0; j < xi.coords.size(); ++j) {
    out += mul(adjoint(xi.coords[j]), eta.coords[j]);
  }
  return out;
}

ModuleVector left_act(const ProductSystem& sys, const CoefficientElement& a,
                      const ModuleVector& xi) {
  if (a.engine() != sys.engine()) throw MismatchError("left action: engine mismatch");
  auto out = ModuleVector::zero(sys, xi.fiber);
  if (xi.coords.size() != out.coords.size()) throw MismatchError("left action: fiber mismatch");
  for (std::uint64_t j = 0; j < xi.coords.size(); ++j) {
    if (xi.coords[j].is_zero()) continue;
    for (const auto& e : sys.left_action_column(xi.fiber, a, j)) {
      out.coords[e.row] += mul(e.value, xi.coords[j]);
    }
  }
  return out;
}

ModuleVector right_act(const ModuleVector& xi, const CoefficientElement& a) {
  ModuleVector out = xi;
  for (auto& c : out.coords) c = mul(c, a);
  return out;
}

ModuleVector module_product(const ProductSystem& sys, const ModuleVector& xi,
                            const ModuleVector& eta) {
  const auto s = xi.fiber;
  const auto r = eta.fiber;
  auto out = ModuleVector::zero(sys, multiply(s, r));
  for (std::uint64_t j = 0; j < xi.coords.size(); ++j) {
    if (xi.coords[j].is_zero()) continue;
    // 1^s_j . a_j (x) eta = 1^s_j (x) phi_r(a_j) eta
    auto moved = left_act(sys, xi.coords[j], eta);
    for (std::uint64_t nu = 0; nu < moved.coords.size(); ++nu) {
      if (moved.coords[nu].is_zero()) continue;
      out.coords[sys.index_map(s, r, j, nu)] += moved.coords[nu];
    }
  }
  return out;
}

CoefficientElement fiberwise_trace(const ProductSystem& sys, SemigroupElement s,
                                   const CoefficientElement& a) {
  CoefficientElement out(sys.engine());
  const std::uint64_t n = sys.basis_count(s);
  for (std::uint64_t j = 0; j < n; ++j) {
    for (const auto& e : sys.left_action_column(s, a, j)) {
      if (e.row == j) out += e.value;
    }
  }
  return out;
}

bool ValidationReport::ok() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
}

const ValidationEntry* ValidationReport::first_failure() const {
  for (const auto& e : entries) {
    if (!e.pass) return &e;
  }
  return nullptr;
}

namespace {

class EntryBuilder {
 public:
  explicit EntryBuilder(std::string name) { entry_.check = std::move(name); }

  void count() { ++entry_.cases; }
  bool failed() const { return !entry_.pass; }
  void fail(const std::string& witness) {
    if (entry_.pass) entry_.witness = witness;
    entry_.pass = false;
  }
  ValidationEntry done() { return std::move(entry_); }

 private:
  ValidationEntry entry_;
};

std::string describe(const ActionMatrix& m) {
  std::ostringstream out;
  out << "[";
  for (std::uint64_t j = 0; j < m.dim(); ++j) {
    for (const auto& e : m.column(j)) {
      out << " (" << e.row << "," << j << ")=" << to_string(e.value);
    }
  }
  out << " ]";
  return out.str();
}

}  // namespace

ValidationReport validate(const ProductSystem& sys, const TruncationSet& trunc,
                          const std::vector<Monomial>& generators) {
  ValidationReport report;
  const auto e = sys.unit_fiber();
  const auto& fibers = trunc.elements();
  const auto engine = sys.engine();

  {
    EntryBuilder b("basis counts multiplicative");
    b.count();
    if (sys.basis_count(e) != 1) b.fail("N_e = " + std::to_string(sys.basis_count(e)));
    for (auto s : fibers) {
      for (auto r : fibers) {
        b.count();
        const auto lhs = sys.basis_count(multiply(s, r));
        const auto rhs = sys.basis_count(s) * sys.basis_count(r);
        if (lhs != rhs) {
          b.fail("N_" + to_string(multiply(s, r)) + " = " + std::to_string(lhs) + " but N_" +
                 to_string(s) + " N_" + to_string(r) + " = " + std::to_string(rhs));
        }
      }
    }
    report.entries.push_back(b.done());
  }

  {
    EntryBuilder b("index maps bijective");
    for (auto s : fibers) {
      for (auto r : fibers) {
        const auto ns = sys.basis_count(s), nr = sys.basis_count(r);
        const auto nsr = sys.basis_count(multiply(s, r));
        std::vector<bool> hit(nsr, false);
        for (std::uint64_t j = 0; j < ns; ++j) {
          for (std::uint64_t k = 0; k < nr; ++k) {
            b.count();
            const auto i = sys.index_map(s, r, j, k);
            std::ostringstream w;
            w << "m_{" << to_string(s) << "," << to_string(r) << "}(" << j << "," << k
              << ") = " << i;
            if (i >= nsr) {
              b.fail(w.str() + " out of range");
            } else if (hit[i]) {
              b.fail(w.str() + " repeated");
            } else {
              hit[i] = true;
            }
            if (i < nsr && sys.split_index(s, r, i) != std::make_pair(j, k)) {
              b.fail(w.str() + " not inverted by split_index");
            }
          }
        }
      }
    }
    report.entries.push_back(b.done());
  }

  {
    EntryBuilder b("index maps unital");
    for (auto s : fibers) {
      for (std::uint64_t j = 0; j < sys.basis_count(s); ++j) {
        b.count();
        if (sys.index_map(s, e, j, 0) != j || sys.index_map(e, s, 0, j) != j) {
          b.fail("m with identity fiber moves index " + std::to_string(j) + " in fiber " +
                 to_string(s));
        }
      }
    }
    report.entries.push_back(b.done());
  }

  {
    EntryBuilder b("index maps associative");
    for (auto s : fibers) {
      for (auto r : fibers) {
        for (auto q : fibers) {
          const auto sr = multiply(s, r), rq = multiply(r, q);
          const auto ns = sys.basis_count(s), nr = sys.basis_count(r), nq = sys.basis_count(q);
          for (std::uint64_t j = 0; j < ns && !b.failed(); ++j) {
            for (std::uint64_t k = 0; k < nr; ++k) {
              for (std::uint64_t l = 0; l < nq; ++l) {
                b.count();
                const auto lhs = sys.index_map(sr, q, sys.index_map(s, r, j, k), l);
                const auto rhs = sys.index_map(s, rq, j, sys.index_map(r, q, k, l));
                if (lhs != rhs) {
                  std::ostringstream w;
                  w << "s=" << to_string(s) << " r=" << to_string(r) << " q=" << to_string(q)
                    << " (j,k,l)=(" << j << "," << k << "," << l << "): " << lhs << " vs " << rhs;
                  b.fail(w.str());
                }
              }
            }
          }
        }
      }
    }
    report.entries.push_back(b.done());
  }

  std::vector<Monomial> with_unit = generators;
  with_unit.push_back(Monomial::unit(engine));

  {
    EntryBuilder b("left action unital");
    for (auto s : fibers) {
      b.count();
      const auto got = sys.left_action(s, Monomial::unit(engine));
      if (!(*got == ActionMatrix::identity(engine, sys.basis_count(s)))) {
        b.fail("L_" + to_string(s) + "(1) = " + describe(*got));
      }
    }
    report.entries.push_back(b.done());
  }

  {
    EntryBuilder b("left action multiplicative");
    for (auto s : fibers) {
      for (const auto& a : with_unit) {
        for (const auto& c : with_unit) {
          b.count();
          const auto lhs = sys.left_action(s, mul(a, c));
          const auto rhs = *sys.left_action(s, a) * *sys.left_action(s, c);
          if (!(*lhs == rhs)) {
            b.fail("L_" + to_string(s) + "(" + to_string(a) + " * " + to_string(c) +
                   ") != product: " + describe(*lhs) + " vs " + describe(rhs));
          }
        }
      }
    }
    report.entries.push_back(b.done());
  }

  {
    EntryBuilder b("left action adjoint-preserving");
    for (auto s : fibers) {
      for (const auto& a : with_unit) {
        b.count();
        const auto lhs = sys.left_action(s, adjoint(a));
        const auto rhs = adjoint(*sys.left_action(s, a));
        if (!(*lhs == rhs)) {
          b.fail("L_" + to_string(s) + "(" + to_string(a) + "*) != L_" + to_string(s) + "(" +
                 to_string(a) + ")*");
        }
      }
    }
    report.entries.push_back(b.done());
  }

  {
    EntryBuilder b("fiber coherence");
    for (auto s : fibers) {
      for (auto r : fibers) {
        const auto sr = multiply(s, r);
        const auto ns = sys.basis_count(s), nr = sys.basis_count(r);
        for (const auto& a : generators) {
          if (b.failed()) break;
          const auto direct = sys.left_action(sr, a);
          const auto outer = sys.left_action(s, a);
          ActionMatrix composed(engine, sys.basis_count(sr));
          for (std::uint64_t j = 0; j < ns; ++j) {
            for (std::uint64_t k = 0; k < nr; ++k) {
              auto& col = composed.column(sys.index_map(s, r, j, k));
              for (const auto& outer_entry : outer->column(j)) {
                for (const auto& inner : sys.left_action_column(r, outer_entry.value, k)) {
                  accumulate(col, sys.index_map(s, r, outer_entry.row, inner.row), inner.value);
                }
              }
            }
          }
          b.count();
          if (!(*direct == composed)) {
            b.fail("s=" + to_string(s) + " r=" + to_string(r) + " a=" + to_string(a) +
                   ": L_sr(a) = " + describe(*direct) + " vs " + describe(composed));
          }
        }
      }
    }
    report.entries.push_back(b.done());
  }

  if (auto z = sys.single_generator()) {
    EntryBuilder b("singly generated");
    for (auto s : fibers) {
      Monomial power = Monomial::unit(engine);
      for (std::uint64_t j = 0; j < sys.basis_count(s); ++j) {
        b.count();
        auto col = sys.left_action(s, power)->column(0);
        if (col.size() != 1 || col[0].row != j || !(col[0].value == CoefficientElement::unit(engine))) {
          b.fail("phi_" + to_string(s) + "(" + to_string(power) + ") 1_0 != 1_" + std::to_string(j));
        }
        power = mul(power, *z);
      }
    }
    report.entries.push_back(b.done());
  }

  for (auto& check : sys.self_checks(trunc)) {
    report.entries.push_back({check.name, check.pass, check.cases, check.witness});
  }
  return report;
}

CoprimeReport check_coprime_pairs(const ProductSystem& sys, const TruncationSet& trunc) {
  // The implication fails exactly when two distinct indices i1 != i2 of X_{sr}
  // share both the X_s-component j (via m_{s,r}) and the X_r-component l (via
  // m_{r,s}); the search below is exhaustive over that reformulation.
  CoprimeReport report;
  const auto e = sys.unit_fiber();
  for (auto s : trunc) {
    for (auto r : trunc) {
      if (glb(s, r) != e) continue;
      ++report.pairs_checked;
      const auto n = sys.basis_count(multiply(s, r));
      std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> seen;
      for (std::uint64_t i = 0; i < n; ++i) {
        const auto [j, m] = sys.split_index(s, r, i);
        const auto [l, g] = sys.split_index(r, s, i);
        auto [it, inserted] = seen.try_emplace({j, l}, i);
        if (inserted) continue;
        report.holds = false;
        // it->second = m_{s,r}(j, m0) = m_{r,s}(l, g0) and i = m_{s,r}(j, m) = m_{r,s}(l, g)
        const auto m0 = sys.split_index(s, r, it->second).second;
        const auto g0 = sys.split_index(r, s, it->second).second;
        std::ostringstream w;
        w << "s=" << to_string(s) << " r=" << to_string(r) << " j=" << j << " l=" << l
          << " m=" << m0 << " n=" << m << " g=" << g0 << " h=" << g;
        if (report.witnesses.size() < 8) report.witnesses.push_back(w.str());
      }
    }
  }
  return report;
}

}  // namespace ntkms
