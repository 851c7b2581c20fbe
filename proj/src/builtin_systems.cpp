#include "ntkms/builtin_systems.hpp"

#include <sstream>

#include "ntkms/errors.hpp"

namespace ntkms {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t pos_mod(std::int64_t a, std::int64_t b) { return a - b * floor_div(a, b); }

std::uint64_t ipow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(out, base, &out)) throw DomainError("basis count overflows 64 bits");
  }
  return out;
}

// Systems X_s = A_{alpha_s} with a transfer operator L_s and a basis of
// monomials u^s_j. Subclasses give the closed-form left-action columns; the
// brute-force column <u_nu, a u_j> = L_s(u_nu^* a u_j) backs the self checks.
class EndomorphismSystem : public ProductSystem {
 public:
  virtual Monomial basis_monomial(SemigroupElement s, std::uint64_t j) const = 0;
  virtual std::optional<Monomial> transfer(SemigroupElement s, const Monomial& x) const = 0;

  ActionColumn brute_force_column(SemigroupElement s, const Monomial& a, std::uint64_t j) const {
    ActionColumn out;
    const auto right = mul(a, basis_monomial(s, j));
    for (std::uint64_t nu = 0; nu < basis_count(s); ++nu) {
      if (auto t = transfer(s, mul(adjoint(basis_monomial(s, nu)), right))) {
        out.push_back({nu, CoefficientElement(*t)});
      }
    }
    return out;
  }

  std::vector<SelfCheck> self_checks(const TruncationSet& trunc) const override {
    SelfCheck ortho;
    ortho.name = "basis orthonormal under transfer";
    SelfCheck closed;
    closed.name = "closed-form left action matches transfer";
    const auto unit = Monomial::unit(engine());
    for (auto s : trunc) {
      const auto n = basis_count(s);
      if (n > 64) continue;
      for (std::uint64_t j = 0; j < n; ++j) {
        for (std::uint64_t k = 0; k < n; ++k) {
          ++ortho.cases;
          auto t = transfer(s, mul(adjoint(basis_monomial(s, j)), basis_monomial(s, k)));
          const bool ok = j == k ? (t && *t == unit) : !t.has_value();
          if (!ok && ortho.pass) {
            ortho.pass = false;
            ortho.witness = "<u_" + std::to_string(j) + ", u_" + std::to_string(k) + "> in fiber " +
                            to_string(s);
          }
        }
        for (const auto& a : generators()) {
          ++closed.cases;
          const auto got = left_action_column(s, a, j);
          const auto want = brute_force_column(s, a, j);
          bool same = got.size() == want.size();
          for (std::size_t i = 0; same && i < got.size(); ++i) {
            same = got[i].row == want[i].row && got[i].value == want[i].value;
          }
          if (!same && closed.pass) {
            closed.pass = false;
            closed.witness = "fiber " + to_string(s) + ", a = " + to_string(a) + ", column " +
                             std::to_string(j);
          }
        }
      }
    }
    return {ortho, closed};
  }
};

class AffineToeplitz final : public EndomorphismSystem {
 public:
  std::string name() const override { return "affine-toeplitz"; }
  SemigroupKind semigroup() const override { return SemigroupKind::NatMult; }
  EngineSpec engine() const override { return EngineSpec::toeplitz(); }
  BasisGrowth growth() const override { return {SemigroupKind::NatMult, 1.0}; }
  std::vector<Monomial> generators() const override {
    return {Monomial::toeplitz(1, 0), Monomial::toeplitz(0, 1)};
  }

  std::uint64_t basis_count(SemigroupElement s) const override { return s.value; }
  std::uint64_t index_map(SemigroupElement s, SemigroupElement, std::uint64_t j,
                          std::uint64_t k) const override {
    return j + s.value * k;
  }
  std::pair<std::uint64_t, std::uint64_t> split_index(SemigroupElement s, SemigroupElement,
                                                      std::uint64_t i) const override {
    return {i % s.value, i / s.value};
  }

  Monomial basis_monomial(SemigroupElement, std::uint64_t j) const override {
    return Monomial::toeplitz(static_cast<std::int64_t>(j), 0);
  }
  std::optional<Monomial> transfer(SemigroupElement s, const Monomial& x) const override {
    return toeplitz_transfer(s.value, x);
  }

  ActionColumn left_action_column(SemigroupElement s, const Monomial& a,
                                  std::uint64_t j) const override {
    const auto r = static_cast<std::int64_t>(s.value);
    const std::int64_t nu = pos_mod(a.exps[0] - a.exps[1] + static_cast<std::int64_t>(j), r);
    const auto x = mul(mul(Monomial::toeplitz(0, nu), a), basis_monomial(s, j));
    return {{static_cast<std::uint64_t>(nu), CoefficientElement(*toeplitz_transfer(s.value, x))}};
  }

  // Every diagonal entry is a single monomial with difference (m - n)/s.
  Complex traced_diagonal(SemigroupElement s, const Monomial& a,
                          const TraceSpec& tau) const override {
    if (!tau.tracial()) return ProductSystem::traced_diagonal(s, a, tau);
    const std::int64_t diff = a.exps[0] - a.exps[1];
    const auto r = static_cast<std::int64_t>(s.value);
    if (diff % r != 0) return 0.0;
    const std::int64_t q = diff / r;
    const auto mono = q >= 0 ? Monomial::toeplitz(q, 0) : Monomial::toeplitz(0, -q);
    return static_cast<double>(r) * tau.moment(mono);
  }
  bool fiberwise_trace_vanishes(SemigroupElement s, const Monomial& a) const override {
    return (a.exps[0] - a.exps[1]) % static_cast<std::int64_t>(s.value) != 0;
  }

  std::optional<Monomial> single_generator() const override { return Monomial::toeplitz(1, 0); }
};

class LaurentDilation final : public EndomorphismSystem {
 public:
  LaurentDilation(std::string name, int d, bool all_axes)
      : name_(std::move(name)), d_(d), dilated_(all_axes ? d : 1) {}

  std::string name() const override { return name_; }
  SemigroupKind semigroup() const override { return SemigroupKind::NatMult; }
  EngineSpec engine() const override { return EngineSpec::laurent(d_); }
  BasisGrowth growth() const override {
    return {SemigroupKind::NatMult, static_cast<double>(dilated_)};
  }
  std::vector<Monomial> generators() const override {
    std::vector<Monomial> out;
    for (int i = 0; i < d_; ++i) {
      for (std::int64_t e : {1, -1}) {
        std::array<std::int64_t, kMaxLaurentDim> g{};
        g[i] = e;
        out.push_back(Monomial::laurent(std::span(g.data(), d_)));
      }
    }
    return out;
  }

  std::uint64_t basis_count(SemigroupElement s) const override { return ipow(s.value, dilated_); }

  std::uint64_t index_map(SemigroupElement s, SemigroupElement r, std::uint64_t j,
                          std::uint64_t k) const override {
    const auto gj = digits(s.value, j);
    const auto gk = digits(r.value, k);
    std::array<std::int64_t, kMaxLaurentDim> g{};
    for (int t = 0; t < dilated_; ++t) g[t] = gj[t] + static_cast<std::int64_t>(s.value) * gk[t];
    return encode(s.value * r.value, g);
  }
  std::pair<std::uint64_t, std::uint64_t> split_index(SemigroupElement s, SemigroupElement r,
                                                      std::uint64_t i) const override {
    const auto g = digits(s.value * r.value, i);
    std::array<std::int64_t, kMaxLaurentDim> lo{}, hi{};
    const auto p = static_cast<std::int64_t>(s.value);
    for (int t = 0; t < dilated_; ++t) {
      lo[t] = g[t] % p;
      hi[t] = g[t] / p;
    }
    return {encode(s.value, lo), encode(r.value, hi)};
  }

  Monomial basis_monomial(SemigroupElement s, std::uint64_t j) const override {
    const auto g = digits(s.value, j);
    return Monomial::laurent(std::span(g.data(), d_));
  }
  std::optional<Monomial> transfer(SemigroupElement s, const Monomial& x) const override {
    const auto p = static_cast<std::int64_t>(s.value);
    Monomial out = x;
    for (int t = 0; t < dilated_; ++t) {
      if (x.exps[t] % p != 0) return std::nullopt;
      out.exps[t] = x.exps[t] / p;
    }
    return out;
  }

  ActionColumn left_action_column(SemigroupElement s, const Monomial& a,
                                  std::uint64_t j) const override {
    const auto p = static_cast<std::int64_t>(s.value);
    const auto g = digits(s.value, j);
    std::array<std::int64_t, kMaxLaurentDim> nu{};
    Monomial value = a;
    for (int t = 0; t < dilated_; ++t) {
      const std::int64_t sum = a.exps[t] + g[t];
      nu[t] = pos_mod(sum, p);
      value.exps[t] = floor_div(sum, p);
    }
    return {{encode(s.value, nu), CoefficientElement(value)}};
  }

  // The diagonal is nonzero only when p divides every dilated exponent, and
  // then each of the N_p entries equals the transferred monomial.
  Complex traced_diagonal(SemigroupElement s, const Monomial& a,
                          const TraceSpec& tau) const override {
    auto t = transfer(s, a);
    if (!t) return 0.0;
    return static_cast<double>(basis_count(s)) * tau.moment(*t);
  }
  bool fiberwise_trace_vanishes(SemigroupElement s, const Monomial& a) const override {
    return !transfer(s, a).has_value();
  }

  std::optional<Monomial> single_generator() const override {
    if (dilated_ != 1) return std::nullopt;
    std::array<std::int64_t, kMaxLaurentDim> g{};
    g[0] = 1;
    return Monomial::laurent(std::span(g.data(), d_));
  }

 private:
  std::array<std::int64_t, kMaxLaurentDim> digits(std::uint64_t base, std::uint64_t index) const {
    std::array<std::int64_t, kMaxLaurentDim> g{};
    for (int t = 0; t < dilated_; ++t) {
      g[t] = static_cast<std::int64_t>(index % base);
      index /= base;
    }
    return g;
  }
  std::uint64_t encode(std::uint64_t base, const std::array<std::int64_t, kMaxLaurentDim>& g) const {
    std::uint64_t out = 0;
    for (int t = dilated_ - 1; t >= 0; --t) out = out * base + static_cast<std::uint64_t>(g[t]);
    return out;
  }

  std::string name_;
  int d_;
  int dilated_;
};

class Cuntz final : public ProductSystem {
 public:
  explicit Cuntz(int k) : k_(k) {}

  std::string name() const override { return "cuntz"; }
  SemigroupKind semigroup() const override { return SemigroupKind::NatAdd; }
  EngineSpec engine() const override { return EngineSpec::scalar(); }
  BasisGrowth growth() const override { return {SemigroupKind::NatAdd, static_cast<double>(k_)}; }
  std::vector<Monomial> generators() const override { return {Monomial::unit(engine())}; }

  std::uint64_t basis_count(SemigroupElement s) const override {
    return ipow(static_cast<std::uint64_t>(k_), s.value);
  }
  std::uint64_t index_map(SemigroupElement s, SemigroupElement, std::uint64_t j,
                          std::uint64_t l) const override {
    return j + basis_count(s) * l;
  }
  std::pair<std::uint64_t, std::uint64_t> split_index(SemigroupElement s, SemigroupElement,
                                                      std::uint64_t i) const override {
    const auto n = basis_count(s);
    return {i % n, i / n};
  }
  ActionColumn left_action_column(SemigroupElement, const Monomial&,
                                   std::uint64_t j) const override {
    return {{j, CoefficientElement::unit(engine())}};
  }
  Complex traced_diagonal(SemigroupElement s, const Monomial&, const TraceSpec&) const override {
    return static_cast<double>(basis_count(s));
  }
  bool fiberwise_trace_vanishes(SemigroupElement, const Monomial&) const override { return false; }

 private:
  int k_;
};

class Corrupted final : public ProductSystem {
 public:
  Corrupted(SystemPtr base, SemigroupElement s, SemigroupElement r, std::uint64_t i1,
            std::uint64_t i2)
      : base_(std::move(base)), s_(s), r_(r) {
    const auto ns = base_->basis_count(s);
    const auto nr = base_->basis_count(r);
    if (i1 >= ns * nr || i2 >= ns * nr) throw ConstructionError("corruption indices out of range");
    a_ = {i1 % ns, i1 / ns};
    b_ = {i2 % ns, i2 / ns};
    va_ = base_->index_map(s, r, a_.first, a_.second);
    vb_ = base_->index_map(s, r, b_.first, b_.second);
  }

  std::string name() const override { return base_->name() + "+corrupted"; }
  SemigroupKind semigroup() const override { return base_->semigroup(); }
  EngineSpec engine() const override { return base_->engine(); }
  BasisGrowth growth() const override { return base_->growth(); }
  std::vector<Monomial> generators() const override { return base_->generators(); }
  std::uint64_t basis_count(SemigroupElement s) const override { return base_->basis_count(s); }

  std::uint64_t index_map(SemigroupElement s, SemigroupElement r, std::uint64_t j,
                          std::uint64_t k) const override {
    if (s == s_ && r == r_) {
      if (std::make_pair(j, k) == a_) return vb_;
      if (std::make_pair(j, k) == b_) return va_;
    }
    return base_->index_map(s, r, j, k);
  }
  std::pair<std::uint64_t, std::uint64_t> split_index(SemigroupElement s, SemigroupElement r,
                                                      std::uint64_t i) const override {
    if (s == s_ && r == r_) {
      if (i == va_) return b_;
      if (i == vb_) return a_;
    }
    return base_->split_index(s, r, i);
  }
  ActionColumn left_action_column(SemigroupElement s, const Monomial& a,
                                  std::uint64_t j) const override {
    return base_->left_action_column(s, a, j);
  }

 private:
  SystemPtr base_;
  SemigroupElement s_, r_;
  std::pair<std::uint64_t, std::uint64_t> a_, b_;
  std::uint64_t va_ = 0, vb_ = 0;
};

}  // namespace

std::optional<Monomial> toeplitz_transfer(std::uint64_t r, const Monomial& x) {
  const auto rr = static_cast<std::int64_t>(r);
  const auto a = x.exps[0], b = x.exps[1];
  if ((a - b) % rr != 0) return std::nullopt;
  return Monomial::toeplitz((a + rr - 1) / rr, (b + rr - 1) / rr);
}

SystemPtr make_affine_toeplitz() { return std::make_shared<AffineToeplitz>(); }

SystemPtr make_additive_toeplitz() {
  return std::make_shared<LaurentDilation>("additive-toeplitz", 1, true);
}

SystemPtr make_lattice_dilation(int d, const std::string& style) {
  if (d < 1 || d > kMaxLaurentDim) {
    throw ConstructionError("lattice-dilation needs 1 <= d <= " + std::to_string(kMaxLaurentDim));
  }
  if (style != "diagonal" && style != "first-axis") {
    throw ConstructionError("lattice-dilation style must be 'diagonal' or 'first-axis'");
  }
  return std::make_shared<LaurentDilation>("lattice-dilation", d, style == "diagonal");
}

SystemPtr make_cuntz(int k) {
  if (k < 2 || k > 64) throw ConstructionError("cuntz needs 2 <= k <= 64");
  return std::make_shared<Cuntz>(k);
}

SystemPtr make_corrupted(SystemPtr base, SemigroupElement s, SemigroupElement r,
                         std::uint64_t i1, std::uint64_t i2) {
  return std::make_shared<Corrupted>(std::move(base), s, r, i1, i2);
}

SystemPtr make_system(const SystemSpec& spec) {
  if (spec.name == "affine-toeplitz") return make_affine_toeplitz();
  if (spec.name == "additive-toeplitz") return make_additive_toeplitz();
  if (spec.name == "lattice-dilation") return make_lattice_dilation(spec.d, spec.style);
  if (spec.name == "cuntz") return make_cuntz(spec.k);
  throw ConstructionError("unknown system '" + spec.name + "'");
}

std::vector<BuiltinInfo> builtin_systems() {
  return {
      {"affine-toeplitz", "nat-mult", "toeplitz", "",
       "X_s = T with alpha_s(S) = S^s, basis S^j, N_s = s"},
      {"additive-toeplitz", "nat-mult", "laurent(1)", "",
       "X_p = C(T) with alpha_p(z) = z^p, basis z^j, N_p = p"},
      {"lattice-dilation", "nat-mult", "laurent(d)", "d (1..4), style (diagonal|first-axis)",
       "C(T^d) dilated by p; diagonal: N_p = p^d, first-axis: N_p = p"},
      {"cuntz", "nat-add", "scalar", "k (>= 2)", "X_n = C^(k^n), word concatenation"},
  };
}

}  // namespace ntkms
