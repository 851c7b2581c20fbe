#include "ntkms/dsl.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <string>

#include "ntkms/errors.hpp"

namespace ntkms {

namespace {

class Parser {
 public:
  Parser(std::string_view text, EngineSpec engine, const NtAlgebra* algebra)
      : text_(text), engine_(engine), algebra_(algebra) {}

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }
  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(std::string_view token) {
    skip();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }
  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }
  [[noreturn]] void fail(const std::string& message) { throw ParseError(message, pos_); }

  void finish() {
    if (!at_end()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
  }

  // Unsigned decimal integer.
  std::uint64_t integer() {
    skip();
    std::uint64_t value = 0;
    const auto* begin = text_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(begin, text_.data() + text_.size(), value);
    if (ec != std::errc{} || ptr == begin) fail("expected a nonnegative integer");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  std::int64_t signed_integer() {
    const bool negative = accept("-");
    if (!negative) accept("+");
    const auto magnitude = integer();
    if (magnitude > static_cast<std::uint64_t>(INT64_MAX)) fail("exponent out of range");
    return negative ? -static_cast<std::int64_t>(magnitude) : static_cast<std::int64_t>(magnitude);
  }

  // Unsigned real number, or nullopt without consuming input.
  std::optional<double> real() {
    skip();
    if (pos_ >= text_.size()) return std::nullopt;
    const char c = text_[pos_];
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '.') return std::nullopt;
    double value = 0.0;
    const auto* begin = text_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(begin, text_.data() + text_.size(), value);
    if (ec != std::errc{} || ptr == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  // The imaginary unit suffix: an 'i' that does not start "i[".
  bool imaginary_suffix() {
    const auto save = pos_;
    if (!accept("i")) return false;
    if (peek() == '[') {
      pos_ = save;
      return false;
    }
    return true;
  }

  // number ["i"] | "i"
  std::optional<Complex> bare_scalar() {
    if (auto v = real()) return imaginary_suffix() ? Complex(0.0, *v) : Complex(*v, 0.0);
    const auto save = pos_;
    if (accept("i") && peek() != '[' && peek() != '(') return Complex(0.0, 1.0);
    pos_ = save;
    return std::nullopt;
  }

  // "(" [sign] part { sign part } ")" where part is a bare scalar.
  std::optional<Complex> paren_scalar() {
    const auto save = pos_;
    if (!accept("(")) return std::nullopt;
    Complex total = 0.0;
    bool first = true;
    while (true) {
      double sign = 1.0;
      if (accept("-")) {
        sign = -1.0;
      } else if (!accept("+") && !first) {
        break;
      }
      const auto part = bare_scalar();
      if (!part) {
        pos_ = save;
        return std::nullopt;
      }
      total += sign * *part;
      first = false;
    }
    if (!accept(")")) {
      pos_ = save;
      return std::nullopt;
    }
    return total;
  }

  std::optional<Complex> scalar() {
    if (auto c = paren_scalar()) return c;
    return bare_scalar();
  }

  // ----- coefficients

  CoefficientElement coefficient() {
    CoefficientElement total(engine_);
    double sign = accept("-") ? -1.0 : (accept("+"), 1.0);
    total += sign * coefficient_term();
    while (true) {
      if (accept("+")) {
        total += coefficient_term();
      } else if (accept("-")) {
        total -= coefficient_term();
      } else {
        break;
      }
    }
    return total;
  }

  bool starts_coefficient_factor() {
    const char c = peek();
    return c == 'S' || c == 'z' || c == '(' || c == '.' || c == 'i' ||
           std::isdigit(static_cast<unsigned char>(c));
  }

  CoefficientElement coefficient_term() {
    if (!starts_coefficient_factor()) fail("expected a coefficient");
    CoefficientElement out = CoefficientElement::unit(engine_);
    bool any = false;
    while (starts_coefficient_factor()) {
      const auto save = pos_;
      auto f = coefficient_factor();
      if (!f) {
        pos_ = save;
        break;
      }
      out = mul(out, *f);
      any = true;
      if (accept("*")) continue;  // explicit product after a scalar or group
    }
    if (!any) fail("expected a coefficient");
    return out;
  }

  std::optional<CoefficientElement> coefficient_factor() {
    if (auto c = scalar()) return CoefficientElement::scalar(engine_, *c);
    skip();
    const auto start = pos_;
    if (accept("(")) {
      auto inner = coefficient();
      expect(")");
      return power(inner, start);
    }
    if (accept("S")) {
      if (engine_.kind != EngineKind::Toeplitz) {
        pos_ = start;
        fail("S is not a generator of the " + to_string(engine_) + " coefficient algebra");
      }
      const bool star = accept("*");
      std::int64_t n = 1;
      if (accept("^")) n = signed_integer();
      if (n < 0) fail("negative power of an isometry");
      return CoefficientElement(star ? Monomial::toeplitz(0, n) : Monomial::toeplitz(n, 0));
    }
    if (accept("z")) {
      if (engine_.kind != EngineKind::Laurent) {
        pos_ = start;
        fail("z is not a generator of the " + to_string(engine_) + " coefficient algebra");
      }
      const auto axis = integer();
      if (axis < 1 || axis > static_cast<std::uint64_t>(engine_.dim)) {
        fail("coordinate z" + std::to_string(axis) + " outside dimension " +
             std::to_string(engine_.dim));
      }
      std::int64_t n = 1;
      if (accept("^")) n = signed_integer();
      std::array<std::int64_t, kMaxLaurentDim> g{};
      g[axis - 1] = n;
      return CoefficientElement(Monomial::laurent(std::span(g.data(), engine_.dim)));
    }
    return std::nullopt;
  }

  CoefficientElement power(const CoefficientElement& base, std::size_t start) {
    if (!accept("^")) return base;
    const auto n = signed_integer();
    if (n < 0) {
      pos_ = start;
      fail("negative power of a compound coefficient");
    }
    auto out = CoefficientElement::unit(engine_);
    for (std::int64_t i = 0; i < n; ++i) out = mul(out, base);
    return out;
  }

  // ----- NT elements

  NTElement element() {
    const auto& alg = *algebra_;
    NTElement total = alg.zero();
    if (accept("-")) {
      total -= term();
    } else {
      accept("+");
      total += term();
    }
    while (true) {
      if (accept("+")) {
        total += term();
      } else if (accept("-")) {
        total -= term();
      } else {
        break;
      }
    }
    return total;
  }

  bool starts_factor() {
    skip();
    const auto rest = text_.substr(pos_);
    return rest.starts_with("i[") || rest.starts_with("adj(") || rest.starts_with("alpha[") ||
           rest.starts_with("E(") || rest.starts_with("(");
  }

  NTElement term() {
    const auto& alg = *algebra_;
    Complex c = 1.0;
    bool scaled = false;
    if (auto s = scalar()) {
      c = *s;
      scaled = true;
      accept("*");
    }
    if (!starts_factor()) {
      if (scaled) return c * alg.unit();
      fail("expected a term");
    }
    NTElement out = factor();
    while (true) {
      const auto save = pos_;
      const bool star = accept("*");
      if (!starts_factor()) {
        pos_ = save;
        break;
      }
      (void)star;
      out = alg.multiply(out, factor());
    }
    if (scaled) out *= c;
    return out;
  }

  SemigroupElement fiber() {
    const auto start = pos_;
    const auto v = integer();
    try {
      return algebra_->system().element(v);
    } catch (const std::exception& e) {
      pos_ = start;
      fail(e.what());
    }
  }

  NTElement factor() {
    const auto& alg = *algebra_;
    skip();
    const auto start = pos_;
    if (accept("i[")) {
      const auto s = fiber();
      expect("]");
      expect("(");
      NTElement out = alg.zero();
      do {
        const auto c = coefficient();
        expect("@");
        const auto index_pos = pos_;
        const auto j = integer();
        if (j >= alg.system().basis_count(s)) {
          pos_ = index_pos;
          fail("basis index " + std::to_string(j) + " outside fiber " + to_string(s));
        }
        out += alg.i_basis(s, j, c);
      } while (accept(","));
      expect(")");
      return out;
    }
    if (accept("adj(")) {
      auto inner = element();
      expect(")");
      return alg.adjoint(inner);
    }
    if (accept("alpha[")) {
      const auto s = fiber();
      expect("]");
      expect("(");
      auto inner = element();
      expect(")");
      if (!inner.is_core()) {
        pos_ = start;
        fail("alpha applies to core elements only");
      }
      return alg.alpha(s, inner);
    }
    if (accept("E(")) {
      auto inner = element();
      expect(")");
      return alg.cond_expectation(inner);
    }
    if (accept("(")) {
      auto inner = element();
      expect(")");
      return inner;
    }
    fail("expected i[..], adj(..), alpha[..](..), E(..) or a parenthesized element");
  }

  std::size_t pos_ = 0;

 private:
  std::string_view text_;
  EngineSpec engine_;
  const NtAlgebra* algebra_;
};

}  // namespace

CoefficientElement parse_coefficient(EngineSpec engine, std::string_view text) {
  Parser p(text, engine, nullptr);
  if (p.accept("0") && p.at_end()) return CoefficientElement(engine);
  p.pos_ = 0;
  auto out = p.coefficient();
  p.finish();
  return out;
}

NTElement parse_element(const NtAlgebra& algebra, std::string_view text) {
  Parser p(text, algebra.engine(), &algebra);
  if (p.accept("0") && p.at_end()) return algebra.zero();
  p.pos_ = 0;
  if (p.at_end()) p.fail("empty expression");
  auto out = p.element();
  p.finish();
  return out;
}

Complex parse_complex(std::string_view text) {
  Parser p(text, EngineSpec::scalar(), nullptr);
  const bool negative = p.accept("-");
  auto c = p.scalar();
  if (!c) p.fail("expected a complex literal");
  p.finish();
  return negative ? -*c : *c;
}

}  // namespace ntkms
