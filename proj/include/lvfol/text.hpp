#ifndef LVFOL_TEXT_HPP
#define LVFOL_TEXT_HPP

// Text parser and printer for polynomials over Q(i, sqrt2).
//
// Grammar (whitespace insignificant, no implicit multiplication):
//   expr   := ['-'] term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' nat)?
//   atom   := rational | 'i' | 'sqrt2' | variable | '(' expr ')'
//   rational := '-'? digits ('/' nonzero-digits)?

#include <cctype>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "lvfol/error.hpp"
#include "lvfol/mpoly.hpp"
#include "lvfol/qfield.hpp"

namespace lvfol {

/// Ordered variable names; position in the list is the variable index.
class VariableSet {
 public:
  VariableSet() = default;
  VariableSet(std::initializer_list<std::string> names) : names_(names) {}
  explicit VariableSet(std::vector<std::string> names) : names_(std::move(names)) {}

  /// x0 .. x{n-1}
  static VariableSet homogeneous(int n) { return indexed("x", 0, n); }
  /// w1, w2, w3: affine chart x0 = 1.
  static VariableSet affine() { return indexed("w", 1, 3); }
  /// y0 .. y3: target coordinates of a map.
  static VariableSet target() { return indexed("y", 0, 4); }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int k) const { return names_.at(static_cast<std::size_t>(k)); }

  int index_of(std::string_view name) const {
    for (std::size_t k = 0; k < names_.size(); ++k)
      if (names_[k] == name) return static_cast<int>(k);
    return -1;
  }

 private:
  static VariableSet indexed(const std::string& prefix, int first, int count) {
    std::vector<std::string> names;
    for (int k = 0; k < count; ++k) names.push_back(prefix + std::to_string(first + k));
    return VariableSet(std::move(names));
  }

  std::vector<std::string> names_;
};

/// Where a parsed fragment starts inside a larger file (1-based).
struct SourceOrigin {
  std::size_t line = 1;
  std::size_t column = 1;
};

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, const VariableSet& vars, SourceOrigin origin)
      : text_(text), vars_(vars), origin_(origin) {}

  MPoly parse_all() {
    MPoly p = parse_expr();
    skip_ws();
    if (pos_ < text_.size()) fail(std::string("unexpected character '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { fail_at(message, pos_); }

  [[noreturn]] void fail_at(const std::string& message, std::size_t at) const {
    std::size_t line = origin_.line;
    std::size_t column = origin_.column;
    for (std::size_t k = 0; k < at && k < text_.size(); ++k) {
      if (text_[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(message, line, column);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  MPoly parse_expr() {
    MPoly acc(vars_.size());
    if (accept('-')) {
      acc -= parse_term();
    } else {
      acc += parse_term();
    }
    for (;;) {
      if (accept('+')) {
        acc += parse_term();
      } else if (accept('-')) {
        acc -= parse_term();
      } else {
        return acc;
      }
    }
  }

  MPoly parse_term() {
    MPoly acc = parse_factor();
    while (accept('*')) acc *= parse_factor();
    return acc;
  }

  MPoly parse_factor() {
    if (accept('-')) return -parse_factor();
    MPoly base = parse_atom();
    if (!accept('^')) return base;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '-') fail("negative exponent");
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected a natural-number exponent after '^'");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string digits(text_.substr(start, pos_ - start));
    if (digits.size() > 4) fail_at("exponent too large", start);
    return pow(base, static_cast<unsigned>(std::stoul(digits)));
  }

  Integer read_digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  MPoly parse_atom() {
    const char ch = peek();
    const int n = vars_.size();
    if (ch == '(') {
      ++pos_;
      MPoly inner = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    const bool negative_literal =
        ch == '-' && pos_ + 1 < text_.size() &&
        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]));
    if (std::isdigit(static_cast<unsigned char>(ch)) || negative_literal) {
      if (negative_literal) ++pos_;
      Integer num = read_digits();
      Integer den = 1;
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
          fail("expected denominator digits after '/'");
        const std::size_t at = pos_;
        den = read_digits();
        if (den == 0) fail_at("zero denominator", at);
      }
      if (negative_literal) num = -num;
      return MPoly::constant(n, FieldElem(Rational(num, den)));
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view word = text_.substr(start, pos_ - start);
      if (word == "i") return MPoly::constant(n, FieldElem::i());
      if (word == "sqrt2") return MPoly::constant(n, FieldElem::sqrt2());
      const int k = vars_.index_of(word);
      if (k < 0) fail_at("unknown variable '" + std::string(word) + "'", start);
      return MPoly::variable(n, k);
    }
    if (ch == '\0') fail("unexpected end of expression");
    fail(std::string("unexpected character '") + ch + "'");
  }

  std::string_view text_;
  const VariableSet& vars_;
  SourceOrigin origin_;
  std::size_t pos_ = 0;
};

inline std::string format_monomial(const Monomial& m, const VariableSet& vars) {
  std::string out;
  for (int k = 0; k < vars.size(); ++k) {
    if (m[k] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars.name(k);
    if (m[k] > 1) out += "^" + std::to_string(m[k]);
  }
  return out;
}

inline int nonzero_components(const FieldElem& c) {
  return !c.a().is_zero() + !c.b().is_zero() + !c.c().is_zero() + !c.d().is_zero();
}

}  // namespace detail

/// Throws ParseError with a position relative to `origin`.
inline MPoly parse_poly(std::string_view text, const VariableSet& vars,
                        SourceOrigin origin = {}) {
  return detail::PolyParser(text, vars, origin).parse_all();
}

inline FieldElem parse_field_elem(std::string_view text, SourceOrigin origin = {}) {
  const VariableSet none;
  const MPoly p = parse_poly(text, none, origin);
  return p.coefficient(Monomial::one());
}

/// Graded-lex descending, x0 > x1 > ...; output re-parses to the same polynomial.
inline std::string format_poly(const MPoly& p, const VariableSet& vars) {
  if (vars.size() < p.nvars()) throw DomainError("format_poly: variable set too small");
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : p.terms()) {
    const std::string mono = detail::format_monomial(m, vars);
    bool negative = false;
    std::string coeff;
    if (detail::nonzero_components(c) == 1) {
      // A single basis component: pull the sign out front.
      const std::string s = c.to_string();
      negative = s.front() == '-';
      coeff = negative ? s.substr(1) : s;
      if (coeff == "1" && !mono.empty()) coeff.clear();
    } else {
      coeff = "(" + c.to_string() + ")";
    }
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    out += coeff;
    if (!coeff.empty() && !mono.empty()) out += "*";
    out += mono;
  }
  return out;
}

inline std::string format_poly(const MPoly& p) {
  return format_poly(p, VariableSet::homogeneous(p.nvars()));
}

}  // namespace lvfol

#endif  // LVFOL_TEXT_HPP
