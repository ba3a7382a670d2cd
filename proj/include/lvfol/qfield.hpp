#ifndef LVFOL_QFIELD_HPP
#define LVFOL_QFIELD_HPP

// Exact arithmetic in the number field Q(i, sqrt2).
//
// Every element is stored on the basis {1, i, sqrt2, i*sqrt2} with rational
// coordinates. Order and membership predicates (real, positive real, natural
// number) are decided exactly, without evaluating any radical.

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "lvfol/error.hpp"

namespace lvfol {

using Integer = mpz_class;

/// Canonical rational number: gcd(|num|, den) = 1, den >= 1, zero is 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& value) : value_(value) {}  // NOLINT
  Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw MathError("rational with zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
  }
  Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

  Integer numerator() const { return value_.get_num(); }
  Integer denominator() const { return value_.get_den(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw MathError("division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// "p/q", or "p" when q = 1.
  std::string to_string() const {
    std::string s = value_.get_num().get_str();
    if (value_.get_den() != 1) s += "/" + value_.get_den().get_str();
    return s;
  }

  const mpq_class& raw() const { return value_; }

  /// this += factor * x * y for factor in {1, -1, 2, -2}, without temporaries.
  void add_product(const Rational& x, const Rational& y, int factor) {
    if (sgn(x.value_) == 0 || sgn(y.value_) == 0) return;
    thread_local mpq_class t;
    mpq_mul(t.get_mpq_t(), x.value_.get_mpq_t(), y.value_.get_mpq_t());
    if (factor == 2 || factor == -2) mpq_mul_2exp(t.get_mpq_t(), t.get_mpq_t(), 1);
    if (factor > 0) {
      mpq_add(value_.get_mpq_t(), value_.get_mpq_t(), t.get_mpq_t());
    } else {
      mpq_sub(value_.get_mpq_t(), value_.get_mpq_t(), t.get_mpq_t());
    }
  }

 private:
  explicit Rational(mpq_class v) : value_(std::move(v)) {}
  mpq_class value_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_string();
}

/// Result of the exact order/membership predicates on a field element.
struct Classification {
  bool is_zero = false;
  bool is_real = false;
  bool is_rational = false;
  bool is_positive_real = false;
  std::optional<Integer> integer_value;

  /// Membership in I_q = { m in N : m >= q }.
  bool in_natural_range(long q) const {
    return integer_value.has_value() && *integer_value >= q;
  }
};

/// a + b*i + c*sqrt2 + d*i*sqrt2 with a, b, c, d rational.
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(long value) : a_(value) {}  // NOLINT(google-explicit-constructor)
  FieldElem(Rational value) : a_(std::move(value)) {}  // NOLINT
  FieldElem(Rational a, Rational b, Rational c, Rational d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

  static FieldElem i() { return {0, 1, 0, 0}; }
  static FieldElem sqrt2() { return {0, 0, 1, 0}; }
  static FieldElem i_sqrt2() { return {0, 0, 0, 1}; }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& c() const { return c_; }
  const Rational& d() const { return d_; }
  std::array<Rational, 4> coords() const { return {a_, b_, c_, d_}; }

  bool is_zero() const {
    return a_.is_zero() && b_.is_zero() && c_.is_zero() && d_.is_zero();
  }

  FieldElem operator-() const { return {-a_, -b_, -c_, -d_}; }

  FieldElem& operator+=(const FieldElem& o) {
    a_ += o.a_; b_ += o.b_; c_ += o.c_; d_ += o.d_;
    return *this;
  }
  FieldElem& operator-=(const FieldElem& o) {
    a_ -= o.a_; b_ -= o.b_; c_ -= o.c_; d_ -= o.d_;
    return *this;
  }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }
  FieldElem& operator/=(const FieldElem& o) { return *this = *this / o; }

  friend FieldElem operator+(FieldElem x, const FieldElem& y) { return x += y; }
  friend FieldElem operator-(FieldElem x, const FieldElem& y) { return x -= y; }

  /// this += x * y, using i^2 = -1, sqrt2^2 = 2, (i*sqrt2)^2 = -2.
  void add_product(const FieldElem& x, const FieldElem& y) {
    a_.add_product(x.a_, y.a_, 1);
    a_.add_product(x.b_, y.b_, -1);
    a_.add_product(x.c_, y.c_, 2);
    a_.add_product(x.d_, y.d_, -2);
    b_.add_product(x.a_, y.b_, 1);
    b_.add_product(x.b_, y.a_, 1);
    b_.add_product(x.c_, y.d_, 2);
    b_.add_product(x.d_, y.c_, 2);
    c_.add_product(x.a_, y.c_, 1);
    c_.add_product(x.c_, y.a_, 1);
    c_.add_product(x.b_, y.d_, -1);
    c_.add_product(x.d_, y.b_, -1);
    d_.add_product(x.a_, y.d_, 1);
    d_.add_product(x.d_, y.a_, 1);
    d_.add_product(x.b_, y.c_, 1);
    d_.add_product(x.c_, y.b_, 1);
  }

  friend FieldElem operator*(const FieldElem& x, const FieldElem& y) {
    FieldElem r;
    r.add_product(x, y);
    return r;
  }

  friend FieldElem operator/(const FieldElem& x, const FieldElem& y) {
    return x * y.inverse();
  }

  /// Galois conjugates: i -> -i, sqrt2 -> -sqrt2, and both.
  FieldElem conj_i() const { return {a_, -b_, c_, -d_}; }
  FieldElem conj_sqrt2() const { return {a_, b_, -c_, -d_}; }
  FieldElem conj_both() const { return {a_, -b_, -c_, d_}; }

  /// Product of the four Galois conjugates.
  Rational norm() const {
    return (*this * conj_i() * conj_sqrt2() * conj_both()).a_;
  }

  /// Inverse as (product of three nontrivial conjugates) / norm.
  /// Throws MathError on zero.
  FieldElem inverse() const {
    if (is_zero()) throw MathError("division by zero in Q(i,sqrt2)");
    const FieldElem adj = conj_i() * conj_sqrt2() * conj_both();
    const Rational n = (*this * adj).a_;
    return {adj.a_ / n, adj.b_ / n, adj.c_ / n, adj.d_ / n};
  }

  /// Division that reports a zero divisor as an empty result.
  std::optional<FieldElem> try_div(const FieldElem& y) const {
    if (y.is_zero()) return std::nullopt;
    return *this / y;
  }

  FieldElem scaled(const Rational& r) const {
    return {a_ * r, b_ * r, c_ * r, d_ * r};
  }

  friend bool operator==(const FieldElem& x, const FieldElem& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
  }

  std::string to_string() const;

 private:
  Rational a_, b_, c_, d_;
};

enum class ArithKind { add, sub, mul, div };

/// Throws MathError for kind = div with a zero right-hand side.
inline FieldElem arith(const FieldElem& lhs, const FieldElem& rhs, ArithKind kind) {
  switch (kind) {
    case ArithKind::add: return lhs + rhs;
    case ArithKind::sub: return lhs - rhs;
    case ArithKind::mul: return lhs * rhs;
    case ArithKind::div: return lhs / rhs;
  }
  throw DomainError("unknown arithmetic kind");
}

/// Exact sign of a + c*sqrt2.
inline int sign_of_real_part(const Rational& a, const Rational& c) {
  const int sa = a.sign();
  const int sc = c.sign();
  if (sa >= 0 && sc >= 0) return (sa == 0 && sc == 0) ? 0 : 1;
  if (sa <= 0 && sc <= 0) return -1;
  // Opposite signs: |a| vs |c|*sqrt2, and a^2 != 2c^2 since sqrt2 is irrational.
  const Rational diff = a * a - Rational(2) * c * c;
  return sa * diff.sign();
}

inline Classification classify(const FieldElem& x) {
  Classification out;
  out.is_zero = x.is_zero();
  out.is_real = x.b().is_zero() && x.d().is_zero();
  out.is_rational = out.is_real && x.c().is_zero();
  out.is_positive_real = out.is_real && sign_of_real_part(x.a(), x.c()) > 0;
  if (out.is_rational && x.a().is_integer()) out.integer_value = x.a().numerator();
  return out;
}

/// classify() plus a check of the I_q bound; q must be nonnegative.
inline Classification classify(const FieldElem& x, long q) {
  if (q < 0) throw DomainError("classify: q must be nonnegative");
  return classify(x);
}

inline bool in_natural_range(const FieldElem& x, long q) {
  return classify(x, q).in_natural_range(q);
}

// Canonical text: "a + b*i + c*sqrt2 + d*i*sqrt2", zero terms omitted,
// unit coefficients elided on the irrational basis elements.
inline std::string FieldElem::to_string() const {
  static const char* const kBasis[4] = {"", "i", "sqrt2", "i*sqrt2"};
  const Rational* parts[4] = {&a_, &b_, &c_, &d_};
  std::string out;
  for (int k = 0; k < 4; ++k) {
    const Rational& r = *parts[k];
    if (r.is_zero()) continue;
    const bool negative = r.sign() < 0;
    const Rational mag = negative ? -r : r;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (k == 0) {
      out += mag.to_string();
    } else if (mag == Rational(1)) {
      out += kBasis[k];
    } else {
      out += mag.to_string() + "*" + kBasis[k];
    }
  }
  return out.empty() ? "0" : out;
}

inline std::ostream& operator<<(std::ostream& os, const FieldElem& x) {
  return os << x.to_string();
}

}  // namespace lvfol

#endif  // LVFOL_QFIELD_HPP
