#ifndef LVFOL_MPOLY_HPP
#define LVFOL_MPOLY_HPP

// Sparse multivariate polynomials over Q(i, sqrt2).

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lvfol/error.hpp"
#include "lvfol/qfield.hpp"

namespace lvfol {

inline constexpr int kMaxVars = 6;

/// Exponent vector; entries beyond the owning polynomial's nvars stay zero.
struct Monomial {
  std::array<std::uint32_t, kMaxVars> exps{};

  static Monomial one() { return {}; }
  static Monomial var(int k, std::uint32_t e = 1) {
    Monomial m;
    m.exps[static_cast<std::size_t>(k)] = e;
    return m;
  }

  std::uint32_t operator[](int k) const { return exps[static_cast<std::size_t>(k)]; }
  std::uint32_t& operator[](int k) { return exps[static_cast<std::size_t>(k)]; }

  long total_degree() const {
    long s = 0;
    for (auto e : exps) s += e;
    return s;
  }

  long weighted_degree(std::span<const long> w) const {
    long s = 0;
    for (std::size_t k = 0; k < w.size() && k < exps.size(); ++k)
      s += w[k] * static_cast<long>(exps[k]);
    return s;
  }

  bool divides(const Monomial& o) const {
    for (std::size_t k = 0; k < exps.size(); ++k)
      if (exps[k] > o.exps[k]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& x, const Monomial& y) {
    Monomial m;
    for (std::size_t k = 0; k < m.exps.size(); ++k) m.exps[k] = x.exps[k] + y.exps[k];
    return m;
  }

  /// Requires divisor.divides(*this).
  Monomial quotient(const Monomial& divisor) const {
    Monomial m;
    for (std::size_t k = 0; k < m.exps.size(); ++k) m.exps[k] = exps[k] - divisor.exps[k];
    return m;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded lexicographic, descending: higher total degree first, then larger
/// exponent of x0, then of x1, ...
struct GrlexDescending {
  bool operator()(const Monomial& x, const Monomial& y) const {
    const long dx = x.total_degree();
    const long dy = y.total_degree();
    if (dx != dy) return dx > dy;
    return x.exps > y.exps;
  }
};

namespace detail {

using IntCoeff = std::array<Integer, 4>;

/// Least common multiple of the denominators of all coefficient components.
template <typename Map>
Integer common_denominator(const Map& terms) {
  Integer d = 1;
  for (const auto& [m, c] : terms)
    for (const Rational& r : c.coords())
      if (!r.is_integer()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), r.raw().get_den_mpz_t());
  return d;
}

/// c * den as four integers; den must be a multiple of every denominator of c.
inline IntCoeff scaled_to_integers(const FieldElem& c, const Integer& den) {
  IntCoeff out;
  const auto parts = c.coords();
  for (std::size_t k = 0; k < 4; ++k) {
    const mpq_class& q = parts[k].raw();
    mpz_divexact(out[k].get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    out[k] *= q.get_num();
  }
  return out;
}

/// acc += x * y in Z[i, sqrt2].
inline void add_product(IntCoeff& acc, const IntCoeff& x, const IntCoeff& y) {
  auto fma = [](Integer& r, const Integer& u, const Integer& v, int factor) {
    if (sgn(u) == 0 || sgn(v) == 0) return;
    for (int n = 0; n < (factor < 0 ? -factor : factor); ++n) {
      if (factor > 0) {
        mpz_addmul(r.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
      } else {
        mpz_submul(r.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
      }
    }
  };
  fma(acc[0], x[0], y[0], 1);
  fma(acc[0], x[1], y[1], -1);
  fma(acc[0], x[2], y[2], 2);
  fma(acc[0], x[3], y[3], -2);
  fma(acc[1], x[0], y[1], 1);
  fma(acc[1], x[1], y[0], 1);
  fma(acc[1], x[2], y[3], 2);
  fma(acc[1], x[3], y[2], 2);
  fma(acc[2], x[0], y[2], 1);
  fma(acc[2], x[2], y[0], 1);
  fma(acc[2], x[1], y[3], -1);
  fma(acc[2], x[3], y[1], -1);
  fma(acc[3], x[0], y[3], 1);
  fma(acc[3], x[3], y[0], 1);
  fma(acc[3], x[1], y[2], 1);
  fma(acc[3], x[2], y[1], 1);
}

}  // namespace detail

class MPoly {
 public:
  using TermMap = std::map<Monomial, FieldElem, GrlexDescending>;

  MPoly() = default;
  explicit MPoly(int nvars) : nvars_(nvars) {
    if (nvars < 0 || nvars > kMaxVars)
      throw DomainError("polynomial variable count must be in 0.." +
                        std::to_string(kMaxVars));
  }

  static MPoly constant(int nvars, const FieldElem& c) {
    MPoly p(nvars);
    p.add_term(Monomial::one(), c);
    return p;
  }
  static MPoly variable(int nvars, int k) {
    if (k < 0 || k >= nvars) throw DomainError("variable index out of range");
    MPoly p(nvars);
    p.add_term(Monomial::var(k), FieldElem(1));
    return p;
  }
  static MPoly term(int nvars, const Monomial& m, const FieldElem& c) {
    MPoly p(nvars);
    p.add_term(m, c);
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  /// Leading term in grlex order; requires a nonzero polynomial.
  const TermMap::value_type& leading() const { return *terms_.begin(); }

  FieldElem coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? FieldElem() : it->second;
  }

  void add_term(const Monomial& m, const FieldElem& c) {
    if (c.is_zero()) return;
    for (int k = nvars_; k < kMaxVars; ++k)
      if (m[k] != 0) throw DomainError("monomial uses a variable beyond nvars");
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  MPoly operator-() const {
    MPoly r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, -c);
    return r;
  }

  MPoly& operator+=(const MPoly& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  friend MPoly operator+(MPoly x, const MPoly& y) { return x += y; }
  friend MPoly operator-(MPoly x, const MPoly& y) { return x -= y; }
  friend MPoly operator*(const MPoly& x, const MPoly& y) {
    x.check_compatible(y);
    MPoly r(x.nvars_);
    if (x.terms_.empty() || y.terms_.empty()) return r;
    // Work in Z[i, sqrt2] over the common denominator dx * dy; only the
    // final coefficients are reduced.
    const Integer dx = detail::common_denominator(x.terms_);
    const Integer dy = detail::common_denominator(y.terms_);
    std::vector<std::pair<Monomial, detail::IntCoeff>> xs, ys;
    xs.reserve(x.terms_.size());
    ys.reserve(y.terms_.size());
    for (const auto& [m, c] : x.terms_) xs.emplace_back(m, detail::scaled_to_integers(c, dx));
    for (const auto& [m, c] : y.terms_) ys.emplace_back(m, detail::scaled_to_integers(c, dy));
    std::map<Monomial, detail::IntCoeff, GrlexDescending> acc;
    for (const auto& [mx, cx] : xs)
      for (const auto& [my, cy] : ys) detail::add_product(acc[mx * my], cx, cy);
    const Integer den = dx * dy;
    for (const auto& [m, v] : acc) {
      if (sgn(v[0]) == 0 && sgn(v[1]) == 0 && sgn(v[2]) == 0 && sgn(v[3]) == 0) continue;
      r.terms_.emplace_hint(r.terms_.end(), m,
                            FieldElem(Rational(v[0], den), Rational(v[1], den), Rational(v[2], den), Rational(v[3], den)));
    }
    return r;
  }

  MPoly scaled(const FieldElem& c) const {
    MPoly r(nvars_);
    if (c.is_zero()) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, v * c);
    return r;
  }

  MPoly times_monomial(const Monomial& mono) const {
    MPoly r(nvars_);
    for (const auto& [m, c] : terms_) r.add_term(m * mono, c);
    return r;
  }

  /// Exact division by a monomial that divides every term.
  MPoly divided_by_monomial(const Monomial& mono) const {
    MPoly r(nvars_);
    for (const auto& [m, c] : terms_) {
      if (!mono.divides(m)) throw MathError("monomial does not divide polynomial");
      r.add_term(m.quotient(mono), c);
    }
    return r;
  }

  bool divisible_by_variable(int k) const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [k](const auto& t) { return t.first[k] > 0; });
  }

  friend bool operator==(const MPoly& x, const MPoly& y) {
    return x.nvars_ == y.nvars_ && x.terms_ == y.terms_;
  }

 private:
  void check_compatible(const MPoly& o) const {
    if (nvars_ != o.nvars_)
      throw DomainError("polynomial nvars mismatch (" + std::to_string(nvars_) +
                        " vs " + std::to_string(o.nvars_) + ")");
  }

  int nvars_ = 0;
  TermMap terms_;
};

enum class PolyArithKind { add, sub, mul };

inline MPoly poly_arith(const MPoly& lhs, const MPoly& rhs, PolyArithKind kind) {
  switch (kind) {
    case PolyArithKind::add: return lhs + rhs;
    case PolyArithKind::sub: return lhs - rhs;
    case PolyArithKind::mul: return lhs * rhs;
  }
  throw DomainError("unknown polynomial arithmetic kind");
}

inline MPoly pow(const MPoly& p, unsigned e) {
  MPoly result = MPoly::constant(p.nvars(), FieldElem(1));
  MPoly base = p;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e > 0) base *= base;
  }
  return result;
}

/// Ring homomorphism sending variable k to images[k].
inline MPoly substitute(const MPoly& p, std::span<const MPoly> images) {
  if (static_cast<int>(images.size()) != p.nvars())
    throw DomainError("substitute: expected " + std::to_string(p.nvars()) +
                      " images, got " + std::to_string(images.size()));
  if (images.empty()) return p;
  const int target = images.front().nvars();
  for (const auto& img : images)
    if (img.nvars() != target) throw DomainError("substitute: images disagree on nvars");

  // powers[k][e] = images[k]^e, filled lazily.
  std::vector<std::vector<MPoly>> powers(images.size());
  auto power_of = [&](std::size_t k, std::uint32_t e) -> const MPoly& {
    auto& cache = powers[k];
    if (cache.empty()) cache.push_back(MPoly::constant(target, FieldElem(1)));
    while (cache.size() <= e) cache.push_back(cache.back() * images[k]);
    return cache[e];
  };

  MPoly result(target);
  for (const auto& [m, c] : p.terms()) {
    MPoly t = MPoly::constant(target, c);
    for (std::size_t k = 0; k < images.size(); ++k)
      if (m.exps[k] > 0) t *= power_of(k, m.exps[k]);
    result += t;
  }
  return result;
}

inline FieldElem evaluate(const MPoly& p, std::span<const FieldElem> point) {
  if (static_cast<int>(point.size()) != p.nvars())
    throw DomainError("evaluate: point dimension mismatch");
  FieldElem sum;
  for (const auto& [m, c] : p.terms()) {
    FieldElem t = c;
    for (std::size_t k = 0; k < point.size(); ++k)
      for (std::uint32_t e = 0; e < m.exps[k]; ++e) t *= point[k];
    sum += t;
  }
  return sum;
}

enum class DegreeStatus { ok, mixed, zero };

struct DegreeInfo {
  DegreeStatus status = DegreeStatus::zero;
  long degree = 0;  // meaningful only when status == ok

  bool homogeneous() const { return status == DegreeStatus::ok; }
};

inline DegreeInfo homogeneity(const MPoly& p) {
  if (p.is_zero()) return {DegreeStatus::zero, 0};
  const long deg = p.leading().first.total_degree();
  for (const auto& [m, c] : p.terms())
    if (m.total_degree() != deg) return {DegreeStatus::mixed, 0};
  return {DegreeStatus::ok, deg};
}

/// Quasi-homogeneity with respect to positive weights w (one per variable).
inline DegreeInfo weighted_degree(const MPoly& p, std::span<const long> w) {
  if (static_cast<int>(w.size()) != p.nvars())
    throw DomainError("weighted_degree: weight vector length mismatch");
  for (long wk : w)
    if (wk <= 0) throw DomainError("weighted_degree: weights must be positive");
  if (p.is_zero()) return {DegreeStatus::zero, 0};
  const long deg = p.leading().first.weighted_degree(w);
  for (const auto& [m, c] : p.terms())
    if (m.weighted_degree(w) != deg) return {DegreeStatus::mixed, 0};
  return {DegreeStatus::ok, deg};
}

inline MPoly partial_derivative(const MPoly& p, int k) {
  if (k < 0 || k >= p.nvars()) throw DomainError("partial_derivative: bad variable index");
  MPoly r(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    if (m[k] == 0) continue;
    Monomial dm = m;
    dm[k] -= 1;
    r.add_term(dm, c.scaled(Rational(static_cast<long>(m[k]))));
  }
  return r;
}

/// Componentwise minimum exponent over a collection of nonzero polynomials.
template <typename Range>
Monomial common_monomial_content(const Range& polys) {
  std::optional<Monomial> acc;
  for (const MPoly& p : polys) {
    for (const auto& [m, c] : p.terms()) {
      if (!acc) {
        acc = m;
        continue;
      }
      for (std::size_t k = 0; k < m.exps.size(); ++k)
        acc->exps[k] = std::min(acc->exps[k], m.exps[k]);
    }
  }
  if (!acc) throw MathError("monomial content of the zero polynomial");
  return *acc;
}

struct ContentSplit {
  Monomial content;
  MPoly primitive;
};

inline ContentSplit monomial_content(const MPoly& p) {
  if (p.is_zero()) throw MathError("monomial content of the zero polynomial");
  const std::array<MPoly, 1> one{p};
  const Monomial content = common_monomial_content(one);
  return {content, p.divided_by_monomial(content)};
}

}  // namespace lvfol

#endif  // LVFOL_MPOLY_HPP
