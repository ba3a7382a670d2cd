#ifndef LVFOL_BRANCHED_HPP
#define LVFOL_BRANCHED_HPP

// Branched rational maps f = (F0^a : F1^b : F2^c : F3^e) from P^4 to P^3 and
// the pull-back of Lotka-Volterra foliations along them.

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lvfol/error.hpp"
#include "lvfol/foliation.hpp"
#include "lvfol/forms.hpp"
#include "lvfol/genericity.hpp"
#include "lvfol/mpoly.hpp"
#include "lvfol/qfield.hpp"
#include "lvfol/text.hpp"

namespace lvfol {

using Exponents = std::array<long, 4>;

namespace detail {

inline void check_positive(const Exponents& e) {
  for (long v : e)
    if (v <= 0) throw MathError("branching exponents must be positive");
}

inline long checked_mul(long a, long b) {
  long r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw MathError("integer overflow");
  return r;
}

inline long checked_add(long a, long b) {
  long r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw MathError("integer overflow");
  return r;
}

}  // namespace detail

class BranchedMap {
 public:
  /// nu is read off the polynomial degrees; all e_k deg F_k must agree and be >= 2.
  BranchedMap(std::array<MPoly, 4> f, Exponents exps) : f_(std::move(f)), exps_(exps) {
    detail::check_positive(exps_);
    const int n = f_[0].nvars();
    std::optional<long> nu;
    for (std::size_t k = 0; k < 4; ++k) {
      if (f_[k].nvars() != n) throw DomainError("map components live on different spaces");
      const DegreeInfo h = homogeneity(f_[k]);
      if (h.status == DegreeStatus::zero) throw MathError("F" + std::to_string(k) + " is zero");
      if (h.status == DegreeStatus::mixed) throw MathError("F" + std::to_string(k) + " is not homogeneous");
      const long v = detail::checked_mul(exps_[k], h.degree);
      if (nu && *nu != v)
        throw MathError("degree constraint violated: alpha*deg F0 = beta*deg F1 = gamma*deg F2 = delta*deg F3 fails");
      nu = v;
    }
    if (*nu < 2) throw MathError("map degree nu must be >= 2");
    nu_ = *nu;
  }

  int nvars() const { return f_[0].nvars(); }
  long nu() const { return nu_; }
  const Exponents& exponents() const { return exps_; }
  const std::array<MPoly, 4>& components() const { return f_; }

  /// Homogeneous lift (F0^a, F1^b, F2^c, F3^e).
  std::vector<MPoly> lifted() const {
    std::vector<MPoly> out;
    for (std::size_t k = 0; k < 4; ++k) out.push_back(pow(f_[k], static_cast<unsigned>(exps_[k])));
    return out;
  }

  /// F0^(a-1) F1^(b-1) F2^(c-1) F3^(e-1): the factor by which the raw
  /// pull-back of the 2-form exceeds the closed form.
  MPoly prefactor() const {
    MPoly m = MPoly::constant(nvars(), FieldElem(1));
    for (std::size_t k = 0; k < 4; ++k) m *= pow(f_[k], static_cast<unsigned>(exps_[k] - 1));
    return m;
  }

 private:
  std::array<MPoly, 4> f_;
  Exponents exps_;
  long nu_ = 0;
};

enum class WeightCase { case1 = 1, case2 = 2, case3 = 3, case4 = 4, invalid = 0 };

enum class Regime {
  casomenor,  // both k >= 0 and m >= 0
  casomaior,  // both k < 0 and m < 0
  mixed,
};

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::casomenor: return "casomenor";
    case Regime::casomaior: return "casomaior";
    case Regime::mixed: return "mixed";
  }
  return "?";
}

struct WeightData {
  Exponents exponents{};
  WeightCase weight_case = WeightCase::invalid;
  std::array<long, 4> weight_vector{};  // (bcd, acd, abd, abc) for exponents (a, b, c, d)
  long d = 2;
  long quasi_degree = 0;                // abcd (d - 1)
  long total_weighted_degree = 0;       // quasi_degree + sum of weights
  long k = 0, l = 0, m = 0, n = 0;
  bool k_nonnegative = false;           // a(cd + bd + bc) >= bcd
  bool m_nonnegative = false;           // c(bd + ad + ab) >= abd
  Regime regime = Regime::mixed;
  std::array<bool, 6> coprime_pairs{};  // ordered like kCoordinatePairs
  bool pairwise_coprime = false;        // weighted P^3 is isomorphic to P^3
};

/// Case (1): 1 < a < b < c < e, pairwise coprime.
/// Case (2): 1 = a < b < c < e, b, c, e pairwise coprime.
/// Case (3): 1 = a = b < c < e, gcd(c, e) = 1.
/// Case (4): 1 = a = b = c < e.
inline WeightData classify_weights(const Exponents& e, long d) {
  detail::check_positive(e);
  if (d < 2) throw MathError("foliation degree d must be >= 2");
  using detail::checked_add;
  using detail::checked_mul;
  const long a = e[0], b = e[1], c = e[2], g = e[3];
  WeightData w;
  w.exponents = e;
  w.d = d;
  for (std::size_t s = 0; s < kCoordinatePairs.size(); ++s) {
    const auto [i, j] = kCoordinatePairs[s];
    w.coprime_pairs[s] = std::gcd(e[static_cast<std::size_t>(i)], e[static_cast<std::size_t>(j)]) == 1;
  }
  w.pairwise_coprime = std::all_of(w.coprime_pairs.begin(), w.coprime_pairs.end(), [](bool x) { return x; });
  const bool bcg_coprime = std::gcd(b, c) == 1 && std::gcd(b, g) == 1 && std::gcd(c, g) == 1;

  if (1 < a && a < b && b < c && c < g && w.pairwise_coprime) {
    w.weight_case = WeightCase::case1;
  } else if (a == 1 && a < b && b < c && c < g && bcg_coprime) {
    w.weight_case = WeightCase::case2;
  } else if (a == 1 && b == 1 && b < c && c < g && std::gcd(c, g) == 1) {
    w.weight_case = WeightCase::case3;
  } else if (a == 1 && b == 1 && c == 1 && c < g) {
    w.weight_case = WeightCase::case4;
  }

  w.weight_vector = {checked_mul(checked_mul(b, c), g), checked_mul(checked_mul(a, c), g),
                     checked_mul(checked_mul(a, b), g), checked_mul(checked_mul(a, b), c)};
  const long abcd = checked_mul(checked_mul(a, b), checked_mul(c, g));
  w.quasi_degree = checked_mul(abcd, d - 1);
  w.total_weighted_degree = w.quasi_degree;
  for (long x : w.weight_vector) w.total_weighted_degree = checked_add(w.total_weighted_degree, x);

  w.k = checked_mul(a, c * g + b * g + b * c) - b * c * g;
  w.l = checked_mul(b, c * g + a * g + a * c) - a * c * g;
  w.m = checked_mul(c, b * g + a * g + a * b) - a * b * g;
  w.n = checked_mul(g, b * c + a * c + a * b) - a * b * c;
  w.k_nonnegative = w.k >= 0;
  w.m_nonnegative = w.m >= 0;
  w.regime = (w.k_nonnegative && w.m_nonnegative)     ? Regime::casomenor
             : (!w.k_nonnegative && !w.m_nonnegative) ? Regime::casomaior
                                                      : Regime::mixed;
  return w;
}

namespace detail {

/// sign * e_i e_j * F_k F_l * (P_kl o lift) * dF_i ^ dF_j summed over the six
/// pairs (i, j) with complement (k, l).
inline PForm closed_form_pullback(const std::array<MPoly, 4>& f, const Exponents& e, const LVSpec& g) {
  struct Term { int i, j, k, l, sign; };
  static constexpr std::array<Term, 6> kTerms{{{0, 1, 2, 3, 1}, {0, 2, 1, 3, -1}, {0, 3, 1, 2, 1},
                                               {1, 2, 0, 3, 1}, {1, 3, 0, 2, -1}, {2, 3, 0, 1, 1}}};
  const int n = f[0].nvars();
  std::vector<MPoly> lift;
  std::vector<PForm> diffs;
  for (std::size_t k = 0; k < 4; ++k) {
    lift.push_back(pow(f[k], static_cast<unsigned>(e[k])));
    diffs.push_back(PForm::differential(f[k]));
  }
  PForm out(n, 2);
  for (const Term& t : kTerms) {
    const auto i = static_cast<std::size_t>(t.i), j = static_cast<std::size_t>(t.j);
    const auto k = static_cast<std::size_t>(t.k), l = static_cast<std::size_t>(t.l);
    const MPoly composed = substitute(g.pairwise(t.k, t.l), lift);
    if (composed.is_zero()) continue;
    const FieldElem scale(t.sign * e[i] * e[j]);
    const MPoly coeff = (f[k] * f[l] * composed).scaled(scale);
    out += wedge(diffs[i], diffs[j]).times(coeff);
  }
  return out;
}

}  // namespace detail

/// The closed-form 2-form on C^n of the pull-back foliation. It satisfies
/// pullback_form(f.lifted(), build_lv_form(g)) = f.prefactor() * result.
/// Genericity of f (transversality at the indeterminacy points) is assumed,
/// not decided.
inline PForm branched_pullback(const BranchedMap& f, const LVSpec& g) {
  return detail::closed_form_pullback(f.components(), f.exponents(), g);
}

/// Quasi-homogeneous local model on C^4: the closed form for the monomial
/// map (x0^a, x1^b, x2^c, x3^e).
inline PForm local_model(const Exponents& e, const LVSpec& g) {
  detail::check_positive(e);
  return detail::closed_form_pullback({MPoly::variable(4, 0), MPoly::variable(4, 1), MPoly::variable(4, 2),
                                       MPoly::variable(4, 3)},
                                      e, g);
}

inline PForm local_model(const WeightData& w, const LVSpec& g) { return local_model(w.exponents, g); }

struct QuasiHomogeneity {
  bool constant = false;
  std::optional<long> total;  // common value of wdeg(coefficient) + w_i + w_j
};

/// Weighted degree of every monomial of every coefficient, augmented by the
/// weights of its differentials.
inline QuasiHomogeneity weighted_form_degree(const PForm& w, std::span<const long> weights) {
  if (static_cast<int>(weights.size()) != w.nvars()) throw DomainError("weight vector length mismatch");
  QuasiHomogeneity out{true, std::nullopt};
  for (const auto& [idx, p] : w.coefficients()) {
    long shift = 0;
    for (int k : idx) shift += weights[static_cast<std::size_t>(k)];
    for (const auto& [m, c] : p.terms()) {
      const long v = m.weighted_degree(weights) + shift;
      if (out.total && *out.total != v) return {false, std::nullopt};
      out.total = v;
    }
  }
  return out;
}

struct DegreeCounts {
  long theta = 0;                // nu[(d-1) + 1/a + 1/b + 1/c + 1/e] - 3
  long coefficient_degree = 0;   // theta + 1
  long indeterminacy_count = 0;  // nu^4 / (abce)
  long singularity_count = 0;    // d^3 + d^2 + d + 1
};

/// Number of singularities of a nondegenerate degree-d foliation on P^3.
inline long singularity_count(long d) {
  using detail::checked_mul;
  return checked_mul(checked_mul(d, d), d) + checked_mul(d, d) + d + 1;
}

inline DegreeCounts degree_and_counts(long nu, long d, const Exponents& e) {
  detail::check_positive(e);
  if (d < 2) throw MathError("foliation degree d must be >= 2");
  if (nu < 2) throw MathError("map degree nu must be >= 2");
  using detail::checked_mul;
  long quotient_sum = 0;
  long quotient_product = 1;
  for (long v : e) {
    if (nu % v != 0) throw MathError("exponent " + std::to_string(v) + " does not divide nu = " + std::to_string(nu));
    quotient_sum += nu / v;
    quotient_product = checked_mul(quotient_product, nu / v);
  }
  DegreeCounts out;
  out.theta = checked_mul(nu, d - 1) + quotient_sum - 3;
  out.coefficient_degree = out.theta + 1;

  const long nu4 = checked_mul(checked_mul(nu, nu), checked_mul(nu, nu));
  const long prod = checked_mul(checked_mul(e[0], e[1]), checked_mul(e[2], e[3]));
  if (nu4 % prod != 0) throw MathError("nu^4 not divisible by the exponent product");
  out.indeterminacy_count = nu4 / prod;
  if (out.indeterminacy_count != quotient_product) throw MathError("indeterminacy count mismatch");
  out.singularity_count = singularity_count(d);
  return out;
}

struct KupkaTrace {
  FieldElem value;
  bool nonzero = false;
};

/// Trace of the linear part of the pulled-back field at a Kupka point:
/// b c l1 + a c l2 + a b l3.
inline KupkaTrace kupka_trace(long a, long b, long c, const std::array<FieldElem, 3>& lam) {
  detail::check_positive({a, b, c, 1});
  KupkaTrace out;
  out.value = lam[0].scaled(Rational(b * c)) + lam[1].scaled(Rational(a * c)) + lam[2].scaled(Rational(a * b));
  out.nonzero = !out.value.is_zero();
  return out;
}

inline KupkaTrace kupka_trace(long a, long b, long c, const EigenTriple& lam) {
  return kupka_trace(a, b, c, lam.values());
}

struct HolonomyObstruction {
  Rational value;
  bool is_integer = false;
};

/// n e/b + m e/c - e/a for exponents (a, b, c, e): the obstruction to a
/// monomial x1^n x2^m d/dx0 surviving the holonomy of the x3-axis. Defined
/// for weight cases (1) and (2) only.
inline HolonomyObstruction holonomy_obstruction(long n, long m, const WeightData& w) {
  if (n < 0 || m < 0) throw DomainError("holonomy exponents must be nonnegative");
  if (w.weight_case != WeightCase::case1 && w.weight_case != WeightCase::case2)
    throw MathError("holonomy obstruction not applicable outside weight cases 1-2");
  const long a = w.exponents[0], b = w.exponents[1], c = w.exponents[2], e = w.exponents[3];
  HolonomyObstruction out;
  out.value = Rational(n * e, b) + Rational(m * e, c) - Rational(e, a);
  out.is_integer = out.value.is_integer();
  return out;
}

struct RamificationResult {
  PForm form;           // T*Omega with monomial content removed
  LVSpec spec;          // build_lv_form(spec) == form
  Monomial content;     // removed monomial factor
  long degree = 0;      // foliation degree of the result
};

/// Pull-back along T(x) = (x0^r, x1^r, x2^r, x3^r).
inline RamificationResult ramification_pullback(long r, const LVSpec& g) {
  if (r < 1) throw MathError("ramification exponent must be >= 1");
  std::vector<MPoly> images;
  for (int k = 0; k < 4; ++k) images.push_back(pow(MPoly::variable(4, k), static_cast<unsigned>(r)));
  const PForm raw = pullback_form(images, build_lv_form(g));
  const Monomial content = form_monomial_content(raw);
  PForm form = raw.divided_by_monomial(content);
  LVSpec spec = lv_spec_from_form(form);
  if (build_lv_form(spec) != form) throw MathError("ramified form is not of Lotka-Volterra shape");
  const long degree = foliation_degree(form);
  return {std::move(form), std::move(spec), content, degree};
}

// ---------------------------------------------------------------------------
// Map spec files: alpha=..., beta=..., gamma=..., delta=... and F0..F3 in
// x0..x4; entries separated by newlines or commas, '#' starts a comment.

inline BranchedMap parse_map_spec(std::string_view text) {
  const auto entries = detail::split_key_values(text);
  static const std::array<std::string, 4> kExpKeys{"alpha", "beta", "gamma", "delta"};
  std::array<std::optional<long>, 4> exps;
  std::array<std::optional<MPoly>, 4> f;
  std::size_t last_line = 1;
  for (const auto& kv : entries) {
    last_line = kv.line;
    bool matched = false;
    for (std::size_t k = 0; k < 4; ++k) {
      if (kv.key == kExpKeys[k]) {
        exps[k] = detail::parse_int_value(kv);
        matched = true;
      }
    }
    if (kv.key.size() == 2 && kv.key[0] == 'F' && kv.key[1] >= '0' && kv.key[1] <= '3') {
      f[static_cast<std::size_t>(kv.key[1] - '0')] =
          parse_poly(kv.value, VariableSet::homogeneous(5), {kv.line, kv.value_column});
      matched = true;
    }
    if (!matched) throw ParseError("unknown key '" + kv.key + "'", kv.line, 1);
  }
  Exponents e{};
  std::array<MPoly, 4> polys{};
  for (std::size_t k = 0; k < 4; ++k) {
    if (!exps[k]) throw ParseError("missing " + kExpKeys[k], last_line, 1);
    if (!f[k]) throw ParseError("missing F" + std::to_string(k), last_line, 1);
    e[k] = *exps[k];
    polys[k] = *f[k];
  }
  return BranchedMap(std::move(polys), e);
}

inline std::string format_map_spec(const BranchedMap& f) {
  const VariableSet vars = VariableSet::homogeneous(f.nvars());
  const auto& e = f.exponents();
  std::string out = "alpha=" + std::to_string(e[0]) + ", beta=" + std::to_string(e[1]) +
                    ", gamma=" + std::to_string(e[2]) + ", delta=" + std::to_string(e[3]) + "\n";
  for (int k = 0; k < 4; ++k)
    out += "F" + std::to_string(k) + "=" + format_poly(f.components()[static_cast<std::size_t>(k)], vars) + "\n";
  return out;
}

}  // namespace lvfol

#endif  // LVFOL_BRANCHED_HPP
