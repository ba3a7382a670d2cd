#ifndef LVFOL_FOLIATION_HPP
#define LVFOL_FOLIATION_HPP

// Generalized Lotka-Volterra foliations on P^3.
//
// A foliation of degree d leaving the four coordinate planes invariant is
// given by the homogeneous field X = (x0*Q0, x1*Q1, x2*Q2, x3*Q3) with the
// Q_k homogeneous of degree d-1. Its 2-form is
//
//   x2x3 P23 dx0^dx1 - x1x3 P13 dx0^dx2 + x1x2 P12 dx0^dx3
//   + x0x3 P03 dx1^dx2 - x0x2 P02 dx1^dx3 + x0x1 P01 dx2^dx3,
//
// with P_ij = Q_i - Q_j, and it equals i_R i_X (dx0^dx1^dx2^dx3).

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lvfol/error.hpp"
#include "lvfol/forms.hpp"
#include "lvfol/mpoly.hpp"
#include "lvfol/qfield.hpp"
#include "lvfol/text.hpp"

namespace lvfol {

/// Ordered pairs (i, j), i < j, of the four homogeneous coordinates.
inline constexpr std::array<std::pair<int, int>, 6> kCoordinatePairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

class LVSpec {
 public:
  /// Validates: d >= 2, each nonzero Q_k homogeneous of degree d-1 on C^4,
  /// and the Q_k not all equal.
  LVSpec(int d, std::array<MPoly, 4> q) : d_(d), q_(std::move(q)) {
    if (d_ < 2) throw MathError("Lotka-Volterra degree must be >= 2");
    for (int k = 0; k < 4; ++k) {
      const MPoly& p = q_[static_cast<std::size_t>(k)];
      if (p.nvars() != 4) throw DomainError("Q" + std::to_string(k) + " must be a polynomial in x0..x3");
      const DegreeInfo h = homogeneity(p);
      if (h.status == DegreeStatus::mixed)
        throw MathError("Q" + std::to_string(k) + " is not homogeneous");
      if (h.status == DegreeStatus::ok && h.degree != d_ - 1)
        throw MathError("Q" + std::to_string(k) + " has degree " + std::to_string(h.degree) +
                        ", expected d-1 = " + std::to_string(d_ - 1));
    }
    if (q_[0] == q_[1] && q_[1] == q_[2] && q_[2] == q_[3])
      throw MathError("all Q_k equal: the field is a multiple of the radial field");
  }

  /// Builds the spec from the six P_ij (indexed like kCoordinatePairs),
  /// rejecting data that violates the cocycle P_ij + P_jk = P_ik.
  static LVSpec from_pairwise(int d, const std::array<MPoly, 6>& p) {
    auto get = [&](int i, int j) -> const MPoly& {
      for (std::size_t s = 0; s < kCoordinatePairs.size(); ++s)
        if (kCoordinatePairs[s] == std::pair{i, j}) return p[s];
      throw DomainError("bad coordinate pair");
    };
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        for (int k = j + 1; k < 4; ++k)
          if (get(i, j) + get(j, k) != get(i, k))
            throw MathError("pairwise polynomials violate the cocycle P" + std::to_string(i) +
                            std::to_string(j) + " + P" + std::to_string(j) + std::to_string(k) +
                            " = P" + std::to_string(i) + std::to_string(k));
    const int n = p[0].nvars();
    return LVSpec(d, {MPoly(n), -get(0, 1), -get(0, 2), -get(0, 3)});
  }

  int degree() const { return d_; }
  const std::array<MPoly, 4>& q() const { return q_; }
  const MPoly& q(int k) const { return q_.at(static_cast<std::size_t>(k)); }

  /// P_ij = Q_i - Q_j.
  MPoly pairwise(int i, int j) const { return q(i) - q(j); }

  /// (x0 Q0, x1 Q1, x2 Q2, x3 Q3).
  PVField vector_field() const {
    std::vector<MPoly> comps;
    for (int k = 0; k < 4; ++k) comps.push_back(MPoly::variable(4, k) * q(k));
    return PVField(std::move(comps));
  }

  /// The induced field on the chart x0 = 1, in w1..w3:
  /// w_k' = X_k(1, w) - w_k X_0(1, w).
  PVField affine_field() const {
    const PVField x = vector_field();
    const std::array<MPoly, 4> chart{MPoly::constant(3, FieldElem(1)), MPoly::variable(3, 0),
                                     MPoly::variable(3, 1), MPoly::variable(3, 2)};
    const MPoly x0 = substitute(x[0], chart);
    std::vector<MPoly> comps;
    for (int k = 1; k < 4; ++k)
      comps.push_back(substitute(x[k], chart) - MPoly::variable(3, k - 1) * x0);
    return PVField(std::move(comps));
  }

  friend bool operator==(const LVSpec&, const LVSpec&) = default;

 private:
  int d_;
  std::array<MPoly, 4> q_;
};

/// w_k' = w_k (a_k w_k + b_k), k = 1..3, with every a_k nonzero.
struct AffineDecoupledVF {
  std::array<FieldElem, 3> a;
  std::array<FieldElem, 3> b;

  AffineDecoupledVF(std::array<FieldElem, 3> a_, std::array<FieldElem, 3> b_)
      : a(std::move(a_)), b(std::move(b_)) {
    for (int k = 0; k < 3; ++k)
      if (a[static_cast<std::size_t>(k)].is_zero())
        throw MathError("decoupled field: quadratic coefficient a" + std::to_string(k + 1) + " is zero");
  }

  PVField field() const {
    std::vector<MPoly> comps;
    for (int k = 0; k < 3; ++k) {
      const MPoly w = MPoly::variable(3, k);
      comps.push_back(w * (w.scaled(a[static_cast<std::size_t>(k)]) +
                           MPoly::constant(3, b[static_cast<std::size_t>(k)])));
    }
    return PVField(std::move(comps));
  }

  /// Recognizes w_k' = a_k w_k^2 + b_k w_k, each component in its own variable.
  static std::optional<AffineDecoupledVF> recognize(const PVField& x) {
    if (x.nvars() != 3) return std::nullopt;
    std::array<FieldElem, 3> a, b;
    for (int k = 0; k < 3; ++k) {
      const MPoly& comp = x[k];
      for (const auto& [m, c] : comp.terms()) {
        const bool only_k = m.total_degree() == m[k];
        if (!only_k || (m[k] != 1 && m[k] != 2)) return std::nullopt;
      }
      a[static_cast<std::size_t>(k)] = comp.coefficient(Monomial::var(k, 2));
      b[static_cast<std::size_t>(k)] = comp.coefficient(Monomial::var(k, 1));
      if (a[static_cast<std::size_t>(k)].is_zero()) return std::nullopt;
    }
    return AffineDecoupledVF(a, b);
  }
};

/// The degree-2 example field with eigenvalue data in Q(i, sqrt2):
///   w1' = w1 (w1 + (-i - sqrt2)), w2' = w2 (i w2 + 4i), w3' = w3 (w3 + 1).
inline AffineDecoupledVF reference_decoupled_field() {
  const FieldElem i = FieldElem::i();
  const FieldElem s = FieldElem::sqrt2();
  return AffineDecoupledVF({FieldElem(1), i, FieldElem(1)}, {-i - s, FieldElem(4) * i, FieldElem(1)});
}

inline PForm build_lv_form(const LVSpec& spec) {
  auto x = [](int k) { return MPoly::variable(4, k); };
  auto P = [&](int i, int j) { return spec.pairwise(i, j); };
  PForm w(4, 2);
  w.add({0, 1}, x(2) * x(3) * P(2, 3));
  w.add({0, 2}, -(x(1) * x(3) * P(1, 3)));
  w.add({0, 3}, x(1) * x(2) * P(1, 2));
  w.add({1, 2}, x(0) * x(3) * P(0, 3));
  w.add({1, 3}, -(x(0) * x(2) * P(0, 2)));
  w.add({2, 3}, x(0) * x(1) * P(0, 1));
  return w;
}

/// Reads P_ij back from a 2-form of Lotka-Volterra shape (the dx_k^dx_l
/// coefficient divisible by x_i x_j for {i,j,k,l} = {0,1,2,3}) and returns
/// the spec with Q0 = 0. Throws MathError if the form is not of that shape.
inline LVSpec lv_spec_from_form(const PForm& w) {
  if (w.nvars() != 4 || w.degree() != 2) throw DomainError("expected a 2-form on C^4");
  // Coefficient of dx_k^dx_l is sign * x_i x_j P_ij, {i,j} complementary.
  struct Slot { int k, l, i, j, sign; };
  static constexpr std::array<Slot, 6> kSlots{{{0, 1, 2, 3, 1}, {0, 2, 1, 3, -1}, {0, 3, 1, 2, 1},
                                               {1, 2, 0, 3, 1}, {1, 3, 0, 2, -1}, {2, 3, 0, 1, 1}}};
  std::array<MPoly, 6> p;
  std::optional<long> degree;
  for (const Slot& s : kSlots) {
    const MPoly c = w.coefficient({s.k, s.l});
    const Monomial xixj = Monomial::var(s.i) * Monomial::var(s.j);
    MPoly pij(4);
    try {
      pij = c.divided_by_monomial(xixj);
    } catch (const MathError&) {
      throw MathError("coefficient of " + format_index_tuple({s.k, s.l}) + " is not divisible by x" +
                      std::to_string(s.i) + "*x" + std::to_string(s.j));
    }
    if (s.sign < 0) pij = -pij;
    const DegreeInfo h = homogeneity(pij);
    if (h.status == DegreeStatus::mixed) throw MathError("pairwise polynomial is not homogeneous");
    if (h.status == DegreeStatus::ok) {
      if (degree && *degree != h.degree) throw MathError("pairwise polynomials have different degrees");
      degree = h.degree;
    }
    for (std::size_t t = 0; t < kCoordinatePairs.size(); ++t)
      if (kCoordinatePairs[t] == std::pair{s.i, s.j}) p[t] = pij;
  }
  if (!degree) throw MathError("zero form has no Lotka-Volterra spec");
  return LVSpec::from_pairwise(static_cast<int>(*degree) + 1, p);
}

/// Q0 = 0 and Q_k = a_k x_k + b_k x0: the chart x0 = 1 reproduces the field.
inline LVSpec homogenize_decoupled(const AffineDecoupledVF& vf) {
  std::array<MPoly, 4> q{MPoly(4), MPoly(4), MPoly(4), MPoly(4)};
  for (int k = 1; k <= 3; ++k) {
    const auto s = static_cast<std::size_t>(k - 1);
    q[static_cast<std::size_t>(k)] =
        MPoly::variable(4, k).scaled(vf.a[s]) + MPoly::variable(4, 0).scaled(vf.b[s]);
  }
  return LVSpec(2, std::move(q));
}

struct SingularPoint {
  std::array<FieldElem, 3> coordinates;             // chart x0 = 1
  std::array<FieldElem, 3> eigenvalues;             // Jacobian diagonal, coordinate order
  std::string label;
  FieldElem determinant;
  bool nondegenerate = false;                       // det DX(p) != 0
};

/// "p" followed by the (1-based) axes on which the point has coordinate 0;
/// "pm" when no coordinate vanishes.
inline std::string incidence_label(const std::array<FieldElem, 3>& coords) {
  std::string label = "p";
  for (int k = 0; k < 3; ++k)
    if (coords[static_cast<std::size_t>(k)].is_zero()) label += std::to_string(k + 1);
  return label == "p" ? "pm" : label;
}

/// All 8 zeros of a decoupled field, each coordinate in {0, -b_k/a_k}, ordered
/// by the bitmask of nonzero coordinates (bit k set = root -b_k/a_k).
/// Eigenvalues are 2 a_k w_k + b_k. A repeated root (b_k = 0) yields points
/// flagged degenerate.
inline std::vector<SingularPoint> singular_points_decoupled(const AffineDecoupledVF& vf) {
  std::vector<SingularPoint> out;
  for (unsigned mask = 0; mask < 8; ++mask) {
    SingularPoint sp;
    sp.determinant = FieldElem(1);
    for (int k = 0; k < 3; ++k) {
      const auto s = static_cast<std::size_t>(k);
      const FieldElem w = (mask >> k) & 1u ? -(vf.b[s] / vf.a[s]) : FieldElem();
      sp.coordinates[s] = w;
      sp.eigenvalues[s] = FieldElem(2) * vf.a[s] * w + vf.b[s];
      sp.determinant *= sp.eigenvalues[s];
    }
    sp.nondegenerate = !sp.determinant.is_zero();
    sp.label = incidence_label(sp.coordinates);
    out.push_back(std::move(sp));
  }
  return out;
}

using Matrix3 = std::array<std::array<FieldElem, 3>, 3>;

inline FieldElem determinant3(const Matrix3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

enum class SingularityStatus {
  ok,
  not_singular,             // X(p) != 0
  eigenvalues_unavailable,  // non-triangular Jacobian and no candidates
  candidates_rejected,      // candidates fail det(J - lambda I) = 0 or distinctness
};

inline const char* to_string(SingularityStatus s) {
  switch (s) {
    case SingularityStatus::ok: return "ok";
    case SingularityStatus::not_singular: return "not a singular point";
    case SingularityStatus::eigenvalues_unavailable: return "eigenvalues unavailable";
    case SingularityStatus::candidates_rejected: return "candidate eigenvalues rejected";
  }
  return "?";
}

struct SingularityReport {
  SingularityStatus status = SingularityStatus::ok;
  Matrix3 jacobian;
  bool triangular = false;
  std::optional<std::array<FieldElem, 3>> eigenvalues;
  FieldElem determinant;
  bool determinant_nonzero = false;
};

/// Checks X(p) = 0 and computes the exact Jacobian. Eigenvalues come from
/// the diagonal when the Jacobian is triangular; otherwise the candidate
/// triple must annihilate det(J - lambda I) and be pairwise distinct.
inline SingularityReport verify_singularity(const PVField& x, const std::array<FieldElem, 3>& point,
                                            const std::optional<std::array<FieldElem, 3>>& candidates = {}) {
  if (x.nvars() != 3) throw DomainError("verify_singularity expects a field on C^3");
  SingularityReport rep;
  for (int k = 0; k < 3; ++k) {
    if (!evaluate(x[k], point).is_zero()) {
      rep.status = SingularityStatus::not_singular;
      return rep;
    }
  }
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      rep.jacobian[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
          evaluate(partial_derivative(x[r], c), point);
  const auto& j = rep.jacobian;
  const bool upper = j[1][0].is_zero() && j[2][0].is_zero() && j[2][1].is_zero();
  const bool lower = j[0][1].is_zero() && j[0][2].is_zero() && j[1][2].is_zero();
  rep.triangular = upper || lower;
  rep.determinant = determinant3(j);
  rep.determinant_nonzero = !rep.determinant.is_zero();

  if (candidates) {
    const auto& lam = *candidates;
    bool good = !(lam[0] == lam[1] || lam[0] == lam[2] || lam[1] == lam[2]);
    for (const auto& l : lam) {
      Matrix3 shifted = j;
      for (std::size_t k = 0; k < 3; ++k) shifted[k][k] -= l;
      good = good && determinant3(shifted).is_zero();
    }
    if (!good) {
      rep.status = SingularityStatus::candidates_rejected;
      return rep;
    }
    rep.eigenvalues = lam;
  } else if (rep.triangular) {
    rep.eigenvalues = std::array<FieldElem, 3>{j[0][0], j[1][1], j[2][2]};
  } else {
    rep.status = SingularityStatus::eigenvalues_unavailable;
  }
  return rep;
}

inline SingularityReport verify_singularity(const AffineDecoupledVF& vf, const std::array<FieldElem, 3>& point,
                                            const std::optional<std::array<FieldElem, 3>>& candidates = {}) {
  return verify_singularity(vf.field(), point, candidates);
}

/// Degree of the foliation defined by a nonzero 2-form: the common degree of
/// its coefficients after removing the monomial content, minus one.
inline long foliation_degree(const PForm& w) {
  if (w.degree() != 2) throw DomainError("foliation_degree expects a 2-form");
  if (w.is_zero()) throw MathError("foliation_degree of the zero form");
  const PForm primitive = w.divided_by_monomial(form_monomial_content(w));
  std::optional<long> deg;
  for (const auto& [idx, p] : primitive.coefficients()) {
    const DegreeInfo h = homogeneity(p);
    if (h.status != DegreeStatus::ok || (deg && *deg != h.degree))
      throw MathError("form coefficients are not jointly homogeneous");
    deg = h.degree;
  }
  return *deg - 1;
}

struct InvarianceReport {
  std::array<bool, 4> planes{};  // H_i = (x_i = 0)
  std::array<bool, 6> lines{};   // L_ij = (x_i = x_j = 0), ordered like kCoordinatePairs

  bool all() const {
    for (bool b : planes) if (!b) return false;
    for (bool b : lines) if (!b) return false;
    return true;
  }
};

/// H_i invariant iff x_i divides component i; L_ij reported invariant when
/// both H_i and H_j are.
inline InvarianceReport invariance_checks(const PVField& x) {
  if (x.nvars() != 4) throw DomainError("invariance_checks expects a field on C^4");
  InvarianceReport rep;
  for (int i = 0; i < 4; ++i) rep.planes[static_cast<std::size_t>(i)] = x[i].divisible_by_variable(i);
  for (std::size_t s = 0; s < kCoordinatePairs.size(); ++s) {
    const auto [i, j] = kCoordinatePairs[s];
    rep.lines[s] = rep.planes[static_cast<std::size_t>(i)] && rep.planes[static_cast<std::size_t>(j)];
  }
  return rep;
}

inline InvarianceReport invariance_checks(const LVSpec& spec) {
  return invariance_checks(spec.vector_field());
}

// ---------------------------------------------------------------------------
// Spec files (line-oriented key=value; '#' comments):
//   d=<int>  Q0=... Q3=<expr in x0..x3>
// or
//   affine   X1=... X3=<expr in w1..w3>   (decoupled shape only)

using LVInput = std::variant<LVSpec, AffineDecoupledVF>;

namespace detail {

struct KeyValueLine {
  std::size_t line;
  std::string key;
  std::string value;
  std::size_t value_column;
};

/// Splits "key=value" lines; commas also separate entries on one line.
inline std::vector<KeyValueLine> split_key_values(std::string_view text) {
  std::vector<KeyValueLine> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view raw = text.substr(start, end - start);
    ++line_no;
    std::size_t seg = 0;
    while (seg <= raw.size()) {
      std::size_t stop = raw.find_first_of(",#", seg);
      const bool comment = stop != std::string_view::npos && raw[stop] == '#';
      if (stop == std::string_view::npos || comment) stop = comment ? stop : raw.size();
      const std::string_view piece = raw.substr(seg, stop - seg);
      const std::size_t first = piece.find_first_not_of(" \t\r");
      if (first != std::string_view::npos) {
        const std::size_t eq = piece.find('=');
        std::string_view key = piece.substr(first, eq == std::string_view::npos ? std::string_view::npos : eq - first);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t' || key.back() == '\r')) key.remove_suffix(1);
        if (eq == std::string_view::npos) {
          out.push_back({line_no, std::string(key), "", 0});
        } else {
          out.push_back({line_no, std::string(key), std::string(piece.substr(eq + 1)), seg + eq + 2});
        }
      }
      if (comment || stop >= raw.size()) break;
      seg = stop + 1;
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

inline long parse_int_value(const KeyValueLine& kv) {
  const std::string& v = kv.value;
  const std::size_t first = v.find_first_not_of(" \t\r");
  if (first == std::string::npos) throw ParseError("expected an integer", kv.line, kv.value_column);
  std::size_t k = first;
  if (v[k] == '-') ++k;
  const std::size_t digits = k;
  while (k < v.size() && std::isdigit(static_cast<unsigned char>(v[k]))) ++k;
  if (k == digits || v.find_first_not_of(" \t\r", k) != std::string::npos || k - digits > 9)
    throw ParseError("expected an integer", kv.line, kv.value_column + first);
  return std::stol(v.substr(first, k - first));
}

}  // namespace detail

/// Throws ParseError for syntax problems (including non-decoupled affine
/// input) and MathError when the parsed data violate spec invariants.
inline LVInput parse_lv_spec(std::string_view text) {
  const auto entries = detail::split_key_values(text);
  bool affine = false;
  std::optional<long> d;
  std::array<std::optional<MPoly>, 4> q;
  std::array<std::optional<MPoly>, 3> xs;
  std::size_t last_line = 1;
  for (const auto& kv : entries) {
    last_line = kv.line;
    if (kv.key == "affine" && kv.value.empty()) {
      affine = true;
    } else if (kv.key == "d") {
      d = detail::parse_int_value(kv);
    } else if (kv.key.size() == 2 && kv.key[0] == 'Q' && kv.key[1] >= '0' && kv.key[1] <= '3') {
      q[static_cast<std::size_t>(kv.key[1] - '0')] =
          parse_poly(kv.value, VariableSet::homogeneous(4), {kv.line, kv.value_column});
    } else if (kv.key.size() == 2 && kv.key[0] == 'X' && kv.key[1] >= '1' && kv.key[1] <= '3') {
      xs[static_cast<std::size_t>(kv.key[1] - '1')] =
          parse_poly(kv.value, VariableSet::affine(), {kv.line, kv.value_column});
    } else {
      throw ParseError("unknown key '" + kv.key + "'", kv.line, 1);
    }
  }
  if (affine) {
    if (d || q[0] || q[1] || q[2] || q[3]) throw ParseError("'affine' spec cannot contain d or Q keys", 1, 1);
    std::vector<MPoly> comps;
    for (int k = 0; k < 3; ++k) {
      if (!xs[static_cast<std::size_t>(k)]) throw ParseError("missing X" + std::to_string(k + 1), last_line, 1);
      comps.push_back(*xs[static_cast<std::size_t>(k)]);
    }
    auto vf = AffineDecoupledVF::recognize(PVField(std::move(comps)));
    if (!vf) {
      std::size_t at = 1;
      for (const auto& kv : entries) if (kv.key[0] == 'X') { at = kv.line; break; }
      throw ParseError("affine field is not decoupled: each Xk must be a*wk^2 + b*wk with a != 0", at, 1);
    }
    return *vf;
  }
  if (xs[0] || xs[1] || xs[2]) throw ParseError("X keys require the 'affine' marker", 1, 1);
  if (!d) throw ParseError("missing d=<degree>", last_line, 1);
  std::array<MPoly, 4> qs{MPoly(4), MPoly(4), MPoly(4), MPoly(4)};
  for (std::size_t k = 0; k < 4; ++k) {
    if (!q[k]) throw ParseError("missing Q" + std::to_string(k), last_line, 1);
    qs[k] = *q[k];
  }
  return LVSpec(static_cast<int>(*d), std::move(qs));
}

inline LVSpec to_homogeneous(const LVInput& in) {
  if (const auto* spec = std::get_if<LVSpec>(&in)) return *spec;
  return homogenize_decoupled(std::get<AffineDecoupledVF>(in));
}

inline std::string format_lv_spec(const LVSpec& spec) {
  const VariableSet vars = VariableSet::homogeneous(4);
  std::string out = "d=" + std::to_string(spec.degree()) + "\n";
  for (int k = 0; k < 4; ++k) out += "Q" + std::to_string(k) + "=" + format_poly(spec.q(k), vars) + "\n";
  return out;
}

inline std::string format_decoupled(const AffineDecoupledVF& vf) {
  const PVField x = vf.field();
  const VariableSet vars = VariableSet::affine();
  std::string out = "affine\n";
  for (int k = 0; k < 3; ++k) out += "X" + std::to_string(k + 1) + "=" + format_poly(x[k], vars) + "\n";
  return out;
}

}  // namespace lvfol

#endif  // LVFOL_FOLIATION_HPP
