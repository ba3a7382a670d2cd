#ifndef LVFOL_FORMS_HPP
#define LVFOL_FORMS_HPP

// Polynomial differential forms on C^n: wedge, exterior derivative, interior
// product, pull-back, and the descent/integrability checks used to certify
// that a 2-form defines a codimension-2 foliation on projective space.

#include <algorithm>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "lvfol/error.hpp"
#include "lvfol/mpoly.hpp"
#include "lvfol/text.hpp"

namespace lvfol {

/// Strictly increasing coordinate indices (i1 < ... < iq) naming dx_i1^...^dx_iq.
using IndexTuple = std::vector<int>;

/// Polynomial vector field; component k is the coefficient of d/dx_k.
class PVField {
 public:
  PVField() = default;
  explicit PVField(std::vector<MPoly> components) : components_(std::move(components)) {
    if (components_.empty()) throw DomainError("vector field needs at least one component");
    const int n = static_cast<int>(components_.size());
    for (const auto& c : components_)
      if (c.nvars() != n)
        throw DomainError("vector field components must live on C^" + std::to_string(n));
  }

  /// Radial field sum_j x_j d/dx_j.
  static PVField radial(int n) {
    std::vector<MPoly> comps;
    for (int k = 0; k < n; ++k) comps.push_back(MPoly::variable(n, k));
    return PVField(std::move(comps));
  }

  /// Weighted Euler field sum_j w_j x_j d/dx_j.
  static PVField weighted_radial(std::span<const long> w) {
    const int n = static_cast<int>(w.size());
    std::vector<MPoly> comps;
    for (int k = 0; k < n; ++k) comps.push_back(MPoly::variable(n, k).scaled(FieldElem(w[k])));
    return PVField(std::move(comps));
  }

  /// Constant coordinate field d/dx_k.
  static PVField coordinate(int n, int k) {
    std::vector<MPoly> comps(static_cast<std::size_t>(n), MPoly(n));
    comps[static_cast<std::size_t>(k)] = MPoly::constant(n, FieldElem(1));
    return PVField(std::move(comps));
  }

  int nvars() const { return static_cast<int>(components_.size()); }
  const MPoly& operator[](int k) const { return components_.at(static_cast<std::size_t>(k)); }
  const std::vector<MPoly>& components() const { return components_; }

  friend PVField operator+(const PVField& x, const PVField& y) {
    if (x.nvars() != y.nvars()) throw DomainError("vector field nvars mismatch");
    std::vector<MPoly> comps;
    for (int k = 0; k < x.nvars(); ++k) comps.push_back(x[k] + y[k]);
    return PVField(std::move(comps));
  }

  PVField times(const MPoly& p) const {
    std::vector<MPoly> comps;
    for (const auto& c : components_) comps.push_back(c * p);
    return PVField(std::move(comps));
  }

  friend bool operator==(const PVField&, const PVField&) = default;

 private:
  std::vector<MPoly> components_;
};

class PForm {
 public:
  using CoeffMap = std::map<IndexTuple, MPoly>;

  PForm() = default;
  PForm(int nvars, int degree) : nvars_(nvars), degree_(degree) {
    if (nvars < 1 || nvars > kMaxVars) throw DomainError("form nvars out of range");
    if (degree < 0) throw DomainError("form degree must be nonnegative");
  }

  static PForm function(const MPoly& p) {
    PForm f(p.nvars(), 0);
    f.add(IndexTuple{}, p);
    return f;
  }

  /// dx_i as a 1-form.
  static PForm differential_of_coordinate(int nvars, int k) {
    PForm f(nvars, 1);
    f.add(IndexTuple{k}, MPoly::constant(nvars, FieldElem(1)));
    return f;
  }

  /// The exact differential sum_j (dp/dx_j) dx_j.
  static PForm differential(const MPoly& p) {
    PForm f(p.nvars(), 1);
    for (int j = 0; j < p.nvars(); ++j) f.add(IndexTuple{j}, partial_derivative(p, j));
    return f;
  }

  static PForm volume(int nvars) {
    PForm f(nvars, nvars);
    IndexTuple all;
    for (int k = 0; k < nvars; ++k) all.push_back(k);
    f.add(all, MPoly::constant(nvars, FieldElem(1)));
    return f;
  }

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  bool is_zero() const { return coeffs_.empty(); }
  const CoeffMap& coefficients() const { return coeffs_; }

  MPoly coefficient(const IndexTuple& idx) const {
    auto it = coeffs_.find(idx);
    return it == coeffs_.end() ? MPoly(nvars_) : it->second;
  }

  /// Adds p * dx_idx; idx must already be strictly increasing.
  void add(const IndexTuple& idx, const MPoly& p) {
    if (static_cast<int>(idx.size()) != degree_) throw DomainError("index tuple length != form degree");
    if (p.nvars() != nvars_) throw DomainError("coefficient nvars mismatch");
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] < 0 || idx[k] >= nvars_) throw DomainError("form index out of range");
      if (k > 0 && idx[k] <= idx[k - 1]) throw DomainError("form index tuple not strictly increasing");
    }
    if (p.is_zero()) return;
    auto [it, inserted] = coeffs_.try_emplace(idx, p);
    if (!inserted) {
      it->second += p;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  PForm operator-() const {
    PForm r(nvars_, degree_);
    for (const auto& [idx, p] : coeffs_) r.coeffs_.emplace(idx, -p);
    return r;
  }
  PForm& operator+=(const PForm& o) {
    check_same_shape(o);
    for (const auto& [idx, p] : o.coeffs_) add(idx, p);
    return *this;
  }
  PForm& operator-=(const PForm& o) {
    check_same_shape(o);
    for (const auto& [idx, p] : o.coeffs_) add(idx, -p);
    return *this;
  }
  friend PForm operator+(PForm x, const PForm& y) { return x += y; }
  friend PForm operator-(PForm x, const PForm& y) { return x -= y; }

  PForm times(const MPoly& p) const {
    if (p.nvars() != nvars_) throw DomainError("form/polynomial nvars mismatch");
    PForm r(nvars_, degree_);
    for (const auto& [idx, c] : coeffs_) r.add(idx, c * p);
    return r;
  }

  PForm scaled(const FieldElem& c) const {
    PForm r(nvars_, degree_);
    for (const auto& [idx, p] : coeffs_) r.add(idx, p.scaled(c));
    return r;
  }

  /// Exact division of every coefficient by a monomial.
  PForm divided_by_monomial(const Monomial& m) const {
    PForm r(nvars_, degree_);
    for (const auto& [idx, p] : coeffs_) r.add(idx, p.divided_by_monomial(m));
    return r;
  }

  friend bool operator==(const PForm& x, const PForm& y) {
    return x.nvars_ == y.nvars_ && x.degree_ == y.degree_ && x.coeffs_ == y.coeffs_;
  }

 private:
  void check_same_shape(const PForm& o) const {
    if (o.nvars_ != nvars_ || o.degree_ != degree_)
      throw DomainError("form shape mismatch (nvars/degree)");
  }

  int nvars_ = 1;
  int degree_ = 0;
  CoeffMap coeffs_;
};

namespace detail {

/// Sign of the permutation sorting the concatenation a ++ b (both increasing,
/// disjoint), or 0 when they share an index.
inline int merge_sign(const IndexTuple& a, const IndexTuple& b, IndexTuple& merged) {
  merged.clear();
  merged.reserve(a.size() + b.size());
  std::size_t inversions = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      merged.push_back(a[i++]);
    } else if (i == a.size() || b[j] < a[i]) {
      inversions += a.size() - i;  // b[j] jumps over the rest of a
      merged.push_back(b[j++]);
    } else {
      return 0;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace detail

inline PForm wedge(const PForm& x, const PForm& y) {
  if (x.nvars() != y.nvars()) throw DomainError("wedge: nvars mismatch");
  PForm r(x.nvars(), x.degree() + y.degree());
  if (x.degree() + y.degree() > x.nvars()) return r;
  IndexTuple merged;
  for (const auto& [ix, px] : x.coefficients()) {
    for (const auto& [iy, py] : y.coefficients()) {
      const int s = detail::merge_sign(ix, iy, merged);
      if (s == 0) continue;
      MPoly prod = px * py;
      r.add(merged, s > 0 ? prod : -prod);
    }
  }
  return r;
}

inline PForm exterior_derivative(const PForm& w) {
  PForm r(w.nvars(), w.degree() + 1);
  if (w.degree() >= w.nvars()) return r;
  IndexTuple merged;
  for (const auto& [idx, p] : w.coefficients()) {
    for (int k = 0; k < w.nvars(); ++k) {
      const int s = detail::merge_sign(IndexTuple{k}, idx, merged);
      if (s == 0) continue;
      MPoly dp = partial_derivative(p, k);
      if (dp.is_zero()) continue;
      r.add(merged, s > 0 ? dp : -dp);
    }
  }
  return r;
}

/// i_X w: contraction in the first slot, an anti-derivation of degree -1.
inline PForm interior_product(const PVField& x, const PForm& w) {
  if (x.nvars() != w.nvars()) throw DomainError("interior_product: nvars mismatch");
  if (w.degree() < 1) throw DomainError("interior_product: form degree must be >= 1");
  PForm r(w.nvars(), w.degree() - 1);
  for (const auto& [idx, p] : w.coefficients()) {
    for (std::size_t s = 0; s < idx.size(); ++s) {
      const MPoly& comp = x[idx[s]];
      if (comp.is_zero()) continue;
      IndexTuple rest;
      for (std::size_t t = 0; t < idx.size(); ++t)
        if (t != s) rest.push_back(idx[t]);
      MPoly term = comp * p;
      r.add(rest, s % 2 == 0 ? term : -term);
    }
  }
  return r;
}

/// Pull-back along the polynomial map with components `images` (one per
/// coordinate of w's space, all on a common target space).
inline PForm pullback_form(std::span<const MPoly> images, const PForm& w) {
  if (static_cast<int>(images.size()) != w.nvars())
    throw DomainError("pullback_form: expected " + std::to_string(w.nvars()) + " image polynomials");
  const int target = images.front().nvars();
  for (const auto& img : images)
    if (img.nvars() != target) throw DomainError("pullback_form: images disagree on nvars");

  std::vector<PForm> differentials;
  differentials.reserve(images.size());
  for (const auto& img : images) differentials.push_back(PForm::differential(img));

  PForm r(target, w.degree());
  if (w.degree() > target) return r;
  for (const auto& [idx, p] : w.coefficients()) {
    PForm piece = PForm::function(substitute(p, images));
    for (int k : idx) piece = wedge(piece, differentials[static_cast<std::size_t>(k)]);
    r += piece;
  }
  return r;
}

/// The 2-form i_R i_X (dx0^dx1^dx2^dx3) on C^4.
inline PForm form_from_vector_field(const PVField& x) {
  if (x.nvars() != 4) throw DomainError("form_from_vector_field: vector field must live on C^4");
  return interior_product(PVField::radial(4), interior_product(x, PForm::volume(4)));
}

/// Evaluated form: coefficients are field elements (a form at one point).
inline std::map<IndexTuple, FieldElem> evaluate_form(const PForm& w, std::span<const FieldElem> point) {
  std::map<IndexTuple, FieldElem> out;
  for (const auto& [idx, p] : w.coefficients()) {
    FieldElem v = evaluate(p, point);
    if (!v.is_zero()) out.emplace(idx, std::move(v));
  }
  return out;
}

struct FormChecks {
  bool radial = false;
  bool decomposable = false;
  bool contraction_integrable = false;

  bool all() const { return radial && decomposable && contraction_integrable; }
};

/// Exact symbolic checks of the necessary conditions for a 2-form to define a
/// codimension-2 foliation on projective space:
///   radial: i_R w = 0; decomposable: w^w = 0;
///   contraction_integrable: (i_{d/dx_a} w) ^ dw = 0 for every coordinate a.
inline FormChecks descent_and_integrability_checks(const PForm& w) {
  if (w.degree() != 2) throw DomainError("integrability checks need a 2-form");
  const int n = w.nvars();
  FormChecks out;
  out.radial = interior_product(PVField::radial(n), w).is_zero();
  out.decomposable = wedge(w, w).is_zero();
  const PForm dw = exterior_derivative(w);
  out.contraction_integrable = true;
  for (int a = 0; a < n && out.contraction_integrable; ++a)
    out.contraction_integrable = wedge(interior_product(PVField::coordinate(n, a), w), dw).is_zero();
  return out;
}

/// Monomial content of a nonzero form: the largest monomial dividing every
/// coefficient.
inline Monomial form_monomial_content(const PForm& w) {
  if (w.is_zero()) throw MathError("monomial content of the zero form");
  std::vector<MPoly> coeffs;
  for (const auto& [idx, p] : w.coefficients()) coeffs.push_back(p);
  return common_monomial_content(coeffs);
}

// ---------------------------------------------------------------------------
// Text format: one line per coefficient, ascending lex on index tuples,
//   dx0^dx1 : <poly>
// The zero form prints as "0".

inline std::string format_index_tuple(const IndexTuple& idx) {
  std::string s;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k > 0) s += "^";
    s += "dx" + std::to_string(idx[k]);
  }
  return s.empty() ? "1" : s;
}

inline std::string format_form(const PForm& w) {
  if (w.is_zero()) return "0\n";
  const VariableSet vars = VariableSet::homogeneous(w.nvars());
  std::string out;
  for (const auto& [idx, p] : w.coefficients())
    out += format_index_tuple(idx) + " : " + format_poly(p, vars) + "\n";
  return out;
}

/// Parses the text format. `nvars` = 0 infers the dimension from the highest
/// coordinate index or variable that occurs. Blank lines and '#' comments are
/// ignored. Throws ParseError; the zero form "0" needs an explicit nvars and
/// degree-2 is assumed for it.
inline PForm parse_form(std::string_view text, int nvars = 0) {
  struct Line {
    std::size_t number;
    IndexTuple idx;
    std::string body;
    std::size_t body_column;
  };
  std::vector<Line> lines;
  bool zero_form = false;
  int max_index = -1;
  int max_var = -1;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    const std::size_t first = raw.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || raw[first] == '#') {
      if (end == text.size()) break;
      continue;
    }
    std::string_view body = raw.substr(first);
    while (!body.empty() && (body.back() == ' ' || body.back() == '\t' || body.back() == '\r'))
      body.remove_suffix(1);
    if (body == "0") {
      zero_form = true;
    } else {
      const std::size_t colon = raw.find(':');
      if (colon == std::string_view::npos)
        throw ParseError("expected 'dxI^dxJ : <poly>'", line_no, first + 1);
      std::string_view head = raw.substr(first, colon - first);
      IndexTuple idx;
      std::size_t p = 0;
      auto head_col = [&](std::size_t off) { return first + off + 1; };
      while (p < head.size()) {
        while (p < head.size() && (head[p] == ' ' || head[p] == '\t')) ++p;
        if (p >= head.size()) break;
        if (!idx.empty()) {
          if (head[p] != '^') throw ParseError("expected '^' between differentials", line_no, head_col(p));
          ++p;
          while (p < head.size() && (head[p] == ' ' || head[p] == '\t')) ++p;
        }
        if (head.substr(p, 2) != "dx") throw ParseError("expected 'dx<k>'", line_no, head_col(p));
        p += 2;
        const std::size_t ds = p;
        while (p < head.size() && std::isdigit(static_cast<unsigned char>(head[p]))) ++p;
        if (ds == p) throw ParseError("expected coordinate index after 'dx'", line_no, head_col(ds));
        const int k = std::stoi(std::string(head.substr(ds, p - ds)));
        if (k >= kMaxVars) throw ParseError("coordinate index too large", line_no, head_col(ds));
        if (!idx.empty() && k <= idx.back())
          throw ParseError("differentials must be strictly increasing", line_no, head_col(ds));
        idx.push_back(k);
        max_index = std::max(max_index, k);
      }
      if (idx.empty()) throw ParseError("missing differentials before ':'", line_no, first + 1);
      Line ln{line_no, idx, std::string(raw.substr(colon + 1)), colon + 2};
      // Highest x<k> mentioned, to infer nvars.
      for (std::size_t q = 0; q + 1 < ln.body.size(); ++q) {
        if (ln.body[q] == 'x' && std::isdigit(static_cast<unsigned char>(ln.body[q + 1])) &&
            (q == 0 || !std::isalnum(static_cast<unsigned char>(ln.body[q - 1])))) {
          max_var = std::max(max_var, ln.body[q + 1] - '0');
        }
      }
      lines.push_back(std::move(ln));
    }
    if (end == text.size()) break;
  }

  if (zero_form && !lines.empty()) throw ParseError("'0' mixed with coefficient lines", 1, 1);
  if (zero_form || lines.empty()) {
    if (nvars <= 0) throw ParseError("zero form needs an explicit dimension", 1, 1);
    return PForm(nvars, 2);
  }
  const int degree = static_cast<int>(lines.front().idx.size());
  const int n = nvars > 0 ? nvars : std::min(kMaxVars, std::max(max_index, max_var) + 1);
  if (max_index >= n) throw ParseError("coordinate index exceeds the form dimension", lines.front().number, 1);
  const VariableSet vars = VariableSet::homogeneous(n);
  PForm w(n, degree);
  for (const auto& ln : lines) {
    if (static_cast<int>(ln.idx.size()) != degree)
      throw ParseError("all coefficient lines must have the same form degree", ln.number, 1);
    w.add(ln.idx, parse_poly(ln.body, vars, {ln.number, ln.body_column}));
  }
  return w;
}

}  // namespace lvfol

#endif  // LVFOL_FORMS_HPP
