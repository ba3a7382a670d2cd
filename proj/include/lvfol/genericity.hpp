#ifndef LVFOL_GENERICITY_HPP
#define LVFOL_GENERICITY_HPP

// Residue-type genericity certificate at a singular point with eigenvalues
// l1, l2, l3:
//   s_i = (l_j + l_k) / l_i,   z_i = l_i^2 / (l_j l_k),   {i, j, k} = {1, 2, 3}.
//
// Rows of a report (verdict in brackets):
//   1       l1 + l2 + l3                     [!= 0]
//   2..4    l1/l2, l1/l3, l2/l3              [not real]
//   5..7    s3, s2, s1                       [not in I_1]
//   8..10   z1, z2, z3                       [not in I_1]
//   11      s1 + s2 + s3                     [not in I_1]
//   12..14  s2 + s3, s1 + s3, s1 + s2        [not in I_1]
// A passing report certifies the open conditions at the listed point only.

#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "lvfol/error.hpp"
#include "lvfol/foliation.hpp"
#include "lvfol/qfield.hpp"

namespace lvfol {

class EigenTriple {
 public:
  EigenTriple(FieldElem l1, FieldElem l2, FieldElem l3) : l_{std::move(l1), std::move(l2), std::move(l3)} {
    for (const auto& l : l_)
      if (l.is_zero()) throw MathError("eigenvalue triple contains zero");
    if (l_[0] == l_[1] || l_[0] == l_[2] || l_[1] == l_[2])
      throw MathError("eigenvalues must be pairwise distinct");
  }
  explicit EigenTriple(const std::array<FieldElem, 3>& l) : EigenTriple(l[0], l[1], l[2]) {}

  /// 1-based access.
  const FieldElem& operator()(int i) const { return l_.at(static_cast<std::size_t>(i - 1)); }
  const std::array<FieldElem, 3>& values() const { return l_; }

  FieldElem sum() const { return l_[0] + l_[1] + l_[2]; }

  EigenTriple scaled(const FieldElem& c) const { return EigenTriple(l_[0] * c, l_[1] * c, l_[2] * c); }

  /// Entry k of the result is entry perm[k] (0-based) of this triple.
  EigenTriple permuted(const std::array<int, 3>& perm) const {
    return EigenTriple(l_[static_cast<std::size_t>(perm[0])], l_[static_cast<std::size_t>(perm[1])],
                       l_[static_cast<std::size_t>(perm[2])]);
  }

 private:
  std::array<FieldElem, 3> l_;
};

struct Residues {
  FieldElem sigma;
  FieldElem zeta;
};

/// The residues at index i (1..3); both are symmetric in the other two indices.
inline Residues sigma_zeta(const EigenTriple& lam, int i) {
  if (i < 1 || i > 3) throw DomainError("residue index must be 1, 2 or 3");
  const int j = i == 1 ? 2 : 1;
  const int k = i == 3 ? 2 : 3;
  return {(lam(j) + lam(k)) / lam(i), lam(i) * lam(i) / (lam(j) * lam(k))};
}

enum class Predicate { nonzero, not_real, not_in_i1 };

struct ConditionRow {
  int index = 0;
  FieldElem value;
  Predicate predicate = Predicate::nonzero;
  bool pass = false;
  std::optional<bool> not_positive_real;  // rows 2..4 only

  std::string text() const { return value.to_string(); }
};

struct ConditionReport {
  std::string label;
  EigenTriple eigenvalues;
  std::vector<ConditionRow> rows;
  bool pass = false;
};

inline ConditionReport condition_report(const EigenTriple& lam, std::string label) {
  const Residues r1 = sigma_zeta(lam, 1);
  const Residues r2 = sigma_zeta(lam, 2);
  const Residues r3 = sigma_zeta(lam, 3);

  ConditionReport rep{std::move(label), lam, {}, true};
  auto push = [&](FieldElem value, Predicate pred) {
    ConditionRow row;
    row.index = static_cast<int>(rep.rows.size()) + 1;
    const Classification cls = classify(value, 1);
    switch (pred) {
      case Predicate::nonzero: row.pass = !cls.is_zero; break;
      case Predicate::not_real:
        row.pass = !cls.is_real;
        row.not_positive_real = !cls.is_positive_real;
        break;
      case Predicate::not_in_i1: row.pass = !cls.in_natural_range(1); break;
    }
    row.value = std::move(value);
    row.predicate = pred;
    rep.pass = rep.pass && row.pass;
    rep.rows.push_back(std::move(row));
  };

  push(lam.sum(), Predicate::nonzero);
  push(lam(1) / lam(2), Predicate::not_real);
  push(lam(1) / lam(3), Predicate::not_real);
  push(lam(2) / lam(3), Predicate::not_real);
  push(r3.sigma, Predicate::not_in_i1);
  push(r2.sigma, Predicate::not_in_i1);
  push(r1.sigma, Predicate::not_in_i1);
  push(r1.zeta, Predicate::not_in_i1);
  push(r2.zeta, Predicate::not_in_i1);
  push(r3.zeta, Predicate::not_in_i1);
  push(r1.sigma + r2.sigma + r3.sigma, Predicate::not_in_i1);
  push(r2.sigma + r3.sigma, Predicate::not_in_i1);
  push(r1.sigma + r3.sigma, Predicate::not_in_i1);
  push(r1.sigma + r2.sigma, Predicate::not_in_i1);
  return rep;
}

/// Table ordering of the eigenvalues used by table1(): (l_w2, l_w1, l_w3)
/// relative to the Jacobian diagonal in coordinate order.
inline constexpr std::array<int, 3> kTableEigenOrder{1, 0, 2};

/// The four representative singularities of the reference field with
/// their table labels, in table order.
inline std::vector<std::pair<std::string, std::array<FieldElem, 3>>> table1_points() {
  const FieldElem i = FieldElem::i();
  const FieldElem s = FieldElem::sqrt2();
  return {{"p123", {FieldElem(0), FieldElem(0), FieldElem(0)}},
          {"p12", {FieldElem(0), FieldElem(-4), FieldElem(0)}},
          {"p1", {FieldElem(0), FieldElem(-4), FieldElem(-1)}},
          {"pm", {i + s, FieldElem(-4), FieldElem(-1)}}};
}

/// Full pipeline on the reference field: homogenize, enumerate the affine
/// singularities, select the four table points, verify each one, reorder
/// the eigenvalues to table order and evaluate the 14 conditions.
inline std::vector<ConditionReport> table1() {
  const AffineDecoupledVF vf = reference_decoupled_field();
  const LVSpec spec = homogenize_decoupled(vf);
  const PVField chart = spec.affine_field();
  const auto enumerated = singular_points_decoupled(vf);

  std::vector<ConditionReport> out;
  for (const auto& [label, point] : table1_points()) {
    const SingularPoint* found = nullptr;
    for (const auto& sp : enumerated)
      if (sp.coordinates == point) found = &sp;
    if (found == nullptr) throw MathError("table point " + label + " is not among the enumerated zeros");
    const SingularityReport check = verify_singularity(chart, point);
    if (check.status != SingularityStatus::ok || !check.determinant_nonzero || *check.eigenvalues != found->eigenvalues)
      throw MathError("table point " + label + " failed singularity verification");
    out.push_back(condition_report(EigenTriple(found->eigenvalues).permuted(kTableEigenOrder), label));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Output

inline nlohmann::ordered_json report_to_json(const ConditionReport& rep) {
  nlohmann::ordered_json j;
  j["singularity"] = rep.label;
  j["eigenvalues"] = nlohmann::ordered_json::array();
  for (const auto& l : rep.eigenvalues.values()) j["eigenvalues"].push_back(l.to_string());
  j["conditions"] = nlohmann::ordered_json::array();
  for (const auto& row : rep.rows) {
    nlohmann::ordered_json r;
    r["index"] = row.index;
    r["value"] = row.text();
    r["pass"] = row.pass;
    if (row.not_positive_real) r["not_positive_real"] = *row.not_positive_real;
    j["conditions"].push_back(std::move(r));
  }
  j["pass"] = rep.pass;
  return j;
}

inline const char* predicate_text(Predicate p) {
  switch (p) {
    case Predicate::nonzero: return "!= 0";
    case Predicate::not_real: return "not real";
    case Predicate::not_in_i1: return "not in I_1";
  }
  return "?";
}

/// One report as a block of text.
inline std::string format_report(const ConditionReport& rep) {
  std::ostringstream os;
  os << "singularity " << rep.label << "\n";
  for (int k = 1; k <= 3; ++k) os << "  lambda" << k << " = " << rep.eigenvalues(k) << "\n";
  for (const auto& row : rep.rows) {
    os << "  condition " << row.index << " = " << row.text() << "  [" << predicate_text(row.predicate) << ": "
       << (row.pass ? "pass" : "FAIL") << "]";
    if (row.not_positive_real) os << " [not positive real: " << (*row.not_positive_real ? "yes" : "no") << "]";
    os << "\n";
  }
  os << "  overall: " << (rep.pass ? "pass" : "FAIL") << " (certificate at listed points)\n";
  return os.str();
}

/// Table layout: one row per eigenvalue/condition, one column per report.
inline std::string format_table(const std::vector<ConditionReport>& reps) {
  std::ostringstream os;
  os << "Singularity";
  for (const auto& r : reps) os << " | " << r.label;
  os << "\n";
  for (int k = 1; k <= 3; ++k) {
    os << "lambda" << k;
    for (const auto& r : reps) os << " | " << r.eigenvalues(k);
    os << "\n";
  }
  for (std::size_t row = 0; row < 14; ++row) {
    os << "Condition " << row + 1;
    for (const auto& r : reps) os << " | " << r.rows.at(row).text();
    os << "\n";
  }
  os << "Verdict";
  for (const auto& r : reps) os << " | " << (r.pass ? "pass" : "FAIL");
  os << "\n";
  os << "(certificate at listed points)\n";
  return os.str();
}

}  // namespace lvfol

#endif  // LVFOL_GENERICITY_HPP
