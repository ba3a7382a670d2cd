#ifndef LVFOL_CLI_HPP
#define LVFOL_CLI_HPP

// Command-line front end. Reports go to `out`, diagnostics to `err`; the
// exit code is the only pass/fail channel:
//   0 success / all checks pass      1 a check or certificate failed
//   2 parse error (input or flags)   3 mathematical rejection   4 I/O error

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lvfol/branched.hpp"
#include "lvfol/error.hpp"
#include "lvfol/foliation.hpp"
#include "lvfol/forms.hpp"
#include "lvfol/genericity.hpp"
#include "lvfol/text.hpp"

namespace lvfol::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kParse = 2, kMath = 3, kIo = 4 };

enum class Format { text, json };

struct CliConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::string output;
  Format format = Format::text;
  std::optional<std::uint64_t> seed;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("error writing '" + path + "'");
}

/// ParseError tagged with the file it came from.
class FileParseError : public ParseError {
 public:
  FileParseError(std::string file, const ParseError& e)
      : ParseError(e.message(), e.line(), e.column()), file_(std::move(file)) {}
  const std::string& file() const noexcept { return file_; }

 private:
  std::string file_;
};

template <typename F>
auto with_file(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw FileParseError(path, e);
  }
}

struct PointSpec {
  std::string label;
  std::array<FieldElem, 3> coordinates;
  std::optional<std::array<FieldElem, 3>> candidates;
};

/// One point per line: "label : c1, c2, c3" with an optional
/// "| l1, l2, l3" candidate eigenvalue triple. '#' starts a comment.
inline std::vector<PointSpec> parse_points(std::string_view text) {
  std::vector<PointSpec> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++line_no;
    if (const std::size_t hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::size_t first = raw.find_first_not_of(" \t\r");
    if (first != std::string_view::npos) {
      const std::size_t colon = raw.find(':');
      if (colon == std::string_view::npos) throw ParseError("expected 'label : c1, c2, c3'", line_no, first + 1);
      std::string label(raw.substr(first, colon - first));
      while (!label.empty() && (label.back() == ' ' || label.back() == '\t')) label.pop_back();
      if (label.empty()) throw ParseError("empty point label", line_no, first + 1);
      auto parse_triple = [&](std::size_t from, std::size_t to) {
        std::array<FieldElem, 3> vals;
        std::size_t pos = from;
        for (int k = 0; k < 3; ++k) {
          std::size_t stop = k < 2 ? raw.find(',', pos) : to;
          if (stop == std::string_view::npos || stop > to)
            throw ParseError("expected three comma-separated values", line_no, pos + 1);
          vals[static_cast<std::size_t>(k)] = parse_field_elem(raw.substr(pos, stop - pos), {line_no, pos + 1});
          pos = stop + 1;
        }
        return vals;
      };
      const std::size_t bar = raw.find('|');
      PointSpec p;
      p.label = std::move(label);
      p.coordinates = parse_triple(colon + 1, bar == std::string_view::npos ? raw.size() : bar);
      if (bar != std::string_view::npos) p.candidates = parse_triple(bar + 1, raw.size());
      out.push_back(std::move(p));
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

inline void emit_reports(const std::vector<ConditionReport>& reports, Format fmt, bool table_layout,
                         std::ostream& out) {
  if (fmt == Format::json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r));
    out << arr.dump(2) << "\n";
    return;
  }
  if (table_layout) {
    out << format_table(reports);
    return;
  }
  for (std::size_t k = 0; k < reports.size(); ++k) {
    if (k > 0) out << "\n";
    out << format_report(reports[k]);
  }
}

inline bool all_pass(const std::vector<ConditionReport>& reports) {
  for (const auto& r : reports)
    if (!r.pass) return false;
  return true;
}

inline int cmd_table1(const CliConfig& cfg, std::ostream& out) {
  const auto reports = table1();
  emit_reports(reports, cfg.format, true, out);
  return all_pass(reports) ? kOk : kCheckFailed;
}

inline int cmd_check_lv(const CliConfig& cfg, const std::string& input, const std::string& points_path,
                        std::ostream& out, std::ostream& err) {
  const std::string text = read_file(input);
  const LVInput parsed = with_file(input, [&] { return parse_lv_spec(text); });
  const LVSpec spec = to_homogeneous(parsed);
  const PVField chart = spec.affine_field();

  std::vector<ConditionReport> reports;
  if (!points_path.empty()) {
    const std::string ptext = read_file(points_path);
    const auto points = with_file(points_path, [&] { return parse_points(ptext); });
    for (const auto& p : points) {
      const SingularityReport check = verify_singularity(chart, p.coordinates, p.candidates);
      if (check.status != SingularityStatus::ok) {
        err << "error: point " << p.label << ": " << to_string(check.status) << "\n";
        return kMath;
      }
      if (!check.determinant_nonzero) {
        err << "error: point " << p.label << ": degenerate singularity (det DX = 0)\n";
        return kMath;
      }
      reports.push_back(condition_report(EigenTriple(*check.eigenvalues), p.label));
    }
  } else {
    const auto* affine = std::get_if<AffineDecoupledVF>(&parsed);
    std::optional<AffineDecoupledVF> vf = affine != nullptr ? std::optional(*affine)
                                                            : AffineDecoupledVF::recognize(chart);
    if (!vf) {
      err << "error: singularities of a non-decoupled field cannot be enumerated; pass --points\n";
      return kMath;
    }
    for (const auto& sp : singular_points_decoupled(*vf)) {
      if (!sp.nondegenerate) {
        err << "error: point " << sp.label << ": degenerate singularity (repeated root, det DX = 0)\n";
        return kMath;
      }
      reports.push_back(condition_report(EigenTriple(sp.eigenvalues), sp.label));
    }
  }
  emit_reports(reports, cfg.format, false, out);
  return all_pass(reports) ? kOk : kCheckFailed;
}

inline int cmd_pullback(const CliConfig& cfg, const std::string& map_path, const std::string& lv_path,
                        const std::string& out_path, std::ostream& out) {
  const std::string mtext = read_file(map_path);
  const std::string ltext = read_file(lv_path);
  const BranchedMap f = with_file(map_path, [&] { return parse_map_spec(mtext); });
  const LVSpec g = to_homogeneous(with_file(lv_path, [&] { return parse_lv_spec(ltext); }));

  const PForm eta = branched_pullback(f, g);
  const FormChecks checks = descent_and_integrability_checks(eta);
  const DegreeCounts counts = degree_and_counts(f.nu(), g.degree(), f.exponents());
  const Monomial content = form_monomial_content(eta);
  const long theta = foliation_degree(eta);
  write_file(out_path, format_form(eta));

  const bool ok = checks.all() && theta == counts.theta;
  nlohmann::ordered_json j;
  j["theta"] = theta;
  j["theta_formula"] = counts.theta;
  j["coefficient_degree"] = theta + 1;
  j["radial_ok"] = checks.radial;
  j["decomposable_ok"] = checks.decomposable;
  j["integrable_ok"] = checks.contraction_integrable;
  j["monomial_content"] = detail::format_monomial(content, VariableSet::homogeneous(f.nvars()));
  j["counts"] = {{"indeterminacy", counts.indeterminacy_count}, {"singularities", counts.singularity_count}};
  j["nu"] = f.nu();
  j["d"] = g.degree();
  j["genericity_assumed"] = true;
  if (cfg.format == Format::json) {
    out << j.dump(2) << "\n";
  } else {
    out << "theta = " << theta << " (formula " << counts.theta << ")\n"
        << "coefficient degree = " << theta + 1 << "\n"
        << "radial = " << (checks.radial ? "yes" : "no") << ", decomposable = "
        << (checks.decomposable ? "yes" : "no") << ", integrable = "
        << (checks.contraction_integrable ? "yes" : "no") << "\n"
        << "indeterminacy points = " << counts.indeterminacy_count
        << ", singularities of G = " << counts.singularity_count << "\n"
        << "map genericity assumed, not verified\n";
  }
  return ok ? kOk : kCheckFailed;
}

inline const char* case_text(WeightCase c) {
  switch (c) {
    case WeightCase::case1: return "1";
    case WeightCase::case2: return "2";
    case WeightCase::case3: return "3";
    case WeightCase::case4: return "4";
    case WeightCase::invalid: return "invalid";
  }
  return "?";
}

inline int cmd_classify_weights(const CliConfig& cfg, const std::vector<long>& e, long d, std::ostream& out) {
  if (e.size() != 4) throw DomainError("classify-weights needs exactly four exponents");
  const WeightData w = classify_weights({e[0], e[1], e[2], e[3]}, d);
  const auto& v = w.weight_vector;
  if (cfg.format == Format::json) {
    nlohmann::ordered_json j;
    j["exponents"] = w.exponents;
    j["case"] = case_text(w.weight_case);
    j["weight_vector"] = v;
    j["d"] = w.d;
    j["quasi_degree"] = w.quasi_degree;
    j["total_weighted_degree"] = w.total_weighted_degree;
    j["k"] = w.k;
    j["l"] = w.l;
    j["m"] = w.m;
    j["n"] = w.n;
    j["k_nonnegative"] = w.k_nonnegative;
    j["m_nonnegative"] = w.m_nonnegative;
    j["regime"] = to_string(w.regime);
    j["pairwise_coprime"] = w.pairwise_coprime;
    out << j.dump(2) << "\n";
  } else {
    out << "case " << case_text(w.weight_case) << ", w=(" << v[0] << "," << v[1] << "," << v[2] << "," << v[3]
        << ")\n"
        << "quasi_degree=" << w.quasi_degree << " (d=" << w.d << ")\n"
        << "total_weighted_degree=" << w.total_weighted_degree << "\n"
        << "k=" << w.k << " l=" << w.l << " m=" << w.m << " n=" << w.n << "\n"
        << "regime=" << to_string(w.regime) << " (k>=0: " << (w.k_nonnegative ? "yes" : "no")
        << ", m>=0: " << (w.m_nonnegative ? "yes" : "no") << ")\n"
        << "pairwise_coprime=" << (w.pairwise_coprime ? "yes" : "no") << "\n";
  }
  return kOk;
}

/// Probabilistic variant of the form checks: every identity is evaluated at
/// `samples` random rational points instead of symbolically.
inline FormChecks sampled_checks(const PForm& w, std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-50, 50);
  std::uniform_int_distribution<long> den(1, 17);
  const int n = w.nvars();
  const PForm dw = exterior_derivative(w);
  auto constant_form = [n](const std::map<IndexTuple, FieldElem>& vals, int degree) {
    PForm f(n, degree);
    for (const auto& [idx, v] : vals) f.add(idx, MPoly::constant(n, v));
    return f;
  };
  FormChecks out{true, true, true};
  for (int s = 0; s < samples; ++s) {
    std::vector<FieldElem> p;
    std::vector<MPoly> comps;
    for (int k = 0; k < n; ++k) {
      p.emplace_back(Rational(num(rng), den(rng)));
      comps.push_back(MPoly::constant(n, p.back()));
    }
    const PForm wp = constant_form(evaluate_form(w, p), 2);
    const PForm dwp = constant_form(evaluate_form(dw, p), 3);
    out.radial = out.radial && interior_product(PVField(comps), wp).is_zero();
    out.decomposable = out.decomposable && wedge(wp, wp).is_zero();
    for (int a = 0; a < n; ++a)
      out.contraction_integrable =
          out.contraction_integrable && wedge(interior_product(PVField::coordinate(n, a), wp), dwp).is_zero();
  }
  return out;
}

inline int cmd_verify_form(const CliConfig& cfg, const std::string& input, int nvars, bool sampled, int samples,
                           std::ostream& out) {
  const std::string text = read_file(input);
  const PForm w = with_file(input, [&] { return parse_form(text, nvars); });
  const FormChecks checks = sampled ? sampled_checks(w, cfg.seed.value_or(0), samples)
                                    : descent_and_integrability_checks(w);
  const long degree = foliation_degree(w);
  if (cfg.format == Format::json) {
    nlohmann::ordered_json j;
    j["mode"] = sampled ? "sampled" : "exact";
    j["nvars"] = w.nvars();
    j["radial"] = checks.radial;
    j["decomposable"] = checks.decomposable;
    j["contraction_integrable"] = checks.contraction_integrable;
    j["degree"] = degree;
    out << j.dump(2) << "\n";
  } else {
    out << "mode = " << (sampled ? "sampled (probabilistic)" : "exact") << "\n"
        << "nvars = " << w.nvars() << "\n"
        << "radial = " << (checks.radial ? "yes" : "no") << "\n"
        << "decomposable = " << (checks.decomposable ? "yes" : "no") << "\n"
        << "contraction_integrable = " << (checks.contraction_integrable ? "yes" : "no") << "\n"
        << "degree = " << degree << "\n";
  }
  return checks.all() ? kOk : kCheckFailed;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact construction and certification of branched pull-back foliations", "lvfol"};
  app.require_subcommand(1);
  CliConfig cfg;
  std::string format = "text";
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };

  auto* table = app.add_subcommand("table1", "Reproduce the reference singularity table");
  add_format(table);

  std::string lv_input, points;
  auto* check = app.add_subcommand("check-lv", "Certify the residue conditions of a Lotka-Volterra spec");
  check->add_option("--input", lv_input, "LV spec file")->required();
  check->add_option("--points", points, "Singular points to verify");
  add_format(check);

  std::string map_path, lv_path, out_path;
  auto* pull = app.add_subcommand("pullback", "Build the pull-back 2-form of a branched map");
  pull->add_option("--map", map_path, "Map spec file")->required();
  pull->add_option("--lv", lv_path, "LV spec file")->required();
  pull->add_option("--out", out_path, "Output form file")->required();
  format = "json";
  add_format(pull);

  std::vector<long> exps;
  long degree = 2;
  auto* weights = app.add_subcommand("classify-weights", "Weight-case arithmetic for branching exponents");
  weights->add_option("exponents", exps, "alpha beta gamma delta")->required()->expected(4);
  weights->add_option("--d", degree, "Foliation degree");
  add_format(weights);

  std::string form_input;
  int nvars = 0;
  bool sampled = false;
  int samples = 8;
  std::uint64_t seed = 0;
  auto* verify = app.add_subcommand("verify-form", "Descent/integrability checks and degree of a 2-form");
  verify->add_option("--input", form_input, "Form file")->required();
  verify->add_option("--nvars", nvars, "Ambient dimension (default: inferred)");
  verify->add_flag("--sampled", sampled, "Evaluate identities at random points (probabilistic)");
  verify->add_option("--samples", samples, "Number of random points in sampled mode");
  auto* seed_opt = verify->add_option("--seed", seed, "Seed for sampled mode");
  add_format(verify);

  try {
    format = "text";
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  }
  // pullback reports JSON unless asked otherwise.
  if (pull->parsed() && pull->count("--format") == 0) format = "json";
  cfg.format = format == "json" ? Format::json : Format::text;
  if (seed_opt->count() > 0) cfg.seed = seed;

  try {
    if (table->parsed()) return cmd_table1(cfg, out);
    if (check->parsed()) return cmd_check_lv(cfg, lv_input, points, out, err);
    if (pull->parsed()) return cmd_pullback(cfg, map_path, lv_path, out_path, out);
    if (weights->parsed()) return cmd_classify_weights(cfg, exps, degree, out);
    if (verify->parsed()) return cmd_verify_form(cfg, form_input, nvars, sampled, samples, out);
  } catch (const FileParseError& e) {
    err << e.file() << ":" << e.line() << ":" << e.column() << ": parse error: " << e.message() << "\n";
    return kParse;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kMath;
  }
  return kParse;
}

}  // namespace lvfol::cli

#endif  // LVFOL_CLI_HPP
