#pragma once

// Command implementations behind the orbitforge executable. Each command
// returns its exit code and output text so tests can run it in-process.

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "orbitforge/orbitforge.hpp"

namespace orbitforge::cli {

using orbitforge::to_json;

enum ExitCode { kOk = 0, kMismatch = 1, kUsage = 2, kInternal = 3 };

enum class Format { json, csv, markdown };

inline Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "markdown" || s == "md") return Format::markdown;
  throw std::invalid_argument("unknown format '" + s + "'");
}

struct Result {
  int code = kOk;
  std::string out;
  std::string err;
};

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

inline std::string tuple_text(const RatVec& v) {
  std::vector<std::string> parts;
  for (const auto& x : v) parts.push_back(to_string(x));
  return "(" + join(parts, ", ") + ")";
}

inline std::string variable(std::size_t i, std::size_t n) {
  if (n <= 3) return std::string(1, "xyz"[i]);
  return "x" + std::to_string(i + 1);
}

inline std::string monomial_text(const Index& idx) {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] == 0) continue;
    s += variable(i, idx.size());
    if (idx[i] > 1) s += "^" + std::to_string(idx[i]);
  }
  return s.empty() ? "1" : s;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline std::string csv_line(const std::vector<std::string>& cells) {
  std::vector<std::string> escaped;
  for (const auto& c : cells) escaped.push_back(csv_field(c));
  return join(escaped, ",") + "\n";
}

inline std::string md_line(const std::vector<std::string>& cells) { return "| " + join(cells, " | ") + " |\n"; }

inline std::string md_rule(std::size_t columns) {
  std::string s = "|";
  for (std::size_t i = 0; i < columns; ++i) s += "---|";
  return s + "\n";
}

/// The displayed label: internal beta, or -beta with --paper-signs.
inline RatVec shown(const RatVec& beta, bool paper_signs) { return paper_signs ? -beta : beta; }

// ---- strata ---------------------------------------------------------------

struct StrataOptions {
  long n = 3;
  long d = 4;
  Format format = Format::json;
  bool paper_signs = false;
  std::string svg_path;
};

inline std::string strata_svg(std::size_t d, const std::vector<RatVec>& labels) {
  // Barycentric placement of -w / d in an equilateral triangle.
  const double size = 400, pad = 30;
  auto place = [&](const RatVec& w) {
    const double a = -to_double(w[0]) / static_cast<double>(d);
    const double b = -to_double(w[1]) / static_cast<double>(d);
    const double c = -to_double(w[2]) / static_cast<double>(d);
    const double x = pad + size * (b + 0.5 * c) / (a + b + c);
    const double y = pad + size * (1 - std::sqrt(3.0) / 2 * c / (a + b + c));
    return std::pair<double, double>{x, y};
  };
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 2 * pad << "\" height=\"" << size + 2 * pad
      << "\">\n";
  const auto [x0, y0] = place(RatVec({Rational(-static_cast<long>(d)), 0, 0}));
  const auto [x1, y1] = place(RatVec({0, Rational(-static_cast<long>(d)), 0}));
  const auto [x2, y2] = place(RatVec({0, 0, Rational(-static_cast<long>(d))}));
  svg << "  <polygon points=\"" << x0 << "," << y0 << " " << x1 << "," << y1 << " " << x2 << "," << y2
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (const auto& w : all_weights(RepSpace::poly(3, d))) {
    const auto [x, y] = place(w);
    svg << "  <circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3\" fill=\"gray\"/>\n";
  }
  for (const auto& b : labels) {
    const auto [x, y] = place(b);
    svg << "  <circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"4\" fill=\"red\"><title>" << tuple_text(b)
        << "</title></circle>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

inline Result cmd_strata(const StrataOptions& o) {
  Result r;
  if (o.n < 1 || o.d < 1) {
    r.code = kUsage;
    r.err = "strata: --n and --d must be positive\n";
    return r;
  }
  const auto n = static_cast<std::size_t>(o.n);
  const auto d = static_cast<std::size_t>(o.d);
  const bool verified = n == 3;
  if (!verified) r.err = "note: the pair formula is only established for n = 3; output for n = " + std::to_string(n) + " is unverified\n";
  const std::vector<RatVec> labels = stratifying_set(n, d);
  if (!o.svg_path.empty()) {
    if (n != 3) {
      r.code = kUsage;
      r.err += "strata: --svg needs n = 3\n";
      return r;
    }
    std::ofstream(o.svg_path) << strata_svg(d, labels);
  }
  switch (o.format) {
    case Format::json: {
      json rows = json::array();
      for (const auto& b : labels)
        rows.push_back(json{{"beta", to_json(shown(b, o.paper_signs))}, {"norm2", to_json(norm2(b))}});
      r.out = dump(json{{"command", "strata"}, {"n", n}, {"d", d}, {"paper_signs", o.paper_signs},
                        {"verified", verified}, {"strata", rows}});
      break;
    }
    case Format::csv: {
      std::vector<std::string> header;
      for (std::size_t i = 0; i < n; ++i) header.push_back("beta" + std::to_string(i + 1));
      header.push_back("norm2");
      r.out = csv_line(header);
      for (const auto& b : labels) {
        std::vector<std::string> cells;
        for (const auto& x : shown(b, o.paper_signs)) cells.push_back(to_string(x));
        cells.push_back(to_string(norm2(b)));
        r.out += csv_line(cells);
      }
      break;
    }
    case Format::markdown:
      r.out = md_line({"Type", "norm^2"}) + md_rule(2);
      for (const auto& b : labels) r.out += md_line({tuple_text(shown(b, o.paper_signs)), to_string(norm2(b))});
      break;
  }
  return r;
}

// ---- check ----------------------------------------------------------------

struct CheckOptions {
  std::string input;
  Subgroup group = Subgroup::gl;
};

inline Result cmd_check(const CheckOptions& o) {
  Result r;
  const RepVector v = load_vector(o.input);
  if (v.is_zero()) {
    r.code = kUsage;
    r.err = "check: the input vector is zero\n";
    return r;
  }
  const Group g(o.group, v.space().n);
  const Verdict verdict = is_distinguished(v, g);
  json out{{"command", "check"}, {"group", to_string(o.group)}, {"input", to_json(v)}};
  out["verdict"] = to_json(verdict);
  r.out = dump(out);
  return r;
}

// ---- classify -------------------------------------------------------------

struct ClassifyOptions {
  long d = 4;
  Format format = Format::json;
  bool paper_signs = false;
};

inline std::string solution_text(const StratumSolution& s) {
  std::vector<std::string> parts;
  const auto sq = s.family.squared_coefficients();
  for (std::size_t i = 0; i < s.monomials.size(); ++i)
    parts.push_back("c" + std::to_string(i + 1) + "^2=" + to_string(sq[i]) + " " + monomial_text(s.monomials[i]));
  std::string text = join(parts, ", ");
  if (!s.family.unique()) text += " (family of dimension " + std::to_string(s.family.dimension()) + ")";
  return text;
}

inline json to_json(const StratumSolution& s) {
  json monomials = json::array();
  for (const auto& m : s.monomials) monomials.push_back(monomial_text(m));
  json kernel = json::array();
  for (const auto& k : s.family.kernel) kernel.push_back(to_json(k));
  json sq = json::array();
  for (const auto& x : s.family.squared_coefficients()) sq.push_back(to_json(x));
  return json{{"monomials", monomials},          {"masses", to_json(s.family.particular)},
              {"squared_coefficients", sq},      {"strictly_positive", s.family.strictly_positive},
              {"family_dimension", s.family.dimension()}, {"kernel", kernel}};
}

inline Result cmd_classify(const ClassifyOptions& o) {
  Result r;
  if (o.d < 1) {
    r.code = kUsage;
    r.err = "classify: --d must be positive\n";
    return r;
  }
  const auto d = static_cast<std::size_t>(o.d);
  const std::vector<Stratum> strata = classify(d, excluded_pair_labels(3, d));
  switch (o.format) {
    case Format::json: {
      json rows = json::array();
      for (const auto& s : strata) {
        json omega = json::array();
        for (const auto& m : s.omega) omega.push_back(monomial_text(m));
        json sols = json::array();
        for (const auto& sol : s.solutions) sols.push_back(to_json(sol));
        json row{{"beta", to_json(shown(s.beta, o.paper_signs))}, {"norm2", to_json(norm2(s.beta))},
                 {"in_stratifying_set", s.in_stratifying_set}, {"omega", omega}, {"empty", s.empty()},
                 {"solutions", sols}};
        const auto dim = s.family_dimension();
        row["family_dimension"] = dim ? json(*dim) : json(nullptr);
        rows.push_back(row);
      }
      r.out = dump(json{{"command", "classify"}, {"d", d}, {"paper_signs", o.paper_signs}, {"strata", rows}});
      break;
    }
    case Format::csv:
      r.out = csv_line({"type", "norm2", "in_stratifying_set", "critical_points"});
      for (const auto& s : strata) {
        std::vector<std::string> sols;
        for (const auto& sol : s.solutions) sols.push_back(solution_text(sol));
        r.out += csv_line({tuple_text(shown(s.beta, o.paper_signs)), to_string(norm2(s.beta)),
                           s.in_stratifying_set ? "yes" : "no", s.empty() ? "empty" : join(sols, "; ")});
      }
      break;
    case Format::markdown:
      r.out = md_line({"Type", "Critical point"}) + md_rule(2);
      for (const auto& s : strata) {
        std::vector<std::string> sols;
        for (const auto& sol : s.solutions) sols.push_back(solution_text(sol));
        r.out += md_line({tuple_text(shown(s.beta, o.paper_signs)), s.empty() ? "empty" : join(sols, "<br>")});
      }
      break;
  }
  return r;
}

// ---- table1 ---------------------------------------------------------------

struct TableOptions {
  std::string fixtures;
  Format format = Format::json;
  std::vector<std::string> rows;  // empty: every row
};

inline Result cmd_table1(const TableOptions& o) {
  Result r;
  const Table1Fixture f = load_table1(o.fixtures);
  std::vector<RatVec> extra;
  for (const auto& row : f.rows) extra.push_back(-row.type);
  const std::vector<Stratum> strata = classify(f.degree, extra);

  std::vector<RowCheck> checks;
  for (const auto& row : f.rows)
    if (o.rows.empty() || std::find(o.rows.begin(), o.rows.end(), row.label) != o.rows.end())
      checks.push_back(check_row(row, strata, f.degree));
  if (checks.empty()) {
    r.code = kUsage;
    r.err = "table1: no fixture row matches --row\n";
    return r;
  }
  // The stratifying set must be exactly the printed types of the nonempty rows.
  std::set<RatVec> printed, computed;
  for (const auto& row : f.rows)
    if (row.kind != TableRow::Kind::empty) printed.insert(chamber_canonical(row.type));
  for (const auto& s : strata)
    if (s.in_stratifying_set) computed.insert(s.type());
  const bool types_match = printed == computed;

  std::vector<std::string> failed;
  for (const auto& c : checks)
    if (!c.passed) failed.push_back(c.label);
  if (!types_match) failed.push_back("types");
  r.code = failed.empty() ? kOk : kMismatch;

  switch (o.format) {
    case Format::json: {
      json rows = json::array();
      for (const auto& c : checks) rows.push_back(json{{"label", c.label}, {"passed", c.passed}, {"detail", c.detail}});
      r.out = dump(json{{"command", "table1"}, {"types_match", types_match}, {"rows", rows}, {"mismatches", failed}});
      break;
    }
    case Format::csv:
      r.out = csv_line({"label", "passed", "detail"});
      for (const auto& c : checks) r.out += csv_line({c.label, c.passed ? "yes" : "no", c.detail});
      break;
    case Format::markdown:
      r.out = md_line({"Row", "Status", "Detail"}) + md_rule(3);
      for (const auto& c : checks) r.out += md_line({c.label, c.passed ? "pass" : "FAIL", c.detail});
      break;
  }
  r.err = "mismatched rows: " + (failed.empty() ? std::string("none") : join(failed, ", ")) + "\n";
  return r;
}

// ---- table2 ---------------------------------------------------------------

inline json to_json(const BracketRowCheck& c, const BracketTableRow& row) {
  json mm = matrix_to_json(c.report.mm);
  return json{{"id", c.id},
              {"label", row.label},
              {"parameter", row.parameter ? json(*row.parameter) : json(nullptr)},
              {"passed", c.passed()},
              {"valid", c.valid},
              {"closed", c.closed},
              {"nice_in_basis", c.report.nice},
              {"mm_sp_diagonal", c.report.diagonal},
              {"critical", c.report.critical},
              {"beta", to_json(c.report.beta)},
              {"beta_norm2", to_json(c.report.beta_norm2)},
              {"printed_beta_norm2", to_json(row.beta_norm2)},
              {"derivation", to_json(c.report.derivation)},
              {"is_derivation", c.report.is_derivation},
              {"printed_derivation", to_json(row.derivation)},
              {"multiple", c.report.multiple ? to_json(*c.report.multiple) : json(nullptr)},
              {"sym_derivation_dim", c.dim_aut},
              {"printed_dim_aut", row.dim_aut},
              {"externally_sourced", row.externally_sourced},
              {"mm_sp", mm},
              {"diffs", c.diffs}};
}

inline Result cmd_table2(const TableOptions& o) {
  Result r;
  std::vector<BracketTableRow> rows;
  for (auto& row : load_table2(o.fixtures)) {
    // --row matches an id ("18a_t=2") or an id prefix before the parameter ("18a").
    const std::string stem = row.id.substr(0, row.id.find("_t="));
    if (o.rows.empty() || std::find(o.rows.begin(), o.rows.end(), row.id) != o.rows.end() ||
        std::find(o.rows.begin(), o.rows.end(), stem) != o.rows.end())
      rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    r.code = kUsage;
    r.err = "table2: no fixture row matches --row\n";
    return r;
  }
  const auto checks =
      parallel_map<BracketRowCheck>(rows.size(), [&](std::size_t i) { return check_bracket_row(rows[i]); });
  std::vector<std::string> failed;
  for (const auto& c : checks)
    if (!c.passed()) failed.push_back(c.id);
  r.code = failed.empty() ? kOk : kMismatch;

  switch (o.format) {
    case Format::json: {
      json out = json::array();
      for (std::size_t i = 0; i < rows.size(); ++i) out.push_back(to_json(checks[i], rows[i]));
      r.out = dump(json{{"command", "table2"}, {"rows", out}, {"mismatches", failed}});
      break;
    }
    case Format::csv:
      r.out = csv_line({"id", "passed", "beta_norm2", "multiple", "sym_derivation_dim", "printed_dim_aut", "diffs"});
      for (const auto& c : checks) {
        const auto& row = rows[static_cast<std::size_t>(&c - checks.data())];
        r.out += csv_line({c.id, c.passed() ? "yes" : "no", to_string(c.report.beta_norm2),
                           c.report.multiple ? to_string(*c.report.multiple) : "", std::to_string(c.dim_aut),
                           std::to_string(row.dim_aut), join(c.diffs, "; ")});
      }
      break;
    case Format::markdown:
      r.out = md_line({"Row", "Derivation", "norm^2", "dim", "Status"}) + md_rule(5);
      for (const auto& c : checks)
        r.out += md_line({c.id, "diag" + tuple_text(c.report.derivation), to_string(c.report.beta_norm2),
                          std::to_string(c.dim_aut), c.passed() ? "pass" : "FAIL: " + join(c.diffs, "; ")});
      break;
  }
  r.err = "mismatched rows: " + (failed.empty() ? std::string("none") : join(failed, ", ")) + "\n";
  return r;
}

// ---- minimize -------------------------------------------------------------

struct MinimizeOptions {
  std::string input;
  std::string omega = "cn";
};

inline json doubles(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

inline Result cmd_minimize(const MinimizeOptions& o) {
  Result r;
  if (o.omega != "cn") {
    r.code = kUsage;
    r.err = "minimize: only --omega cn is supported\n";
    return r;
  }
  const RepVector mu = load_vector(o.input);
  if (mu.space().backend != Backend::bracket || mu.space().n % 2 != 0 || mu.is_zero()) {
    r.code = kUsage;
    r.err = "minimize: input must be a nonzero bracket in even dimension\n";
    return r;
  }
  const ValidationReport v = validate(mu);
  if (!v.ok) {
    r.code = kUsage;
    r.err = "minimize: input is not a nilpotent Lie bracket (" + to_string(v.violations.front().kind) + ")\n";
    return r;
  }
  json out{{"command", "minimize"}, {"omega", o.omega}, {"input", to_json(mu)}};
  try {
    const MinimalMetric m = find_minimal_metric(mu);
    json critical = json::array();
    for (const auto& [k, c] : m.critical.terms())
      critical.push_back(json{{"i", k[0] + 1}, {"j", k[1] + 1}, {"k", k[2] + 1}, {"coeff", c}});
    out["status"] = "critical";
    out["verdict"] = to_json(m.verdict);
    out["x"] = doubles(m.solution.x);
    out["multipliers"] = doubles(m.solution.multipliers);
    out["degenerate_directions_removed"] = m.solution.directions.size() < mu.space().n;
    out["beta"] = to_json(m.solution.beta);
    out["beta_norm2"] = to_json(norm2(m.solution.beta));
    out["residual"] = m.solution.residual;
    out["iterations"] = m.solution.iterations;
    out["converged"] = m.solution.converged;
    out["critical_bracket"] = critical;
    out["exact_critical_bracket"] = m.exact ? to_json(*m.exact) : json(nullptr);
  } catch (const MinimalMetricError& e) {
    out["status"] = "error";
    out["error"] = e.what();
    out["verdict"] = to_json(e.verdict());
  }
  r.out = dump(out);
  return r;
}

}  // namespace orbitforge::cli
