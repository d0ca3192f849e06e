#pragma once

// JSON wire format: rationals as "p/q" strings, irrational coefficients as
// signed squares {"sq": "p/q", "sign": +-1}, indices 1-based on the wire.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "orbitforge/nicecrit.hpp"
#include "orbitforge/nilgeom.hpp"
#include "orbitforge/rational.hpp"
#include "orbitforge/reps.hpp"
#include "orbitforge/surd.hpp"
#include "orbitforge/ternary.hpp"

namespace orbitforge {

using json = nlohmann::ordered_json;

/// Malformed input; line and column are 1-based, 0 when unknown.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(line ? what + " at line " + std::to_string(line) + ", column " + std::to_string(column) : what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InputError("JSON syntax error", line, column);
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json load_json(const std::string& path) { return parse_json_text(read_file(path)); }

// ---- values ---------------------------------------------------------------

inline json to_json(const Rational& r) { return to_string(r); }

inline json to_json(const RatVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

inline json to_json(const Surd& s) {
  if (s.is_rational()) return to_string(s.rational_value());
  if (s.is_signed_square()) {
    const auto [sq, sg] = s.signed_square();
    return json{{"sq", to_string(sq)}, {"sign", sg}};
  }
  return s.str();
}

inline Rational rational_from_json(const json& j, const std::string& where) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
  } catch (const std::exception& e) {
    throw InputError(where + ": " + e.what());
  }
  throw InputError(where + ": expected a rational as \"p/q\" or an integer");
}

inline Surd surd_from_json(const json& j, const std::string& where) {
  if (j.is_object()) {
    if (!j.contains("sq")) throw InputError(where + ": signed square needs \"sq\"");
    const Rational sq = rational_from_json(j.at("sq"), where + ".sq");
    const int sign = j.value("sign", 1);
    if (sq < 0 || (sign != 1 && sign != -1)) throw InputError(where + ": need sq >= 0 and sign = +-1");
    return Surd::signed_sqrt(sq, sign);
  }
  return Surd(rational_from_json(j, where));
}

inline RatVec ratvec_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  std::vector<Rational> e;
  for (std::size_t i = 0; i < j.size(); ++i) e.push_back(rational_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return RatVec(std::move(e));
}

inline std::size_t size_from_json(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_number_integer() || j.at(key).get<long long>() < 0)
    throw InputError(where + ": \"" + key + "\" must be a nonnegative integer");
  return static_cast<std::size_t>(j.at(key).get<long long>());
}

inline Index index_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array of integers");
  Index idx;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw InputError(where + ": expected integers");
    idx.push_back(static_cast<int>(e.get<long long>()));
  }
  return idx;
}

// ---- vectors --------------------------------------------------------------

inline json to_json(const RepVector& v) {
  json out;
  json terms = json::array();
  if (v.space().backend == Backend::poly) {
    out["type"] = "form";
    out["n"] = v.space().n;
    out["d"] = v.space().d;
    for (const auto& [k, c] : v.terms()) terms.push_back(json{{"exponents", k}, {"coeff", to_json(c)}});
  } else {
    out["type"] = "bracket";
    out["n"] = v.space().n;
    for (const auto& [k, c] : v.terms())
      terms.push_back(json{{"i", k[0] + 1}, {"j", k[1] + 1}, {"k", k[2] + 1}, {"coeff", to_json(c)}});
  }
  out["terms"] = terms;
  return out;
}

/// Brackets may list (i, j) with i > j; the term is stored as -coeff at (j, i).
inline RepVector vector_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type")) throw InputError("input must be an object with a \"type\"");
  const std::string type = j.at("type").get<std::string>();
  if (!j.contains("terms") || !j.at("terms").is_array()) throw InputError("input needs a \"terms\" array");
  const std::size_t n = size_from_json(j, "n", "input");
  if (n == 0) throw InputError("input: n must be positive");
  if (type == "form") {
    const std::size_t d = size_from_json(j, "d", "input");
    RepVector v(RepSpace::poly(n, d));
    for (std::size_t t = 0; t < j["terms"].size(); ++t) {
      const std::string where = "terms[" + std::to_string(t) + "]";
      const json& term = j["terms"][t];
      if (!term.contains("exponents") || !term.contains("coeff")) throw InputError(where + ": needs exponents and coeff");
      const Index idx = index_from_json(term["exponents"], where + ".exponents");
      try {
        v.space().validate(idx);
      } catch (const std::invalid_argument& e) {
        throw InputError(where + ": " + e.what());
      }
      v.add(idx, surd_from_json(term["coeff"], where + ".coeff"));
    }
    return v;
  }
  if (type == "bracket") {
    RepVector v(RepSpace::bracket(n));
    for (std::size_t t = 0; t < j["terms"].size(); ++t) {
      const std::string where = "terms[" + std::to_string(t) + "]";
      const json& term = j["terms"][t];
      const long a = static_cast<long>(size_from_json(term, "i", where)) - 1;
      const long b = static_cast<long>(size_from_json(term, "j", where)) - 1;
      const long c = static_cast<long>(size_from_json(term, "k", where)) - 1;
      if (!term.contains("coeff")) throw InputError(where + ": needs coeff");
      const long nn = static_cast<long>(n);
      if (a < 0 || b < 0 || c < 0 || a >= nn || b >= nn || c >= nn) throw InputError(where + ": index out of range 1..n");
      if (a == b) throw InputError(where + ": i and j must differ");
      Surd coeff = surd_from_json(term["coeff"], where + ".coeff");
      if (a < b) v.add({int(a), int(b), int(c)}, coeff);
      else v.add({int(b), int(a), int(c)}, -coeff);
    }
    return v;
  }
  throw InputError("unknown input type '" + type + "' (expected form or bracket)");
}

inline RepVector load_vector(const std::string& path) { return vector_from_json(load_json(path)); }

// ---- reports --------------------------------------------------------------

inline json to_json(const NiceWitness& w) {
  return json{{"source", w.source}, {"target", w.target}, {"gamma", to_json(w.gamma)}};
}

inline json to_json(const Verdict& v) {
  json out{{"outcome", to_string(v.outcome)}};
  json weights = json::array();
  for (const auto& w : v.weights) weights.push_back(to_json(w));
  out["weights"] = weights;
  if (v.outcome != Outcome::not_nice) {
    out["beta"] = to_json(v.beta);
    out["beta_norm2"] = to_json(norm2(v.beta));
  }
  if (v.outcome == Outcome::distinguished) out["certificate"] = to_json(v.certificate);
  if (v.witness) out["witness"] = to_json(*v.witness);
  out["nice_by_fast_path"] = v.nice_by_fast_path;
  return out;
}

template <class T>
json matrix_to_json(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<T, double>) row.push_back(m(i, j));
      else row.push_back(to_json(m(i, j)));
    }
    rows.push_back(row);
  }
  return rows;
}

// ---- fixtures -------------------------------------------------------------

inline TableRow table_row_from_json(const json& j, std::size_t position) {
  const std::string where = "rows[" + std::to_string(position) + "]";
  TableRow row;
  row.label = j.value("label", where);
  if (!j.contains("type") || !j.contains("kind")) throw InputError(where + ": needs type and kind");
  row.type = ratvec_from_json(j["type"], where + ".type");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "minimal") row.kind = TableRow::Kind::minimal;
  else if (kind == "unique") row.kind = TableRow::Kind::unique;
  else if (kind == "family") row.kind = TableRow::Kind::family;
  else if (kind == "empty") row.kind = TableRow::Kind::empty;
  else throw InputError(where + ": unknown kind '" + kind + "'");
  if (row.kind == TableRow::Kind::unique) {
    for (const auto& m : j.at("monomials")) row.monomials.push_back(index_from_json(m, where + ".monomials"));
    for (const auto& c : j.at("squared_coefficients"))
      row.squared_coefficients.push_back(rational_from_json(c, where + ".squared_coefficients"));
    if (row.monomials.size() != row.squared_coefficients.size())
      throw InputError(where + ": monomials and squared_coefficients differ in length");
  }
  if (row.kind == TableRow::Kind::family) {
    row.family_dimension = size_from_json(j, "family_dimension", where);
    for (const auto& r : j.value("representatives", json::array())) {
      TableRow::Representative rep;
      for (const auto& m : r.at("monomials")) rep.monomials.push_back(index_from_json(m, where + ".representatives"));
      for (const auto& c : r.at("coefficients")) rep.coefficients.push_back(rational_from_json(c, where + ".representatives"));
      if (rep.monomials.size() != rep.coefficients.size()) throw InputError(where + ": representative sizes differ");
      row.representatives.push_back(std::move(rep));
    }
  }
  return row;
}

struct Table1Fixture {
  std::size_t degree = 4;
  std::vector<TableRow> rows;
};

inline Table1Fixture load_table1(const std::string& path) {
  const json j = load_json(path);
  Table1Fixture f;
  f.degree = size_from_json(j, "degree", "fixture");
  if (!j.contains("rows") || !j["rows"].is_array()) throw InputError("fixture needs a \"rows\" array");
  for (std::size_t i = 0; i < j["rows"].size(); ++i) f.rows.push_back(table_row_from_json(j["rows"][i], i));
  return f;
}

inline BracketTableRow bracket_row_from_json(const json& j, std::size_t n, std::size_t position) {
  const std::string where = "rows[" + std::to_string(position) + "]";
  BracketTableRow row;
  if (!j.contains("id") || !j.contains("terms") || !j.contains("derivation")) throw InputError(where + ": needs id, terms, derivation");
  row.id = j["id"].get<std::string>();
  row.label = j.value("label", row.id);
  if (j.contains("parameter")) row.parameter = j["parameter"].get<std::string>();
  json bracket{{"type", "bracket"}, {"n", n}, {"terms", j["terms"]}};
  row.bracket = vector_from_json(bracket);
  const Rational scale = rational_from_json(j["derivation"].at("scale"), where + ".derivation.scale");
  row.derivation = ratvec_from_json(j["derivation"].at("diag"), where + ".derivation.diag") * scale;
  if (row.derivation.size() != n) throw InputError(where + ": derivation has the wrong length");
  row.beta_norm2 = rational_from_json(j.at("beta_norm2"), where + ".beta_norm2");
  row.dim_aut = size_from_json(j, "dim_aut", where);
  row.externally_sourced = j.value("externally_sourced", false);
  return row;
}

inline std::vector<BracketTableRow> load_table2(const std::string& path) {
  const json j = load_json(path);
  const std::size_t n = size_from_json(j, "dimension", "fixture");
  if (!j.contains("rows") || !j["rows"].is_array()) throw InputError("fixture needs a \"rows\" array");
  std::vector<BracketTableRow> rows;
  for (std::size_t i = 0; i < j["rows"].size(); ++i) rows.push_back(bracket_row_from_json(j["rows"][i], n, i));
  return rows;
}

}  // namespace orbitforge
