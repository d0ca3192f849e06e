#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace orbitforge;
using namespace orbitforge::cli;

namespace {

const std::map<std::string, Format> kFormats{{"json", Format::json}, {"csv", Format::csv}, {"markdown", Format::markdown}};
const std::map<std::string, Subgroup> kGroups{{"gl", Subgroup::gl}, {"sl", Subgroup::sl}, {"sp", Subgroup::sp}};

std::vector<std::string> split_rows(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& r : raw) {
    std::stringstream ss(r);
    for (std::string part; std::getline(ss, part, ',');)
      if (!part.empty()) out.push_back(part);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distinguished orbits, stratifying sets and minimal metrics with exact arithmetic"};
  app.require_subcommand(1);

  StrataOptions strata;
  auto* s = app.add_subcommand("strata", "Stratifying set of GL_n acting on forms of degree d");
  s->add_option("--n", strata.n, "number of variables")->default_val(3);
  s->add_option("--d", strata.d, "degree")->default_val(4);
  s->add_option("--format", strata.format)->transform(CLI::CheckedTransformer(kFormats))->default_str("json");
  s->add_flag("--paper-signs", strata.paper_signs, "print -beta (positive entries)");
  s->add_option("--svg", strata.svg_path, "also draw the weights and strata to this SVG file");

  CheckOptions check;
  auto* c = app.add_subcommand("check", "Decide whether the orbit of a form or bracket is distinguished");
  c->add_option("--input", check.input, "JSON form or bracket")->required();
  c->add_option("--group", check.group)->transform(CLI::CheckedTransformer(kGroups))->default_str("gl");

  ClassifyOptions classify_opts;
  auto* k = app.add_subcommand("classify", "Critical points on every stratum of ternary forms of degree d");
  k->add_option("--d", classify_opts.d, "degree")->default_val(4);
  k->add_option("--format", classify_opts.format)->transform(CLI::CheckedTransformer(kFormats))->default_str("json");
  k->add_flag("--paper-signs", classify_opts.paper_signs, "print -beta (positive entries)");

  TableOptions t1, t2;
  std::vector<std::string> t1_rows, t2_rows;
  auto* a = app.add_subcommand("table1", "Recompute the quartic classification fixture");
  a->add_option("--fixtures", t1.fixtures)->required()->check(CLI::ExistingFile);
  a->add_option("--format", t1.format)->transform(CLI::CheckedTransformer(kFormats))->default_str("json");
  a->add_option("--row", t1_rows, "restrict to these labels (comma separated)");
  auto* b = app.add_subcommand("table2", "Recompute the minimal metric fixture");
  b->add_option("--fixtures", t2.fixtures)->required()->check(CLI::ExistingFile);
  b->add_option("--format", t2.format)->transform(CLI::CheckedTransformer(kFormats))->default_str("json");
  b->add_option("--row", t2_rows, "restrict to these ids (comma separated)");

  MinimizeOptions minimize;
  auto* m = app.add_subcommand("minimize", "Find the minimal compatible metric of a symplectic nilpotent bracket");
  m->add_option("--input", minimize.input, "JSON bracket")->required();
  m->add_option("--omega", minimize.omega, "symplectic form")->default_val("cn");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  Result result;
  try {
    if (*s) result = cmd_strata(strata);
    else if (*c) result = cmd_check(check);
    else if (*k) result = cmd_classify(classify_opts);
    else if (*a) {
      t1.rows = split_rows(t1_rows);
      result = cmd_table1(t1);
    } else if (*b) {
      t2.rows = split_rows(t2_rows);
      result = cmd_table2(t2);
    } else if (*m) {
      result = cmd_minimize(minimize);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  std::cout << result.out;
  std::cerr << result.err;
  return result.code;
}
