// Batch front end: compute invariants, run the cross-check suites, print
// coordinates, induced weight systems and expansion residuals.
//
// Exit codes: 0 success, 1 an inconsistency or failing suite, 2 bad input.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "vassiliev/vassiliev.hpp"

namespace fs = std::filesystem;
using namespace vassiliev;

namespace {

constexpr int kOk = 0;
constexpr int kInconsistent = 1;
constexpr int kBadInput = 2;

enum class Format { kPlain, kCsv, kJson };

struct Input {
  std::optional<std::string> code;
  std::string table;
  std::string patterns_dir;
  Format format = Format::kPlain;
};

fs::path bundled_table() { return fs::path(VASSILIEV_DATA_DIR) / "fixtures" / "knots.jsonl"; }

std::vector<KnotRecord> load_input(const Input& in, bool default_to_bundled) {
  if (in.code) return {KnotRecord{"input", parse_gauss_code(*in.code), {}}};
  if (!in.table.empty()) return load_knot_table(in.table);
  if (default_to_bundled) return load_knot_table(bundled_table());
  throw Error(ErrorKind::kParseError, "give --code or --table");
}

FormulaSet formulas(const Input& in) {
  return in.patterns_dir.empty() ? FormulaSet::bundled() : FormulaSet::load(in.patterns_dir);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

struct ComputeOptions {
  Input in;
  std::string method = "all";
};

std::vector<std::string> method_columns(const std::string& method) {
  if (method == "lannes") return {"v2_lannes", "v3_lannes"};
  if (method == "pv") return {"v2_pv", "v3_pv"};
  if (method == "thm") return {"v3_thm"};
  return {"v2_lannes", "v2_pv", "v3_lannes", "v3_pv", "v3_thm"};
}

Rational column(const InvariantReport& r, const std::string& name) {
  if (name == "v2_lannes") return r.v2_lannes;
  if (name == "v2_pv") return r.v2_pv;
  if (name == "v3_lannes") return r.v3_lannes;
  if (name == "v3_pv") return r.v3_pv;
  return r.v3_thm;
}

int cmd_compute(const ComputeOptions& opt) {
  const auto knots = load_input(opt.in, false);
  const FormulaSet f = formulas(opt.in);
  const auto cols = method_columns(opt.method);
  bool all_consistent = true;
  if (opt.in.format == Format::kCsv) {
    std::cout << "name";
    for (const auto& c : cols) std::cout << ',' << c;
    std::cout << ",v2,v3,consistent\n";
  }
  for (const auto& k : knots) {
    const InvariantReport r = invariant_report(k.code, f);
    all_consistent = all_consistent && r.consistent() && r.integral();
    switch (opt.in.format) {
      case Format::kCsv:
        std::cout << csv_field(k.name);
        for (const auto& c : cols) std::cout << ',' << format_rational(column(r, c));
        std::cout << ',' << format_rational(r.v2_pv) << ',' << format_rational(r.v3_thm) << ','
                  << (r.consistent() ? "true" : "false") << '\n';
        break;
      case Format::kJson: {
        // Readable back as a knot table: name, gauss, expected.
        nlohmann::json methods = nlohmann::json::object();
        for (const auto& c : cols) methods[c] = format_rational(column(r, c));
        nlohmann::json row{{"name", k.name},
                           {"gauss", format_gauss_code(k.code)},
                           {"expected", {{"v2", format_rational(r.v2_pv)}, {"v3", format_rational(r.v3_thm)}}},
                           {"methods", methods},
                           {"consistent", r.consistent()}};
        std::cout << row.dump() << '\n';
        break;
      }
      case Format::kPlain:
        std::cout << k.name << ": v2=" << format_rational(r.v2_pv) << " v3=" << format_rational(r.v3_thm) << ' '
                  << (r.consistent() ? "consistent" : "INCONSISTENT") << " (";
        for (std::size_t i = 0; i < cols.size(); ++i) {
          std::cout << (i ? " " : "") << cols[i] << '=' << format_rational(column(r, cols[i]));
        }
        std::cout << ")\n";
        break;
    }
  }
  return all_consistent ? kOk : kInconsistent;
}

int cmd_coords(const Input& in) {
  const auto knots = load_input(in, false);
  nlohmann::json rows = nlohmann::json::array();
  if (in.format == Format::kCsv) std::cout << "knot,label,delta,epsilon\n";
  for (const auto& k : knots) {
    for (const auto& c : coordinates(k.code)) {
      const std::string eps = c.epsilon == Sign::kPlus ? "+1" : "-1";
      switch (in.format) {
        case Format::kCsv:
          std::cout << csv_field(k.name) << ',' << c.label << ',' << c.delta << ',' << eps << '\n';
          break;
        case Format::kJson:
          rows.push_back({{"knot", k.name}, {"label", c.label}, {"delta", c.delta}, {"epsilon", to_int(c.epsilon)}});
          break;
        case Format::kPlain:
          std::cout << k.name << ' ' << c.label << ": delta=" << c.delta << " epsilon=" << eps << '\n';
          break;
      }
    }
    if (in.format == Format::kPlain && k.code.empty()) std::cout << k.name << ": no crossings\n";
  }
  if (in.format == Format::kJson) std::cout << rows.dump(2) << '\n';
  return kOk;
}

struct WeightsOptions {
  Input in;
  int degree = 2;
  std::string invariant = "v2";
};

const char* relation_word(bool ok) { return ok ? "ok" : "FAIL"; }

int cmd_weights(const WeightsOptions& opt) {
  const FormulaSet f = formulas(opt.in);
  const auto registry = InvariantRegistry::builtin(f);
  const auto& probe = registry.at(opt.invariant);
  const WeightSystem w = weight_from_invariant(
      [&](const GaussCode& c) { return probe.evaluate(KnotRecord{"", c, {}}); }, opt.degree, "W_" + opt.invariant);
  const RelationReport rel = check_relations(w);
  const auto diagrams = enumerate_chord_diagrams(opt.degree);
  switch (opt.in.format) {
    case Format::kCsv:
      std::cout << "diagram,weight\n";
      for (const auto& d : diagrams) std::cout << d.word() << ',' << format_rational(w(d)) << '\n';
      break;
    case Format::kJson: {
      nlohmann::json table = nlohmann::json::array();
      for (const auto& d : diagrams) table.push_back({{"diagram", d.word()}, {"weight", format_rational(w(d))}});
      nlohmann::json out{{"invariant", opt.invariant},
                         {"degree", opt.degree},
                         {"weights", table},
                         {"one_term_ok", rel.one_term_ok},
                         {"four_term_ok", rel.four_term_ok}};
      std::cout << out.dump(2) << '\n';
      break;
    }
    case Format::kPlain:
      for (const auto& d : diagrams) std::cout << d.word() << "  " << format_rational(w(d)) << '\n';
      break;
  }
  if (opt.in.format != Format::kJson) {
    std::cout << "W_" << opt.invariant << " degree=" << opt.degree << " diagrams=" << diagrams.size()
              << " 1T=" << relation_word(rel.one_term_ok) << " 4T=" << relation_word(rel.four_term_ok) << '\n';
  }
  return rel.ok() ? kOk : kInconsistent;
}

struct ExpansionOptions {
  Input in;
  std::string file;
  std::vector<std::string> probes;
  std::vector<std::string> table_invariants;  // name:degree
  bool solve_only = false;
};

void register_table_invariants(InvariantRegistry& reg, const std::vector<std::string>& items) {
  for (const auto& item : items) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::kParseError, "table invariant '" + item + "' needs name:degree");
    int degree = 0;
    try {
      degree = std::stoi(item.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::kParseError, "bad degree in '" + item + "'");
    }
    reg.add_table_invariant(item.substr(0, colon), degree);
  }
}

void print_certificates(const BasisSolution& s) {
  for (const auto& c : s.inconsistencies) {
    std::cout << "inconsistent for " << c.probe << ": 0 = " << format_rational(c.residual) << " from";
    for (const auto& [name, m] : c.multipliers) std::cout << ' ' << format_rational(m) << "*[" << name << ']';
    std::cout << '\n';
  }
}

int cmd_expansion(const ExpansionOptions& opt) {
  const FormulaSet f = formulas(opt.in);
  auto reg = InvariantRegistry::builtin(f);
  register_table_invariants(reg, opt.table_invariants);
  const Expansion e = load_expansion(opt.file);
  const auto corpus = load_input(opt.in, true);
  std::vector<std::string> probes = opt.probes;
  if (probes.empty()) {
    for (const char* name : {"v2", "v3"}) {
      if (reg.at(name).degree <= e.degree) probes.emplace_back(name);
    }
  }
  const BasisSolution s = solve_basis_values(e, probes, reg, corpus);
  for (const auto& [probe, values] : s.values) {
    for (const auto& [basis, value] : values) {
      std::cout << probe << '(' << basis << ") = " << format_rational(value);
      if (const KnotRecord* k = find_knot(corpus, basis)) {
        std::cout << (reg.at(probe).evaluate(*k) == value ? "  matches table" : "  DIFFERS from table");
      }
      std::cout << '\n';
    }
  }
  print_certificates(s);
  if (!s.consistent()) return kInconsistent;
  for (const auto& basis : e.basis_names()) {
    if (find_knot(corpus, basis) != nullptr) continue;
    const auto matches = identify_basis(s, basis, reg, corpus);
    std::cout << basis << " matches:";
    for (const auto& m : matches) std::cout << ' ' << m;
    std::cout << (matches.empty() ? " none\n" : "\n");
  }
  if (opt.solve_only) return kOk;

  // Table values where the basis knot is in the table, solved values for symbols.
  BasisValues known;
  for (const auto& [probe, values] : s.values) {
    for (const auto& [basis, value] : values) {
      if (find_knot(corpus, basis) == nullptr) known[probe][basis] = value;
    }
  }
  const ResidualReport r = check_expansion(e, probes, reg, corpus, corpus, known);
  std::size_t nonzero = 0;
  for (const auto& res : r.residuals) {
    if (res.value == 0) continue;
    ++nonzero;
    std::cout << "residual " << res.probe << ' ' << res.knot << " = " << format_rational(res.value) << '\n';
  }
  std::cout << "residuals checked=" << r.residuals.size() << " nonzero=" << nonzero << '\n';
  return nonzero == 0 ? kOk : kInconsistent;
}

struct VerifyOptions {
  Input in;
  std::vector<std::string> suites;
  int degree = 0;
  int perturbations = 200;
  std::uint64_t seed = 1;
};

struct SuiteResult {
  std::string line;
  bool ok;
};

SuiteResult suite_agreement(const std::vector<KnotRecord>& corpus, const FormulaSet& f) {
  std::size_t bad = 0;
  for (const auto& k : corpus) {
    const InvariantReport r = invariant_report(k.code, f);
    bool ok = r.consistent() && r.integral();
    if (auto v = k.expected_value("v2")) ok = ok && *v == r.v2_pv;
    if (auto v = k.expected_value("v3")) ok = ok && *v == r.v3_thm;
    bad += ok ? 0 : 1;
  }
  return {"agreement knots=" + std::to_string(corpus.size()) + " failures=" + std::to_string(bad), bad == 0};
}

SuiteResult suite_invariance(const std::vector<KnotRecord>& corpus, const FormulaSet& f, int perturbations,
                             std::uint64_t seed) {
  std::size_t checked = 0;
  std::size_t bad = 0;
  auto same = [&](const GaussCode& code, const InvariantReport& base) {
    const InvariantReport r = invariant_report(code, f);
    ++checked;
    bad += (r.consistent() && r.v2_pv == base.v2_pv && r.v3_thm == base.v3_thm) ? 0 : 1;
  };
  for (const auto& k : corpus) {
    const InvariantReport base = invariant_report(k.code, f);
    for (std::size_t s = 1; s < k.code.length(); ++s) same(rotate(k.code, s), base);
    same(reverse(k.code), base);
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> moves(1, 4);
  if (!corpus.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, corpus.size() - 1);
    for (int i = 0; i < perturbations; ++i) {
      const KnotRecord& k = corpus[pick(rng)];
      same(random_perturbation(k.code, rng, moves(rng)), invariant_report(k.code, f));
    }
  }
  return {"invariance seed=" + std::to_string(seed) + " perturbations=" + std::to_string(perturbations) +
              " checked=" + std::to_string(checked) + " failures=" + std::to_string(bad),
          bad == 0};
}

SuiteResult suite_mirror(const std::vector<KnotRecord>& corpus, const FormulaSet& f) {
  std::size_t bad = 0;
  for (const auto& k : corpus) {
    const InvariantReport a = invariant_report(k.code, f);
    const InvariantReport m = invariant_report(mirror(k.code), f);
    const bool ok = m.v2_lannes == a.v2_lannes && m.v2_pv == a.v2_pv && m.v3_lannes == -a.v3_lannes &&
                    m.v3_pv == -a.v3_pv && m.v3_thm == -a.v3_thm;
    bad += ok ? 0 : 1;
  }
  return {"mirror knots=" + std::to_string(corpus.size()) + " failures=" + std::to_string(bad), bad == 0};
}

std::vector<WeightSystem> weight_systems_of_degree(int n, const FormulaSet& f) {
  std::vector<WeightSystem> out;
  if (n == 2) out.push_back(w2_system());
  if (n == 3) out.push_back(w3_system());
  if (n <= 4) {
    out.push_back(weight_from_invariant([&](const GaussCode& c) { return v2_polyak_viro_value(c, f); }, n, "W_v2"));
    out.push_back(weight_from_invariant([&](const GaussCode& c) { return v3_theorem_value(c, f); }, n, "W_v3"));
  }
  return out;
}

SuiteResult suite_relations(int n, const FormulaSet& f, const char* tag, bool one_term) {
  std::ostringstream line;
  bool ok = true;
  const auto diagrams = enumerate_chord_diagrams(n);
  line << tag << " degree=" << n << " diagrams=" << diagrams.size();
  std::size_t quadruples = 0;
  for (const auto& w : weight_systems_of_degree(n, f)) {
    const RelationReport r = check_relations(w);
    quadruples = r.four_term_checked;
    const bool pass = one_term ? r.ok() : r.four_term_ok;
    ok = ok && pass;
    line << ' ' << w.name << '=' << (pass ? "ok" : "FAIL");
  }
  if (!one_term) line << " quadruples=" << quadruples;
  return {line.str(), ok};
}

SuiteResult suite_weights(const FormulaSet& f) {
  bool ok = true;
  const auto v2 = [&](const GaussCode& c) { return v2_polyak_viro_value(c, f); };
  const auto v3 = [&](const GaussCode& c) { return v3_theorem_value(c, f); };
  const WeightSystem d2 = weight_from_invariant(v2, 2);
  for (const auto& d : enumerate_chord_diagrams(2)) ok = ok && d2(d) == w2(d);
  const WeightSystem d3 = weight_from_invariant(v3, 3);
  for (const auto& d : enumerate_chord_diagrams(3)) ok = ok && d3(d) == w3(d);
  const WeightSystem z3 = weight_from_invariant(v2, 3);
  for (const auto& d : enumerate_chord_diagrams(3)) ok = ok && z3(d) == 0;
  const WeightSystem z4 = weight_from_invariant(v3, 4);
  for (const auto& d : enumerate_chord_diagrams(4)) ok = ok && z4(d) == 0;
  return {std::string("weights W_v2=w2 W_v3=w3 degree-bound ") + (ok ? "ok" : "FAIL"), ok};
}

SuiteResult suite_expansion(const std::vector<KnotRecord>& corpus, const FormulaSet& f) {
  const auto reg = InvariantRegistry::builtin(f);
  const fs::path dir = fs::path(VASSILIEV_DATA_DIR) / "expansions";
  const std::vector<std::string> p2{"v2"};
  const std::vector<std::string> p3{"v2", "v3"};
  const Expansion n2 = load_expansion(dir / "n2.json");
  const Expansion n3 = load_expansion(dir / "n3.json");
  const std::vector<KnotRecord> basis_table =
      find_knot(corpus, "trefoil_right") ? corpus : load_knot_table(bundled_table());
  const BasisValues h{{"v2", {{"H", -1}}}, {"v3", {{"H", 0}}}};
  const bool r2 = check_expansion(n2, p2, reg, corpus, basis_table).all_zero();
  const bool r3 = check_expansion(n3, p3, reg, corpus, basis_table, h).all_zero();
  bool solved = false;
  if (corpus.size() > n3.terms.size()) {
    const BasisSolution s = solve_basis_values(n3, p3, reg, corpus);
    solved = s.consistent() && s.values.at("v2").at("H") == -1 && s.values.at("v3").at("H") == 0;
  }
  const bool ok = r2 && r3 && solved;
  return {std::string("expansion n2=") + (r2 ? "ok" : "FAIL") + " n3=" + (r3 ? "ok" : "FAIL") +
              " solved_H=" + (solved ? "figure_eight" : "FAIL"),
          ok};
}

int cmd_verify(const VerifyOptions& opt) {
  const FormulaSet f = formulas(opt.in);
  const auto corpus = load_input(opt.in, true);
  std::vector<std::string> suites = opt.suites;
  if (suites.empty()) suites = {"agreement", "invariance", "mirror", "relations", "weights", "expansion"};
  std::vector<std::string> failed;
  for (const auto& suite : suites) {
    SuiteResult r{"", true};
    if (suite == "agreement") {
      r = suite_agreement(corpus, f);
    } else if (suite == "invariance") {
      r = suite_invariance(corpus, f, opt.perturbations, opt.seed);
    } else if (suite == "mirror") {
      r = suite_mirror(corpus, f);
    } else if (suite == "relations") {
      for (int n : opt.degree ? std::vector<int>{opt.degree} : std::vector<int>{2, 3}) {
        const SuiteResult part = suite_relations(n, f, "relations", true);
        std::cout << part.line << '\n';
        r.ok = r.ok && part.ok;
      }
      if (!r.ok) failed.push_back(suite);
      continue;
    } else if (suite == "4t") {
      r = suite_relations(opt.degree ? opt.degree : 3, f, "4t", false);
    } else if (suite == "weights") {
      r = suite_weights(f);
    } else if (suite == "expansion") {
      r = suite_expansion(corpus, f);
    } else {
      throw Error(ErrorKind::kParseError, "unknown suite '" + suite + "'");
    }
    std::cout << r.line << '\n';
    if (!r.ok) failed.push_back(suite);
  }
  if (failed.empty()) {
    std::cout << "all suites passed\n";
    return kOk;
  }
  std::cout << "failing suites:";
  for (const auto& s : failed) std::cout << ' ' << s;
  std::cout << '\n';
  return kInconsistent;
}

void add_input_options(CLI::App* sub, Input& in, bool with_code = true) {
  if (with_code) sub->add_option("--code", in.code, "inline Gauss code, e.g. \"O1+ U2+ O3+ U1+ O2+ U3+\"");
  sub->add_option("--table", in.table, "knot table (JSON lines)");
  sub->add_option("--patterns-dir", in.patterns_dir, "directory with v2.pat, v3_pv.pat, v3_theorem.pat");
  sub->add_option("--format", in.format, "output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"plain", Format::kPlain}, {"csv", Format::kCsv}, {"json", Format::kJson}}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vassiliev invariants of degree 2 and 3 from Gauss codes"};
  app.require_subcommand(1);

  ComputeOptions compute;
  auto* c = app.add_subcommand("compute", "v2 and v3 by every method");
  add_input_options(c, compute.in);
  c->add_option("--method", compute.method, "which values to print")
      ->check(CLI::IsMember({"lannes", "pv", "thm", "all"}));

  VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "run cross-check suites");
  add_input_options(v, verify.in, false);
  v->add_option("--suite", verify.suites, "agreement, invariance, mirror, relations, 4t, weights, expansion");
  v->add_option("--degree", verify.degree, "degree for the relation suites")->check(CLI::Range(2, 4));
  v->add_option("--perturbations", verify.perturbations, "random R1/R2 perturbations")->check(CLI::NonNegativeNumber);
  v->add_option("--seed", verify.seed, "seed for the perturbation generator");

  Input coords;
  auto* co = app.add_subcommand("coords", "delta and epsilon of each crossing");
  add_input_options(co, coords);

  WeightsOptions weights;
  auto* w = app.add_subcommand("weights", "weight system induced by an invariant");
  add_input_options(w, weights.in, false);
  w->add_option("--degree", weights.degree, "number of chords")->check(CLI::Range(1, 4));
  w->add_option("--invariant", weights.invariant, "v2, v3, v2_lannes, v2_pv, v3_lannes, v3_pv, v3_thm");

  ExpansionOptions expansion;
  auto* e = app.add_subcommand("expansion", "check an expansion file against a knot table");
  e->require_subcommand(1);
  for (const char* name : {"check", "solve"}) {
    auto* sub = e->add_subcommand(name, std::string(name) == "check" ? "solve basis values, then report residuals"
                                                                      : "solve basis values only");
    add_input_options(sub, expansion.in, false);
    sub->add_option("file", expansion.file, "expansion JSON")->required();
    sub->add_option("--probe", expansion.probes, "probe invariants (default v2 and v3 up to the degree)");
    sub->add_option("--table-invariant", expansion.table_invariants,
                    "name:degree, values read from each record's expected map");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*c) return cmd_compute(compute);
    if (*v) return cmd_verify(verify);
    if (*co) return cmd_coords(coords);
    if (*w) return cmd_weights(weights);
    if (*e) {
      expansion.solve_only = e->got_subcommand("solve");
      return cmd_expansion(expansion);
    }
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kBadInput;
  }
  return kBadInput;
}
