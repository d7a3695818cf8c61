// End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit
// if any fails.

#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"

using namespace vassiliev;
using vassiliev::testing::corpus;
using vassiliev::testing::data_dir;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::vector<std::pair<std::string, std::function<Rational(const GaussCode&)>>> v2_methods() {
  return {{"v2_lannes", [](const GaussCode& c) { return v2_lannes_value(c); }},
          {"v2_pv", [](const GaussCode& c) { return v2_polyak_viro_value(c); }}};
}

std::vector<std::pair<std::string, std::function<Rational(const GaussCode&)>>> v3_methods() {
  return {{"v3_lannes", [](const GaussCode& c) { return v3_lannes_value(c); }},
          {"v3_pv", [](const GaussCode& c) { return v3_polyak_viro_value(c); }},
          {"v3_thm", [](const GaussCode& c) { return v3_theorem_value(c); }}};
}

Outcome calibration() {
  Outcome o;
  const GaussCode trefoil = parse_gauss_code(kTrefoilCode);
  for (const auto& methods : {v2_methods(), v3_methods()}) {
    for (const auto& [name, f] : methods) {
      o.require(f(GaussCode{}) == 0, name + " on the unknot");
      o.require(f(trefoil) == 1, name + " on the trefoil");
    }
  }
  return o;
}

Outcome coordinates_of_trefoil() {
  Outcome o;
  const auto c = coordinates(parse_gauss_code(kTrefoilCode));
  o.require(c.size() == 3, "three crossings");
  const int want[] = {1, 0, 1};
  for (std::size_t i = 0; i < c.size() && i < 3; ++i) {
    o.require(c[i].delta == want[i], "delta of crossing " + c[i].label);
    o.require(c[i].epsilon == Sign::kPlus, "epsilon of crossing " + c[i].label);
  }
  return o;
}

Outcome weight_tables() {
  Outcome o;
  const auto d2 = enumerate_chord_diagrams(2);
  const auto d3 = enumerate_chord_diagrams(3);
  o.require(d2.size() == 3 && d3.size() == 15, "diagram counts");
  o.require(w2(ChordDiagram::from_word("1 2 1 2")) == 1, "w2 crossed");
  o.require(w2(ChordDiagram::from_word("1 2 2 1")) == 0, "w2 parallel");
  o.require(w3(ChordDiagram::from_word("1 2 3 1 2 3")) == 2, "w3 triangle");
  o.require(w3(ChordDiagram::from_word("1 2 1 3 2 3")) == 1, "w3 path");
  for (const auto& d : d2) o.require(w2(d) == (interlacement_edges(d) == 1 ? 1 : 0), "w2 on " + d.word());
  int twos = 0;
  int ones = 0;
  for (const auto& d : d3) {
    const int e = interlacement_edges(d);
    const Rational want = e == 3 ? 2 : e == 2 ? 1 : 0;
    o.require(w3(d) == want, "w3 on " + d.word());
    twos += w3(d) == 2 ? 1 : 0;
    ones += w3(d) == 1 ? 1 : 0;
  }
  o.require(twos == 1 && ones == 3, "w3 value multiplicities");
  std::ostringstream s;
  s << "3 + 15 diagrams, w3 = 2 on " << twos << ", = 1 on " << ones;
  if (o.ok) o.detail = s.str();
  return o;
}

Outcome relations() {
  Outcome o;
  o.require(check_relations(w2_system()).ok(), "w2 relations");
  o.require(check_relations(w3_system()).ok(), "w3 relations");
  const auto c = check_relations(constant_weight_system(2, 1));
  o.require(!c.one_term_ok, "constant weight must fail 1T");
  return o;
}

Outcome derived_weights() {
  Outcome o;
  const auto v2 = weight_from_invariant([](const GaussCode& c) { return v2_polyak_viro_value(c); }, 2);
  for (const auto& d : enumerate_chord_diagrams(2)) o.require(v2(d) == w2(d), "W_v2 on " + d.word());
  const auto v3 = weight_from_invariant([](const GaussCode& c) { return v3_theorem_value(c); }, 3);
  for (const auto& d : enumerate_chord_diagrams(3)) o.require(v3(d) == w3(d), "W_v3 on " + d.word());
  const auto zero = weight_from_invariant([](const GaussCode& c) { return v2_polyak_viro_value(c); }, 3);
  for (const auto& d : enumerate_chord_diagrams(3)) o.require(zero(d) == 0, "W_v2 at degree 3 on " + d.word());
  return o;
}

bool methods_agree(const GaussCode& code) {
  const InvariantReport r = invariant_report(code);
  return r.consistent() && r.integral();
}

Outcome method_agreement() {
  Outcome o;
  o.require(corpus().size() >= 6, "at least six fixtures");
  std::size_t rotations = 0;
  for (const auto& k : corpus()) {
    for (std::size_t s = 0; s < std::max<std::size_t>(1, k.code.length()); ++s) {
      o.require(methods_agree(rotate(k.code, s)), k.name + " rotation " + std::to_string(s));
      ++rotations;
    }
  }
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> pick(0, corpus().size() - 1);
  std::uniform_int_distribution<int> moves(1, 4);
  for (int i = 0; i < 200; ++i) {
    const KnotRecord& k = corpus()[pick(rng)];
    const GaussCode p = random_perturbation(k.code, rng, moves(rng));
    const InvariantReport r = invariant_report(p);
    o.require(methods_agree(p) && r.v2_pv == *k.expected_value("v2") && r.v3_thm == *k.expected_value("v3"),
              "perturbation of " + k.name + ": " + format_gauss_code(p));
  }
  if (o.ok) {
    o.detail = std::to_string(corpus().size()) + " fixtures, " + std::to_string(rotations) +
               " rotations, 200 perturbations";
  }
  return o;
}

Outcome symmetry() {
  Outcome o;
  for (const auto& k : corpus()) {
    const auto a = invariant_report(k.code);
    const auto m = invariant_report(mirror(k.code));
    o.require(m.v2_lannes == a.v2_lannes && m.v2_pv == a.v2_pv, "v2 mirror on " + k.name);
    o.require(m.v3_lannes == -a.v3_lannes && m.v3_pv == -a.v3_pv && m.v3_thm == -a.v3_thm, "v3 mirror on " + k.name);
  }
  return o;
}

Outcome module_expansions() {
  Outcome o;
  const auto reg = InvariantRegistry::builtin();
  const Expansion n2 = load_expansion(data_dir() / "expansions" / "n2.json");
  const Expansion n3 = load_expansion(data_dir() / "expansions" / "n3.json");
  const std::vector<std::string> p2{"v2"};
  const std::vector<std::string> p3{"v2", "v3"};
  o.require(check_expansion(n2, p2, reg, corpus(), corpus()).all_zero(), "n=2 residuals");
  const BasisValues h{{"v2", {{"H", -1}}}, {"v3", {{"H", 0}}}};
  o.require(check_expansion(n3, p3, reg, corpus(), corpus(), h).all_zero(), "n=3 residuals");
  const BasisSolution s = solve_basis_values(n3, p3, reg, corpus());
  o.require(s.consistent(), "n=3 system consistent");
  if (s.consistent()) {
    o.require(s.values.at("v2").at("H") == -1, "solved v2(H)");
    o.require(s.values.at("v3").at("H") == 0, "solved v3(H)");
  }
  return o;
}

Outcome matcher_oracle() {
  Outcome o;
  const FormulaSet& f = FormulaSet::bundled();
  std::vector<ArrowPattern> patterns;
  for (const auto* expr : {&f.v2, &f.v3_pv, &f.v3_theorem}) {
    for (const auto& t : expr->terms) {
      for (auto& p : basepoint_placements(t.pattern)) patterns.push_back(std::move(p));
    }
  }
  std::size_t pairs = 0;
  for (const auto& p : patterns) {
    for (const auto& k : corpus()) {
      const ArrowDiagram g = arrow_diagram_from_code(k.code);
      o.require(count_matches(p, g) == vassiliev::testing::brute_force_count(p, g), p.word() + " on " + k.name);
      ++pairs;
    }
  }
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> size(0, 8);
  for (int i = 0; i < 500; ++i) {
    const ArrowDiagram g = vassiliev::testing::random_arrow_diagram(rng, size(rng));
    for (const auto& p : patterns) {
      o.require(count_matches(p, g) == vassiliev::testing::brute_force_count(p, g), p.word() + " on a random diagram");
      ++pairs;
    }
  }
  if (o.ok) o.detail = std::to_string(pairs) + " pattern/diagram pairs";
  return o;
}

Outcome committed_conventions() {
  Outcome o;
  o.require(calibrate_lannes_v2() == kLannesV2Sign, "v2 sign constant");
  const auto codes = vassiliev::testing::corpus_codes();
  const LannesV3Calibration c = calibrate_lannes_v3(codes);
  o.require(c.sign == kLannesV3Sign, "v3 sign constant");
  o.require(c.roles == kLannesV3Roles, "v3 role convention");
  const GaussCode trefoil = parse_gauss_code(kTrefoilCode);
  o.require(v2_lannes_value(trefoil, kLannesV2Sign) == 1 && v2_lannes_value(GaussCode{}, kLannesV2Sign) == 0,
            "committed v2 sign reproduces the calibration");
  o.require(v3_lannes_value(trefoil, kLannesV3Roles, kLannesV3Sign) == 1, "committed v3 convention on the trefoil");
  for (const auto& k : corpus()) {
    for (std::size_t s = 0; s < k.code.length(); ++s) {
      const GaussCode r = rotate(k.code, s);
      o.require(v2_lannes_value(r, kLannesV2Sign) == v2_polyak_viro_value(r), "v2 agreement on " + k.name);
      o.require(v3_lannes_value(r, kLannesV3Roles, kLannesV3Sign) == v3_theorem_value(r), "v3 agreement on " + k.name);
    }
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"calibration on unknot and trefoil", calibration},
      {"trefoil coordinates", coordinates_of_trefoil},
      {"w2 and w3 tables", weight_tables},
      {"1T and 4T relations", relations},
      {"derived weight systems", derived_weights},
      {"method agreement", method_agreement},
      {"mirror symmetry", symmetry},
      {"module expansions", module_expansions},
      {"matcher against brute force", matcher_oracle},
      {"committed sign and role conventions", committed_conventions},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %zu: %s  %s%s%s\n", i + 1, o.ok ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.empty() ? "" : " -- ", o.detail.c_str());
    failed += o.ok ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
