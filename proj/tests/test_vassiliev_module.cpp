#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace vassiliev;
using vassiliev::testing::corpus;
using vassiliev::testing::data_dir;

namespace {

const std::vector<std::string> kV2{"v2"};
const std::vector<std::string> kV2V3{"v2", "v3"};

Expansion n2() { return load_expansion(data_dir() / "expansions" / "n2.json"); }
Expansion n3() { return load_expansion(data_dir() / "expansions" / "n3.json"); }

BasisValues figure_eight_as_h() { return {{"v2", {{"H", -1}}}, {"v3", {{"H", 0}}}}; }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::kParseError;
}

}  // namespace

TEST(Expansion, ParseAndSerialize) {
  const Expansion e = n3();
  EXPECT_EQ(e.degree, 3);
  ASSERT_EQ(e.terms.size(), 2u);
  EXPECT_EQ(e.terms[1].basis, "H");
  EXPECT_EQ(e.terms[1].coefficient.at("v2"), Rational(-1));
  const Expansion back = parse_expansion(to_json(e));
  EXPECT_EQ(back.terms[1].coefficient, e.terms[1].coefficient);
  EXPECT_EQ(kind_of([] { parse_expansion(nlohmann::json::parse(R"({"terms": []})")); }), ErrorKind::kParseError);
  EXPECT_EQ(kind_of([] { load_expansion("/nonexistent.json"); }), ErrorKind::kIoError);
}

TEST(Expansion, DegreeTwoResidualsVanish) {
  const auto reg = InvariantRegistry::builtin();
  const auto r = check_expansion(n2(), kV2, reg, corpus(), corpus());
  EXPECT_EQ(r.residuals.size(), corpus().size());
  EXPECT_TRUE(r.all_zero());
}

TEST(Expansion, DegreeThreeWithFigureEight) {
  const auto reg = InvariantRegistry::builtin();
  const auto r = check_expansion(n3(), kV2V3, reg, corpus(), corpus(), figure_eight_as_h());
  EXPECT_TRUE(r.all_zero());
  // Taking H from the table by name gives the same answer.
  Expansion named = n3();
  named.terms[1].basis = "figure_eight";
  EXPECT_TRUE(check_expansion(named, kV2V3, reg, corpus(), corpus()).all_zero());
}

TEST(Expansion, WrongBasisLeavesResiduals) {
  const auto reg = InvariantRegistry::builtin();
  Expansion wrong = n3();
  wrong.terms[1].basis = "5_2";
  EXPECT_FALSE(check_expansion(wrong, kV2V3, reg, corpus(), corpus()).all_zero());
}

TEST(Expansion, ResidualsVanishOnPerturbedCorpus) {
  const auto reg = InvariantRegistry::builtin();
  std::mt19937_64 rng(5);
  std::vector<KnotRecord> perturbed;
  for (const auto& k : corpus()) {
    for (int i = 0; i < 3; ++i) perturbed.push_back({k.name + "~", random_perturbation(k.code, rng, 3), {}});
  }
  EXPECT_TRUE(check_expansion(n2(), kV2, reg, perturbed, corpus()).all_zero());
  EXPECT_TRUE(check_expansion(n3(), kV2V3, reg, perturbed, corpus(), figure_eight_as_h()).all_zero());
}

TEST(Expansion, Errors) {
  const auto reg = InvariantRegistry::builtin();
  const std::vector<std::string> v3{"v3"};
  EXPECT_EQ(kind_of([&] { check_expansion(n2(), v3, reg, corpus(), corpus()); }), ErrorKind::kDegreeTooHigh);
  const std::vector<std::string> bogus{"v9"};
  EXPECT_EQ(kind_of([&] { check_expansion(n2(), bogus, reg, corpus(), corpus()); }), ErrorKind::kUnknownInvariant);
  EXPECT_EQ(kind_of([&] { check_expansion(n3(), kV2, reg, corpus(), corpus()); }), ErrorKind::kMissingValue);
}

TEST(Expansion, DegreeFourProbeRejectedAtDegreeThree) {
  auto reg = InvariantRegistry::builtin();
  reg.add_table_invariant("V4_1", 4);
  const std::vector<std::string> v4{"V4_1"};
  EXPECT_EQ(kind_of([&] { check_expansion(n3(), v4, reg, corpus(), corpus()); }), ErrorKind::kDegreeTooHigh);
}

TEST(Expansion, DegreeFourIsRepresentableButUnevaluable) {
  auto reg = InvariantRegistry::builtin();
  for (const char* name : {"V4_1", "V4_2", "V4_3"}) reg.add_table_invariant(name, 4);
  const Expansion e = load_expansion(data_dir() / "expansions" / "n4.json");
  EXPECT_EQ(e.degree, 4);
  EXPECT_EQ(e.basis_names(), (std::vector<std::string>{"trefoil_right", "trefoil_left", "H", "F", "P"}));
  // The fixtures carry no degree-4 values, so the coefficients cannot be evaluated.
  EXPECT_EQ(kind_of([&] { check_expansion(e, kV2, reg, corpus(), corpus(), {{"v2", {{"H", -1}, {"F", 0}, {"P", 0}}}}); }),
            ErrorKind::kMissingValue);
}

TEST(SolveBasis, RecoversTrefoilValue) {
  const auto reg = InvariantRegistry::builtin();
  const BasisSolution s = solve_basis_values(n2(), kV2, reg, corpus());
  ASSERT_TRUE(s.consistent());
  EXPECT_EQ(s.values.at("v2").at("trefoil_right"), Rational(1));
}

TEST(SolveBasis, IdentifiesHAsFigureEight) {
  const auto reg = InvariantRegistry::builtin();
  const BasisSolution s = solve_basis_values(n3(), kV2V3, reg, corpus());
  ASSERT_TRUE(s.consistent());
  EXPECT_EQ(s.values.at("v2").at("H"), Rational(-1));
  EXPECT_EQ(s.values.at("v3").at("H"), Rational(0));
  EXPECT_EQ(s.values.at("v3").at("trefoil_right"), Rational(1));
  const auto names = identify_basis(s, "H", reg, corpus());
  EXPECT_NE(std::find(names.begin(), names.end(), "figure_eight"), names.end());
  EXPECT_EQ(std::find(names.begin(), names.end(), "trefoil_right"), names.end());
}

TEST(SolveBasis, FixedPoint) {
  const auto reg = InvariantRegistry::builtin();
  for (const auto& [e, probes] : {std::pair{n2(), kV2}, std::pair{n3(), kV2V3}}) {
    const BasisSolution s = solve_basis_values(e, probes, reg, corpus());
    ASSERT_TRUE(s.consistent());
    EXPECT_TRUE(check_expansion(e, probes, reg, corpus(), {}, s.values).all_zero());
  }
}

TEST(SolveBasis, InconsistencyCertificate) {
  // K = v2(K) T cannot hold for v3: both trefoils have v2 = 1 but opposite v3.
  const auto reg = InvariantRegistry::builtin();
  Expansion e = n2();
  e.degree = 3;
  const std::vector<std::string> v3{"v3"};
  const BasisSolution s = solve_basis_values(e, v3, reg, corpus());
  ASSERT_FALSE(s.consistent());
  const auto& cert = s.inconsistencies.front();
  EXPECT_EQ(cert.probe, "v3");
  EXPECT_NE(cert.residual, 0);
  // Replaying the multipliers: left sides cancel, right sides sum to the residual.
  Rational lhs = 0;
  Rational rhs = 0;
  for (const auto& [name, m] : cert.multipliers) {
    const KnotRecord& k = vassiliev::testing::knot(name);
    lhs += m * reg.at("v2").evaluate(k);
    rhs += m * reg.at("v3").evaluate(k);
  }
  EXPECT_EQ(lhs, 0);
  EXPECT_EQ(rhs, cert.residual);
}

TEST(SolveBasis, Underdetermined) {
  const auto reg = InvariantRegistry::builtin();
  const std::vector<KnotRecord> tiny{corpus().front()};
  EXPECT_EQ(kind_of([&] { solve_basis_values(n2(), kV2, reg, tiny); }), ErrorKind::kUnderdeterminedSystem);
  // Only unknots: every coefficient vanishes, so nothing is determined.
  std::vector<KnotRecord> trivial;
  for (const char* name : {"unknot", "unknot_2", "unknot_3"}) trivial.push_back(vassiliev::testing::knot(name));
  EXPECT_EQ(kind_of([&] { solve_basis_values(n2(), kV2, reg, trivial); }), ErrorKind::kUnderdeterminedSystem);
}

TEST(Registry, BuiltinMethodsAgree) {
  const auto reg = InvariantRegistry::builtin();
  for (const auto& k : corpus()) {
    EXPECT_EQ(reg.at("v2_lannes").evaluate(k), reg.at("v2_pv").evaluate(k)) << k.name;
    EXPECT_EQ(reg.at("v3_lannes").evaluate(k), reg.at("v3_thm").evaluate(k)) << k.name;
    EXPECT_EQ(reg.at("v3_pv").evaluate(k), reg.at("v3").evaluate(k)) << k.name;
  }
  EXPECT_TRUE(reg.contains("v3_pv"));
  EXPECT_FALSE(reg.contains("V4_1"));
}
