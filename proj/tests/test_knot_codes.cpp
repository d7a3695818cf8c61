#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "test_support.hpp"

using namespace vassiliev;
using vassiliev::testing::corpus;

namespace {

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

TEST(ParseGaussCode, Trefoil) {
  const GaussCode t = parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+");
  EXPECT_EQ(t.crossing_count(), 3);
  EXPECT_EQ(t.length(), 6u);
  EXPECT_EQ(t[0].role, Role::kOver);
  EXPECT_EQ(t[1].crossing, 1);
  EXPECT_EQ(t.position(0, Role::kUnder), 3);
}

TEST(ParseGaussCode, EmptyIsUnknot) {
  EXPECT_TRUE(parse_gauss_code("").empty());
  EXPECT_TRUE(parse_gauss_code("   \n\t").empty());
}

TEST(ParseGaussCode, Errors) {
  EXPECT_EQ(kind_of([] { parse_gauss_code("O1+ O1+"); }), ErrorKind::kLabelRoleMismatch);
  EXPECT_EQ(kind_of([] { parse_gauss_code("O1+ U1-"); }), ErrorKind::kSignMismatch);
  EXPECT_EQ(kind_of([] { parse_gauss_code("O1+ X1+"); }), ErrorKind::kMalformedToken);
  EXPECT_EQ(kind_of([] { parse_gauss_code("O1 U1"); }), ErrorKind::kMalformedToken);
  EXPECT_EQ(kind_of([] { parse_gauss_code("O1+ U1+ O2+"); }), ErrorKind::kLabelRoleMismatch);
  EXPECT_EQ(kind_of([] { parse_gauss_code("O_1+ U_1+"); }), ErrorKind::kMalformedToken);
}

TEST(ParseGaussCode, LabelsNormalizedByFirstAppearance) {
  const GaussCode c = parse_gauss_code("Oab+ Uz- Uab+ Oz-");
  EXPECT_EQ(c.label(0), "ab");
  EXPECT_EQ(c.label(1), "z");
  EXPECT_EQ(c.crossing_of("z"), 1);
  EXPECT_EQ(kind_of([&] { c.crossing_of("q"); }), ErrorKind::kUnknownLabel);
}

TEST(Validate, Diagnostics) {
  EXPECT_TRUE(validate(tokenize_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+")).empty());
  EXPECT_TRUE(validate(tokenize_gauss_code("O1+ U1+ U2- O2-")).empty());
  const auto d = validate(tokenize_gauss_code("O1+ U2+ O3+ U1+ O2- U3+"));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].kind, DiagnosticKind::kSignMismatch);
  EXPECT_EQ(d[0].label, "2");
  const auto r = validate(tokenize_gauss_code("O1+ O1+ U2+"));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].kind, DiagnosticKind::kLabelRoleMismatch);
}

TEST(Format, RoundTripOverCorpusAndPerturbations) {
  std::mt19937_64 rng(11);
  for (const auto& k : corpus()) {
    EXPECT_EQ(parse_gauss_code(format_gauss_code(k.code)), k.code) << k.name;
    const GaussCode p = random_perturbation(k.code, rng, 4);
    EXPECT_EQ(parse_gauss_code(format_gauss_code(p)), p) << k.name;
  }
}

TEST(Mirror, TrefoilAndInvolution) {
  const GaussCode t = parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+");
  EXPECT_EQ(format_gauss_code(mirror(t)), "U1- O2- U3- O1- U2- O3-");
  EXPECT_TRUE(mirror(GaussCode{}).empty());
  for (const auto& k : corpus()) EXPECT_EQ(mirror(mirror(k.code)), k.code) << k.name;
}

TEST(Rotate, KeepsLabelsAndLength) {
  const GaussCode t = parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+");
  const GaussCode r = rotate(t, 1);
  EXPECT_EQ(format_gauss_code(r), "U2+ O3+ U1+ O2+ U3+ O1+");
  EXPECT_EQ(rotate(t, 6), t);
}

TEST(Reverse, ReadsBackwards) {
  const GaussCode t = parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+");
  EXPECT_EQ(format_gauss_code(reverse(t)), "U3+ O2+ U1+ O3+ U2+ O1+");
  EXPECT_EQ(reverse(reverse(t)), t);
}

TEST(ApplyR1, InsertsKink) {
  EXPECT_EQ(format_gauss_code(apply_r1(GaussCode{}, 0, Sign::kPlus, Role::kOver)), "O1+ U1+");
  const GaussCode t = parse_gauss_code("O1+ U2+ O3+ U1+ O2+ U3+");
  const GaussCode k = apply_r1(t, 2, Sign::kMinus, Role::kUnder);
  EXPECT_EQ(format_gauss_code(k), "O1+ U2+ U4- O4- O3+ U1+ O2+ U3+");
  EXPECT_EQ(kind_of([&] { apply_r1(t, 7, Sign::kPlus, Role::kOver); }), ErrorKind::kIndexOutOfRange);
}

TEST(ApplyR2, Cases) {
  const GaussCode a = apply_r2(GaussCode{}, 0, 0, R2Case::kAntiparallel);
  EXPECT_EQ(format_gauss_code(a), "O1+ O2- U2- U1+");
  EXPECT_TRUE(is_planar(a));
  const GaussCode p = apply_r2(GaussCode{}, 0, 0, R2Case::kParallel, Sign::kMinus);
  EXPECT_EQ(format_gauss_code(p), "O1- O2+ U1- U2+");
  EXPECT_EQ(kind_of([] { r2_case_from_int(3); }), ErrorKind::kUnsupportedOrientationCase);
  EXPECT_EQ(kind_of([] { apply_r2(GaussCode{}, 1, 0, R2Case::kParallel); }), ErrorKind::kIndexOutOfRange);
  EXPECT_EQ(kind_of([] { apply_r2(GaussCode{}, 0, 1, R2Case::kParallel); }), ErrorKind::kIndexOutOfRange);
}

TEST(ApplyR2, OutputsAlwaysValidate) {
  for (const auto& k : corpus()) {
    const std::size_t len = k.code.length();
    for (std::size_t a = 0; a <= len; ++a) {
      for (std::size_t b = a; b <= len; ++b) {
        for (auto kase : {R2Case::kAntiparallel, R2Case::kParallel}) {
          EXPECT_TRUE(validate(apply_r2(k.code, a, b, kase).to_raw()).empty());
        }
      }
    }
  }
}

TEST(Planarity, FixturesHaveGenusZero) {
  for (const auto& k : corpus()) EXPECT_EQ(surface_genus(k.code), 0) << k.name;
  // Virtual trefoil: two chords crossing on a torus.
  EXPECT_EQ(surface_genus(parse_gauss_code("O1+ U2+ U1+ O2+")), 1);
}

TEST(Planarity, FaceCountMatchesEuler) {
  for (const auto& k : corpus()) {
    const auto faces = diagram_faces(k.code);
    EXPECT_EQ(static_cast<int>(faces.size()), k.code.crossing_count() + 2) << k.name;
  }
}

TEST(Realizability, FixturesPassInterlacementCriterion) {
  for (const auto& k : corpus()) EXPECT_TRUE(vassiliev::testing::gauss_word_realizable(k.code)) << k.name;
  EXPECT_FALSE(vassiliev::testing::gauss_word_realizable(parse_gauss_code("O1+ U2+ U1+ O2+")));
}

TEST(Realizability, PerturbationsStayClassical) {
  std::mt19937_64 rng(3);
  for (const auto& k : corpus()) {
    for (int i = 0; i < 10; ++i) {
      const GaussCode p = random_perturbation(k.code, rng, 3);
      EXPECT_TRUE(validate(p.to_raw()).empty());
      EXPECT_TRUE(is_planar(p)) << format_gauss_code(p);
      EXPECT_TRUE(vassiliev::testing::gauss_word_realizable(p)) << format_gauss_code(p);
    }
  }
}

TEST(SingularCode, ParseAndErrors) {
  const SingularCode s = parse_singular_code("X1a O2+ X1b U2+");
  EXPECT_EQ(s.double_point_count(), 1);
  EXPECT_EQ(s.crossing_count(), 1);
  EXPECT_EQ(format_singular_code(s), "X1a O2+ X1b U2+");
  EXPECT_EQ(kind_of([] { parse_singular_code("X1b X1a"); }), ErrorKind::kLabelRoleMismatch);
  EXPECT_EQ(kind_of([] { parse_singular_code("X1a"); }), ErrorKind::kLabelRoleMismatch);
  EXPECT_EQ(kind_of([] { parse_singular_code("X1c X1b"); }), ErrorKind::kMalformedToken);
}

TEST(KnotTable, BundledFixtures) {
  const auto& t = corpus();
  EXPECT_GE(t.size(), 6u);
  for (const char* name : {"unknot", "trefoil_right", "trefoil_left", "figure_eight"}) {
    EXPECT_NE(find_knot(t, name), nullptr) << name;
  }
  EXPECT_EQ(*find_knot(t, "figure_eight")->expected_value("v2"), Rational(-1));
}

TEST(KnotTable, EmptyAndBadLines) {
  std::istringstream empty("");
  EXPECT_TRUE(parse_knot_table(empty).empty());
  std::istringstream bad(R"({"name": "a", "gauss": "O1+ U1+"}
{"name": "b", "gauss": "O1+ Z1+"}
)");
  try {
    parse_knot_table(bad);
    FAIL() << "expected ParseError";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParseError);
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_EQ(kind_of([] { load_knot_table("/nonexistent/knots.jsonl"); }), ErrorKind::kIoError);
}

TEST(KnotTable, JsonRoundTrip) {
  for (const auto& k : corpus()) {
    const KnotRecord back = parse_knot_record(to_json(k).dump(), 1);
    EXPECT_EQ(back.name, k.name);
    EXPECT_EQ(back.code, k.code);
    EXPECT_EQ(back.expected, k.expected);
  }
}
