#pragma once

// V2 and V3 by coordinate sums over pairs/triples of crossings (Lannes) and
// by arrow-pattern counting (Polyak-Viro), plus the five-pattern v3 formula.

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vassiliev/coordinates.hpp"
#include "vassiliev/diagrams.hpp"
#include "vassiliev/error.hpp"
#include "vassiliev/gauss_code.hpp"
#include "vassiliev/matcher.hpp"
#include "vassiliev/pattern.hpp"
#include "vassiliev/rational.hpp"
#include "vassiliev/weight_systems.hpp"

#ifndef VASSILIEV_PATTERNS_DIR
#define VASSILIEV_PATTERNS_DIR "patterns"
#endif

namespace vassiliev {

/// Which crossing plays x, y, z in the asymmetric V3 summand.
enum class LannesRoleConvention {
  kByFirstPassage,     // x, y, z ordered by first passage from the basepoint
  kOrderedAveraged,    // all 6 orderings, prefactor 1/12
  kOrderedUnaveraged,  // all 6 orderings, prefactor 1/2
};

// Without the leading -1 the coordinate formulas give -1 on the trefoil
// (delta = (1,0,1), all signs +). Both invariants are normalized to 1 there,
// so the sign is fixed here; see calibrate_lannes_v2 / calibrate_lannes_v3.
inline constexpr int kLannesV2Sign = -1;
inline constexpr int kLannesV3Sign = -1;
inline constexpr LannesRoleConvention kLannesV3Roles = LannesRoleConvention::kByFirstPassage;

inline Chord crossing_chord(const GaussCode& code, int crossing) {
  const int a = code.position(crossing, Role::kOver);
  const int b = code.position(crossing, Role::kUnder);
  return {std::min(a, b), std::max(a, b)};
}

inline Rational v2_lannes_value(const GaussCode& code, int sign = kLannesV2Sign) {
  Rational sum = 0;
  const int n = code.crossing_count();
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      const std::array<Chord, 2> pair{crossing_chord(code, x), crossing_chord(code, y)};
      const Rational weight = w2(restrict_chords(pair));
      if (weight == 0) continue;
      const int dx = delta(code, x);
      const int dy = delta(code, y);
      const int parity = (dx + dy) % 2 == 0 ? 1 : -1;
      const int bracket = dx * (1 - dy) + dy * (1 - dx);
      sum += weight * (parity * to_int(epsilon(code, x)) * to_int(epsilon(code, y)) * bracket);
    }
  }
  return Rational(sign, 2) * sum;
}

inline std::int64_t v2_lannes(const GaussCode& code) { return require_integer(v2_lannes_value(code), "v2_lannes"); }

namespace detail {

inline int lannes_v3_summand(const GaussCode& code, int x, int y, int z) {
  const int dx = delta(code, x);
  const int dy = delta(code, y);
  const int dz = delta(code, z);
  const int parity = (dx + dy + dz) % 2 == 0 ? 1 : -1;
  const int bracket = dy * (1 - dx) * (1 - dz) - dx * dz * (1 - dy);
  return parity * to_int(epsilon(code, x)) * to_int(epsilon(code, y)) * to_int(epsilon(code, z)) * bracket;
}

}  // namespace detail

inline Rational v3_lannes_value(const GaussCode& code, LannesRoleConvention roles = kLannesV3Roles,
                                int sign = kLannesV3Sign) {
  Rational sum = 0;
  const int n = code.crossing_count();
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      for (int z = y + 1; z < n; ++z) {
        const std::array<Chord, 3> triple{crossing_chord(code, x), crossing_chord(code, y), crossing_chord(code, z)};
        const Rational weight = w3(restrict_chords(triple));
        if (weight == 0) continue;
        if (roles == LannesRoleConvention::kByFirstPassage) {
          // Crossing indices already follow first-passage order.
          sum += Rational(1, 2) * weight * detail::lannes_v3_summand(code, x, y, z);
          continue;
        }
        std::array<int, 3> order{x, y, z};
        int ordered = 0;
        do {
          ordered += detail::lannes_v3_summand(code, order[0], order[1], order[2]);
        } while (std::next_permutation(order.begin(), order.end()));
        const Rational prefactor = roles == LannesRoleConvention::kOrderedAveraged ? Rational(1, 12) : Rational(1, 2);
        sum += prefactor * weight * ordered;
      }
    }
  }
  return sign * sum;
}

inline std::int64_t v3_lannes(const GaussCode& code) { return require_integer(v3_lannes_value(code), "v3_lannes"); }

inline std::filesystem::path bundled_patterns_dir() { return VASSILIEV_PATTERNS_DIR; }

/// The three pattern formulas, read from `v2.pat`, `v3_pv.pat` and
/// `v3_theorem.pat` in one directory.
struct FormulaSet {
  PatternExpression v2;
  PatternExpression v3_pv;
  PatternExpression v3_theorem;

  static FormulaSet load(const std::filesystem::path& dir) {
    return {load_pattern_expression(dir / "v2.pat"), load_pattern_expression(dir / "v3_pv.pat"),
            load_pattern_expression(dir / "v3_theorem.pat")};
  }

  static const FormulaSet& bundled() {
    static const FormulaSet set = load(bundled_patterns_dir());
    return set;
  }
};

inline Rational v2_polyak_viro_value(const GaussCode& code, const FormulaSet& f = FormulaSet::bundled()) {
  return evaluate_expression(f.v2, arrow_diagram_from_code(code));
}
inline Rational v3_polyak_viro_value(const GaussCode& code, const FormulaSet& f = FormulaSet::bundled()) {
  return evaluate_expression(f.v3_pv, arrow_diagram_from_code(code));
}
inline Rational v3_theorem_value(const GaussCode& code, const FormulaSet& f = FormulaSet::bundled()) {
  return evaluate_expression(f.v3_theorem, arrow_diagram_from_code(code));
}

inline std::int64_t v2_polyak_viro(const GaussCode& code, const FormulaSet& f = FormulaSet::bundled()) {
  return require_integer(v2_polyak_viro_value(code, f), "v2_polyak_viro");
}
inline std::int64_t v3_polyak_viro(const GaussCode& code, const FormulaSet& f = FormulaSet::bundled()) {
  return require_integer(v3_polyak_viro_value(code, f), "v3_polyak_viro");
}
inline std::int64_t v3_theorem(const GaussCode& code, const FormulaSet& f = FormulaSet::bundled()) {
  return require_integer(v3_theorem_value(code, f), "v3_theorem");
}

struct InvariantReport {
  Rational v2_lannes;
  Rational v2_pv;
  Rational v3_lannes;
  Rational v3_pv;
  Rational v3_thm;
  bool v2_consistent = false;
  bool v3_consistent = false;

  bool consistent() const noexcept { return v2_consistent && v3_consistent; }
  bool integral() const noexcept {
    return is_integer(v2_lannes) && is_integer(v2_pv) && is_integer(v3_lannes) && is_integer(v3_pv) &&
           is_integer(v3_thm);
  }
};

/// All five values. Disagreement is reported, never thrown.
inline InvariantReport invariant_report(const GaussCode& code, const FormulaSet& f = FormulaSet::bundled()) {
  InvariantReport r;
  r.v2_lannes = v2_lannes_value(code);
  r.v2_pv = v2_polyak_viro_value(code, f);
  r.v3_lannes = v3_lannes_value(code);
  r.v3_pv = v3_polyak_viro_value(code, f);
  r.v3_thm = v3_theorem_value(code, f);
  r.v2_consistent = r.v2_lannes == r.v2_pv;
  r.v3_consistent = r.v3_lannes == r.v3_pv && r.v3_pv == r.v3_thm;
  return r;
}

inline constexpr const char* kTrefoilCode = "O1+ U2+ O3+ U1+ O2+ U3+";

/// The overall sign of the coordinate V2 formula that gives 1 on the trefoil.
inline int calibrate_lannes_v2() {
  const GaussCode trefoil = parse_gauss_code(kTrefoilCode);
  for (int sign : {1, -1}) {
    if (v2_lannes_value(trefoil, sign) == 1) return sign;
  }
  throw Error(ErrorKind::kCalibrationUnresolved, "no sign puts v2_lannes(trefoil) at 1");
}

struct LannesV3Calibration {
  LannesRoleConvention roles;
  int sign;
};

/// The unique (role convention, sign) pair giving 0 on the unknot, 1 on the
/// trefoil, and integer values equal to the five-pattern v3 on `corpus`.
inline LannesV3Calibration calibrate_lannes_v3(std::span<const GaussCode> corpus,
                                               const FormulaSet& f = FormulaSet::bundled()) {
  const GaussCode trefoil = parse_gauss_code(kTrefoilCode);
  std::vector<LannesV3Calibration> survivors;
  for (auto roles : {LannesRoleConvention::kByFirstPassage, LannesRoleConvention::kOrderedAveraged,
                     LannesRoleConvention::kOrderedUnaveraged}) {
    for (int sign : {1, -1}) {
      bool ok = v3_lannes_value(GaussCode{}, roles, sign) == 0 && v3_lannes_value(trefoil, roles, sign) == 1;
      for (std::size_t i = 0; ok && i < corpus.size(); ++i) {
        const Rational value = v3_lannes_value(corpus[i], roles, sign);
        ok = is_integer(value) && value == v3_theorem_value(corpus[i], f);
      }
      if (ok) survivors.push_back({roles, sign});
    }
  }
  if (survivors.size() != 1) {
    throw Error(ErrorKind::kCalibrationUnresolved,
                std::to_string(survivors.size()) + " role conventions survive the v3 calibration");
  }
  return survivors.front();
}

}  // namespace vassiliev
