#pragma once

// Chord-diagram layer: enumeration, the degree 2 and 3 weight systems,
// 1T/4T relation checking, singular-knot resolution and realization, and the
// weight system induced by a knot invariant.

#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "vassiliev/diagrams.hpp"
#include "vassiliev/error.hpp"
#include "vassiliev/gauss_code.hpp"
#include "vassiliev/rational.hpp"
#include "vassiliev/singular_code.hpp"

namespace vassiliev {

/// All perfect matchings of 2n basepointed positions, (2n-1)!! of them.
inline std::vector<ChordDiagram> enumerate_chord_diagrams(int n) {
  if (n < 0) throw Error(ErrorKind::kWrongDegree, "negative chord count");
  if (n > 6) throw Error(ErrorKind::kTooLarge, std::to_string(n) + " chords (limit 6)");
  const int m = 2 * n;
  std::vector<ChordDiagram> out;
  std::vector<int> partner(static_cast<std::size_t>(m), -1);
  auto fill = [&](auto&& self) -> void {
    const auto free = std::find(partner.begin(), partner.end(), -1);
    if (free == partner.end()) {
      out.push_back(ChordDiagram::from_partners(partner));
      return;
    }
    const int a = static_cast<int>(free - partner.begin());
    for (int b = a + 1; b < m; ++b) {
      if (partner[static_cast<std::size_t>(b)] != -1) continue;
      partner[static_cast<std::size_t>(a)] = b;
      partner[static_cast<std::size_t>(b)] = a;
      self(self);
      partner[static_cast<std::size_t>(a)] = partner[static_cast<std::size_t>(b)] = -1;
    }
  };
  fill(fill);
  return out;
}

/// Number of crossing chord pairs.
inline int interlacement_edges(const ChordDiagram& d) {
  int edges = 0;
  for (int a = 0; a < d.chord_count(); ++a) {
    for (int b = a + 1; b < d.chord_count(); ++b) edges += chords_cross(d.chord(a), d.chord(b)) ? 1 : 0;
  }
  return edges;
}

/// 1 on the crossed two-chord diagram, 0 on the parallel and disjoint ones.
inline Rational w2(const ChordDiagram& d) {
  if (d.chord_count() != 2) throw Error(ErrorKind::kWrongDegree, "w2 needs 2 chords, got " + std::to_string(d.chord_count()));
  return interlacement_edges(d) == 1 ? 1 : 0;
}

/// Classified by interlacement graph: triangle 2, path 1, otherwise 0.
inline Rational w3(const ChordDiagram& d) {
  if (d.chord_count() != 3) throw Error(ErrorKind::kWrongDegree, "w3 needs 3 chords, got " + std::to_string(d.chord_count()));
  switch (interlacement_edges(d)) {
    case 3: return 2;
    case 2: return 1;
    default: return 0;
  }
}

struct WeightSystem {
  int degree = 0;
  std::string name;
  std::function<Rational(const ChordDiagram&)> evaluate;

  Rational operator()(const ChordDiagram& d) const { return evaluate(d); }
};

inline WeightSystem w2_system() { return {2, "w2", [](const ChordDiagram& d) { return w2(d); }}; }
inline WeightSystem w3_system() { return {3, "w3", [](const ChordDiagram& d) { return w3(d); }}; }

inline WeightSystem constant_weight_system(int degree, Rational value) {
  return {degree, "constant " + format_rational(value), [value](const ChordDiagram&) { return value; }};
}

/// A weight system given by its full value table.
inline WeightSystem tabulated_weight_system(int degree, std::string name, std::map<ChordDiagram, Rational> table) {
  return {degree, std::move(name), [table = std::move(table)](const ChordDiagram& d) {
            auto it = table.find(d);
            return it == table.end() ? Rational(0) : it->second;
          }};
}

/// Integer combination of chord diagrams; the elements of the free group on
/// n-chord diagrams that the relations live in.
using ChordCombination = std::vector<std::pair<int, ChordDiagram>>;

inline Rational evaluate(const WeightSystem& w, const ChordCombination& combination) {
  Rational total = 0;
  for (const auto& [coefficient, diagram] : combination) total += coefficient * w(diagram);
  return total;
}

/// Chord P-Q moves its free end Q around the endpoints A, B of a fixed chord.
/// Members: Q just after A, just before A, just after B, just before B,
/// weighted + - + -.
struct FourTermQuadruple {
  static constexpr std::array<int, 4> kSigns{1, -1, 1, -1};
  std::array<ChordDiagram, 4> members;

  ChordCombination combination() const {
    ChordCombination c;
    for (std::size_t i = 0; i < 4; ++i) c.emplace_back(kSigns[i], members[i]);
    return c;
  }
};

namespace detail {

inline ChordDiagram diagram_from_ids(const std::vector<int>& ids) {
  std::vector<int> partner(ids.size(), -1);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if (ids[i] == ids[j]) {
        partner[i] = static_cast<int>(j);
        partner[j] = static_cast<int>(i);
      }
    }
  }
  return ChordDiagram::from_partners(std::move(partner));
}

}  // namespace detail

/// Every placement of the 4T configuration among n chords: any n-1 chord
/// background, any position of the moving chord's fixed end P, any fixed chord.
inline std::vector<FourTermQuadruple> four_term_quadruples(int n) {
  if (n > 5) throw Error(ErrorKind::kTooLarge, "4T placements beyond 5 chords");
  if (n < 2) throw Error(ErrorKind::kWrongDegree, "4T needs at least 2 chords");
  std::vector<FourTermQuadruple> out;
  const int moving = n - 1;
  for (const auto& base : enumerate_chord_diagrams(n - 1)) {
    std::vector<int> ids;
    for (int pos = 0; pos < base.endpoint_count(); ++pos) ids.push_back(base.chord_at(pos));
    for (std::size_t slot = 0; slot <= ids.size(); ++slot) {
      std::vector<int> with_p = ids;
      with_p.insert(with_p.begin() + static_cast<std::ptrdiff_t>(slot), moving);
      for (int fixed = 0; fixed < base.chord_count(); ++fixed) {
        std::vector<std::size_t> ends;
        for (std::size_t i = 0; i < with_p.size(); ++i) {
          if (with_p[i] == fixed) ends.push_back(i);
        }
        auto place_q = [&](std::size_t at) {
          std::vector<int> word = with_p;
          word.insert(word.begin() + static_cast<std::ptrdiff_t>(at), moving);
          return detail::diagram_from_ids(word);
        };
        out.push_back({{place_q(ends[0] + 1), place_q(ends[0]), place_q(ends[1] + 1), place_q(ends[1])}});
      }
    }
  }
  return out;
}

struct RelationViolation {
  enum class Kind { kOneTerm, kFourTerm } kind;
  ChordCombination combination;
  Rational value;
};

struct RelationReport {
  bool one_term_ok = true;
  bool four_term_ok = true;
  std::size_t one_term_checked = 0;
  std::size_t four_term_checked = 0;
  std::vector<RelationViolation> violations;

  bool ok() const noexcept { return one_term_ok && four_term_ok; }
};

/// Exhaustive 1T and 4T check of `w` on its degree.
inline RelationReport check_relations(const WeightSystem& w) {
  RelationReport report;
  for (const auto& d : enumerate_chord_diagrams(w.degree)) {
    if (!d.has_isolated_chord()) continue;
    ++report.one_term_checked;
    ChordCombination single{{1, d}};
    if (Rational v = evaluate(w, single); v != 0) {
      report.one_term_ok = false;
      report.violations.push_back({RelationViolation::Kind::kOneTerm, std::move(single), v});
    }
  }
  if (w.degree >= 2) {
    for (const auto& q : four_term_quadruples(w.degree)) {
      ++report.four_term_checked;
      auto combination = q.combination();
      if (Rational v = evaluate(w, combination); v != 0) {
        report.four_term_ok = false;
        report.violations.push_back({RelationViolation::Kind::kFourTerm, std::move(combination), v});
      }
    }
  }
  return report;
}

struct Resolution {
  Sign sign;
  unsigned mask;  // bit i set: double point i takes its negative resolution
  GaussCode code;
};

/// Expands every double point as (positive crossing) - (negative crossing).
/// The positive resolution puts the first visit over with sign +; the
/// negative one puts it under with sign -. Terms come in mask order.
inline std::vector<Resolution> resolve_singular(const SingularCode& s) {
  const int d = s.double_point_count();
  if (d > 20) throw Error(ErrorKind::kTooLarge, std::to_string(d) + " double points");
  std::vector<Resolution> out;
  const RawSingularCode raw = s.to_raw();
  std::vector<std::string> labels;
  for (int p = 0; p < d; ++p) labels.push_back(s.point_label(p));
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    RawCode code;
    for (const auto& item : raw) {
      if (const auto* p = std::get_if<RawPassage>(&item)) {
        code.push_back(*p);
        continue;
      }
      const auto& dp = std::get<RawDoublePoint>(item);
      const auto index = static_cast<unsigned>(std::find(labels.begin(), labels.end(), dp.label) - labels.begin());
      const bool negative = ((mask >> index) & 1u) != 0;
      const bool first = dp.visit == Visit::kFirst;
      code.push_back({dp.label, (first != negative) ? Role::kOver : Role::kUnder, negative ? Sign::kMinus : Sign::kPlus});
    }
    out.push_back({std::popcount(mask) % 2 == 0 ? Sign::kPlus : Sign::kMinus, mask, GaussCode::from_raw(code)});
  }
  return out;
}

namespace detail {

struct Vec2 {
  double x;
  double y;
};

constexpr double cross(Vec2 a, Vec2 b) noexcept { return a.x * b.y - a.y * b.x; }

}  // namespace detail

/// A planar singular knot whose double points trace `d`.
///
/// Endpoints sit on a circle; the knot runs around it and at every endpoint
/// pushes a thin finger in along the chord to just past its midpoint. The two
/// fingers of a chord overlap at the tip in two points: one is the double
/// point, the other an ordinary crossing. Fingers of crossing chords meet in
/// four ordinary crossings. Ordinary crossings are descending (first visit
/// over) and carry their geometric sign.
inline SingularCode realize_chord_diagram(const ChordDiagram& d) {
  using detail::cross;
  using detail::Vec2;
  const int m = d.endpoint_count();
  if (m == 0) return SingularCode{};

  // hits[k]: (fraction along the chord from endpoint k, other endpoint)
  std::vector<std::vector<std::pair<double, int>>> hits;
  std::vector<Vec2> point(static_cast<std::size_t>(m));
  bool generic = false;
  for (int attempt = 0; attempt < 64 && !generic; ++attempt) {
    for (int k = 0; k < m; ++k) {
      const double wobble = 0.35 * std::sin(1.7 * k + 0.913 * attempt + 0.3);
      const double angle = 2.0 * std::numbers::pi * (k + wobble) / m;
      point[static_cast<std::size_t>(k)] = {std::cos(angle), std::sin(angle)};
    }
    hits.assign(static_cast<std::size_t>(m), {});
    generic = true;
    for (int i = 0; i < d.chord_count() && generic; ++i) {
      for (int j = i + 1; j < d.chord_count() && generic; ++j) {
        const Chord ci = d.chord(i);
        const Chord cj = d.chord(j);
        if (!chords_cross(ci, cj)) continue;
        const Vec2 pa = point[static_cast<std::size_t>(ci.first)];
        const Vec2 pb = point[static_cast<std::size_t>(ci.second)];
        const Vec2 pc = point[static_cast<std::size_t>(cj.first)];
        const Vec2 pd = point[static_cast<std::size_t>(cj.second)];
        const Vec2 r{pb.x - pa.x, pb.y - pa.y};
        const Vec2 s{pd.x - pc.x, pd.y - pc.y};
        const Vec2 q{pc.x - pa.x, pc.y - pa.y};
        const double t = cross(q, s) / cross(r, s);
        const double u = cross(q, r) / cross(r, s);
        if (std::abs(t - 0.5) < 1e-6 || std::abs(u - 0.5) < 1e-6) {
          generic = false;
          break;
        }
        const int f = t < 0.5 ? ci.first : ci.second;
        const int g = u < 0.5 ? cj.first : cj.second;
        hits[static_cast<std::size_t>(f)].emplace_back(t < 0.5 ? t : 1 - t, g);
        hits[static_cast<std::size_t>(g)].emplace_back(u < 0.5 ? u : 1 - u, f);
      }
    }
    for (auto& h : hits) {
      std::sort(h.begin(), h.end());
      for (std::size_t i = 1; i < h.size(); ++i) {
        if (h[i].first - h[i - 1].first < 1e-9) generic = false;
      }
    }
  }
  if (!generic) throw Error(ErrorKind::kTooLarge, "no generic chord layout found");

  auto direction = [&](int from) {
    const Vec2 a = point[static_cast<std::size_t>(from)];
    const Vec2 b = point[static_cast<std::size_t>(d.partner(from))];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    return Vec2{(b.x - a.x) / len, (b.y - a.y) / len};
  };

  // Strand 2k runs in along finger k, strand 2k+1 back out.
  enum class KeyKind { kFingers, kTipCrossing, kDoublePoint };
  using Key = std::tuple<KeyKind, int, int>;
  auto finger_key = [](int strand_a, int strand_b) {
    return Key{KeyKind::kFingers, std::min(strand_a, strand_b), std::max(strand_a, strand_b)};
  };
  struct Event {
    Key key;
    Vec2 dir;
  };
  std::vector<Event> events;
  for (int k = 0; k < m; ++k) {
    const int chord = d.chord_at(k);
    const Vec2 u = direction(k);
    const Vec2 back{-u.x, -u.y};
    const Vec2 cap{u.y, -u.x};  // the tip turns from the inbound to the outbound side
    const auto& on_finger = hits[static_cast<std::size_t>(k)];
    for (const auto& [t, g] : on_finger) {
      const bool out_first = cross(direction(g), u) > 0;
      for (int st : out_first ? std::array<int, 2>{1, 0} : std::array<int, 2>{0, 1}) {
        events.push_back({finger_key(2 * k, 2 * g + st), u});
      }
    }
    if (k < d.partner(k)) {
      events.push_back({Key{KeyKind::kDoublePoint, chord, 0}, cap});
      events.push_back({Key{KeyKind::kTipCrossing, chord, 0}, cap});
    } else {
      events.push_back({Key{KeyKind::kTipCrossing, chord, 0}, u});
      events.push_back({Key{KeyKind::kDoublePoint, chord, 0}, back});
    }
    for (auto it = on_finger.rbegin(); it != on_finger.rend(); ++it) {
      const int g = it->second;
      const bool in_first = cross(direction(g), u) > 0;
      for (int st : in_first ? std::array<int, 2>{0, 1} : std::array<int, 2>{1, 0}) {
        events.push_back({finger_key(2 * k + 1, 2 * g + st), back});
      }
    }
  }

  std::map<Key, Vec2> first_dir;
  std::map<Key, Sign> sign;
  for (const auto& e : events) {
    auto [it, fresh] = first_dir.try_emplace(e.key, e.dir);
    if (!fresh) sign[e.key] = cross(it->second, e.dir) > 0 ? Sign::kPlus : Sign::kMinus;
  }
  std::map<Key, std::string> label;
  RawSingularCode raw;
  int next_crossing = 1;
  for (const auto& e : events) {
    const bool first = label.find(e.key) == label.end();
    if (std::get<0>(e.key) == KeyKind::kDoublePoint) {
      if (first) label[e.key] = std::to_string(std::get<1>(e.key) + 1);
      raw.push_back(RawDoublePoint{label[e.key], first ? Visit::kFirst : Visit::kSecond});
    } else {
      if (first) label[e.key] = "c" + std::to_string(next_crossing++);
      raw.push_back(RawPassage{label[e.key], first ? Role::kOver : Role::kUnder, sign.at(e.key)});
    }
  }
  return SingularCode::from_raw(raw);
}

/// The chord diagram traced by the double points of `s`, in traversal order.
inline ChordDiagram double_point_diagram(const SingularCode& s) {
  std::vector<int> ids;
  for (const auto& item : s.passages()) {
    if (const auto* dp = std::get_if<DoublePointPassage>(&item)) ids.push_back(dp->point);
  }
  return detail::diagram_from_ids(ids);
}

using InvariantFn = std::function<Rational(const GaussCode&)>;

/// W(D) = sum over the resolutions of a singular knot realizing D of
/// sign * v(resolution).
inline WeightSystem weight_from_invariant(const InvariantFn& v, int n, std::string name = "W_f") {
  if (n > 4) throw Error(ErrorKind::kTooLarge, "induced weight systems are tabulated up to 4 chords");
  std::map<ChordDiagram, Rational> table;
  for (const auto& d : enumerate_chord_diagrams(n)) {
    Rational total = 0;
    for (const auto& r : resolve_singular(realize_chord_diagram(d))) total += to_int(r.sign) * v(r.code);
    table.emplace(d, total);
  }
  return tabulated_weight_system(n, std::move(name), std::move(table));
}

}  // namespace vassiliev
