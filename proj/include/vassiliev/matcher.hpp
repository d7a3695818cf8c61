#pragma once

// Signed subdiagram counting <A, G>.

#include <cstdint>
#include <vector>

#include "vassiliev/diagrams.hpp"
#include "vassiliev/pattern.hpp"
#include "vassiliev/rational.hpp"

namespace vassiliev {

/// How a bracketed term `[A]` is counted.
enum class BracketSemantics {
  kAllBasepoints,  // sum over every distinct basepoint placement of A
  kNoOp,           // count A as written
};

/// Fixed by calibration: V3 is 1 on the trefoil, 0 on the unknot, integral on
/// the corpus, and equal to the other v3 formulas only under this reading.
inline constexpr BracketSemantics kBracketSemantics = BracketSemantics::kAllBasepoints;

/// Sum over injections of pattern arrows into diagram arrows that keep
/// tails on tails, heads on heads, and endpoint order from the basepoint, of
/// the product of the matched signs.
inline std::int64_t count_matches(const ArrowPattern& pattern, const ArrowDiagram& g) {
  const int k = pattern.arrow_count();
  const int m = pattern.endpoint_count();
  if (k > g.arrow_count()) return 0;
  if (k == 0) return 1;

  struct Slot {
    int arrow;
    bool tail;
    bool opens;  // first endpoint of its arrow in pattern order
  };
  std::vector<Slot> slots(static_cast<std::size_t>(m));
  for (int i = 0; i < k; ++i) {
    const auto& a = pattern.arrows()[static_cast<std::size_t>(i)];
    slots[static_cast<std::size_t>(a.tail)] = {i, true, a.tail < a.head};
    slots[static_cast<std::size_t>(a.head)] = {i, false, a.head < a.tail};
  }

  std::vector<int> image(static_cast<std::size_t>(k), -1);
  std::vector<bool> used(static_cast<std::size_t>(g.arrow_count()), false);
  std::int64_t total = 0;
  const int n = g.endpoint_count();

  auto search = [&](auto&& self, int slot, int last, int sign) -> void {
    if (slot == m) {
      total += sign;
      return;
    }
    const Slot& s = slots[static_cast<std::size_t>(slot)];
    if (!s.opens) {
      const Arrow& a = g.arrow(image[static_cast<std::size_t>(s.arrow)]);
      const int pos = s.tail ? a.tail : a.head;
      if (pos > last) self(self, slot + 1, pos, sign);
      return;
    }
    // Leave room for the remaining m - slot - 1 endpoints.
    for (int pos = last + 1; pos <= n - (m - slot); ++pos) {
      if (g.is_tail(pos) != s.tail) continue;
      const int arrow = g.arrow_at(pos);
      if (used[static_cast<std::size_t>(arrow)]) continue;
      const Arrow& a = g.arrow(arrow);
      if ((s.tail ? a.head : a.tail) <= pos) continue;
      used[static_cast<std::size_t>(arrow)] = true;
      image[static_cast<std::size_t>(s.arrow)] = arrow;
      self(self, slot + 1, pos, sign * to_int(a.sign));
      used[static_cast<std::size_t>(arrow)] = false;
    }
  };
  search(search, 0, -1, 1);
  return total;
}

inline Rational evaluate_term(const PatternTerm& term, const ArrowDiagram& g,
                              BracketSemantics semantics = kBracketSemantics) {
  std::int64_t count = 0;
  if (term.bracketed && semantics == BracketSemantics::kAllBasepoints) {
    for (const auto& placement : basepoint_placements(term.pattern)) count += count_matches(placement, g);
  } else {
    count = count_matches(term.pattern, g);
  }
  return term.coefficient * count;
}

inline Rational evaluate_expression(const PatternExpression& expr, const ArrowDiagram& g,
                                    BracketSemantics semantics = kBracketSemantics) {
  Rational total = 0;
  for (const auto& term : expr.terms) total += evaluate_term(term, g, semantics);
  return total;
}

}  // namespace vassiliev
