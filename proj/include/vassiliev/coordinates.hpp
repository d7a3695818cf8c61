#pragma once

// Per-crossing coordinates: delta (which branch is passed first) and
// epsilon (the crossing sign).

#include <string>
#include <string_view>
#include <vector>

#include "vassiliev/gauss_code.hpp"

namespace vassiliev {

struct CrossingCoordinates {
  std::string label;
  int delta;
  Sign epsilon;

  friend bool operator==(const CrossingCoordinates&, const CrossingCoordinates&) = default;
};

/// 1 iff the traversal from the basepoint meets the over-passage first.
/// Pinned by the trefoil calibration, which must read (1, 0, 1).
inline int delta(const GaussCode& code, int crossing) {
  return code.position(crossing, Role::kOver) < code.position(crossing, Role::kUnder) ? 1 : 0;
}

inline int delta(const GaussCode& code, std::string_view label) { return delta(code, code.crossing_of(label)); }

inline Sign epsilon(const GaussCode& code, int crossing) { return code.sign(crossing); }

inline Sign epsilon(const GaussCode& code, std::string_view label) { return epsilon(code, code.crossing_of(label)); }

/// Coordinates of every crossing, in order of first appearance.
inline std::vector<CrossingCoordinates> coordinates(const GaussCode& code) {
  std::vector<CrossingCoordinates> out;
  out.reserve(static_cast<std::size_t>(code.crossing_count()));
  for (int c = 0; c < code.crossing_count(); ++c) out.push_back({code.label(c), delta(code, c), epsilon(code, c)});
  return out;
}

}  // namespace vassiliev
