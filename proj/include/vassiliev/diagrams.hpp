#pragma once

// Arrow (Gauss) diagrams and chord diagrams on a basepointed circle.
// Endpoint positions 0..2n-1 run in traversal order from the basepoint.

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vassiliev/error.hpp"
#include "vassiliev/gauss_code.hpp"

namespace vassiliev {

struct Chord {
  int first;
  int second;

  friend bool operator==(const Chord&, const Chord&) = default;
};

/// True iff exactly one endpoint of `b` lies strictly inside `a`.
constexpr bool chords_cross(Chord a, Chord b) noexcept {
  const bool first_in = a.first < b.first && b.first < a.second;
  const bool second_in = a.first < b.second && b.second < a.second;
  return first_in != second_in;
}

/// Unsigned, undirected chords. Chords are indexed in order of their first
/// endpoint, so equal diagrams have equal chord lists.
class ChordDiagram {
 public:
  ChordDiagram() = default;

  static ChordDiagram from_partners(std::vector<int> partner) {
    const int m = static_cast<int>(partner.size());
    if (m % 2 != 0) throw Error(ErrorKind::kUnbalancedLabel, "odd number of chord endpoints");
    for (int i = 0; i < m; ++i) {
      const int j = partner[static_cast<std::size_t>(i)];
      if (j < 0 || j >= m || j == i || partner[static_cast<std::size_t>(j)] != i) {
        throw Error(ErrorKind::kUnbalancedLabel, "endpoint partners do not form a perfect matching");
      }
    }
    ChordDiagram d;
    d.partner_ = std::move(partner);
    d.chord_at_.assign(static_cast<std::size_t>(m), -1);
    for (int i = 0; i < m; ++i) {
      const int j = d.partner_[static_cast<std::size_t>(i)];
      if (i < j) {
        d.chord_at_[static_cast<std::size_t>(i)] = d.chord_at_[static_cast<std::size_t>(j)] =
            static_cast<int>(d.chords_.size());
        d.chords_.push_back({i, j});
      }
    }
    return d;
  }

  static ChordDiagram from_chords(int endpoint_count, std::span<const Chord> chords) {
    std::vector<int> partner(static_cast<std::size_t>(endpoint_count), -1);
    for (const auto& c : chords) {
      if (c.first < 0 || c.second < 0 || c.first >= endpoint_count || c.second >= endpoint_count ||
          partner[static_cast<std::size_t>(c.first)] != -1 || partner[static_cast<std::size_t>(c.second)] != -1) {
        throw Error(ErrorKind::kUnbalancedLabel, "chords do not form a perfect matching");
      }
      partner[static_cast<std::size_t>(c.first)] = c.second;
      partner[static_cast<std::size_t>(c.second)] = c.first;
    }
    return from_partners(std::move(partner));
  }

  /// Whitespace-separated word where each label occurs twice, e.g. "1 2 1 2".
  static ChordDiagram from_word(std::string_view text) {
    auto tokens = detail::split_ws(text);
    std::vector<int> partner(tokens.size(), -1);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      std::size_t matches = 0;
      for (std::size_t j = 0; j < tokens.size(); ++j) {
        if (j != i && tokens[j] == tokens[i]) {
          partner[i] = static_cast<int>(j);
          ++matches;
        }
      }
      if (matches != 1) {
        throw Error(ErrorKind::kUnbalancedLabel, "chord label '" + std::string(tokens[i]) + "' must occur twice");
      }
    }
    return from_partners(std::move(partner));
  }

  int endpoint_count() const noexcept { return static_cast<int>(partner_.size()); }
  int chord_count() const noexcept { return static_cast<int>(chords_.size()); }
  std::span<const Chord> chords() const noexcept { return chords_; }
  const Chord& chord(int index) const { return chords_.at(static_cast<std::size_t>(index)); }
  int partner(int position) const { return partner_.at(static_cast<std::size_t>(position)); }
  int chord_at(int position) const { return chord_at_.at(static_cast<std::size_t>(position)); }
  std::span<const int> partners() const noexcept { return partner_; }

  /// Canonical word, chords numbered from 1 by first endpoint.
  std::string word() const {
    std::string out;
    for (int pos = 0; pos < endpoint_count(); ++pos) {
      if (!out.empty()) out += ' ';
      out += std::to_string(chord_at(pos) + 1);
    }
    return out;
  }

  /// Chords crossed by no other chord.
  bool has_isolated_chord() const {
    for (int a = 0; a < chord_count(); ++a) {
      bool isolated = true;
      for (int b = 0; b < chord_count() && isolated; ++b) {
        if (a != b && chords_cross(chords_[static_cast<std::size_t>(a)], chords_[static_cast<std::size_t>(b)])) {
          isolated = false;
        }
      }
      if (isolated) return true;
    }
    return false;
  }

  friend bool operator==(const ChordDiagram& a, const ChordDiagram& b) { return a.partner_ == b.partner_; }
  friend bool operator<(const ChordDiagram& a, const ChordDiagram& b) { return a.partner_ < b.partner_; }

 private:
  std::vector<int> partner_;
  std::vector<Chord> chords_;
  std::vector<int> chord_at_;
};

inline bool interleaved(const ChordDiagram& d, int a, int b) {
  if (a == b) throw Error(ErrorKind::kSameChord, "chord " + std::to_string(a) + " compared with itself");
  return chords_cross(d.chord(a), d.chord(b));
}

/// The basepoint placement with the lexicographically smallest partner list;
/// two diagrams are equal up to rotation iff their normalizations are equal.
inline ChordDiagram normalize_rotation(const ChordDiagram& d) {
  const int m = d.endpoint_count();
  std::vector<int> best(d.partners().begin(), d.partners().end());
  for (int shift = 1; shift < m; ++shift) {
    std::vector<int> rotated(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      rotated[static_cast<std::size_t>((i - shift + m) % m)] = (d.partner(i) - shift + m) % m;
    }
    best = std::min(best, rotated);
  }
  return ChordDiagram::from_partners(std::move(best));
}

/// The sub-diagram spanned by the given chords, re-based at the basepoint.
inline ChordDiagram restrict_chords(std::span<const Chord> chords) {
  std::vector<int> ends;
  for (const auto& c : chords) {
    ends.push_back(c.first);
    ends.push_back(c.second);
  }
  std::sort(ends.begin(), ends.end());
  auto rank = [&](int pos) {
    return static_cast<int>(std::lower_bound(ends.begin(), ends.end(), pos) - ends.begin());
  };
  std::vector<Chord> local;
  for (const auto& c : chords) local.push_back({rank(c.first), rank(c.second)});
  return ChordDiagram::from_chords(static_cast<int>(ends.size()), local);
}

struct Arrow {
  int tail;
  int head;
  Sign sign;

  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// Signed arrows, tail at the over-passage and head at the under-passage.
/// Arrow i belongs to crossing i of the source code.
class ArrowDiagram {
 public:
  ArrowDiagram() = default;

  ArrowDiagram(int endpoint_count, std::vector<Arrow> arrows) : arrows_(std::move(arrows)) {
    arrow_at_.assign(static_cast<std::size_t>(endpoint_count), -1);
    is_tail_.assign(static_cast<std::size_t>(endpoint_count), false);
    for (std::size_t i = 0; i < arrows_.size(); ++i) {
      const auto& a = arrows_[i];
      if (a.tail == a.head || a.tail < 0 || a.head < 0 || a.tail >= endpoint_count || a.head >= endpoint_count ||
          arrow_at_[static_cast<std::size_t>(a.tail)] != -1 || arrow_at_[static_cast<std::size_t>(a.head)] != -1) {
        throw Error(ErrorKind::kUnbalancedLabel, "arrow endpoints do not form a perfect matching");
      }
      arrow_at_[static_cast<std::size_t>(a.tail)] = arrow_at_[static_cast<std::size_t>(a.head)] = static_cast<int>(i);
      is_tail_[static_cast<std::size_t>(a.tail)] = true;
    }
    if (std::find(arrow_at_.begin(), arrow_at_.end(), -1) != arrow_at_.end()) {
      throw Error(ErrorKind::kUnbalancedLabel, "unused arrow endpoint");
    }
  }

  int endpoint_count() const noexcept { return static_cast<int>(arrow_at_.size()); }
  int arrow_count() const noexcept { return static_cast<int>(arrows_.size()); }
  std::span<const Arrow> arrows() const noexcept { return arrows_; }
  const Arrow& arrow(int index) const { return arrows_.at(static_cast<std::size_t>(index)); }
  int arrow_at(int position) const { return arrow_at_[static_cast<std::size_t>(position)]; }
  bool is_tail(int position) const { return is_tail_[static_cast<std::size_t>(position)]; }

 private:
  std::vector<Arrow> arrows_;
  std::vector<int> arrow_at_;
  std::vector<bool> is_tail_;
};

inline ArrowDiagram arrow_diagram_from_code(const GaussCode& code) {
  std::vector<Arrow> arrows;
  arrows.reserve(static_cast<std::size_t>(code.crossing_count()));
  for (int c = 0; c < code.crossing_count(); ++c) {
    arrows.push_back({code.position(c, Role::kOver), code.position(c, Role::kUnder), code.sign(c)});
  }
  return ArrowDiagram(static_cast<int>(code.length()), std::move(arrows));
}

inline ChordDiagram chord_diagram(const ArrowDiagram& d) {
  std::vector<Chord> chords;
  for (const auto& a : d.arrows()) chords.push_back({std::min(a.tail, a.head), std::max(a.tail, a.head)});
  return ChordDiagram::from_chords(d.endpoint_count(), chords);
}

}  // namespace vassiliev
