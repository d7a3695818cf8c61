#pragma once

// Arrow patterns written as words of `<label><t|h>` tokens read from the
// basepoint, and rational combinations of them loaded from `.pat` files.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "vassiliev/error.hpp"
#include "vassiliev/gauss_code.hpp"
#include "vassiliev/rational.hpp"

namespace vassiliev {

struct PatternArrow {
  int tail;
  int head;

  friend bool operator==(const PatternArrow&, const PatternArrow&) = default;
};

/// Unsigned directed arrows on 2k basepointed positions. Arrows are indexed by
/// first endpoint, so two patterns are equal iff their arrow lists are.
class ArrowPattern {
 public:
  ArrowPattern() = default;

  static ArrowPattern from_arrows(int endpoint_count, std::vector<PatternArrow> arrows) {
    std::vector<int> used(static_cast<std::size_t>(endpoint_count), 0);
    for (const auto& a : arrows) {
      if (a.tail == a.head || a.tail < 0 || a.head < 0 || a.tail >= endpoint_count || a.head >= endpoint_count) {
        throw Error(ErrorKind::kUnbalancedLabel, "arrow endpoint out of range");
      }
      used[static_cast<std::size_t>(a.tail)]++;
      used[static_cast<std::size_t>(a.head)]++;
    }
    if (std::any_of(used.begin(), used.end(), [](int u) { return u != 1; })) {
      throw Error(ErrorKind::kUnbalancedLabel, "pattern endpoints do not form a perfect matching");
    }
    std::sort(arrows.begin(), arrows.end(), [](const PatternArrow& x, const PatternArrow& y) {
      return std::min(x.tail, x.head) < std::min(y.tail, y.head);
    });
    ArrowPattern p;
    p.endpoint_count_ = endpoint_count;
    p.arrows_ = std::move(arrows);
    return p;
  }

  int endpoint_count() const noexcept { return endpoint_count_; }
  int arrow_count() const noexcept { return static_cast<int>(arrows_.size()); }
  std::span<const PatternArrow> arrows() const noexcept { return arrows_; }

  /// Canonical word, arrows numbered from 1 by first endpoint.
  std::string word() const {
    std::vector<std::string> tokens(static_cast<std::size_t>(endpoint_count_));
    for (std::size_t i = 0; i < arrows_.size(); ++i) {
      tokens[static_cast<std::size_t>(arrows_[i].tail)] = std::to_string(i + 1) + "t";
      tokens[static_cast<std::size_t>(arrows_[i].head)] = std::to_string(i + 1) + "h";
    }
    std::string out;
    for (const auto& t : tokens) {
      if (!out.empty()) out += ' ';
      out += t;
    }
    return out;
  }

  /// The same unbased diagram with the basepoint moved `shift` positions forward.
  ArrowPattern rotated(int shift) const {
    const int m = endpoint_count_;
    std::vector<PatternArrow> moved;
    for (const auto& a : arrows_) moved.push_back({((a.tail - shift) % m + m) % m, ((a.head - shift) % m + m) % m});
    return from_arrows(m, std::move(moved));
  }

  friend bool operator==(const ArrowPattern& a, const ArrowPattern& b) {
    return a.endpoint_count_ == b.endpoint_count_ && a.arrows_ == b.arrows_;
  }
  friend bool operator<(const ArrowPattern& a, const ArrowPattern& b) { return a.word() < b.word(); }

 private:
  int endpoint_count_ = 0;
  std::vector<PatternArrow> arrows_;
};

inline ArrowPattern parse_pattern(std::string_view text) {
  struct Ends {
    int tail = -1;
    int head = -1;
    int tails = 0;
    int heads = 0;
  };
  std::map<std::string, Ends, std::less<>> by_label;
  const auto tokens = detail::split_ws(text);
  for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
    const auto tok = tokens[pos];
    if (tok.size() < 2 || (tok.back() != 't' && tok.back() != 'h') || !detail::is_label(tok.substr(0, tok.size() - 1))) {
      throw Error(ErrorKind::kMalformedToken, "'" + std::string(tok) + "' is not of the form <label><t|h>");
    }
    auto& e = by_label[std::string(tok.substr(0, tok.size() - 1))];
    if (tok.back() == 't') {
      e.tail = static_cast<int>(pos);
      e.tails++;
    } else {
      e.head = static_cast<int>(pos);
      e.heads++;
    }
  }
  std::vector<PatternArrow> arrows;
  for (const auto& [label, e] : by_label) {
    if (e.tails != 1 || e.heads != 1) {
      throw Error(ErrorKind::kUnbalancedLabel, "arrow '" + label + "' needs exactly one 't' and one 'h'");
    }
    arrows.push_back({e.tail, e.head});
  }
  return ArrowPattern::from_arrows(static_cast<int>(tokens.size()), std::move(arrows));
}

/// All distinct basepointed patterns with the same underlying unbased diagram.
inline std::vector<ArrowPattern> basepoint_placements(const ArrowPattern& p) {
  std::vector<ArrowPattern> out;
  for (int shift = 0; shift < std::max(1, p.endpoint_count()); ++shift) {
    ArrowPattern r = p.rotated(shift);
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(std::move(r));
  }
  return out;
}

struct PatternTerm {
  Rational coefficient;
  ArrowPattern pattern;
  bool bracketed = false;
};

struct PatternExpression {
  std::vector<PatternTerm> terms;

  int max_arrows() const {
    int k = 0;
    for (const auto& t : terms) k = std::max(k, t.pattern.arrow_count());
    return k;
  }
};

/// One term per line: `<coefficient> <0|1> <word>`; `#` starts a comment.
inline PatternExpression parse_pattern_expression(std::istream& in) {
  PatternExpression expr;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    line = line.substr(0, line.find('#'));
    std::istringstream fields(line);
    std::string coefficient;
    std::string flag;
    if (!(fields >> coefficient)) continue;
    if (!(fields >> flag) || (flag != "0" && flag != "1")) {
      throw Error(ErrorKind::kParseError, "line " + std::to_string(number) + ": bracket flag must be 0 or 1", number);
    }
    std::string word;
    std::getline(fields, word);
    try {
      expr.terms.push_back({parse_rational(coefficient), parse_pattern(word), flag == "1"});
    } catch (const Error& e) {
      throw Error(e.kind(), "line " + std::to_string(number) + ": " + e.what(), number);
    }
  }
  return expr;
}

inline PatternExpression parse_pattern_expression(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_pattern_expression(in);
}

inline PatternExpression load_pattern_expression(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open " + path.string());
  return parse_pattern_expression(in);
}

}  // namespace vassiliev
