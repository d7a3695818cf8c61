#pragma once

// Gauss codes: the planar knot diagram read as a cyclic word of signed
// over/under passages. The first passage is the basepoint.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vassiliev/error.hpp"

namespace vassiliev {

enum class Role : std::uint8_t { kOver, kUnder };
enum class Sign : std::int8_t { kMinus = -1, kPlus = 1 };

constexpr int to_int(Sign s) noexcept { return static_cast<int>(s); }
constexpr Sign operator-(Sign s) noexcept { return s == Sign::kPlus ? Sign::kMinus : Sign::kPlus; }
constexpr Sign operator*(Sign a, Sign b) noexcept { return a == b ? Sign::kPlus : Sign::kMinus; }
constexpr Role opposite(Role r) noexcept { return r == Role::kOver ? Role::kUnder : Role::kOver; }
constexpr char role_char(Role r) noexcept { return r == Role::kOver ? 'O' : 'U'; }
constexpr char sign_char(Sign s) noexcept { return s == Sign::kPlus ? '+' : '-'; }

/// A passage as written in text, before labels are resolved.
struct RawPassage {
  std::string label;
  Role role;
  Sign sign;

  friend bool operator==(const RawPassage&, const RawPassage&) = default;
};

using RawCode = std::vector<RawPassage>;

namespace detail {

inline bool is_label(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) != 0; });
}

inline std::vector<std::string_view> split_ws(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace detail

/// Parses one `<O|U><label><+|->` token.
inline RawPassage parse_passage_token(std::string_view tok) {
  if (tok.size() < 3 || (tok.front() != 'O' && tok.front() != 'U') || (tok.back() != '+' && tok.back() != '-') ||
      !detail::is_label(tok.substr(1, tok.size() - 2))) {
    throw Error(ErrorKind::kMalformedToken, "'" + std::string(tok) + "' is not of the form <O|U><label><+|->");
  }
  return RawPassage{std::string(tok.substr(1, tok.size() - 2)), tok.front() == 'O' ? Role::kOver : Role::kUnder,
                    tok.back() == '+' ? Sign::kPlus : Sign::kMinus};
}

inline RawCode tokenize_gauss_code(std::string_view text) {
  RawCode raw;
  for (auto tok : detail::split_ws(text)) raw.push_back(parse_passage_token(tok));
  return raw;
}

enum class DiagnosticKind { kLabelRoleMismatch, kSignMismatch };

struct Diagnostic {
  DiagnosticKind kind;
  std::string label;
  std::string message;

  friend bool operator==(const Diagnostic& a, const Diagnostic& b) { return a.kind == b.kind && a.label == b.label; }
};

/// One diagnostic per violated invariant, in order of first appearance of the label.
inline std::vector<Diagnostic> validate(const RawCode& raw) {
  struct Seen {
    int overs = 0;
    int unders = 0;
    bool sign_mismatch = false;
    Sign sign = Sign::kPlus;
    std::size_t order = 0;
  };
  std::unordered_map<std::string, Seen> seen;
  std::vector<std::string> order;
  for (const auto& p : raw) {
    auto [it, fresh] = seen.try_emplace(p.label);
    if (fresh) {
      it->second.sign = p.sign;
      order.push_back(p.label);
    } else if (it->second.sign != p.sign) {
      it->second.sign_mismatch = true;
    }
    (p.role == Role::kOver ? it->second.overs : it->second.unders)++;
  }
  std::vector<Diagnostic> out;
  for (const auto& label : order) {
    const Seen& s = seen.at(label);
    if (s.overs != 1 || s.unders != 1) {
      out.push_back({DiagnosticKind::kLabelRoleMismatch, label,
                     "label " + label + " has " + std::to_string(s.overs) + " over and " + std::to_string(s.unders) +
                         " under passages (need exactly one of each)"});
    }
    if (s.sign_mismatch) {
      out.push_back({DiagnosticKind::kSignMismatch, label, "the two passages of label " + label + " disagree in sign"});
    }
  }
  return out;
}

/// A passage with its label resolved to a dense crossing index.
struct Passage {
  int crossing;
  Role role;
  Sign sign;

  friend bool operator==(const Passage&, const Passage&) = default;
};

/// A validated Gauss code. Crossings are numbered 0..c-1 in order of first
/// appearance; the original label strings are kept for output.
class GaussCode {
 public:
  GaussCode() = default;

  static GaussCode from_raw(const RawCode& raw) {
    auto diagnostics = validate(raw);
    if (!diagnostics.empty()) {
      const auto& d = diagnostics.front();
      throw Error(d.kind == DiagnosticKind::kSignMismatch ? ErrorKind::kSignMismatch : ErrorKind::kLabelRoleMismatch,
                  d.message);
    }
    GaussCode code;
    std::unordered_map<std::string, int> index;
    code.passages_.reserve(raw.size());
    for (std::size_t pos = 0; pos < raw.size(); ++pos) {
      const auto& p = raw[pos];
      auto [it, fresh] = index.try_emplace(p.label, static_cast<int>(code.labels_.size()));
      if (fresh) {
        code.labels_.push_back(p.label);
        code.positions_.push_back({-1, -1});
      }
      code.passages_.push_back({it->second, p.role, p.sign});
      code.positions_[it->second][p.role == Role::kOver ? 0 : 1] = static_cast<int>(pos);
    }
    return code;
  }

  std::span<const Passage> passages() const noexcept { return passages_; }
  const Passage& operator[](std::size_t pos) const { return passages_.at(pos); }
  std::size_t length() const noexcept { return passages_.size(); }
  int crossing_count() const noexcept { return static_cast<int>(labels_.size()); }
  bool empty() const noexcept { return passages_.empty(); }

  const std::string& label(int crossing) const { return labels_.at(static_cast<std::size_t>(crossing)); }
  std::span<const std::string> labels() const noexcept { return labels_; }

  bool has_label(std::string_view label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
  }

  int crossing_of(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw Error(ErrorKind::kUnknownLabel, "no crossing labelled '" + std::string(label) + "'");
    return static_cast<int>(it - labels_.begin());
  }

  int position(int crossing, Role role) const {
    return positions_.at(static_cast<std::size_t>(crossing))[role == Role::kOver ? 0 : 1];
  }
  int first_position(int crossing) const {
    return std::min(position(crossing, Role::kOver), position(crossing, Role::kUnder));
  }
  Sign sign(int crossing) const { return passages_[static_cast<std::size_t>(position(crossing, Role::kOver))].sign; }

  RawCode to_raw() const {
    RawCode raw;
    raw.reserve(passages_.size());
    for (const auto& p : passages_) raw.push_back({labels_[static_cast<std::size_t>(p.crossing)], p.role, p.sign});
    return raw;
  }

  friend bool operator==(const GaussCode& a, const GaussCode& b) {
    return a.passages_ == b.passages_ && a.labels_ == b.labels_;
  }

 private:
  std::vector<Passage> passages_;
  std::vector<std::string> labels_;
  std::vector<std::array<int, 2>> positions_;
};

inline std::string format_raw(const RawCode& raw) {
  std::string out;
  for (const auto& p : raw) {
    if (!out.empty()) out += ' ';
    out += role_char(p.role);
    out += p.label;
    out += sign_char(p.sign);
  }
  return out;
}

inline std::string format_gauss_code(const GaussCode& code) { return format_raw(code.to_raw()); }

inline GaussCode parse_gauss_code(std::string_view text) { return GaussCode::from_raw(tokenize_gauss_code(text)); }

inline GaussCode mirror(const GaussCode& code) {
  RawCode raw = code.to_raw();
  for (auto& p : raw) {
    p.role = opposite(p.role);
    p.sign = -p.sign;
  }
  return GaussCode::from_raw(raw);
}

/// Orientation reversal. Crossing signs survive reversing both strands.
inline GaussCode reverse(const GaussCode& code) {
  RawCode raw = code.to_raw();
  std::reverse(raw.begin(), raw.end());
  return GaussCode::from_raw(raw);
}

/// Moves the basepoint so that passage `start` comes first.
inline GaussCode rotate(const GaussCode& code, std::size_t start) {
  if (code.empty()) return code;
  RawCode raw = code.to_raw();
  std::rotate(raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(start % raw.size()), raw.end());
  return GaussCode::from_raw(raw);
}

/// Smallest positive integer label not yet used by `code` or `taken`.
inline std::string fresh_label(const GaussCode& code, std::span<const std::string> taken = {}) {
  for (int n = 1;; ++n) {
    std::string s = std::to_string(n);
    if (!code.has_label(s) && std::find(taken.begin(), taken.end(), s) == taken.end()) return s;
  }
}

/// Reidemeister I: inserts a kink on the edge entering passage `position`.
inline GaussCode apply_r1(const GaussCode& code, std::size_t position, Sign sign, Role first_role) {
  if (position > code.length()) {
    throw Error(ErrorKind::kIndexOutOfRange,
                "R1 position " + std::to_string(position) + " exceeds length " + std::to_string(code.length()));
  }
  RawCode raw = code.to_raw();
  std::string label = fresh_label(code);
  auto at = raw.begin() + static_cast<std::ptrdiff_t>(position);
  raw.insert(at, {RawPassage{label, first_role, sign}, RawPassage{label, opposite(first_role), sign}});
  return GaussCode::from_raw(raw);
}

/// Relative direction of the two strands through an inserted R2 bigon.
enum class R2Case : int {
  kAntiparallel = 1,  // under strand meets the crossings in reverse order
  kParallel = 2,      // under strand meets them in the same order
};

inline R2Case r2_case_from_int(int value) {
  if (value == 1) return R2Case::kAntiparallel;
  if (value == 2) return R2Case::kParallel;
  throw Error(ErrorKind::kUnsupportedOrientationCase, "R2 orientation case " + std::to_string(value));
}

/// Reidemeister II: pushes the edge at `position_a` over the edge at
/// `position_b`, creating crossings a (sign `first_sign`) and b (opposite sign).
/// Over passages `Oa Ob` go in at position_a, the under pair at position_b.
inline GaussCode apply_r2(const GaussCode& code, std::size_t position_a, std::size_t position_b, R2Case kase,
                          Sign first_sign = Sign::kPlus) {
  if (kase != R2Case::kAntiparallel && kase != R2Case::kParallel) {
    throw Error(ErrorKind::kUnsupportedOrientationCase, "R2 orientation case " + std::to_string(static_cast<int>(kase)));
  }
  if (position_a > position_b || position_b > code.length()) {
    throw Error(ErrorKind::kIndexOutOfRange, "R2 positions " + std::to_string(position_a) + ", " +
                                                 std::to_string(position_b) + " invalid for length " +
                                                 std::to_string(code.length()));
  }
  std::string a = fresh_label(code);
  std::array<std::string, 1> taken{a};
  std::string b = fresh_label(code, taken);
  RawPassage under_a{a, Role::kUnder, first_sign};
  RawPassage under_b{b, Role::kUnder, -first_sign};
  std::vector<RawPassage> over{{a, Role::kOver, first_sign}, {b, Role::kOver, -first_sign}};
  std::vector<RawPassage> under = kase == R2Case::kAntiparallel ? std::vector<RawPassage>{under_b, under_a}
                                                                : std::vector<RawPassage>{under_a, under_b};
  RawCode raw = code.to_raw();
  // Insert the later block first so position_a stays valid.
  raw.insert(raw.begin() + static_cast<std::ptrdiff_t>(position_b), under.begin(), under.end());
  raw.insert(raw.begin() + static_cast<std::ptrdiff_t>(position_a), over.begin(), over.end());
  return GaussCode::from_raw(raw);
}

}  // namespace vassiliev
