#pragma once

// Gauss codes of singular knots: ordinary passages plus double-point visits
// written `X<label>a` (first visit) and `X<label>b` (second visit).

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "vassiliev/error.hpp"
#include "vassiliev/gauss_code.hpp"

namespace vassiliev {

enum class Visit : std::uint8_t { kFirst, kSecond };

struct RawDoublePoint {
  std::string label;
  Visit visit;

  friend bool operator==(const RawDoublePoint&, const RawDoublePoint&) = default;
};

using RawSingularPassage = std::variant<RawPassage, RawDoublePoint>;
using RawSingularCode = std::vector<RawSingularPassage>;

struct DoublePointPassage {
  int point;
  Visit visit;

  friend bool operator==(const DoublePointPassage&, const DoublePointPassage&) = default;
};

using SingularPassage = std::variant<Passage, DoublePointPassage>;

inline RawSingularPassage parse_singular_token(std::string_view tok) {
  if (!tok.empty() && tok.front() == 'X') {
    if (tok.size() < 3 || (tok.back() != 'a' && tok.back() != 'b') ||
        !detail::is_label(tok.substr(1, tok.size() - 2))) {
      throw Error(ErrorKind::kMalformedToken, "'" + std::string(tok) + "' is not of the form X<label><a|b>");
    }
    return RawDoublePoint{std::string(tok.substr(1, tok.size() - 2)), tok.back() == 'a' ? Visit::kFirst : Visit::kSecond};
  }
  return parse_passage_token(tok);
}

/// A validated singular code. Double points are numbered 0..d-1 in order of
/// their first visit, ordinary crossings as in GaussCode.
class SingularCode {
 public:
  SingularCode() = default;

  static SingularCode from_raw(const RawSingularCode& raw) {
    RawCode ordinary;
    std::unordered_map<std::string, int> point_index;
    SingularCode code;
    for (const auto& item : raw) {
      if (const auto* p = std::get_if<RawPassage>(&item)) {
        ordinary.push_back(*p);
        continue;
      }
      const auto& dp = std::get<RawDoublePoint>(item);
      auto [it, fresh] = point_index.try_emplace(dp.label, static_cast<int>(code.point_labels_.size()));
      if (fresh) {
        if (dp.visit != Visit::kFirst) {
          throw Error(ErrorKind::kLabelRoleMismatch, "double point " + dp.label + " visited 'b' before 'a'");
        }
        code.point_labels_.push_back(dp.label);
      } else if (dp.visit != Visit::kSecond || code.point_seen_twice(it->second)) {
        throw Error(ErrorKind::kLabelRoleMismatch, "double point " + dp.label + " needs exactly one 'a' and one 'b'");
      }
      code.point_visits_.resize(code.point_labels_.size(), 0);
      code.point_visits_[static_cast<std::size_t>(it->second)]++;
    }
    for (std::size_t i = 0; i < code.point_visits_.size(); ++i) {
      if (code.point_visits_[i] != 2) {
        throw Error(ErrorKind::kLabelRoleMismatch, "double point " + code.point_labels_[i] + " is missing its 'b' visit");
      }
    }
    code.ordinary_ = GaussCode::from_raw(ordinary);
    for (const auto& label : code.point_labels_) {
      if (code.ordinary_.has_label(label)) {
        throw Error(ErrorKind::kLabelRoleMismatch, "label " + label + " used for both a crossing and a double point");
      }
    }
    std::size_t next_ordinary = 0;
    for (const auto& item : raw) {
      if (std::holds_alternative<RawPassage>(item)) {
        code.passages_.push_back(code.ordinary_[next_ordinary++]);
      } else {
        const auto& dp = std::get<RawDoublePoint>(item);
        code.passages_.push_back(DoublePointPassage{point_index.at(dp.label), dp.visit});
      }
    }
    return code;
  }

  std::span<const SingularPassage> passages() const noexcept { return passages_; }
  std::size_t length() const noexcept { return passages_.size(); }
  int double_point_count() const noexcept { return static_cast<int>(point_labels_.size()); }
  int crossing_count() const noexcept { return ordinary_.crossing_count(); }
  const std::string& point_label(int point) const { return point_labels_.at(static_cast<std::size_t>(point)); }
  const std::string& crossing_label(int crossing) const { return ordinary_.label(crossing); }

  RawSingularCode to_raw() const {
    RawSingularCode raw;
    for (const auto& item : passages_) {
      if (const auto* p = std::get_if<Passage>(&item)) {
        raw.push_back(RawPassage{ordinary_.label(p->crossing), p->role, p->sign});
      } else {
        const auto& dp = std::get<DoublePointPassage>(item);
        raw.push_back(RawDoublePoint{point_label(dp.point), dp.visit});
      }
    }
    return raw;
  }

  /// Only meaningful when there are no double points.
  const GaussCode& ordinary_part() const noexcept { return ordinary_; }

 private:
  bool point_seen_twice(int point) const {
    return static_cast<std::size_t>(point) < point_visits_.size() && point_visits_[static_cast<std::size_t>(point)] >= 2;
  }

  std::vector<SingularPassage> passages_;
  std::vector<std::string> point_labels_;
  std::vector<int> point_visits_;
  GaussCode ordinary_;
};

inline SingularCode parse_singular_code(std::string_view text) {
  RawSingularCode raw;
  for (auto tok : detail::split_ws(text)) raw.push_back(parse_singular_token(tok));
  return SingularCode::from_raw(raw);
}

inline std::string format_singular_code(const SingularCode& code) {
  std::string out;
  for (const auto& item : code.to_raw()) {
    if (!out.empty()) out += ' ';
    if (const auto* p = std::get_if<RawPassage>(&item)) {
      out += role_char(p->role);
      out += p->label;
      out += sign_char(p->sign);
    } else {
      const auto& dp = std::get<RawDoublePoint>(item);
      out += 'X';
      out += dp.label;
      out += dp.visit == Visit::kFirst ? 'a' : 'b';
    }
  }
  return out;
}

}  // namespace vassiliev
