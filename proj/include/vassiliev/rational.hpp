#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "vassiliev/error.hpp"

namespace vassiliev {

// Arbitrary precision, so exact sums never overflow. Expression templates are
// off so `auto` locals hold values.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

/// "p/q" in lowest terms, or "n" for integers.
inline std::string format_rational(const Rational& r) { return r.str(); }

inline Rational parse_rational(std::string_view text) {
  using boost::multiprecision::cpp_int;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  auto parse_int = [&](std::string_view s) {
    if (!s.empty() && s.front() == '-') s.remove_prefix(1);
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; })) {
      throw Error(ErrorKind::kParseError, "bad rational '" + std::string(text) + "'");
    }
  };
  auto slash = text.find('/');
  parse_int(text.substr(0, slash));
  if (slash == std::string_view::npos) return Rational(cpp_int(std::string(text)));
  parse_int(text.substr(slash + 1));
  const cpp_int den(std::string(text.substr(slash + 1)));
  if (den == 0) throw Error(ErrorKind::kParseError, "zero denominator in '" + std::string(text) + "'");
  return Rational(cpp_int(std::string(text.substr(0, slash))), den);
}

inline bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

/// Narrow an exact value that the math says must be an integer.
inline std::int64_t require_integer(const Rational& r, std::string_view what) {
  if (!is_integer(r)) {
    throw Error(ErrorKind::kNonIntegerResult, std::string(what) + " evaluated to " + format_rational(r));
  }
  return boost::multiprecision::numerator(r).convert_to<std::int64_t>();
}

}  // namespace vassiliev
