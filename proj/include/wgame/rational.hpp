#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "wgame/error.hpp"

namespace wgame {

/// Exact arbitrary-precision rational. All probabilities and payoffs use it;
/// every comparison in the library is exact.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Parses "p/q" or "p" (optional leading '-'). Throws InvalidArgument.
inline Rational parse_rational(std::string_view text) {
  auto valid_integer = [](std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && s.front() == '-') s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!valid_integer(num, true) || !valid_integer(den, false))
    throw InvalidArgument("not a rational \"p/q\": \"" + std::string(text) + "\"");
  const Integer n{std::string(num)};
  const Integer d{std::string(den)};
  if (d == 0) throw InvalidArgument("zero denominator in \"" + std::string(text) + "\"");
  return Rational(n, d);
}

/// Canonical "p/q" form with q > 0 and gcd(p, q) = 1; integers keep the "/1".
inline std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

}  // namespace wgame
