#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "parikh/error.hpp"

namespace parikh {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

/// Largest integer not exceeding num/den; den must be nonzero.
inline Integer floor_div(const Integer& num, const Integer& den) {
  Integer q = num / den;  // truncates toward zero
  Integer r = num - q * den;
  if (r != 0 && ((r < 0) != (den < 0))) --q;
  return q;
}

inline Integer floor_of(const Rational& r) {
  return floor_div(boost::multiprecision::numerator(r),
                   boost::multiprecision::denominator(r));
}

/// Parses an optionally signed decimal integer with no surrounding noise.
inline Integer parse_integer(std::string_view text) {
  std::size_t i = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) i = 1;
  if (i == text.size())
    throw malformed_input("not a decimal integer: '" + std::string(text) + "'");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(text[j])))
      throw malformed_input("not a decimal integer: '" + std::string(text) + "'");
  }
  Integer value(std::string(text.substr(i)));
  return text[0] == '-' ? Integer(-value) : value;
}

inline std::string to_string(const Integer& x) { return x.str(); }

inline std::string to_string(const Rational& x) {
  if (boost::multiprecision::denominator(x) == 1)
    return boost::multiprecision::numerator(x).str();
  return boost::multiprecision::numerator(x).str() + "/" +
         boost::multiprecision::denominator(x).str();
}

}  // namespace parikh
