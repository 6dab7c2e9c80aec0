#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <stdexcept>
#include <string>

namespace apapr {

/// Exact rational scalar. Everything in this library is computed over
/// these; no floating point appears anywhere in the core. The backend
/// keeps values in lowest terms with a positive denominator. Expression
/// templates are off so arithmetic has plain value semantics.
using Rational =
    boost::multiprecision::number<boost::multiprecision::backends::rational_adaptor<
                                      boost::multiprecision::backends::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;
using Integer =
    boost::multiprecision::number<boost::multiprecision::backends::cpp_int_backend<>,
                                  boost::multiprecision::et_off>;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Integer parse_integer(const std::string& text) {
  if (text.empty()) throw ParseError("empty integer");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw ParseError("sign without digits: '" + text + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw ParseError("not an exact integer: '" + text + "'");
  }
  return Integer(text);
}

}  // namespace detail

/// Parses "p" or "p/q". Decimal notation is refused: exactness must
/// survive serialization.
inline Rational parse_rational(const std::string& text) {
  std::string s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw ParseError("empty scalar");
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(detail::parse_integer(s));
  Integer num = detail::parse_integer(s.substr(0, slash));
  Integer den = detail::parse_integer(s.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator: '" + text + "'");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

/// Formats as "p" when the denominator is 1, otherwise "p/q".
inline std::string to_string(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace apapr
