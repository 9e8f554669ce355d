#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace jacstab {

/// Exact rational used for every threshold and class coefficient.
using Rational = boost::rational<std::int64_t>;

/// Normalized "p/q" form; integers print without a denominator ("-1", "0").
std::string to_string(const Rational& r);

/// Parses "p", "-p" or "p/q". Throws Error(PARSE) on malformed input.
Rational parse_rational(std::string_view text);

std::int64_t floor(const Rational& r);
std::int64_t ceil(const Rational& r);

}  // namespace jacstab

// Exact equality against plain integers; boost's mixed templates recurse
// under C++20 rewritten comparisons.
namespace boost {

inline bool operator==(const rational<std::int64_t>& a, std::int64_t b) {
  return a.denominator() == 1 && a.numerator() == b;
}
inline bool operator==(const rational<std::int64_t>& a, int b) { return a == std::int64_t{b}; }
inline bool operator==(std::int64_t b, const rational<std::int64_t>& a) { return a == b; }
inline bool operator==(int b, const rational<std::int64_t>& a) { return a == std::int64_t{b}; }
inline bool operator!=(const rational<std::int64_t>& a, std::int64_t b) { return !(a == b); }
inline bool operator!=(const rational<std::int64_t>& a, int b) { return !(a == b); }
inline bool operator!=(std::int64_t b, const rational<std::int64_t>& a) { return !(a == b); }
inline bool operator!=(int b, const rational<std::int64_t>& a) { return !(a == b); }

}  // namespace boost
