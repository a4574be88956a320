#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace efx {

// Exact rationals, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using BigInt = mpz_class;

// Accepts "7", "-3", "1/3", " 4/6 " (canonicalized to 2/3).
Rational parse_rational(std::string_view text);

// "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& r);
std::string to_string(const BigInt& z);

inline std::strong_ordering compare_values(const Rational& a, const Rational& b) {
  const int c = cmp(a, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_negative(const Rational& r) { return sgn(r) < 0; }

}  // namespace efx
