#pragma once
#include <cstdint>
#include <string>
#include <string_view>

namespace mc {

using i128 = __int128;

std::string to_string(i128 v);

// Exact fraction with 128-bit parts. Budgets like floor((1 - a/2) L) are
// taken from this type so layouts never depend on floating rounding.
struct Rational {
  i128 num = 0;
  i128 den = 1;

  Rational() = default;
  Rational(i128 n, i128 d = 1);

  static Rational from_double(double v);  // exact: every double is dyadic
  static Rational parse(std::string_view s);  // "p/q", "p" or a decimal

  double to_double() const;
  std::string str() const;  // "p/q" (or "p" when q == 1)

  i128 floor() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return !(*this < o); }
};

// floor(L * q) for integer L
i128 floor_mul(const Rational& q, i128 L);

}  // namespace mc
