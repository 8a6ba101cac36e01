#include "markcode/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace mc {

std::string to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? (unsigned __int128)(-(v + 1)) + 1 : (unsigned __int128)v;
  std::string s;
  while (u) {
    s.push_back(char('0' + int(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  return {s.rbegin(), s.rend()};
}

static i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational::Rational(i128 n, i128 d) : num(n), den(d) {
  if (den == 0) throw std::domain_error("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational Rational::from_double(double v) {
  if (!std::isfinite(v)) throw std::domain_error("non-finite value");
  int e = 0;
  double m = std::frexp(v, &e);  // v = m * 2^e, 0.5 <= |m| < 1
  i128 mant = (i128)std::ldexp(m, 53);
  e -= 53;
  if (e >= 0) {
    if (e > 70) throw std::overflow_error("value too large for Rational");
    return Rational(mant << e, 1);
  }
  while (e < -120 && mant % 2 == 0) {
    mant /= 2;
    ++e;
  }
  if (e < -120) throw std::overflow_error("value too small for Rational");
  return Rational(mant, (i128)1 << (-e));
}

static i128 parse_int(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty integer");
  bool neg = false;
  size_t i = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw std::invalid_argument("bad integer");
  i128 v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad integer: " + std::string(s));
    v = v * 10 + (s[i] - '0');
  }
  return neg ? -v : v;
}

Rational Rational::parse(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  auto slash = s.find('/');
  if (slash != std::string_view::npos)
    return Rational(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
  auto dot = s.find('.');
  if (dot == std::string_view::npos) return Rational(parse_int(s), 1);
  std::string digits(s.substr(0, dot));
  std::string frac(s.substr(dot + 1));
  i128 den = 1;
  for (size_t i = 0; i < frac.size(); ++i) den *= 10;
  bool neg = !digits.empty() && digits[0] == '-';
  i128 ip = (digits.empty() || digits == "-" || digits == "+") ? 0 : parse_int(digits);
  i128 fp = frac.empty() ? 0 : parse_int(frac);
  i128 n = (ip < 0 ? -ip : ip) * den + fp;
  return Rational(neg ? -n : n, den);
}

double Rational::to_double() const { return (double)num / (double)den; }

std::string Rational::str() const {
  if (den == 1) return to_string(num);
  return to_string(num) + "/" + to_string(den);
}

i128 Rational::floor() const {
  i128 q = num / den;
  if ((num % den != 0) && (num < 0)) --q;
  return q;
}

Rational Rational::operator+(const Rational& o) const {
  i128 g = gcd128(den, o.den);
  return Rational(num * (o.den / g) + o.num * (den / g), den / g * o.den);
}
Rational Rational::operator-(const Rational& o) const { return *this + Rational(-o.num, o.den); }
Rational Rational::operator*(const Rational& o) const {
  i128 g1 = gcd128(num, o.den), g2 = gcd128(o.num, den);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return Rational((num / g1) * (o.num / g2), (den / g2) * (o.den / g1));
}
Rational Rational::operator/(const Rational& o) const {
  if (o.num == 0) throw std::domain_error("division by zero");
  return *this * Rational(o.den, o.num);
}
bool Rational::operator<(const Rational& o) const {
  // den > 0 on both sides; cross-multiplication stays exact while parts fit 63 bits
  return num * o.den < o.num * den;
}

i128 floor_mul(const Rational& q, i128 L) { return (q * Rational(L)).floor(); }

}  // namespace mc
