#pragma once

#include <doctest.h>

#include "markcode/rational.hpp"

namespace doctest {
template <>
struct StringMaker<mc::Rational> {
  static String convert(const mc::Rational& r) { return r.str().c_str(); }
};
}  // namespace doctest
