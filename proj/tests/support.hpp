#pragma once

#include <doctest.h>

#include "hpq/complex.hpp"

namespace hpq::test {

inline double rel(const Real& a, const Real& b) {
  const Real d = abs(a - b);
  const Real s = max(abs(a), abs(b));
  return s.is_zero() ? d.to_double() : (d / s).to_double();
}

inline double absdiff(const Complex& a, const Complex& b) { return abs(a - b).to_double(); }

/// log2 of |x|, or a very negative number for zero.
inline double lg(const Real& x) { return x.is_zero() ? -1e9 : static_cast<double>(x.exponent()); }

}  // namespace hpq::test
