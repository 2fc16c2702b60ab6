#pragma once

// Arbitrary-precision real scalar: a value-semantic RAII wrapper over mpfr_t.
//
// Every Real carries its own binary precision. Freshly constructed values use
// the calling thread's working precision (see PrecisionGuard); arithmetic
// results take the larger precision of their operands.

#include <mpfr.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <type_traits>

namespace hpq {

using Precision = mpfr_prec_t;

inline constexpr Precision kDefaultPrecision = 256;
inline constexpr Precision kMinPrecision = 64;

/// Working precision used for newly constructed values on this thread.
Precision working_precision() noexcept;
void set_working_precision(Precision bits);

/// Scoped override of the thread's working precision.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(Precision bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  Precision saved_;
};

class Real {
 public:
  Real() : Real(working_precision(), 0L) {}
  Real(double x) : Real(working_precision(), x) {}  // NOLINT(google-explicit-constructor)
  template <std::integral I>
  Real(I x) : Real(working_precision(), static_cast<long>(x)) {}  // NOLINT

  Real(Precision bits, double x);
  Real(Precision bits, long x);
  Real(Precision bits, const Real& x);  // rounds x to `bits`

  static Real zero(Precision bits) { return Real(bits, 0L); }
  /// Parses a decimal (or "inf"/"nan") string; throws std::invalid_argument.
  static Real parse(std::string_view text, Precision bits = working_precision());
  static Real pi(Precision bits = working_precision());
  static Real log2(Precision bits = working_precision());
  /// 2^e at the given precision.
  static Real exp2i(long e, Precision bits = working_precision());

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  Precision precision() const noexcept { return mpfr_get_prec(v_); }

  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_ptr get() noexcept { return v_; }

  double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const noexcept { return mpfr_get_si(v_, MPFR_RNDN); }
  /// Scientific decimal with `digits` significant digits (0: enough to round-trip).
  std::string to_string(int digits = 0) const;

  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
  int sign() const noexcept { return mpfr_sgn(v_); }
  /// Binary exponent e with |x| in [2^(e-1), 2^e); very negative for zero.
  long exponent() const noexcept;

  Real& operator+=(const Real& b);
  Real& operator-=(const Real& b);
  Real& operator*=(const Real& b);
  Real& operator/=(const Real& b);
  Real& operator*=(long b);
  Real& operator/=(long b);

  /// this -= a * b without temporaries.
  Real& sub_mul(const Real& a, const Real& b);
  /// this += a * b without temporaries.
  Real& add_mul(const Real& a, const Real& b);

  Real operator-() const;

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);

  friend void swap(Real& a, Real& b) noexcept { mpfr_swap(a.v_, b.v_); }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend auto operator<=>(const Real& a, const Real& b) -> std::partial_ordering;

 private:
  mpfr_t v_;
};

template <std::integral I>
Real operator*(const Real& a, I b) {
  Real r(a);
  r *= static_cast<long>(b);
  return r;
}
template <std::integral I>
Real operator*(I b, const Real& a) {
  return a * b;
}
template <std::integral I>
Real operator/(const Real& a, I b) {
  Real r(a);
  r /= static_cast<long>(b);
  return r;
}
template <std::integral I>
Real operator+(const Real& a, I b) {
  return a + Real(a.precision(), static_cast<long>(b));
}
template <std::integral I>
Real operator+(I b, const Real& a) {
  return a + b;
}
template <std::integral I>
Real operator-(const Real& a, I b) {
  return a - Real(a.precision(), static_cast<long>(b));
}
template <std::integral I>
Real operator-(I b, const Real& a) {
  return Real(a.precision(), static_cast<long>(b)) - a;
}
template <std::floating_point F>
Real operator*(const Real& a, F b) {
  return a * Real(a.precision(), static_cast<double>(b));
}
template <std::floating_point F>
Real operator*(F b, const Real& a) {
  return a * b;
}
template <std::floating_point F>
Real operator+(const Real& a, F b) {
  return a + Real(a.precision(), static_cast<double>(b));
}
template <std::floating_point F>
Real operator+(F b, const Real& a) {
  return a + b;
}
template <std::floating_point F>
Real operator-(const Real& a, F b) {
  return a - Real(a.precision(), static_cast<double>(b));
}
template <std::floating_point F>
Real operator-(F b, const Real& a) {
  return Real(a.precision(), static_cast<double>(b)) - a;
}
template <std::floating_point F>
Real operator/(const Real& a, F b) {
  return a / Real(a.precision(), static_cast<double>(b));
}
template <std::floating_point F>
Real operator/(F b, const Real& a) {
  return Real(a.precision(), static_cast<double>(b)) / a;
}
template <typename T>
  requires std::is_arithmetic_v<T>
bool operator<(const Real& a, T b) {
  return a < Real(a.precision(), static_cast<double>(b));
}
template <typename T>
  requires std::is_arithmetic_v<T>
bool operator>(const Real& a, T b) {
  return a > Real(a.precision(), static_cast<double>(b));
}

Real abs(const Real& x);
Real sqrt(const Real& x);
Real log(const Real& x);
Real exp(const Real& x);
Real cos(const Real& x);
Real sin(const Real& x);
Real atan2(const Real& y, const Real& x);
Real hypot(const Real& a, const Real& b);
Real pow(const Real& x, long e);
/// x * 2^e, exact.
Real ldexp(const Real& x, long e);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);

std::ostream& operator<<(std::ostream& os, const Real& x);

}  // namespace hpq
