#include "hpq/real.hpp"

#include <algorithm>
#include <compare>
#include <ostream>
#include <stdexcept>

namespace hpq {

namespace {

thread_local Precision g_working_precision = kDefaultPrecision;

Precision widest(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

Precision working_precision() noexcept { return g_working_precision; }

void set_working_precision(Precision bits) {
  if (bits < kMinPrecision) throw std::invalid_argument("precision below 64 bits");
  g_working_precision = bits;
}

PrecisionGuard::PrecisionGuard(Precision bits) : saved_(g_working_precision) { set_working_precision(bits); }
PrecisionGuard::~PrecisionGuard() { g_working_precision = saved_; }

Real::Real(Precision bits, double x) {
  mpfr_init2(v_, bits);
  mpfr_set_d(v_, x, MPFR_RNDN);
}

Real::Real(Precision bits, long x) {
  mpfr_init2(v_, bits);
  mpfr_set_si(v_, x, MPFR_RNDN);
}

Real::Real(Precision bits, const Real& x) {
  mpfr_init2(v_, bits);
  mpfr_set(v_, x.v_, MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  // Steal the limbs; leave `other` as a valid 2-bit zero.
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    if (precision() != other.precision()) mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::parse(std::string_view text, Precision bits) {
  Real r(bits, 0L);
  std::string s(text);
  char* end = nullptr;
  mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
  if (end == s.c_str() || *end != '\0') throw std::invalid_argument("not a number: " + s);
  return r;
}

Real Real::pi(Precision bits) {
  Real r(bits, 0L);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Real Real::log2(Precision bits) {
  Real r(bits, 0L);
  mpfr_const_log2(r.v_, MPFR_RNDN);
  return r;
}

Real Real::exp2i(long e, Precision bits) {
  Real r(bits, 1L);
  mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
  return r;
}

std::string Real::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (digits <= 0) digits = static_cast<int>(mpfr_get_str_ndigits(10, precision()));
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

long Real::exponent() const noexcept {
  if (mpfr_zero_p(v_)) return -(1L << 40);
  return mpfr_get_exp(v_);
}

Real& Real::operator+=(const Real& b) {
  if (b.precision() > precision()) mpfr_prec_round(v_, b.precision(), MPFR_RNDN);
  mpfr_add(v_, v_, b.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& b) {
  if (b.precision() > precision()) mpfr_prec_round(v_, b.precision(), MPFR_RNDN);
  mpfr_sub(v_, v_, b.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& b) {
  if (b.precision() > precision()) mpfr_prec_round(v_, b.precision(), MPFR_RNDN);
  mpfr_mul(v_, v_, b.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& b) {
  if (b.precision() > precision()) mpfr_prec_round(v_, b.precision(), MPFR_RNDN);
  mpfr_div(v_, v_, b.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(long b) {
  mpfr_mul_si(v_, v_, b, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(long b) {
  mpfr_div_si(v_, v_, b, MPFR_RNDN);
  return *this;
}

Real& Real::sub_mul(const Real& a, const Real& b) {
  // fms computes a*b - this with a single rounding.
  mpfr_fms(v_, a.v_, b.v_, v_, MPFR_RNDN);
  mpfr_neg(v_, v_, MPFR_RNDN);
  return *this;
}

Real& Real::add_mul(const Real& a, const Real& b) {
  mpfr_fma(v_, a.v_, b.v_, v_, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

Real operator+(const Real& a, const Real& b) {
  Real r(widest(a, b), 0L);
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
Real operator-(const Real& a, const Real& b) {
  Real r(widest(a, b), 0L);
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, const Real& b) {
  Real r(widest(a, b), 0L);
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
Real operator/(const Real& a, const Real& b) {
  Real r(widest(a, b), 0L);
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.v_, b.v_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

namespace {

template <typename Fn>
Real unary(const Real& x, Fn fn) {
  Real r(x.precision(), 0L);
  fn(r.get(), x.get(), MPFR_RNDN);
  return r;
}

}  // namespace

Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }

Real atan2(const Real& y, const Real& x) {
  Real r(widest(y, x), 0L);
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

Real hypot(const Real& a, const Real& b) {
  Real r(widest(a, b), 0L);
  mpfr_hypot(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, long e) {
  Real r(x.precision(), 0L);
  mpfr_pow_si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

Real ldexp(const Real& x, long e) {
  Real r(x);
  mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }

std::ostream& operator<<(std::ostream& os, const Real& x) {
  auto digits = os.precision() > 0 ? static_cast<int>(os.precision()) : 17;
  return os << x.to_string(digits);
}

}  // namespace hpq
