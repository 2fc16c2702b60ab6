#include "hpq/complex.hpp"

#include <ostream>

namespace hpq {

Complex& Complex::operator+=(const Complex& b) {
  re += b.re;
  im += b.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& b) {
  re -= b.re;
  im -= b.im;
  return *this;
}

Complex& Complex::operator*=(const Complex& b) {
  *this = *this * b;
  return *this;
}

Complex& Complex::operator/=(const Complex& b) {
  *this = *this / b;
  return *this;
}

Complex& Complex::operator*=(const Real& b) {
  re *= b;
  im *= b;
  return *this;
}

Complex& Complex::operator/=(const Real& b) {
  re /= b;
  im /= b;
  return *this;
}

Complex& Complex::sub_mul(const Complex& a, const Complex& b) {
  re.sub_mul(a.re, b.re);
  re.add_mul(a.im, b.im);
  im.sub_mul(a.re, b.im);
  im.sub_mul(a.im, b.re);
  return *this;
}

Complex& Complex::add_mul(const Complex& a, const Complex& b) {
  re.add_mul(a.re, b.re);
  re.sub_mul(a.im, b.im);
  im.add_mul(a.re, b.im);
  im.add_mul(a.im, b.re);
  return *this;
}

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }

Complex operator*(const Complex& a, const Complex& b) {
  Real re = a.re * b.re;
  re.sub_mul(a.im, b.im);
  Real im = a.re * b.im;
  im.add_mul(a.im, b.re);
  return {std::move(re), std::move(im)};
}

Complex operator/(const Complex& a, const Complex& b) {
  // Smith's algorithm keeps intermediate magnitudes bounded.
  if (abs(b.re) >= abs(b.im)) {
    Real r = b.im / b.re;
    Real den = b.re + r * b.im;
    return {(a.re + a.im * r) / den, (a.im - a.re * r) / den};
  }
  Real r = b.re / b.im;
  Real den = b.im + r * b.re;
  return {(a.re * r + a.im) / den, (a.im * r - a.re) / den};
}

Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }
Complex operator*(const Real& b, const Complex& a) { return {a.re * b, a.im * b}; }
Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }

Complex conj(const Complex& z) { return {z.re, -z.im}; }

Real norm(const Complex& z) {
  Real r = z.re * z.re;
  r.add_mul(z.im, z.im);
  return r;
}

Real abs(const Complex& z) { return hypot(z.re, z.im); }
Real arg(const Complex& z) { return atan2(z.im, z.re); }

Complex sqrt(const Complex& z) {
  const Precision p = z.precision();
  if (z.is_zero()) return {Real::zero(p), Real::zero(p)};
  // t = sqrt((|z| + |re|) / 2); avoids cancellation in either half-plane.
  Real t = sqrt(ldexp(abs(z) + abs(z.re), -1));
  if (z.re.sign() >= 0) return {t, ldexp(z.im / t, -1)};
  Real u = ldexp(abs(z.im) / t, -1);
  if (z.im.sign() < 0) return {u, -t};
  return {u, t};
}

Complex log(const Complex& z) { return {log(abs(z)), arg(z)}; }

Complex exp(const Complex& z) {
  Real m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

Complex pow(const Complex& z, long e) {
  if (e < 0) return inverse(pow(z, -e));
  Complex result(Real(z.precision(), 1L));
  Complex base = z;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Complex inverse(const Complex& z) { return Complex(Real(z.precision(), 1L)) / z; }

Real manhattan(const Complex& z) { return abs(z.re) + abs(z.im); }

std::ostream& operator<<(std::ostream& os, const Complex& z) {
  return os << '(' << z.re << ", " << z.im << ')';
}

}  // namespace hpq
