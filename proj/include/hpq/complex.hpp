#pragma once

#include <complex>
#include <iosfwd>

#include "hpq/real.hpp"

namespace hpq {

/// Arbitrary-precision complex number; both parts share one precision.
struct Complex {
  Real re;
  Real im;

  Complex() = default;
  Complex(Real r) : re(std::move(r)), im(Real::zero(re.precision())) {}  // NOLINT
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(double r) : re(r), im(0.0) {}  // NOLINT
  template <std::integral I>
  Complex(I r) : re(r), im(0L) {}  // NOLINT
  Complex(double r, double i) : re(r), im(i) {}
  Complex(Precision bits, double r, double i) : re(bits, r), im(bits, i) {}
  explicit Complex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  Precision precision() const noexcept { return re.precision(); }
  std::complex<double> to_std() const { return {re.to_double(), im.to_double()}; }
  bool is_zero() const noexcept { return re.is_zero() && im.is_zero(); }
  bool is_real() const noexcept { return im.is_zero(); }

  Complex& operator+=(const Complex& b);
  Complex& operator-=(const Complex& b);
  Complex& operator*=(const Complex& b);
  Complex& operator/=(const Complex& b);
  Complex& operator*=(const Real& b);
  Complex& operator/=(const Real& b);

  /// this -= a * b, reusing internal storage.
  Complex& sub_mul(const Complex& a, const Complex& b);
  Complex& add_mul(const Complex& a, const Complex& b);

  Complex operator-() const { return {-re, -im}; }

  friend void swap(Complex& a, Complex& b) noexcept {
    swap(a.re, b.re);
    swap(a.im, b.im);
  }

  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Real& b);
Complex operator*(const Real& b, const Complex& a);
Complex operator/(const Complex& a, const Real& b);

Complex conj(const Complex& z);
/// |z|^2
Real norm(const Complex& z);
Real abs(const Complex& z);
Real arg(const Complex& z);
/// Principal square root, cut along the negative real axis.
Complex sqrt(const Complex& z);
/// Principal logarithm.
Complex log(const Complex& z);
Complex exp(const Complex& z);
Complex pow(const Complex& z, long e);
Complex inverse(const Complex& z);

/// |re| + |im|; cheap magnitude for pivoting.
Real manhattan(const Complex& z);
inline Real manhattan(const Real& x) { return abs(x); }

std::ostream& operator<<(std::ostream& os, const Complex& z);

}  // namespace hpq
