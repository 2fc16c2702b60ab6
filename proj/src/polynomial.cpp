#include "hpq/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace hpq {

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::from_real(const std::vector<Real>& coeffs) {
  std::vector<Complex> c;
  c.reserve(coeffs.size());
  for (const auto& x : coeffs) c.emplace_back(x);
  return Polynomial(std::move(c));
}

Polynomial Polynomial::constant(const Complex& c) { return Polynomial({c}); }

Polynomial Polynomial::linear(const Complex& root) {
  return Polynomial({-root, Complex(Real(root.precision(), 1L))});
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

bool Polynomial::is_real() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Complex& c) { return c.is_real(); });
}

Precision Polynomial::precision() const noexcept {
  return coeffs_.empty() ? working_precision() : coeffs_.front().precision();
}

Complex Polynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return Complex(Real::zero(precision()));
  return coeffs_[static_cast<size_t>(k)];
}

std::vector<Real> Polynomial::real_coeffs() const {
  std::vector<Real> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.re);
  return out;
}

Complex Polynomial::operator()(const Complex& z) const {
  if (coeffs_.empty()) return Complex(Real::zero(z.precision()));
  Complex acc = coeffs_.back();
  for (int k = degree() - 1; k >= 0; --k) {
    acc = acc * z;
    acc += coeffs_[static_cast<size_t>(k)];
  }
  return acc;
}

Real Polynomial::evaluate_real(const Real& x) const {
  if (coeffs_.empty()) return Real::zero(x.precision());
  Real acc = coeffs_.back().re;
  for (int k = degree() - 1; k >= 0; --k) {
    acc *= x;
    acc += coeffs_[static_cast<size_t>(k)].re;
  }
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<Complex> d;
  for (int k = 1; k <= degree(); ++k) {
    Complex c = coeffs_[static_cast<size_t>(k)];
    c.re *= static_cast<long>(k);
    c.im *= static_cast<long>(k);
    d.push_back(std::move(c));
  }
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (coeffs_.empty()) throw std::domain_error("monic() of the zero polynomial");
  Polynomial out(*this);
  const Complex inv = inverse(leading());
  for (auto& c : out.coeffs_) c = c * inv;
  out.coeffs_.back() = Complex(Real(precision(), 1L));
  return out;
}

Real Polynomial::max_norm() const {
  Real m = Real::zero(precision());
  for (const auto& c : coeffs_) m = max(m, abs(c));
  return m;
}

Polynomial& Polynomial::operator*=(const Complex& c) {
  for (auto& x : coeffs_) x = x * c;
  trim();
  return *this;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  const int n = std::max(a.degree(), b.degree());
  std::vector<Complex> c;
  for (int k = 0; k <= n; ++k) c.push_back(a.coeff(k) + b.coeff(k));
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  const int n = std::max(a.degree(), b.degree());
  std::vector<Complex> c;
  for (int k = 0; k <= n; ++k) c.push_back(a.coeff(k) - b.coeff(k));
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const Precision p = std::max(a.precision(), b.precision());
  std::vector<Complex> c(static_cast<size_t>(a.degree() + b.degree() + 1), Complex(Real::zero(p)));
  for (int i = 0; i <= a.degree(); ++i) {
    for (int j = 0; j <= b.degree(); ++j) {
      c[static_cast<size_t>(i + j)].add_mul(a.coeffs_[static_cast<size_t>(i)], b.coeffs_[static_cast<size_t>(j)]);
    }
  }
  return Polynomial(std::move(c));
}

}  // namespace hpq
