#pragma once

#include <vector>

#include "hpq/complex.hpp"

namespace hpq {

/// Dense polynomial with big-float complex coefficients, ascending powers.
/// Trailing zero coefficients are trimmed; the zero polynomial has no
/// coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coeffs);
  static Polynomial from_real(const std::vector<Real>& coeffs);
  static Polynomial constant(const Complex& c);
  /// z - root
  static Polynomial linear(const Complex& root);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_real() const noexcept;
  Precision precision() const noexcept;

  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
  /// Coefficient of z^k; zero outside [0, degree].
  Complex coeff(int k) const;
  const Complex& leading() const { return coeffs_.back(); }
  /// Real parts of the coefficients.
  std::vector<Real> real_coeffs() const;

  Complex operator()(const Complex& z) const;
  Real evaluate_real(const Real& x) const;
  Polynomial derivative() const;

  /// Scaled copy with unit leading coefficient.
  Polynomial monic() const;
  /// max |coeff| (modulus).
  Real max_norm() const;

  Polynomial& operator*=(const Complex& c);
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  void trim();
  std::vector<Complex> coeffs_;
};

}  // namespace hpq
