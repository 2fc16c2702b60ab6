#pragma once

// Chebyshev polynomials normalised as T_n(z) = 2^n z^n + ..., the matching
// functions of the second kind H_n, and Pade polynomials of f1.

#include <cstddef>

#include "hpq/complex.hpp"
#include "hpq/polynomial.hpp"

namespace hpq::orthopoly {

/// T_0 = 1, T_n = 2 cos(n theta) at x = cos(theta) for n >= 1.
Polynomial chebyshev_T(int n, Precision bits = working_precision());

/// T_n(x) by the three-term recurrence (no coefficient expansion).
Real chebyshev_value(int n, const Real& x);
Complex chebyshev_value(int n, const Complex& z);

/// 2 z y_prev1 - y_prev2
Complex recurrence_apply(const Complex& y_prev2, const Complex& y_prev1, const Complex& z);
Polynomial recurrence_apply(const Polynomial& y_prev2, const Polynomial& y_prev1, const Complex& z_unused);

struct SecondKindValue {
  int n = 0;
  Complex z;
  Complex value;
};

/// -(1/pi) int_E T_n(x) / ((x - z) sqrt(1 - x^2)) dx with an N-point
/// Gauss-Chebyshev rule. Requires nodes >= n + 8.
Complex H_quadrature(int n, const Complex& z, size_t nodes);

struct AdaptiveValue {
  Complex value;
  size_t nodes = 0;
  bool converged = false;
};

/// H_quadrature with node doubling until two levels agree to `rel_tol`.
AdaptiveValue H_quadrature_adaptive(int n, const Complex& z, const Real& rel_tol, size_t max_nodes = 1 << 14);

/// kappa_n in H_n = kappa_n phi' / phi^(n+1), calibrated against the
/// quadrature at z = 2 (cached per n and precision).
Real kappa(int n, Precision bits);

SecondKindValue H_closed(int n, const Complex& z);

struct PadeF1 {
  Polynomial p0;
  Polynomial p1;
  int residual_order = 0;
};

/// Pade polynomials of f1 from the moment null space; P_{n,1} is scaled to
/// leading coefficient 2^n. Raises PrecisionError when the order check fails.
PadeF1 pade_f1(int n, Precision bits = working_precision());

}  // namespace hpq::orthopoly
