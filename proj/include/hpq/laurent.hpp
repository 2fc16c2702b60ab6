#pragma once

// Products of polynomials with functions given by their Laurent series at
// infinity, f(z) = sum_k c_k z^(-k-1).

#include <vector>

#include "hpq/complex.hpp"
#include "hpq/polynomial.hpp"

namespace hpq::laurent {

/// Coefficient of z^(-m-1) in q(z) f(z): sum_j q_j c_(j+m).
Complex negative_coeff(const Polynomial& q, const std::vector<Complex>& c, size_t m);

/// sum_j |q_j c_(j+m)|, the magnitude scale of negative_coeff.
Real negative_coeff_scale(const Polynomial& q, const std::vector<Complex>& c, size_t m);

/// Polynomial part of q(z) f(z): coefficient of z^j is sum_(i>j) q_i c_(i-j-1).
Polynomial polynomial_part(const Polynomial& q, const std::vector<Complex>& c);

template <typename S>
std::vector<Complex> to_complex(const std::vector<S>& v) {
  std::vector<Complex> out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

}  // namespace hpq::laurent
