#pragma once

#include <memory>
#include <vector>

#include "hpq/real.hpp"

namespace hpq::quad {

struct Rule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
  size_t size() const noexcept { return nodes.size(); }
};

/// Gauss-Chebyshev rule for the weight 1/sqrt(1-x^2) on [-1, 1]:
/// x_i = cos((2i-1)pi/2N), w_i = pi/N. Exact through degree 2N-1.
/// Rules are cached per (N, precision) and immutable.
std::shared_ptr<const Rule> gauss_chebyshev(size_t n, Precision bits);

/// Gauss-Legendre rule on [-1, 1], computed by Newton iteration on P_N.
std::shared_ptr<const Rule> gauss_legendre(size_t n, Precision bits);

/// Gauss-Legendre rule affinely mapped to [a, b].
Rule gauss_legendre_on(const Real& a, const Real& b, size_t n);

/// Node count that resolves an analytic integrand on [a, b] to `bits`, given
/// the Bernstein ellipse parameter rho > 1 of its nearest singularity, plus
/// headroom for a polynomial factor of degree `degree`.
size_t nodes_for_accuracy(double rho, Precision bits, size_t degree = 0);

/// Bernstein parameter of the point x relative to the interval [a, b].
double bernstein_rho(double a, double b, double x);

}  // namespace hpq::quad
