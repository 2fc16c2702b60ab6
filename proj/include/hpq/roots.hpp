#pragma once

// Zeros of polynomials and the discrete measures they carry.

#include <vector>

#include "hpq/complex.hpp"
#include "hpq/errors.hpp"
#include "hpq/polynomial.hpp"

namespace hpq::roots {

/// Positive measure sum_i weights[i] * delta(nodes[i]).
struct DiscreteMeasure {
  std::vector<Complex> nodes;
  std::vector<Real> weights;

  Real mass() const;
  /// Throws NormalizationError on negative weights or length mismatch.
  void validate() const;
  DiscreteMeasure scaled(const Real& factor) const;
  /// Nodes sorted by (real, imaginary) part; weights follow.
  DiscreteMeasure sorted() const;
};

/// Aberth iteration that hit its cap; carries the last iterate.
class RootNonConvergence : public RootFindingError {
 public:
  RootNonConvergence(const std::string& what, std::vector<Complex> partial, std::vector<bool> settled)
      : RootFindingError(what), partial_roots(std::move(partial)), settled(std::move(settled)) {}
  std::vector<Complex> partial_roots;
  /// settled[i]: root i met the residual bound.
  std::vector<bool> settled;
};

struct AberthOptions {
  int max_iterations = 200;
};

/// All deg(p) roots (with repetition) by simultaneous Aberth iteration at the
/// precision of p's coefficients. Each root satisfies
/// |p(z)| <= 2^(-prec/2) * sum_k |a_k| |z|^k.
std::vector<Complex> aberth(const Polynomial& p, const AberthOptions& opts = {});

/// Number of distinct real roots in (a, b] by a Sturm sequence. p real.
size_t sturm_count(const Polynomial& p, const Real& a, const Real& b);

/// Real roots of a real polynomial whose roots are all real and simple, by
/// Sturm isolation and bisection. Throws RootFindingError otherwise.
std::vector<Real> real_roots_sturm(const Polynomial& p);

/// Counting measure of the zeros of p: roots closer than 2^(-prec/8) of their
/// modulus are merged into one node of summed weight.
DiscreteMeasure zero_measure(const Polynomial& p, const AberthOptions& opts = {});

/// Hausdorff distance between two finite point sets (double precision result).
double hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b);

}  // namespace hpq::roots
