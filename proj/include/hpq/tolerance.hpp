#pragma once

#include "hpq/real.hpp"

namespace hpq {

/// 10^(-floor(p/4)): the "quarter precision in decimal digits" threshold used
/// by residual and orthogonality checks.
inline Real quarter_digits_tolerance(Precision p) {
  return pow(Real(p, 10L), -static_cast<long>(p / 4));
}

/// Default working precision for order-n Hermite-Pade constructions. The
/// moment system loses about 12n bits, so this keeps 256 + 4n in reserve.
Precision hp_default_precision(int n);

/// Precision at which constructed Q_{n,2} pass the 10^(-p/4) orthogonality
/// checks; the integrals cancel about 11n bits on top of the solve.
Precision hp_verify_precision(int n);

}  // namespace hpq
