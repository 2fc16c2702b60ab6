#pragma once

// Type-I and type-II Hermite-Pade polynomials for [1, f1, f2], the
// orthogonality routes to Q_{n,2}, and verification of the orthogonality
// relations the construction implies.

#include <optional>
#include <vector>

#include "hpq/nikishin.hpp"
#include "hpq/polynomial.hpp"

namespace hpq::hp {

/// Q0 + Q1 f1 + Q2 f2 = O(z^(-2n-2)); Q2 is monic whenever it is nonzero.
struct HPTriple {
  int n = 0;
  Polynomial q0, q1, q2;
  int residual_order = 0;
  size_t kernel_dim = 0;
  Precision precision = 0;
};

/// Orders of Q f_j - P_j at infinity for a type-II denominator Q.
struct TypeII {
  int n = 0;
  Polynomial q;
  int order_f1 = 0;
  int order_f2 = 0;
};

enum class Route { e_route, f_route };

/// Type-I polynomials by a null vector of the (2n+1) x (2n+2) moment system
/// on (Q1, Q2); Q0 is the negated polynomial part of Q1 f1 + Q2 f2.
/// `bits` == 0 selects hp_default_precision(n).
HPTriple hp_type1(const NikishinSystem& sys, int n, Precision bits = 0);

/// Order of R_n at infinity: 1 + number of leading Laurent coefficients
/// (z^-1, z^-2, ...) below 10^(-p/4) of their scale, scanned through z^-(2n+4).
/// Returns 0 if the polynomial part does not vanish.
int residual_order(const HPTriple& t, const std::vector<Complex>& c1, const std::vector<Complex>& c2);

/// Q_{n,2} from its n orthogonality conditions alone: against T_{n+j} h on E
/// (e_route) or against H_{n+j} d sigma on F (f_route). Nikishin mode only.
Polynomial q2_via_orthogonality(const Markov& markov, int n, Route route);
Polynomial q2_via_orthogonality(const NikishinSystem& sys, int n, Route route, Precision bits = 0);

/// Common denominator of degree <= 2n with Q f_j - P_j = O(z^(-n-1)).
TypeII hp_type2(const NikishinSystem& sys, int n, Precision bits = 0);

enum class Relation { remainder_contour, contour_chebyshev, cut_chebyshev, second_kind, second_kind_weighted };

struct OrthogonalityParams {
  int n = 0;
  /// second_kind_weighted: N with 1 <= N <= n; relations are checked for every N' <= N using
  /// the first N'-1 points.
  int big_n = 1;
  std::vector<Complex> points;
};

struct OrthogonalityReport {
  Relation relation = Relation::second_kind;
  /// Largest |integral| / integral of |integrand| over the index range.
  Real max_relative;
  std::vector<Real> relative;  // per index
};

/// Orthogonality check for Q2 (all relations except remainder_contour) or the whole
/// triple (remainder_contour uses Q1 as well). Contour relations use an axis-aligned
/// rectangle around E at half the E-F distance.
OrthogonalityReport verify_orthogonality(const Markov& markov, const Polynomial& q2, Relation relation,
                                         const OrthogonalityParams& params);
OrthogonalityReport verify_orthogonality(const Markov& markov, const HPTriple& triple, Relation relation,
                                         const OrthogonalityParams& params);

}  // namespace hpq::hp
