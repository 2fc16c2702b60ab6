#pragma once

// Invariant suites shared by the `verify` command and the acceptance runner.
// Each suite returns named checks with the measured value and its limit.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "hpq/equilibrium.hpp"
#include "hpq/hermite_pade.hpp"
#include "hpq/roots.hpp"

namespace hpq::suites {

struct Check {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool passed = false;
  std::string note;
};

bool all_passed(const std::vector<Check>& checks);

/// Random points of the plane off [-1, 1], |Re|, |Im| <= 4.
std::vector<Complex> random_points_off_cut(int count, Precision bits, uint64_t seed);

/// Factorisation, sheeted, reciprocal and kernel-split identities at `points`
/// random pairs; limit 2^-(p-16). Values are log2 of the worst residual.
std::vector<Check> surface_identities(int points, Precision bits, uint64_t seed);

/// H_closed against quadrature and the three-term recurrence for n <= n_max
/// at `points` random points; values are log10 of the worst relative error.
std::vector<Check> second_kind(int n_max, int points, Precision bits, uint64_t seed, double log10_limit = -30.0);

struct HpRun {
  int n = 0;
  hp::HPTriple triple;
  roots::DiscreteMeasure zeros;  // of Q_{n,2}
  double seconds = 0.0;
};

HpRun construct(const NikishinSystem& sys, int n, Precision bits = 0);

std::vector<Check> hp_order(const HpRun& run);
/// Hausdorff distances between the zeros of Q_{n,2} from the null space and
/// from the two orthogonality routes.
std::vector<Check> route_agreement(const NikishinSystem& sys, const HpRun& run, double limit);

struct Localization {
  size_t outside_hull = 0;
  size_t non_real = 0;
  int max_per_gap = 0;
};
Localization localize(const NikishinSystem& sys, const roots::DiscreteMeasure& zeros);
std::vector<Check> localization(const NikishinSystem& sys, const HpRun& run);

/// second_kind and second_kind_weighted for Q_{n,2} at hp_verify_precision(n), with Chebyshev T_n as
/// the negative control. Values are log10 of the relative integrals.
std::vector<Check> orthogonality(const NikishinSystem& sys, int n);

struct EquilibriumSuite {
  std::vector<Check> checks;
  eq::EquilibriumSolution solution;
  double seconds = 0.0;
};

/// Residual at `cells`, the ratio at 2 * cells, a mirror-symmetric F, and the
/// variational and maximin probes.
EquilibriumSuite equilibrium(const eq::Intervals& f, int cells, double tol, int probes, uint64_t seed,
                             double solver_tol = 1e-10);

/// Convexity, parallelogram identity and neutral-charge positivity over
/// `pairs` random pairs of unit measures.
std::vector<Check> energy_properties(const eq::Intervals& f, int cells, int pairs, uint64_t seed, double tol);

struct ConvergenceRow {
  int n = 0;
  Precision precision = 0;
  int residual_order = 0;
  size_t outside_hull = 0;
  size_t non_real = 0;
  int max_per_gap = 0;
  double weak_distance = 0.0;
  double seconds = 0.0;
};

std::vector<ConvergenceRow> convergence_study(const NikishinSystem& sys, const std::vector<int>& n_list,
                                              const eq::GridMeasure& lambda, Precision fixed_bits = 0);
/// Strict decrease of the weak distance and the final value below `limit`.
std::vector<Check> convergence_checks(const std::vector<ConvergenceRow>& rows, double limit);

struct ClusterCheck {
  std::vector<int> label;  // 0: lower cluster, 1: upper cluster
  size_t lower_count = 0, upper_count = 0;
  double lower_to_cut = 0.0;      // max distance of the lower cluster to [-1, 1]
  double upper_to_segment = 0.0;  // max distance of the upper cluster to [b, a]
  double gap = 0.0;               // min distance between the clusters
  bool passed = false;
};

/// 2-means on the points (seeded with the lowest and highest imaginary
/// parts); passes when each cluster lies within `near` of its set.
ClusterCheck two_means(const std::vector<std::complex<double>>& points, std::complex<double> a,
                       std::complex<double> b, double near);

struct FigureData {
  int n = 0;
  Precision precision = 0;
  std::vector<std::complex<double>> q0, q1, q2, type2;
  int order_f1 = 0, order_f2 = 0, residual_order = 0;
};

/// Type-I zeros of Q_{n,0}, Q_{n,1}, Q_{n,2} and the zeros of the type-II
/// denominator for an algebraic-mode system.
FigureData figure_data(const NikishinSystem& sys, int n, Precision bits = 0);

}  // namespace hpq::suites
