#pragma once

// The scalar equilibrium problem with external field psi = log|phi| on F,
// its energy functionals, a vector (Nikishin matrix) oracle, and a weak
// distance between measures. Everything here runs in double precision.

#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hpq/roots.hpp"

namespace hpq::eq {

using Intervals = std::vector<std::pair<double, double>>;

struct Cell {
  double lo = 0.0, hi = 0.0;
  int interval = 0;
  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
};

enum class Grading {
  uniform,
  /// Chebyshev-Lobatto breakpoints, refined towards the interval ends.
  chebyshev,
};

std::vector<Cell> make_cells(const Intervals& f, int cells_per_interval, Grading grading);

/// Piecewise-constant measure: mass[i] spread uniformly over cells[i].
struct GridMeasure {
  std::vector<Cell> cells;
  std::vector<double> mass;

  double total() const;
  double density(size_t i) const { return mass[i] / cells[i].width(); }
  /// Same cells, masses rescaled to total 1.
  GridMeasure normalized() const;
};

/// Real-line helpers for |x| >= 1.
double phi_real(double x);
double psi_real(double x);

/// log(|1 - phi(z) phi(t)| / |z - t|^2) through the split
/// -log|z-t| - log|phi(z)-phi(t)| + log 2 + psi(z) + psi(t).
/// Throws DiagonalError for z == t.
double kernel(double z, double t);
/// The same kernel from its defining quotient.
double kernel_direct(double z, double t);

/// Cell-averaged quantities over a fixed grid.
class KernelMatrix {
 public:
  explicit KernelMatrix(std::vector<Cell> cells);

  size_t size() const { return cells_.size(); }
  const std::vector<Cell>& cells() const { return cells_; }
  /// Average of log 1/|x-y| over cell i x cell j.
  double log_avg(size_t i, size_t j) const { return a_[i * n_ + j]; }
  /// Average of the full kernel over cell i x cell j.
  double kernel_avg(size_t i, size_t j) const { return k_[i * n_ + j]; }
  double psi_avg(size_t i) const { return psi_[i]; }
  const std::vector<double>& kernel_data() const { return k_; }
  const std::vector<double>& psi_data() const { return psi_; }

  /// g_i = (K m)_i + psi_i: cell averages of P^mu + psi.
  std::vector<double> field(const std::vector<double>& mass) const;

 private:
  std::vector<Cell> cells_;
  size_t n_;
  std::vector<double> a_, k_, psi_;
};

struct Potentials {
  double V = 0.0;        // log potential
  double P = 0.0;        // kernel potential
  double V_tilde = 0.0;  // int log 1/|1 - phi(z) phi(t)| dmu(t)
};

/// Potentials at a real point |z| > 1, z outside every cell interior or not
/// (single-cell averages are exact for the log parts).
Potentials potentials(const GridMeasure& mu, double z);
/// Log potential at any point of the plane.
double log_potential(const GridMeasure& mu, std::complex<double> z);

struct Energies {
  double I = 0.0;
  double J = 0.0;
  double J_psi = 0.0;
  /// J(mu - nu) through the two-log form; present when nu is given.
  std::optional<double> J_of_difference;
};

/// Energies of mu (and nu) on the grid of `k`; measures must use its cells.
Energies energies(const KernelMatrix& k, const GridMeasure& mu, const GridMeasure* nu = nullptr);
/// I(mu - nu) for measures on the grid of `k`.
double log_energy_of_difference(const KernelMatrix& k, const GridMeasure& mu, const GridMeasure& nu);

struct SolveOptions {
  int cells_per_interval = 400;
  Grading grading = Grading::chebyshev;
  /// Stop when the discrete stationarity gap falls below tol.
  double tol = 1e-10;
  int max_iter = 200000;
};

struct EquilibriumSolution {
  GridMeasure lambda;
  double w_F = 0.0;
  /// sup |P + psi - w_F| at support cell midpoints.
  double residual_on_support = 0.0;
  /// min (P + psi - w_F) at the other midpoints (+inf when the support is full).
  double min_off_support = 0.0;
  /// Same two quantities for the cell averages the solver works with.
  double discrete_residual = 0.0;
  double zero_cell_fraction = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Minimizes m^T K m + 2 psi^T m over the unit simplex of cell masses by
/// accelerated projected gradient with Armijo backtracking. The density of
/// sigma plays no part in this problem and is not an argument.
EquilibriumSolution solve_equilibrium(const Intervals& f, const SolveOptions& opts = {});
EquilibriumSolution solve_equilibrium(const KernelMatrix& k, const SolveOptions& opts = {});

struct VerifyReport {
  double sup_on_support = 0.0;
  double min_off_support = 0.0;
  double min_variational = 0.0;  // min over probes of int (P + psi) d(nu - lambda)
  double max_maximin_excess = 0.0;  // max over probes of min(P^nu + psi) - min(P^lambda + psi)
  bool variational_ok = false;
  bool maximin_ok = false;
  bool ok = false;
};

/// Equilibrium checks against `probes` random unit measures on the grid.
VerifyReport verify_equilibrium(const KernelMatrix& k, const EquilibriumSolution& sol, int probes, double tol,
                                uint64_t seed);

/// Random unit measure on the given cells (smooth positive density).
GridMeasure random_measure(const std::vector<Cell>& cells, uint64_t seed);

struct VectorSolution {
  GridMeasure on_e;  // mass m1
  GridMeasure on_f;  // mass m2
  double energy = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Minimizes 2 I(l1) + 2 I(l2) - 2 I(l1, l2) with |l1| = m1 on E = [-1, 1] and
/// |l2| = m2 on F.
VectorSolution vector_nikishin_solve(const Intervals& f, int cells_per_interval, std::pair<double, double> masses,
                                     const SolveOptions& opts = {});

struct WeakMeasure;

struct MassCalibration {
  double m1 = 0.0;  // fitted mass on E (the F mass is 1)
  double distance = 0.0;  // weak distance of the F component to the target
  VectorSolution solution;
};

/// Fits the E-mass of the vector problem so that its F component best matches
/// `target` in weak distance (golden-section search over [lo, hi]).
MassCalibration calibrate_vector_masses(const Intervals& f, int cells_per_interval, const WeakMeasure& target,
                                        std::pair<double, double> search = {0.25, 4.0},
                                        const SolveOptions& opts = {});

/// Either a grid measure or point masses at complex nodes.
struct WeakMeasure {
  std::vector<std::complex<double>> atoms;
  std::vector<double> atom_weights;
  std::vector<Cell> cells;
  std::vector<double> cell_mass;

  static WeakMeasure from(const GridMeasure& g);
  /// Counting measure scaled by `scale` (1/n for (1/n) chi(Q)).
  static WeakMeasure from(const roots::DiscreteMeasure& d, double scale = 1.0);
  double total() const;
  double cdf(double x, bool left_limit) const;
  double potential(std::complex<double> z) const;
};

/// max(Kolmogorov distance of real parts, sup |V^mu - V^nu| on 200 points of
/// the curve at distance 0.1 around the hull [lo, hi]). Throws
/// NormalizationError if the masses differ by more than 1e-8.
double weak_distance(const WeakMeasure& mu, const WeakMeasure& nu, std::pair<double, double> hull);

}  // namespace hpq::eq
