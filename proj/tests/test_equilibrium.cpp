#include <doctest.h>

#include <cmath>

#include "hpq/equilibrium.hpp"
#include "hpq/errors.hpp"

using namespace hpq;
using namespace hpq::eq;

namespace {

GridMeasure uniform_on(double lo, double hi, int cells) {
  GridMeasure g;
  g.cells = make_cells({{lo, hi}}, cells, Grading::uniform);
  g.mass.assign(g.cells.size(), 1.0 / cells);
  return g;
}

// int_c^d log(z - t) dt for z > d
double int_log(double z, double c, double d) {
  auto f = [](double u) { return u * std::log(u) - u; };
  return f(z - c) - f(z - d);
}

}  // namespace

TEST_CASE("kernel forms agree") {
  CHECK(kernel(2.0, 3.0) == doctest::Approx(kernel_direct(2.0, 3.0)).epsilon(1e-12));
  CHECK(kernel(1.5, -2.5) == doctest::Approx(kernel_direct(1.5, -2.5)).epsilon(1e-12));
  CHECK(kernel(2.0, 2.0 + 1e-9) > 30.0);
  CHECK_THROWS_AS(kernel(2.0, 2.0), DiagonalError);
  CHECK(phi_real(2.0) == doctest::Approx(2.0 + std::sqrt(3.0)));
  CHECK(psi_real(-2.0) == doctest::Approx(std::log(2.0 + std::sqrt(3.0))));
}

TEST_CASE("potentials of a uniform measure") {
  const auto mu = uniform_on(2.0, 3.0, 200);
  CHECK(mu.total() == doctest::Approx(1.0));
  const auto p = potentials(mu, 10.0);
  CHECK(p.V == doctest::Approx(-int_log(10.0, 2.0, 3.0)).epsilon(1e-10));
  CHECK(p.V == doctest::Approx(-2.0141).epsilon(1e-4));
  const auto q = potentials(mu, 5.0);
  CHECK(q.P == doctest::Approx(2 * q.V - q.V_tilde).epsilon(1e-12));
  double direct = 0.0;
  for (const auto& c : mu.cells) {
    for (int k = 0; k < 8; ++k) direct += kernel_direct(5.0, c.lo + (k + 0.5) * c.width() / 8) / 1600.0;
  }
  CHECK(q.P == doctest::Approx(direct).epsilon(1e-6));
  CHECK(log_potential(mu, {10.0, 0.0}) == doctest::Approx(p.V).epsilon(1e-10));
}

TEST_CASE("energy identities") {
  const KernelMatrix k(make_cells({{1.5, 2.5}}, 120, Grading::chebyshev));
  const auto mu = random_measure(k.cells(), 11);
  const auto nu = random_measure(k.cells(), 12);
  CHECK(mu.total() == doctest::Approx(1.0));
  const auto e = energies(k, mu, &mu);
  REQUIRE(e.J_of_difference);
  CHECK(std::abs(*e.J_of_difference) < 1e-12);
  double psi_int = 0.0;
  for (size_t i = 0; i < mu.mass.size(); ++i) psi_int += k.psi_avg(i) * mu.mass[i];
  CHECK(e.J_psi - e.J - 2 * psi_int == doctest::Approx(0.0).epsilon(1e-12));

  const auto a = energies(k, mu), b = energies(k, nu);
  double cross = 0.0;
  const auto g = k.field(nu.mass);
  for (size_t i = 0; i < mu.mass.size(); ++i) cross += (g[i] - k.psi_avg(i)) * mu.mass[i];
  for (double eps : {0.1, 0.5, 1.0}) {
    GridMeasure mix = mu;
    for (size_t i = 0; i < mix.mass.size(); ++i) mix.mass[i] = mu.mass[i] + eps * (nu.mass[i] - mu.mass[i]);
    const double lhs = energies(k, mix).J;
    const double jd = *energies(k, nu, &mu).J_of_difference;
    const double rhs = a.J + 2 * eps * (cross - a.J) + eps * eps * jd;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
  CHECK(b.J > 0.0);
  CHECK(log_energy_of_difference(k, mu, nu) >= 0.0);
}

TEST_CASE("equilibrium measure") {
  SolveOptions o;
  o.cells_per_interval = 200;
  const auto sol = solve_equilibrium(Intervals{{1.5, 2.5}}, o);
  CHECK(sol.converged);
  CHECK(sol.lambda.total() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sol.residual_on_support < 1e-2);

  const auto sym = solve_equilibrium(Intervals{{-2.5, -1.5}, {1.5, 2.5}}, o);
  const size_t n = sym.lambda.mass.size();
  double asym = 0.0;
  for (size_t i = 0; i < n; ++i) asym = std::max(asym, std::abs(sym.lambda.mass[i] - sym.lambda.mass[n - 1 - i]));
  CHECK(asym < 1e-9);

  const KernelMatrix k(make_cells({{1.5, 2.5}}, 200, Grading::chebyshev));
  const auto s2 = solve_equilibrium(k, o);
  const auto rep = verify_equilibrium(k, s2, 20, 1e-6, 3);
  CHECK(rep.variational_ok);
  CHECK(rep.maximin_ok);
}

TEST_CASE("weak distance") {
  const auto mu = WeakMeasure::from(uniform_on(1.5, 2.5, 100));
  CHECK(weak_distance(mu, mu, {1.5, 2.5}) < 1e-12);

  WeakMeasure d2, d3;
  d2.atoms = {{2.0, 0.0}};
  d2.atom_weights = {1.0};
  d3.atoms = {{3.0, 0.0}};
  d3.atom_weights = {1.0};
  CHECK(weak_distance(d2, d3, {2.0, 3.0}) >= 1.0);

  WeakMeasure half = d3;
  half.atom_weights = {0.5};
  CHECK_THROWS_AS(weak_distance(d2, half, {2.0, 3.0}), NormalizationError);
}

TEST_CASE("vector problem") {
  const auto v = vector_nikishin_solve({{1.5, 2.5}}, 100, {1.0, 1.0});
  CHECK(v.converged);
  CHECK(v.on_f.total() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(v.on_e.total() == doctest::Approx(1.0).epsilon(1e-10));
}
