#include <doctest.h>

#include "hpq/errors.hpp"
#include "hpq/roots.hpp"
#include "support.hpp"

using namespace hpq;

namespace {
Polynomial real_poly(std::initializer_list<double> c) {
  std::vector<Real> v;
  for (double x : c) v.emplace_back(256, x);
  return Polynomial::from_real(v);
}
}  // namespace

TEST_CASE("zero measure of simple polynomials") {
  PrecisionGuard g(256);
  const auto m = roots::zero_measure(real_poly({-1, 0, 1}));
  REQUIRE(m.nodes.size() == 2);
  CHECK(m.mass().to_double() == 2.0);
  const auto s = m.sorted();
  CHECK(s.nodes[0].re.to_double() == doctest::Approx(-1.0));
  CHECK(s.nodes[1].re.to_double() == doctest::Approx(1.0));

  // (z - 2)^3
  const auto cube = roots::zero_measure(real_poly({-8, 12, -6, 1}));
  REQUIRE(cube.nodes.size() == 1);
  CHECK(cube.weights[0].to_double() == 3.0);
  CHECK(cube.nodes[0].re.to_double() == doctest::Approx(2.0));
}

TEST_CASE("scaling does not move zeros") {
  PrecisionGuard g(256);
  const auto p = real_poly({0.3, -1.7, 0.2, 2.0, 1.0});
  Polynomial q = p;
  q *= Complex(256, -3.5, 0.25);
  const auto a = roots::zero_measure(p).nodes, b = roots::zero_measure(q).nodes;
  CHECK(roots::hausdorff(a, b) < 1e-60);
}

TEST_CASE("aberth residual bound") {
  PrecisionGuard g(256);
  const Polynomial p({Complex(256, 1, 2), Complex(256, -3, 0.5), Complex(256, 0, 1), Complex(256, 2, -1),
                      Complex(256, 1, 0)});
  for (const auto& z : roots::aberth(p)) {
    Real scale = Real::zero(256);
    for (int k = 0; k <= p.degree(); ++k) scale += abs(p.coeff(k)) * pow(abs(z), k);
    CHECK(abs(p(z)) <= Real::exp2i(-128, 256) * scale);
  }
}

TEST_CASE("sturm counting and bisection") {
  PrecisionGuard g(256);
  // (x - 1)(x - 2)(x - 3)(x + 0.5)
  const auto p = real_poly({-3, -0.5, 8, -5.5, 1});
  CHECK(roots::sturm_count(p, Real(256, 0L), Real(256, 10L)) == 3);
  CHECK(roots::sturm_count(p, Real(256, -1L), Real(256, 1.5)) == 2);
  const auto r = roots::real_roots_sturm(p);
  REQUIRE(r.size() == 4);
  CHECK(r[0].to_double() == doctest::Approx(-0.5));
  CHECK(r[3].to_double() == doctest::Approx(3.0));
  CHECK_THROWS_AS(roots::real_roots_sturm(real_poly({1, 0, 1})), RootFindingError);
}

TEST_CASE("discrete measure helpers") {
  PrecisionGuard g(256);
  roots::DiscreteMeasure m;
  m.nodes = {Complex(256, 2, 0), Complex(256, 1, 0)};
  m.weights = {Real(256, 1L), Real(256, 3L)};
  m.validate();
  CHECK(m.scaled(Real(256, 0.5)).mass().to_double() == 2.0);
  CHECK(m.sorted().nodes[0].re.to_double() == 1.0);
  m.weights[0] = Real(256, -1L);
  CHECK_THROWS_AS(m.validate(), NormalizationError);
  CHECK(roots::hausdorff({Complex(2.0)}, {Complex(3.0)}) == 1.0);
}
