#include <doctest.h>

#include <random>

#include "hpq/errors.hpp"
#include "hpq/surface.hpp"
#include "support.hpp"

using namespace hpq;
using hpq::test::lg;

namespace {
Complex c(double re, double im = 0.0) { return Complex(256, re, im); }
}  // namespace

TEST_CASE("sqrt_branch follows z at infinity") {
  PrecisionGuard g(256);
  CHECK(surface::sqrt_branch(c(1.25)).re.to_double() == doctest::Approx(0.75));
  CHECK(surface::sqrt_branch(c(-1.25)).re.to_double() == doctest::Approx(-0.75));
  const Complex w = surface::sqrt_branch(c(10));
  CHECK(lg(abs(w * w - c(99))) < -240);
  CHECK(w.re.to_double() == doctest::Approx(9.9498743710662));
  CHECK_THROWS_AS(surface::sqrt_branch(c(0.3)), BranchCutError);
  CHECK_THROWS_AS(surface::sqrt_branch(c(1.0)), BranchCutError);
}

TEST_CASE("phi and psi on the real axis") {
  PrecisionGuard g(256);
  CHECK(surface::phi(c(1.25)).re.to_double() == doctest::Approx(2.0));
  CHECK(surface::phi(c(1.0)).re.to_double() == doctest::Approx(1.0));
  CHECK(surface::phi(c(-2)).re.to_double() == doctest::Approx(-3.7320508));
  CHECK_THROWS_AS(surface::phi(c(0.5)), BranchCutError);
  CHECK(surface::psi(c(1.25)).to_double() == doctest::Approx(0.6931472));
  CHECK(surface::psi(c(1.0)).to_double() == doctest::Approx(0.0));
  CHECK(surface::psi(c(-2)).to_double() == doctest::Approx(1.3169579));
}

TEST_CASE("phi on both sheets") {
  PrecisionGuard g(256);
  using surface::Sheet;
  CHECK(surface::phi_sheeted({c(1.25), Sheet::first}).re.to_double() == doctest::Approx(2.0));
  CHECK(surface::phi_sheeted({c(1.25), Sheet::second}).re.to_double() == doctest::Approx(0.5));
  CHECK(surface::phi_sheeted({c(-2), Sheet::second}).re.to_double() == doctest::Approx(-0.2679492));
}

TEST_CASE("identity residuals") {
  PrecisionGuard g(256);
  for (auto [z, a] : {std::pair{c(1.25), c(3)}, std::pair{c(2, 1), c(-3, -0.5)}}) {
    const auto r = surface::check_identities(z, a);
    CHECK(lg(r.distance_identity) < -248);
    CHECK(lg(r.sheeted_identity) < -248);
    CHECK(lg(r.reciprocal_identity) < -248);
  }
  CHECK(surface::check_identities(c(1.5), c(1.5)).distance_identity.is_zero());
}

TEST_CASE("symmetries and monotonicity") {
  PrecisionGuard g(256);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const Complex z = c(u(rng), u(rng) + 0.05);
    const Complex f = surface::phi(z);
    CHECK(abs(f) > 1);
    CHECK(lg(abs(surface::phi(conj(z)) - conj(f))) < -245);
    CHECK(lg(abs(f * (z - surface::sqrt_branch(z)) - c(1))) < -245);
  }
  double prev = -1.0;
  for (double x = 1.001; x < 5.0; x += 0.25) {
    CHECK(lg(abs(surface::phi(c(-x)) + surface::phi(c(x)))) < -245);
    const double p = surface::psi(c(x)).to_double();
    CHECK(p > prev);
    CHECK(p == doctest::Approx(surface::psi(c(-x)).to_double()));
    prev = p;
  }
  CHECK(surface::psi(c(1.0 + 1e-12)).to_double() < 2e-6);
}

TEST_CASE("kernel decomposition") {
  PrecisionGuard g(256);
  CHECK(lg(surface::kernel_split_residual(c(2), c(3))) < -245);
  CHECK(lg(surface::kernel_split_residual(c(1.5, 0.7), c(-2.2, 0.1))) < -245);
}
