#include <doctest.h>

#include "hpq/errors.hpp"
#include "hpq/orthopoly.hpp"
#include "hpq/quadrature.hpp"
#include "hpq/surface.hpp"
#include "support.hpp"

using namespace hpq;
using hpq::test::lg;

namespace {

// Gram-Schmidt on monomials for the weight 1/sqrt(1-x^2), leading coefficient 2^n.
std::vector<std::vector<Real>> gram_schmidt(int n_max, Precision bits) {
  auto rule = quad::gauss_chebyshev(64, bits);
  auto inner = [&](const std::vector<Real>& a, const std::vector<Real>& b) {
    Real s = Real::zero(bits);
    for (size_t i = 0; i < rule->size(); ++i) {
      const Real& x = rule->nodes[i];
      Real pa = Real::zero(bits), pb = Real::zero(bits);
      for (size_t k = a.size(); k-- > 0;) pa = pa * x + a[k];
      for (size_t k = b.size(); k-- > 0;) pb = pb * x + b[k];
      s += pa * pb * rule->weights[i];
    }
    return s;
  };
  std::vector<std::vector<Real>> out;
  for (int n = 0; n <= n_max; ++n) {
    std::vector<Real> p(static_cast<size_t>(n + 1), Real::zero(bits));
    p[static_cast<size_t>(n)] = Real(bits, 1L);
    for (const auto& q : out) {
      const Real f = inner(p, q) / inner(q, q);
      for (size_t k = 0; k < q.size(); ++k) p[k] -= f * q[k];
    }
    const Real lead = n == 0 ? Real(bits, 1L) : Real::exp2i(n, bits);
    for (auto& x : p) x *= lead;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

TEST_CASE("chebyshev_T normalization") {
  PrecisionGuard g(256);
  const auto t0 = orthopoly::chebyshev_T(0);
  REQUIRE(t0.degree() == 0);
  CHECK(t0.coeff(0).re.to_double() == 1.0);
  const auto t1 = orthopoly::chebyshev_T(1);
  CHECK(t1.degree() == 1);
  CHECK(t1.coeff(1).re.to_double() == 2.0);
  CHECK(t1.coeff(0).re.is_zero());
  const auto t2 = orthopoly::chebyshev_T(2);
  CHECK(t2.coeff(2).re.to_double() == 4.0);
  CHECK(t2.coeff(0).re.to_double() == -2.0);
}

TEST_CASE("chebyshev_T matches Gram-Schmidt") {
  PrecisionGuard g(320);
  const auto gs = gram_schmidt(10, 320);
  for (int n = 0; n <= 10; ++n) {
    const auto t = orthopoly::chebyshev_T(n, 320);
    for (int k = 0; k <= n; ++k) {
      CHECK(lg(abs(t.coeff(k).re - gs[static_cast<size_t>(n)][static_cast<size_t>(k)])) < -250);
    }
  }
}

TEST_CASE("chebyshev_T orthogonality and parity") {
  PrecisionGuard g(256);
  auto rule = quad::gauss_chebyshev(64, 256);
  for (int m = 0; m <= 30; m += 3) {
    for (int n = m + 1; n <= 30; n += 4) {
      Real s = Real::zero(256);
      for (size_t i = 0; i < rule->size(); ++i) {
        s += orthopoly::chebyshev_value(m, rule->nodes[i]) * orthopoly::chebyshev_value(n, rule->nodes[i]) *
             rule->weights[i];
      }
      CHECK(lg(s) < -200);
    }
  }
  const Real x(256, 0.37);
  for (int n = 0; n < 12; ++n) {
    const Real a = orthopoly::chebyshev_value(n, x), b = orthopoly::chebyshev_value(n, -x);
    CHECK(lg(abs(n % 2 ? a + b : a - b)) < -240);
  }
}

TEST_CASE("recurrence_apply") {
  PrecisionGuard g(256);
  const Complex z(256, 0.3, 1.1);
  CHECK(test::absdiff(orthopoly::recurrence_apply(Complex(0L), Complex(1L), z), z + z) == 0.0);
  const Complex y2 = orthopoly::recurrence_apply(Complex(1L), z + z, z);
  CHECK(lg(abs(y2 - (Complex(4L) * z * z - Complex(1L)))) < -248);
  // T family from the orthogonality definition.
  const Real x(256, 0.6);
  for (int n = 3; n <= 30; ++n) {
    const Complex r = orthopoly::recurrence_apply(Complex(orthopoly::chebyshev_value(n - 2, x)),
                                                   Complex(orthopoly::chebyshev_value(n - 1, x)), Complex(x));
    CHECK(lg(abs(r.re - orthopoly::chebyshev_value(n, x))) < -200);
  }
}

TEST_CASE("second-kind functions") {
  PrecisionGuard g(256);
  const Complex two(Real(256, 2L));
  const auto h0 = orthopoly::H_closed(0, two);
  CHECK(h0.value.re.to_double() == doctest::Approx(0.5773503));
  CHECK(lg(abs(orthopoly::H_quadrature(0, two, 64) - Complex(Real(1L) / sqrt(Real(3L))))) < -130);
  const Complex z(256, 1.5, 1.0);
  const auto q = orthopoly::H_quadrature_adaptive(5, z, pow(Real(10L), -50));
  CHECK(test::rel(orthopoly::H_closed(5, z).value.re, q.value.re) < 1e-30);
  const Complex m2(Real(256, -2L));
  const auto hq = orthopoly::H_quadrature_adaptive(3, m2, pow(Real(10L), -50));
  CHECK(abs(orthopoly::H_closed(3, m2).value - hq.value) / abs(hq.value) < pow(Real(10L), -40));
  const Complex far(Real(256, 1000000L));
  const double h1 = abs(orthopoly::H_closed(1, far).value).to_double();
  const double k1 = orthopoly::kappa(1, 256).to_double();
  CHECK(h1 / (std::abs(k1) * 1e-12 / 2) == doctest::Approx(1.0).epsilon(1e-3));
  // From n = 3 on; T_0 = 1 breaks the 2^n scaling at the first step.
  const auto h1v = orthopoly::H_closed(1, two).value, h2v = orthopoly::H_closed(2, two).value;
  const auto h3v = orthopoly::H_closed(3, two).value;
  CHECK(abs(orthopoly::recurrence_apply(h1v, h2v, two) - h3v) / abs(h3v) < pow(Real(10L), -60));
  CHECK_THROWS_AS(orthopoly::H_closed(2, Complex(256, 0.2, 0.0)), BranchCutError);
}

TEST_CASE("decay of H_n") {
  PrecisionGuard g(256);
  const Complex z(256, 0.4, 0.6);
  const Real f = abs(surface::phi(z));
  double lo = 1e300, hi = 0;
  for (int n = 0; n <= 50; ++n) {
    const double v = (abs(orthopoly::H_closed(n, z).value) * pow(f, n)).to_double();
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo > 0);
  CHECK(hi / lo < 10);
}

TEST_CASE("Pade polynomials of f1") {
  PrecisionGuard g(256);
  const auto p0 = orthopoly::pade_f1(0, 256);
  CHECK(p0.p0.is_zero());
  CHECK(p0.p1.degree() == 0);
  CHECK(p0.residual_order >= 1);
  const auto p2 = orthopoly::pade_f1(2, 256);
  CHECK(p2.residual_order >= 3);
  CHECK(p2.p1.coeff(0).re.to_double() / p2.p1.coeff(2).re.to_double() == doctest::Approx(-0.5));
  const auto p10 = orthopoly::pade_f1(10, 512);
  const auto t10 = orthopoly::chebyshev_T(10, 512);
  for (int k = 0; k <= 10; ++k) {
    CHECK(lg(abs(p10.p1.coeff(k).re / p10.p1.leading().re - t10.coeff(k).re / t10.leading().re)) < -133);
  }
}
