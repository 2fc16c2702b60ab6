#include <doctest.h>

#include "hpq/errors.hpp"
#include "hpq/hermite_pade.hpp"
#include "hpq/laurent.hpp"
#include "hpq/orthopoly.hpp"
#include "hpq/quadrature.hpp"
#include "hpq/roots.hpp"
#include "hpq/tolerance.hpp"
#include "support.hpp"

using namespace hpq;
using hpq::test::lg;

namespace {

NikishinSystem default_system() { return NikishinSystem::uniform({{"1.5", "2.5"}}); }

// h(x) = int_1.5^2.5 dt / (x - t) = log((2.5 - x) / (1.5 - x)) * -1 for x < 1.5.
Real h_closed(const Real& x) { return -log((Real(2.5) - x) / (Real(1.5) - x)); }

}  // namespace

TEST_CASE("f1 series") {
  const auto c = f1_series(4, 128);
  REQUIRE(c.size() == 5);
  CHECK(c[0].to_double() == 1.0);
  CHECK(c[1].is_zero());
  CHECK(c[2].to_double() == 0.5);
  CHECK(c[4].to_double() == 0.375);
}

TEST_CASE("f2 series against the closed-form density") {
  PrecisionGuard g(256);
  const auto s = f2_series(default_system(), 6, 256);
  auto rule = quad::gauss_chebyshev(400, 256);
  for (size_t k = 0; k <= 6; ++k) {
    Real m = Real::zero(256);
    for (size_t i = 0; i < rule->size(); ++i) {
      m += pow(rule->nodes[i], static_cast<long>(k)) * h_closed(rule->nodes[i]) * rule->weights[i];
    }
    CHECK(test::rel(s[k].re, m) < 1e-60);
    CHECK(s[k].im.is_zero());
  }
  CHECK(s[0].re < 0);
}

TEST_CASE("f2 series of the algebraic pair") {
  const auto s = f2_series(NikishinSystem::angelesco(), 3, 128);
  CHECK(s[0].re.to_double() == doctest::Approx(1.0));
  CHECK(s[0].im.to_double() == doctest::Approx(0.0));
  CHECK(s[1].re.to_double() == doctest::Approx(0.0));
  CHECK(s[1].im.to_double() == doctest::Approx(0.5));
}

TEST_CASE("type I at n = 0") {
  const auto sys = default_system();
  const auto t = hp::hp_type1(sys, 0);
  const auto s = f2_series(sys, 0, t.precision);
  CHECK(t.q0.is_zero());
  REQUIRE(t.q1.degree() == 0);
  REQUIRE(t.q2.degree() == 0);
  CHECK(test::rel(t.q1.coeff(0).re / t.q2.coeff(0).re, -s[0].re) < 1e-60);
  CHECK(t.residual_order >= 2);
}

TEST_CASE("type I residual order and zeros") {
  const auto sys = default_system();
  for (int n : {1, 2, 5, 10}) {
    const auto t = hp::hp_type1(sys, n);
    CHECK(t.residual_order >= 2 * n + 2);
    CHECK(t.kernel_dim == 1);
    CHECK(t.q2.degree() == n);
    CHECK(t.q0.degree() <= n);
    CHECK(t.q1.degree() <= n);
    const auto z = roots::real_roots_sturm(t.q2);
    REQUIRE(z.size() == static_cast<size_t>(n));
    for (const auto& x : z) {
      CHECK(x > 1.5);
      CHECK(x < 2.5);
    }
  }
}

TEST_CASE("orthogonality routes agree") {
  const auto sys = default_system();
  const Precision bits = hp_default_precision(2);
  const Markov m(sys, bits);
  const auto t = hp::hp_type1(sys, 2, bits);
  const auto e = hp::q2_via_orthogonality(m, 2, hp::Route::e_route).monic();
  const auto f = hp::q2_via_orthogonality(m, 2, hp::Route::f_route).monic();
  for (int k = 0; k <= 2; ++k) {
    CHECK(test::absdiff(e.coeff(k), t.q2.coeff(k)) < 1e-12);
    CHECK(test::absdiff(f.coeff(k), t.q2.coeff(k)) < 1e-12);
  }
  const auto r1 = roots::real_roots_sturm(hp::q2_via_orthogonality(m, 1, hp::Route::f_route));
  REQUIRE(r1.size() == 1);
  CHECK(r1[0] > 1.5);
  CHECK(r1[0] < 2.5);
  CHECK_THROWS(hp::q2_via_orthogonality(m, 0, hp::Route::f_route));
}

TEST_CASE("orthogonality relations") {
  const auto sys = default_system();
  const int n = 5;
  const Precision bits = hp_verify_precision(n);
  PrecisionGuard g(bits);
  const Markov m(sys, bits);
  const auto t = hp::hp_type1(sys, n, bits);
  const Real tol = quarter_digits_tolerance(bits);
  hp::OrthogonalityParams p;
  p.n = n;
  const auto r_plain = hp::verify_orthogonality(m, t.q2, hp::Relation::second_kind, p);
  CHECK(r_plain.relative.size() == static_cast<size_t>(n));
  CHECK(r_plain.max_relative <= tol);
  CHECK(hp::verify_orthogonality(m, t.q2, hp::Relation::cut_chebyshev, p).max_relative <= tol);
  CHECK(hp::verify_orthogonality(m, t, hp::Relation::remainder_contour, p).max_relative <= tol);
  CHECK(hp::verify_orthogonality(m, t.q2, hp::Relation::contour_chebyshev, p).max_relative <= tol);

  const auto control = orthopoly::chebyshev_T(n, bits);
  CHECK(hp::verify_orthogonality(m, control, hp::Relation::second_kind, p).max_relative > tol * 1000);
  CHECK(hp::verify_orthogonality(m, control, hp::Relation::cut_chebyshev, p).max_relative > tol * 1000);

  hp::OrthogonalityParams one = p;
  one.big_n = 1;
  const auto r_weighted = hp::verify_orthogonality(m, t.q2, hp::Relation::second_kind_weighted, one);
  REQUIRE(r_weighted.relative.size() == 1);
  CHECK(lg(abs(r_weighted.relative[0] - r_plain.relative[0])) < -static_cast<double>(bits) / 2);

  hp::OrthogonalityParams full = p;
  full.big_n = n;
  for (int j = 1; j < n; ++j) full.points.emplace_back(bits, 1.5 + j / static_cast<double>(n));
  CHECK(hp::verify_orthogonality(m, t.q2, hp::Relation::second_kind_weighted, full).max_relative <= tol);
}

TEST_CASE("two-interval localization") {
  const auto sys = NikishinSystem::uniform({{"1.2", "2.0"}, {"3.0", "4.0"}});
  for (int n : {5, 10, 20}) {
    const auto t = hp::hp_type1(sys, n);
    const auto z = roots::real_roots_sturm(t.q2);
    REQUIRE(z.size() == static_cast<size_t>(n));
    int in_gap = 0;
    for (const auto& x : z) {
      CHECK(x >= 1.2);
      CHECK(x <= 4.0);
      if (x > 2.0 && x < 3.0) ++in_gap;
    }
    CHECK(in_gap <= 1);
  }
}

TEST_CASE("type II") {
  const auto ang = NikishinSystem::angelesco();
  const auto t1 = hp::hp_type2(ang, 1);
  CHECK(t1.q.degree() == 2);
  CHECK(t1.order_f1 >= 2);
  CHECK(t1.order_f2 >= 2);

  const auto t = hp::hp_type2(ang, 12);
  CHECK(t.q.degree() == 24);
  CHECK(t.order_f1 >= 13);
  CHECK(t.order_f2 >= 13);
  const auto z = roots::zero_measure(t.q).nodes;
  // z -> -conj(z) maps the zero set to itself.
  std::vector<Complex> mirrored;
  for (const auto& w : z) mirrored.push_back(-conj(w));
  CHECK(roots::hausdorff(z, mirrored) < 1e-20);
}

TEST_CASE("algebraic mode type I") {
  const auto t = hp::hp_type1(NikishinSystem::angelesco(), 8);
  CHECK(t.residual_order >= 18);
  CHECK(t.q2.degree() == 8);
  CHECK(t.q1.degree() == 8);
  CHECK(t.q0.degree() == 7);
}
