#include "hpq/orthopoly.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include "hpq/errors.hpp"
#include "hpq/laurent.hpp"
#include "hpq/linalg.hpp"
#include "hpq/nikishin.hpp"
#include "hpq/quadrature.hpp"
#include "hpq/surface.hpp"
#include "hpq/tolerance.hpp"

namespace hpq::orthopoly {

Polynomial chebyshev_T(int n, Precision bits) {
  if (n < 0) throw std::invalid_argument("chebyshev_T: negative degree");
  const Real zero = Real::zero(bits);
  // Classical t_k (leading 2^(k-1)), then doubled for k >= 1.
  std::vector<Real> prev{Real(bits, 1L)};
  if (n == 0) return Polynomial::from_real(prev);
  std::vector<Real> cur{zero, Real(bits, 1L)};
  for (int k = 2; k <= n; ++k) {
    std::vector<Real> next(static_cast<size_t>(k + 1), zero);
    for (size_t i = 0; i < cur.size(); ++i) next[i + 1] = ldexp(cur[i], 1);
    for (size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  for (auto& c : cur) c = ldexp(c, 1);
  return Polynomial::from_real(cur);
}

namespace {

template <typename S>
S chebyshev_value_impl(int n, const S& x, const S& one) {
  if (n == 0) return one;
  S prev = one;
  S cur = x;
  for (int k = 2; k <= n; ++k) {
    S next = x * cur;
    next += next;
    next -= prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur + cur;
}

}  // namespace

Real chebyshev_value(int n, const Real& x) { return chebyshev_value_impl(n, x, Real(x.precision(), 1L)); }

Complex chebyshev_value(int n, const Complex& z) {
  return chebyshev_value_impl(n, z, Complex(Real(z.precision(), 1L)));
}

Complex recurrence_apply(const Complex& y_prev2, const Complex& y_prev1, const Complex& z) {
  Complex t = z * y_prev1;
  return t + t - y_prev2;
}

Polynomial recurrence_apply(const Polynomial& y_prev2, const Polynomial& y_prev1, const Complex& z_unused) {
  (void)z_unused;
  const Precision p = std::max(y_prev1.precision(), y_prev2.precision());
  Polynomial two_z({Complex(Real::zero(p)), Complex(Real(p, 2L))});
  return two_z * y_prev1 - y_prev2;
}

Complex H_quadrature(int n, const Complex& z, size_t nodes) {
  if (n < 0) throw std::invalid_argument("H_quadrature: negative index");
  if (nodes < static_cast<size_t>(n) + 8) throw std::invalid_argument("H_quadrature: need nodes >= n + 8");
  if (surface::on_cut(z)) throw BranchCutError("H_quadrature evaluated on [-1, 1]");
  const Precision p = z.precision();
  auto rule = quad::gauss_chebyshev(nodes, p);
  Complex acc(Real::zero(p));
  for (size_t i = 0; i < nodes; ++i) {
    const Real& x = rule->nodes[i];
    acc += Complex(chebyshev_value(n, x)) / (Complex(x) - z);
  }
  // -(1/pi) * (pi/N) * sum
  return -(acc / Real(p, static_cast<long>(nodes)));
}

AdaptiveValue H_quadrature_adaptive(int n, const Complex& z, const Real& rel_tol, size_t max_nodes) {
  size_t nodes = std::max<size_t>(static_cast<size_t>(n) + 8, 32);
  Complex prev = H_quadrature(n, z, nodes);
  while (nodes * 2 <= max_nodes) {
    nodes *= 2;
    Complex cur = H_quadrature(n, z, nodes);
    if (abs(cur - prev) <= rel_tol * abs(cur)) return {cur, nodes, true};
    prev = std::move(cur);
  }
  return {prev, nodes, false};
}

Real kappa(int n, Precision bits) {
  static std::mutex mu;
  static std::map<std::pair<int, Precision>, Real> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find({n, bits});
    if (it != cache.end()) return it->second;
  }
  // H_n(2) ~ 3.73^-n: the quadrature sum cancels about 2n bits.
  const Precision guarded = bits + 2 * n + 64;
  const Complex z0(Real(guarded, 2L));
  const AdaptiveValue h = H_quadrature_adaptive(n, z0, quarter_digits_tolerance(bits));
  if (!h.converged) throw PrecisionError("kappa calibration did not stabilise for n = " + std::to_string(n));
  const Complex phi = surface::phi(z0);
  Complex k = h.value * pow(phi, n + 1) / surface::phi_prime(z0);
  std::lock_guard lock(mu);
  return cache.emplace(std::pair{n, bits}, Real(bits, k.re)).first->second;
}

SecondKindValue H_closed(int n, const Complex& z) {
  if (n < 0) throw std::invalid_argument("H_closed: negative index");
  const Complex phi = surface::phi(z);
  const Complex w = surface::sqrt_branch(z);
  // kappa phi' / phi^(n+1) = kappa / (w phi^n)
  Complex value = Complex(kappa(n, z.precision())) / (w * pow(phi, n));
  return {n, z, std::move(value)};
}

PadeF1 pade_f1(int n, Precision bits) {
  if (n < 0) throw std::invalid_argument("pade_f1: negative order");
  const std::vector<Real> c = f1_series(static_cast<size_t>(2 * n + 4), bits);
  std::vector<Real> p1;
  if (n == 0) {
    p1 = {Real(bits, 1L)};
  } else {
    linalg::Matrix<Real> a(static_cast<size_t>(n), static_cast<size_t>(n + 1), Real::zero(bits));
    for (int m = 0; m < n; ++m) {
      for (int j = 0; j <= n; ++j) a(static_cast<size_t>(m), static_cast<size_t>(j)) = c[static_cast<size_t>(j + m)];
    }
    p1 = linalg::null_vector(std::move(a)).vector;
  }
  Polynomial q1 = Polynomial::from_real(p1);
  if (q1.degree() != n) throw PrecisionError("pade_f1: denominator lost its leading coefficient");
  q1 = q1.monic();
  q1 *= Complex(Real::exp2i(n, bits));

  const std::vector<Complex> cc = laurent::to_complex(c);
  PadeF1 out;
  out.p1 = q1;
  out.p0 = Polynomial() - laurent::polynomial_part(q1, cc);
  const Real tol = quarter_digits_tolerance(bits);
  int order = 1;
  for (size_t m = 0; m < static_cast<size_t>(n + 3); ++m) {
    const Real scale = laurent::negative_coeff_scale(q1, cc, m);
    if (abs(laurent::negative_coeff(q1, cc, m)) > tol * scale) break;
    ++order;
  }
  out.residual_order = order;
  if (order < n + 1) throw PrecisionError("pade_f1: residual order below n + 1; raise the precision");
  return out;
}

}  // namespace hpq::orthopoly
