#include "hpq/hermite_pade.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "hpq/errors.hpp"
#include "hpq/laurent.hpp"
#include "hpq/linalg.hpp"
#include "hpq/orthopoly.hpp"
#include "hpq/quadrature.hpp"
#include "hpq/surface.hpp"
#include "hpq/tolerance.hpp"

namespace hpq {

Precision hp_default_precision(int n) { return 256 + 16L * std::max(n, 0); }

Precision hp_verify_precision(int n) { return 256 + 64L * std::max(n, 0); }

namespace hp {

namespace {

Precision resolve(Precision bits, int n) { return bits > 0 ? bits : hp_default_precision(n); }

// Null vector of the matrix built by `entry(row, col)`, solved over the reals
// when every entry is real.
template <typename Entry>
linalg::NullVector<Complex> solve_null(size_t rows, size_t cols, Precision bits, bool real, Entry entry) {
  if (real) {
    linalg::Matrix<Real> a(rows, cols, Real::zero(bits));
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) a(i, j) = entry(i, j).re;
    auto nv = linalg::null_vector(std::move(a));
    return {laurent::to_complex(nv.vector), nv.rank, nv.kernel_dim, nv.smallest_pivot_log2};
  }
  linalg::Matrix<Complex> a(rows, cols, Complex(Real::zero(bits)));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) a(i, j) = entry(i, j);
  return linalg::null_vector(std::move(a));
}

Polynomial slice(const std::vector<Complex>& v, size_t from, size_t count) {
  return Polynomial(std::vector<Complex>(v.begin() + static_cast<long>(from),
                                         v.begin() + static_cast<long>(from + count)));
}

bool all_real(const std::vector<Complex>& v) {
  return std::all_of(v.begin(), v.end(), [](const Complex& c) { return c.is_real(); });
}

// 1 + number of leading negligible coefficients among m = 0..m_max of sum_j q_j f_j.
int order_of(const std::vector<const Polynomial*>& qs, const std::vector<const std::vector<Complex>*>& cs,
             size_t m_max, Precision bits) {
  const Real tol = quarter_digits_tolerance(bits);
  int order = 1;
  for (size_t m = 0; m <= m_max; ++m) {
    Complex coeff(Real::zero(bits));
    Real scale(bits, 0L);
    for (size_t i = 0; i < qs.size(); ++i) {
      coeff += laurent::negative_coeff(*qs[i], *cs[i], m);
      scale += laurent::negative_coeff_scale(*qs[i], *cs[i], m);
    }
    if (abs(coeff) > tol * scale) break;
    ++order;
  }
  return order;
}

}  // namespace

int residual_order(const HPTriple& t, const std::vector<Complex>& c1, const std::vector<Complex>& c2) {
  const Precision bits = t.precision;
  const Real tol = quarter_digits_tolerance(bits);
  // The polynomial part of R_n must cancel against Q0.
  const Polynomial poly = t.q0 + laurent::polynomial_part(t.q1, c1) + laurent::polynomial_part(t.q2, c2);
  Real scale = std::max({t.q0.max_norm(), t.q1.max_norm(), t.q2.max_norm()});
  if (!poly.is_zero() && poly.max_norm() > tol * scale) return 0;
  return order_of({&t.q1, &t.q2}, {&c1, &c2}, static_cast<size_t>(2 * t.n + 3), bits);
}

HPTriple hp_type1(const NikishinSystem& sys, int n, Precision bits) {
  if (n < 0) throw std::invalid_argument("hp_type1: negative order");
  sys.validate();
  bits = resolve(bits, n);
  PrecisionGuard guard(bits);
  const size_t un = static_cast<size_t>(n);
  const size_t k_max = 3 * un + 4;
  const std::vector<Complex> c1 = laurent::to_complex(f1_series(k_max, bits));
  const std::vector<Complex> c2 = f2_series(sys, k_max, bits);

  auto nv = solve_null(2 * un + 1, 2 * un + 2, bits, all_real(c2), [&](size_t m, size_t col) -> const Complex& {
    return col <= un ? c1[col + m] : c2[col - un - 1 + m];
  });

  // Nikishin systems are perfect, so a wider kernel means lost precision.
  if (nv.kernel_dim > 1 && sys.mode == SystemMode::nikishin) {
    throw PrecisionError("hp_type1: kernel dimension " + std::to_string(nv.kernel_dim) + " at " +
                         std::to_string(bits) + " bits; raise the precision");
  }

  HPTriple t;
  t.n = n;
  t.precision = bits;
  t.kernel_dim = nv.kernel_dim;
  t.q1 = slice(nv.vector, 0, un + 1);
  t.q2 = slice(nv.vector, un + 1, un + 1);
  const Polynomial& lead_poly = t.q2.is_zero() ? t.q1 : t.q2;
  if (lead_poly.is_zero()) throw PrecisionError("hp_type1: null vector vanished; raise the precision");
  const Complex scale = inverse(lead_poly.leading());
  t.q1 *= scale;
  t.q2 *= scale;
  t.q0 = Polynomial() - (laurent::polynomial_part(t.q1, c1) + laurent::polynomial_part(t.q2, c2));
  t.residual_order = residual_order(t, c1, c2);
  if (t.residual_order < 2 * n + 2) {
    throw PrecisionError("hp_type1: residual order " + std::to_string(t.residual_order) + " < 2n+2 at " +
                         std::to_string(bits) + " bits; raise the precision");
  }
  return t;
}

Polynomial q2_via_orthogonality(const Markov& markov, int n, Route route) {
  if (n < 1) throw std::invalid_argument("q2_via_orthogonality: needs n >= 1 (no conditions at n = 0)");
  const Precision bits = markov.precision();
  PrecisionGuard guard(bits);
  const size_t un = static_cast<size_t>(n);
  linalg::Matrix<Real> a(un, un + 1, Real::zero(bits));

  if (route == Route::e_route) {
    auto table = markov.cut_table(markov.cut_nodes_for(3 * un));
    const auto& rule = *table->rule;
    for (size_t i = 0; i < rule.size(); ++i) {
      const Real& x = rule.nodes[i];
      // Classical cos(k theta) recurrence; the factor 2 of T_k is a row scale.
      Real t_prev = orthopoly::chebyshev_value(static_cast<int>(un), x);
      Real t_cur = orthopoly::chebyshev_value(static_cast<int>(un) + 1, x);
      for (size_t j = 1; j <= un; ++j) {
        Real xk = table->h[i];
        for (size_t k = 0; k <= un; ++k) {
          a(j - 1, k).add_mul(xk, t_cur);
          xk *= x;
        }
        Real t_next = x * t_cur;
        t_next += t_next;
        t_next -= t_prev;
        t_prev = std::move(t_cur);
        t_cur = std::move(t_next);
      }
    }
  } else {
    auto rule = markov.sigma_rule(3 * un + 2 * (2 * un + 1));
    for (size_t i = 0; i < rule->nodes.size(); ++i) {
      const Real& x = rule->nodes[i];
      const Complex phi = surface::phi(Complex(x));
      const Real inv_phi = Real(bits, 1L) / phi.re;
      // H_{n+j}(x) / kappa = phi'(x) / phi(x)^(n+j+1) = 1 / (w phi^(n+j))
      Real hval = rule->weights[i] / (surface::sqrt_branch(Complex(x)).re * pow(phi.re, n + 1));
      for (size_t j = 1; j <= un; ++j) {
        Real xk = hval;
        for (size_t k = 0; k <= un; ++k) {
          a(j - 1, k) += xk;
          xk *= x;
        }
        hval *= inv_phi;
      }
    }
  }

  auto nv = linalg::null_vector(std::move(a));
  Polynomial q = Polynomial::from_real(nv.vector);
  if (q.is_zero()) throw PrecisionError("q2_via_orthogonality: null vector vanished");
  return q.monic();
}

Polynomial q2_via_orthogonality(const NikishinSystem& sys, int n, Route route, Precision bits) {
  Markov markov(sys, resolve(bits, n));
  return q2_via_orthogonality(markov, n, route);
}

TypeII hp_type2(const NikishinSystem& sys, int n, Precision bits) {
  if (n < 1) throw std::invalid_argument("hp_type2: needs n >= 1");
  sys.validate();
  bits = resolve(bits, n);
  PrecisionGuard guard(bits);
  const size_t un = static_cast<size_t>(n);
  const size_t k_max = 3 * un + 4;
  const std::vector<Complex> c1 = laurent::to_complex(f1_series(k_max, bits));
  const std::vector<Complex> c2 = f2_series(sys, k_max, bits);

  auto nv = solve_null(2 * un, 2 * un + 1, bits, all_real(c2), [&](size_t row, size_t col) -> const Complex& {
    return row < un ? c1[col + row] : c2[col + row - un];
  });
  Polynomial q(nv.vector);
  if (q.is_zero()) throw PrecisionError("hp_type2: null vector vanished; raise the precision");

  TypeII out;
  out.n = n;
  out.q = q.monic();
  out.order_f1 = order_of({&out.q}, {&c1}, un + 2, bits);
  out.order_f2 = order_of({&out.q}, {&c2}, un + 2, bits);
  if (out.order_f1 < n + 1 || out.order_f2 < n + 1) {
    throw PrecisionError("hp_type2: residual order below n+1 at " + std::to_string(bits) + " bits");
  }
  return out;
}

namespace {

// Bernstein parameter of point s relative to the segment [a, b] in the plane.
double segment_rho(std::complex<double> a, std::complex<double> b, std::complex<double> s) {
  const std::complex<double> u = (2.0 * s - a - b) / (b - a);
  const std::complex<double> w = std::sqrt(u - 1.0) * std::sqrt(u + 1.0);
  return std::max(std::abs(u + w), std::abs(u - w));
}

struct ContourNode {
  Complex z;
  Complex dz;  // weight times tangent
};

// Gauss-Legendre nodes on the rectangle |Re z| <= 1 + m, |Im z| <= m, counter-clockwise.
std::vector<ContourNode> rectangle_contour(const Markov& markov, size_t degree) {
  const NikishinSystem& sys = markov.system();
  const double margin = sys.gap_to_cut() / 2.0;
  if (!(margin > 0.0)) throw GeometryError("contour cannot separate E from F");
  const Precision bits = markov.precision();
  const Real m = Decimal(margin).at(bits);
  const Real one(bits, 1L);
  const std::array<Complex, 4> corners{Complex(-(one + m), -m), Complex(one + m, -m), Complex(one + m, m),
                                       Complex(-(one + m), m)};
  for (const auto& iv : sys.intervals) {
    const double lo = iv.lo.value(), hi = iv.hi.value();
    if (hi >= -1.0 - margin && lo <= 1.0 + margin) throw GeometryError("contour intersects F");
  }
  std::vector<ContourNode> out;
  for (size_t e = 0; e < 4; ++e) {
    const Complex& a = corners[e];
    const Complex& b = corners[(e + 1) % 4];
    double rho = 1e300;
    for (int s = 0; s <= 200; ++s) {
      rho = std::min(rho, segment_rho(a.to_std(), b.to_std(), {-1.0 + s / 100.0, 0.0}));
    }
    const size_t nodes = quad::nodes_for_accuracy(rho, bits, degree);
    auto gl = quad::gauss_legendre(nodes, bits);
    const Complex half = (b - a) / Real(bits, 2L);
    const Complex mid = (a + b) / Real(bits, 2L);
    for (size_t i = 0; i < nodes; ++i) {
      out.push_back({mid + half * Complex(gl->nodes[i]), half * Complex(gl->weights[i])});
    }
  }
  return out;
}

Real ratio(const Complex& integral, const Real& scale) {
  return scale.is_zero() ? abs(integral) : abs(integral) / scale;
}

OrthogonalityReport finish(Relation relation, std::vector<Real> rel, Precision bits) {
  OrthogonalityReport out;
  out.relation = relation;
  out.max_relative = Real::zero(bits);
  for (const auto& r : rel) out.max_relative = max(out.max_relative, r);
  out.relative = std::move(rel);
  return out;
}

OrthogonalityReport verify_impl(const Markov& markov, const Polynomial* q1, const Polynomial& q2, Relation relation,
                                const OrthogonalityParams& params) {
  const Precision bits = markov.precision();
  PrecisionGuard guard(bits);
  const int n = params.n;
  if (n < 1 && relation != Relation::remainder_contour) throw std::invalid_argument("verify_orthogonality: needs n >= 1");
  const size_t deg = static_cast<size_t>(std::max(q2.degree(), 0));
  const size_t un = static_cast<size_t>(n);
  std::vector<Real> rel;

  switch (relation) {
    case Relation::remainder_contour: {
      if (q1 == nullptr) throw std::invalid_argument("remainder_contour needs the full Hermite-Pade triple");
      auto contour = rectangle_contour(markov, deg + 2 * un);
      std::vector<Complex> integral(2 * un + 1, Complex(Real::zero(bits)));
      std::vector<Real> scale(2 * un + 1, Real::zero(bits));
      for (const auto& node : contour) {
        const Complex f1 = inverse(surface::sqrt_branch(node.z));
        Complex v = ((*q1)(node.z) * f1 + q2(node.z) * markov.f2(node.z)) * node.dz;
        for (size_t k = 0; k <= 2 * un; ++k) {
          integral[k] += v;
          scale[k] += abs(v);
          v = v * node.z;
        }
      }
      for (size_t k = 0; k <= 2 * un; ++k) rel.push_back(ratio(integral[k], scale[k]));
      break;
    }
    case Relation::contour_chebyshev: {
      auto contour = rectangle_contour(markov, deg + 2 * un);
      std::vector<Complex> integral(un, Complex(Real::zero(bits)));
      std::vector<Real> scale(un, Real::zero(bits));
      for (const auto& node : contour) {
        const Complex v = q2(node.z) * markov.f2(node.z) * node.dz;
        for (size_t j = 1; j <= un; ++j) {
          const Complex term = v * orthopoly::chebyshev_value(n + static_cast<int>(j), node.z);
          integral[j - 1] += term;
          scale[j - 1] += abs(term);
        }
      }
      for (size_t j = 0; j < un; ++j) rel.push_back(ratio(integral[j], scale[j]));
      break;
    }
    case Relation::cut_chebyshev: {
      auto table = markov.cut_table(markov.cut_nodes_for(deg + 2 * un));
      std::vector<Real> integral(un, Real::zero(bits));
      std::vector<Real> scale(un, Real::zero(bits));
      for (size_t i = 0; i < table->rule->size(); ++i) {
        const Real& x = table->rule->nodes[i];
        const Real v = q2.evaluate_real(x) * table->h[i];
        for (size_t j = 1; j <= un; ++j) {
          const Real term = v * orthopoly::chebyshev_value(n + static_cast<int>(j), x);
          integral[j - 1] += term;
          scale[j - 1] += abs(term);
        }
      }
      for (size_t j = 0; j < un; ++j) rel.push_back(ratio(Complex(integral[j]), scale[j]));
      break;
    }
    case Relation::second_kind: {
      auto rule = markov.sigma_rule(deg + 2 * (2 * un + 1));
      std::vector<Complex> integral(un, Complex(Real::zero(bits)));
      std::vector<Real> scale(un, Real::zero(bits));
      for (size_t i = 0; i < rule->nodes.size(); ++i) {
        const Complex x(rule->nodes[i]);
        const Complex phi = surface::phi(x);
        const Complex inv_phi = inverse(phi);
        Complex v = q2(x) * Complex(rule->weights[i]) * orthopoly::H_closed(n + 1, x).value;
        for (size_t j = 1; j <= un; ++j) {
          integral[j - 1] += v;
          scale[j - 1] += abs(v);
          // H_{k+1} = H_k / phi for k >= 1 (kappa_k constant).
          v = v * inv_phi;
        }
      }
      for (size_t j = 0; j < un; ++j) rel.push_back(ratio(integral[j], scale[j]));
      break;
    }
    case Relation::second_kind_weighted: {
      if (params.big_n < 1 || params.big_n > n) throw std::invalid_argument("second_kind_weighted: need 1 <= N <= n");
      if (params.points.size() + 1 < static_cast<size_t>(params.big_n)) {
        throw std::invalid_argument("second_kind_weighted: need N-1 points");
      }
      std::vector<Complex> phi_a;
      for (int j = 0; j + 1 < params.big_n; ++j) phi_a.push_back(surface::phi(params.points[static_cast<size_t>(j)]));
      auto rule = markov.sigma_rule(deg + static_cast<size_t>(params.big_n) + 2 * (un + 2));
      const size_t levels = static_cast<size_t>(params.big_n);
      std::vector<Complex> integral(levels, Complex(Real::zero(bits)));
      std::vector<Real> scale(levels, Real::zero(bits));
      const Complex one(Real(bits, 1L));
      for (size_t i = 0; i < rule->nodes.size(); ++i) {
        const Complex x(rule->nodes[i]);
        const Complex phi = surface::phi(x);
        Complex v = q2(x) * Complex(rule->weights[i]) * surface::phi_prime(x) / pow(phi, n + 2);
        for (size_t level = 0; level < levels; ++level) {
          if (level > 0) v = v * (x - params.points[level - 1]) / (one - phi * phi_a[level - 1]);
          integral[level] += v;
          scale[level] += abs(v);
        }
      }
      for (size_t l = 0; l < levels; ++l) rel.push_back(ratio(integral[l], scale[l]));
      break;
    }
  }
  return finish(relation, std::move(rel), bits);
}

}  // namespace

OrthogonalityReport verify_orthogonality(const Markov& markov, const Polynomial& q2, Relation relation,
                                         const OrthogonalityParams& params) {
  return verify_impl(markov, nullptr, q2, relation, params);
}

OrthogonalityReport verify_orthogonality(const Markov& markov, const HPTriple& triple, Relation relation,
                                         const OrthogonalityParams& params) {
  return verify_impl(markov, &triple.q1, triple.q2, relation, params);
}

}  // namespace hp
}  // namespace hpq
