#include "hpq/linalg.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace hpq::linalg {

namespace {

Precision precision_of(const Real& x) { return x.precision(); }
Precision precision_of(const Complex& z) { return z.precision(); }

void magnitude_into(Real& out, const Real& x) { mpfr_abs(out.get(), x.get(), MPFR_RNDN); }

void magnitude_into(Real& out, const Complex& z) {
  mpfr_abs(out.get(), z.re.get(), MPFR_RNDN);
  if (mpfr_cmpabs(z.im.get(), out.get()) > 0) mpfr_abs(out.get(), z.im.get(), MPFR_RNDN);
}

Real full_magnitude(const Real& x) { return abs(x); }
Real full_magnitude(const Complex& z) { return abs(z); }

}  // namespace

template <typename S>
NullVector<S> null_vector(Matrix<S> a) {
  const size_t m = a.rows();
  const size_t n = a.cols();
  if (n == 0) throw std::invalid_argument("null_vector: empty matrix");
  const Precision p = precision_of(a(0, 0));

  std::vector<size_t> perm(n);
  std::iota(perm.begin(), perm.end(), size_t{0});

  Real mag(p, 0L);
  Real best(p, 0L);
  Real largest(p, 0L);
  NullVector<S> out;
  size_t rank = 0;
  const size_t steps = std::min(m, n);
  for (size_t k = 0; k < steps; ++k) {
    size_t pi = k, pj = k;
    mpfr_set_zero(best.get(), 1);
    for (size_t i = k; i < m; ++i) {
      for (size_t j = k; j < n; ++j) {
        magnitude_into(mag, a(i, j));
        if (mpfr_cmp(mag.get(), best.get()) > 0) {
          mpfr_swap(mag.get(), best.get());
          pi = i;
          pj = j;
        }
      }
    }
    if (k == 0) {
      largest = best;
      if (largest.is_zero()) break;
    }
    // Numerically zero pivot: the remaining block carries no information.
    if (best.is_zero() || (best / largest).exponent() < -(7 * p / 8)) break;
    out.smallest_pivot_log2 = static_cast<double>((best / largest).exponent());
    if (pi != k) {
      for (size_t j = 0; j < n; ++j) swap(a(pi, j), a(k, j));
    }
    if (pj != k) {
      for (size_t i = 0; i < m; ++i) swap(a(i, pj), a(i, k));
      std::swap(perm[pj], perm[k]);
    }
    const S inv_pivot = S(Real(p, 1L)) / a(k, k);
    for (size_t i = k + 1; i < m; ++i) {
      if (a(i, k).is_zero()) continue;
      const S factor = a(i, k) * inv_pivot;
      for (size_t j = k + 1; j < n; ++j) a(i, j).sub_mul(factor, a(k, j));
      a(i, k) = S(Real::zero(p));
    }
    ++rank;
  }

  out.rank = rank;
  out.kernel_dim = n - rank;
  if (out.kernel_dim == 0) throw std::domain_error("null_vector: matrix has full column rank");

  // y[rank] = 1, remaining free variables 0, back-substitute the pivot block.
  std::vector<S> y(n, S(Real::zero(p)));
  y[rank] = S(Real(p, 1L));
  for (size_t kk = rank; kk-- > 0;) {
    S acc = S(Real::zero(p));
    for (size_t j = kk + 1; j <= rank; ++j) acc.add_mul(a(kk, j), y[j]);
    y[kk] = -(acc / a(kk, kk));
  }
  out.vector.assign(n, S(Real::zero(p)));
  for (size_t j = 0; j < n; ++j) out.vector[perm[j]] = std::move(y[j]);
  return out;
}

template <typename S>
Real relative_residual(const Matrix<S>& a, const std::vector<S>& x) {
  const Precision p = precision_of(a(0, 0));
  Real worst(p, 0L);
  Real scale(p, 0L);
  for (size_t i = 0; i < a.rows(); ++i) {
    S acc = S(Real::zero(p));
    Real row_scale(p, 0L);
    for (size_t j = 0; j < a.cols(); ++j) {
      S term = a(i, j) * x[j];
      row_scale += full_magnitude(term);
      acc += term;
    }
    worst = max(worst, full_magnitude(acc));
    scale = max(scale, row_scale);
  }
  return scale.is_zero() ? worst : worst / scale;
}

template NullVector<Real> null_vector(Matrix<Real>);
template NullVector<Complex> null_vector(Matrix<Complex>);
template Real relative_residual(const Matrix<Real>&, const std::vector<Real>&);
template Real relative_residual(const Matrix<Complex>&, const std::vector<Complex>&);

}  // namespace hpq::linalg
