#include "hpq/laurent.hpp"

#include <stdexcept>

namespace hpq::laurent {

namespace {

const Complex& series_at(const std::vector<Complex>& c, size_t k) {
  if (k >= c.size()) throw std::out_of_range("Laurent series truncated too early");
  return c[k];
}

}  // namespace

Complex negative_coeff(const Polynomial& q, const std::vector<Complex>& c, size_t m) {
  Complex acc(Real::zero(q.precision()));
  for (int j = 0; j <= q.degree(); ++j) acc.add_mul(q.coeffs()[static_cast<size_t>(j)], series_at(c, j + m));
  return acc;
}

Real negative_coeff_scale(const Polynomial& q, const std::vector<Complex>& c, size_t m) {
  Real acc(q.precision(), 0L);
  for (int j = 0; j <= q.degree(); ++j) acc += abs(q.coeffs()[static_cast<size_t>(j)] * series_at(c, j + m));
  return acc;
}

Polynomial polynomial_part(const Polynomial& q, const std::vector<Complex>& c) {
  std::vector<Complex> out;
  for (int j = 0; j < q.degree(); ++j) {
    Complex acc(Real::zero(q.precision()));
    for (int i = j + 1; i <= q.degree(); ++i) {
      acc.add_mul(q.coeffs()[static_cast<size_t>(i)], series_at(c, static_cast<size_t>(i - j - 1)));
    }
    out.push_back(std::move(acc));
  }
  return Polynomial(std::move(out));
}

}  // namespace hpq::laurent
