#pragma once

// Dense multiprecision linear algebra: just enough to extract null vectors of
// the short-and-wide moment systems.

#include <vector>

#include "hpq/complex.hpp"

namespace hpq::linalg {

template <typename S>
class Matrix {
 public:
  Matrix(size_t rows, size_t cols, const S& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  size_t rows() const noexcept { return rows_; }
  size_t cols() const noexcept { return cols_; }
  S& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

 private:
  size_t rows_;
  size_t cols_;
  std::vector<S> data_;
};

template <typename S>
struct NullVector {
  std::vector<S> vector;
  size_t rank = 0;
  size_t kernel_dim = 0;
  /// Smallest accepted pivot relative to the largest one (log2).
  double smallest_pivot_log2 = 0.0;
};

/// A null vector of `a` by Gaussian elimination with complete pivoting.
/// Pivots below 2^(-7p/8) of the largest entry count as zero. When the kernel
/// has dimension > 1 the vector for the first free column is returned.
template <typename S>
NullVector<S> null_vector(Matrix<S> a);

/// max_i |sum_j a_ij x_j| / max_i sum_j |a_ij x_j|
template <typename S>
Real relative_residual(const Matrix<S>& a, const std::vector<S>& x);

extern template NullVector<Real> null_vector(Matrix<Real>);
extern template NullVector<Complex> null_vector(Matrix<Complex>);
extern template Real relative_residual(const Matrix<Real>&, const std::vector<Real>&);
extern template Real relative_residual(const Matrix<Complex>&, const std::vector<Complex>&);

}  // namespace hpq::linalg
