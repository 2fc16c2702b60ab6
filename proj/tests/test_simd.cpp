#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hpq/simd/kernels.hpp"

using namespace hpq::simd;

namespace {
std::vector<double> randv(size_t n, unsigned seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(g);
  return v;
}
}  // namespace

TEST_CASE("scalar and avx2 kernels agree") {
  if (!avx2::supported()) {
    MESSAGE("avx2 not available, skipping");
    return;
  }
  for (size_t n : {0u, 1u, 3u, 4u, 7u, 16u, 33u, 1001u}) {
    const auto a = randv(n, 1), b = randv(n, 2);
    double sabs = 0.0;
    for (size_t i = 0; i < n; ++i) sabs += std::abs(a[i] * b[i]);
    CHECK(std::abs(scalar::dot(a.data(), b.data(), n) - avx2::dot(a.data(), b.data(), n)) <= 1e-15 * (sabs + 1));

    auto y1 = randv(n, 3), y2 = y1;
    scalar::axpy(0.75, a.data(), y1.data(), n);
    avx2::axpy(0.75, a.data(), y2.data(), n);
    for (size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 1e-15);
  }
  for (size_t rows : {1u, 5u, 64u}) {
    for (size_t cols : {1u, 6u, 67u}) {
      const auto m = randv(rows * cols, 4), x = randv(cols, 5);
      std::vector<double> y1(rows), y2(rows);
      scalar::matvec(m.data(), rows, cols, x.data(), y1.data());
      avx2::matvec(m.data(), rows, cols, x.data(), y2.data());
      for (size_t i = 0; i < rows; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 1e-13);
    }
  }
}

TEST_CASE("dispatch can be forced") {
  const Isa before = active_isa();
  CHECK(force_isa(Isa::scalar) == Isa::scalar);
  CHECK(isa_name(active_isa()) == "scalar");
  const auto a = randv(9, 6), b = randv(9, 7);
  CHECK(dot(a.data(), b.data(), 9) == scalar::dot(a.data(), b.data(), 9));
  const Isa now = force_isa(Isa::avx2);
  CHECK(now == (avx2::supported() ? Isa::avx2 : Isa::scalar));
  force_isa(before);
}
