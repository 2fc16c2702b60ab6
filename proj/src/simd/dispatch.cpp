#include <atomic>
#include <cstdlib>
#include <string>

#include "hpq/simd/kernels.hpp"

namespace hpq::simd {

// Lives here rather than in avx2.cpp so the check itself is built without
// AVX2 code generation.
bool avx2::supported() {
#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

Isa detect() {
  if (const char* env = std::getenv("HPQ_SIMD")) {
    if (std::string(env) == "scalar") return Isa::scalar;
  }
  return avx2::supported() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

Isa active_isa() { return current().load(std::memory_order_relaxed); }

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

Isa force_isa(Isa isa) {
  if (isa == Isa::avx2 && !avx2::supported()) isa = Isa::scalar;
  current().store(isa, std::memory_order_relaxed);
  return isa;
}

double dot(const double* a, const double* b, size_t n) {
  return active_isa() == Isa::avx2 ? avx2::dot(a, b, n) : scalar::dot(a, b, n);
}

void axpy(double alpha, const double* x, double* y, size_t n) {
  if (active_isa() == Isa::avx2) {
    avx2::axpy(alpha, x, y, n);
  } else {
    scalar::axpy(alpha, x, y, n);
  }
}

void matvec(const double* a, size_t rows, size_t cols, const double* x, double* y) {
  if (active_isa() == Isa::avx2) {
    avx2::matvec(a, rows, cols, x, y);
  } else {
    scalar::matvec(a, rows, cols, x, y);
  }
}

}  // namespace hpq::simd
