#pragma once

// Dense double-precision kernels used by the equilibrium solver. Each kernel
// has a scalar reference and an AVX2/FMA variant; the variant is chosen once
// at runtime from CPUID and can be pinned with HPQ_SIMD=scalar|avx2.

#include <cstddef>
#include <string_view>

namespace hpq::simd {

enum class Isa { scalar, avx2 };

namespace scalar {
double dot(const double* a, const double* b, size_t n);
void axpy(double alpha, const double* x, double* y, size_t n);
/// y = A x for row-major A (rows x cols).
void matvec(const double* a, size_t rows, size_t cols, const double* x, double* y);
}  // namespace scalar

namespace avx2 {
bool supported();
double dot(const double* a, const double* b, size_t n);
void axpy(double alpha, const double* x, double* y, size_t n);
void matvec(const double* a, size_t rows, size_t cols, const double* x, double* y);
}  // namespace avx2

Isa active_isa();
std::string_view isa_name(Isa isa);
/// Override the dispatch choice; requesting avx2 on a machine without it
/// falls back to scalar. Returns the ISA now in effect.
Isa force_isa(Isa isa);

double dot(const double* a, const double* b, size_t n);
void axpy(double alpha, const double* x, double* y, size_t n);
void matvec(const double* a, size_t rows, size_t cols, const double* x, double* y);

}  // namespace hpq::simd
