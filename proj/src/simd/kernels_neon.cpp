// AArch64 only; NEON is part of the base ISA there.
#include <arm_neon.h>

#include <cmath>

#include "sge/simd/kernels.hpp"

namespace sge::simd {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t a = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), a, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale(double alpha, double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vmulq_n_f64(vld1q_f64(x + i), alpha));
  for (; i < n; ++i) x[i] *= alpha;
}

double sum_squares(const double* x, std::size_t n) { return dot(x, x, n); }

double max_abs(const double* x, std::size_t n) {
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) m = vmaxq_f64(m, vabsq_f64(vld1q_f64(x + i)));
  double r = vmaxvq_f64(m);
  for (; i < n; ++i) r = std::fmax(r, std::fabs(x[i]));
  return r;
}

double gather_dot(const std::uint32_t* index, const double* values, const double* w, std::size_t nnz) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= nnz; i += 2) {
    const double g[2] = {w[index[i]], w[index[i + 1]]};
    acc = vfmaq_f64(acc, vld1q_f64(values + i), vld1q_f64(g));
  }
  double s = vaddvq_f64(acc);
  for (; i < nnz; ++i) s += values[i] * w[index[i]];
  return s;
}

double gather_sum(const std::uint32_t* index, const double* w, std::size_t nnz) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= nnz; i += 2) {
    const double g[2] = {w[index[i]], w[index[i + 1]]};
    acc = vaddq_f64(acc, vld1q_f64(g));
  }
  double s = vaddvq_f64(acc);
  for (; i < nnz; ++i) s += w[index[i]];
  return s;
}

constexpr KernelTable kNeon{Isa::kNeon, dot, axpy, scale, sum_squares, max_abs, gather_dot, gather_sum};

}  // namespace

const KernelTable* neon_kernels() { return &kNeon; }

}  // namespace sge::simd
