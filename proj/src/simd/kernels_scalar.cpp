#include <cmath>

#include "sge/simd/kernels.hpp"

namespace sge::simd {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale(double alpha, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

double sum_squares(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

double max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, std::fabs(x[i]));
  return m;
}

double gather_dot(const std::uint32_t* index, const double* values, const double* w, std::size_t nnz) {
  double s = 0.0;
  for (std::size_t i = 0; i < nnz; ++i) s += values[i] * w[index[i]];
  return s;
}

double gather_sum(const std::uint32_t* index, const double* w, std::size_t nnz) {
  double s = 0.0;
  for (std::size_t i = 0; i < nnz; ++i) s += w[index[i]];
  return s;
}

constexpr KernelTable kScalar{Isa::kScalar, dot, axpy, scale, sum_squares, max_abs, gather_dot, gather_sum};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace sge::simd
