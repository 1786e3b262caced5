#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace sge::simd {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view to_string(Isa isa);

/// Dense and gather kernels used by the classifier. Every table computes the
/// same quantities; vector variants may differ from the scalar reference only
/// by floating-point reassociation.
struct KernelTable {
  Isa isa;
  /// sum a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  /// x[i] *= alpha
  void (*scale)(double alpha, double* x, std::size_t n);
  /// sum x[i]^2
  double (*sum_squares)(const double* x, std::size_t n);
  /// max |x[i]|, 0 for n == 0
  double (*max_abs)(const double* x, std::size_t n);
  /// sum values[i] * w[index[i]]
  double (*gather_dot)(const std::uint32_t* index, const double* values, const double* w, std::size_t nnz);
  /// sum w[index[i]]
  double (*gather_sum)(const std::uint32_t* index, const double* w, std::size_t nnz);
};

const KernelTable& scalar_kernels();
/// nullptr when the variant was not compiled into this build.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

/// Best instruction set usable on this CPU.
Isa detect_isa();

/// Kernels picked once per process: the detected ISA unless the SGE_SIMD
/// environment variable names another one ("scalar", "avx2", "neon").
const KernelTable& active_kernels();

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active_kernels().dot(a.data(), b.data(), a.size());
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active_kernels().axpy(alpha, x.data(), y.data(), x.size());
}
inline void scale(double alpha, std::span<double> x) { active_kernels().scale(alpha, x.data(), x.size()); }
inline double sum_squares(std::span<const double> x) { return active_kernels().sum_squares(x.data(), x.size()); }
inline double max_abs(std::span<const double> x) { return active_kernels().max_abs(x.data(), x.size()); }

}  // namespace sge::simd
