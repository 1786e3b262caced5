#include <cstdlib>
#include <string>

#include "sge/simd/kernels.hpp"

namespace sge::simd {

#ifndef SGE_HAVE_AVX2
const KernelTable* avx2_kernels() { return nullptr; }
#endif
#ifndef SGE_HAVE_NEON
const KernelTable* neon_kernels() { return nullptr; }
#endif

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "?";
}

Isa detect_isa() {
#if defined(SGE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::kAvx2;
#endif
#if defined(SGE_HAVE_NEON)
  return Isa::kNeon;
#endif
  return Isa::kScalar;
}

namespace {

const KernelTable* table_for(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return &scalar_kernels();
    case Isa::kAvx2: return avx2_kernels();
    case Isa::kNeon: return neon_kernels();
  }
  return nullptr;
}

const KernelTable& select() {
  const Isa best = detect_isa();
  if (const char* forced = std::getenv("SGE_SIMD")) {
    const std::string name(forced);
    if (name == "scalar") return scalar_kernels();
    // A request for an ISA the CPU lacks falls back to the detected one.
    if (name == "avx2" && best == Isa::kAvx2) return *avx2_kernels();
    if (name == "neon" && best == Isa::kNeon) return *neon_kernels();
  }
  return *table_for(best);
}

}  // namespace

const KernelTable& active_kernels() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace sge::simd
