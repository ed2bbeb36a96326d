#pragma once

#include <cstddef>
#include <string>

namespace lcbc::kernels {

/// Row kernels behind the grid sweeps.  Scalar reference and SIMD variants
/// are selected once at startup; both order their fused multiply-adds
/// identically, so every variant produces bit-identical results and the
/// equivalence tests compare with operator== rather than a tolerance.
///
/// weighted_sum:      out[i]  = sum_k w[k] * srcs[k][i]
/// weighted_sum_add:  out[i] += sum_k w[k] * srcs[k][i]
/// mul:               out[i]  = a[i] * b[i]
/// mul_add:           out[i] += a[i] * b[i]
struct KernelTable {
    void (*weighted_sum)(double* out, const double* const* srcs, const double* w,
                         int k, int n);
    void (*weighted_sum_add)(double* out, const double* const* srcs, const double* w,
                             int k, int n);
    void (*mul)(double* out, const double* a, const double* b, int n);
    void (*mul_add)(double* out, const double* a, const double* b, int n);
    const char* name;
};

/// Active kernel table.  Selection order: LCBC_KERNEL environment override
/// ("scalar", "avx2", "neon"), else the widest variant the CPU supports.
const KernelTable& active();

/// Forces a specific variant by name; throws if unavailable.  Used by the
/// equivalence tests.
void force(const std::string& name);

/// Names of all variants compiled into this binary.
const char* const* available(int* count);

extern const KernelTable scalar_table;
#if defined(LCBC_HAVE_AVX2_TU)
extern const KernelTable avx2_table;
#endif
#if defined(LCBC_HAVE_NEON_TU)
extern const KernelTable neon_table;
#endif

} // namespace lcbc::kernels
