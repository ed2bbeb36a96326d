#include "lcbc/kernels.hpp"

#if defined(LCBC_HAVE_AVX2_TU)

#include <immintrin.h>

#include <cmath>

namespace lcbc::kernels {

namespace {

// Vector lanes accumulate independent output points; the reduction over taps
// runs in the same order as the scalar kernel, so results are bit-identical.

void avx2_weighted_sum(double* out, const double* const* srcs, const double* w,
                       int k, int n) {
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (int t = 0; t < k; ++t) {
            const __m256d v = _mm256_loadu_pd(srcs[t] + i);
            acc = _mm256_fmadd_pd(_mm256_set1_pd(w[t]), v, acc);
        }
        _mm256_storeu_pd(out + i, acc);
    }
    for (; i < n; ++i) {
        double acc = 0.0;
        for (int t = 0; t < k; ++t) acc = std::fma(w[t], srcs[t][i], acc);
        out[i] = acc;
    }
}

void avx2_weighted_sum_add(double* out, const double* const* srcs, const double* w,
                           int k, int n) {
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d acc = _mm256_loadu_pd(out + i);
        for (int t = 0; t < k; ++t) {
            const __m256d v = _mm256_loadu_pd(srcs[t] + i);
            acc = _mm256_fmadd_pd(_mm256_set1_pd(w[t]), v, acc);
        }
        _mm256_storeu_pd(out + i, acc);
    }
    for (; i < n; ++i) {
        double acc = out[i];
        for (int t = 0; t < k; ++t) acc = std::fma(w[t], srcs[t][i], acc);
        out[i] = acc;
    }
}

void avx2_mul(double* out, const double* a, const double* b, int n) {
    int i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i),
                                                _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

void avx2_mul_add(double* out, const double* a, const double* b, int n) {
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i),
                                            _mm256_loadu_pd(b + i),
                                            _mm256_loadu_pd(out + i));
        _mm256_storeu_pd(out + i, acc);
    }
    for (; i < n; ++i) out[i] = std::fma(a[i], b[i], out[i]);
}

} // namespace

const KernelTable avx2_table = {avx2_weighted_sum, avx2_weighted_sum_add,
                                avx2_mul, avx2_mul_add, "avx2"};

} // namespace lcbc::kernels

#endif // LCBC_HAVE_AVX2_TU
