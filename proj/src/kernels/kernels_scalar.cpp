#include "lcbc/kernels.hpp"

#include <cmath>

namespace lcbc::kernels {

namespace {

void scalar_weighted_sum(double* out, const double* const* srcs, const double* w,
                         int k, int n) {
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int t = 0; t < k; ++t) acc = std::fma(w[t], srcs[t][i], acc);
        out[i] = acc;
    }
}

void scalar_weighted_sum_add(double* out, const double* const* srcs, const double* w,
                             int k, int n) {
    for (int i = 0; i < n; ++i) {
        double acc = out[i];
        for (int t = 0; t < k; ++t) acc = std::fma(w[t], srcs[t][i], acc);
        out[i] = acc;
    }
}

void scalar_mul(double* out, const double* a, const double* b, int n) {
    for (int i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void scalar_mul_add(double* out, const double* a, const double* b, int n) {
    for (int i = 0; i < n; ++i) out[i] = std::fma(a[i], b[i], out[i]);
}

} // namespace

const KernelTable scalar_table = {scalar_weighted_sum, scalar_weighted_sum_add,
                                  scalar_mul, scalar_mul_add, "scalar"};

} // namespace lcbc::kernels
