#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "lcbc/kernels.hpp"

using namespace lcbc;

namespace {

struct KernelInputs {
    int k, n;
    std::vector<std::vector<double>> src_rows;
    std::vector<const double*> srcs;
    std::vector<double> w, a, b, out0;

    KernelInputs(int k_, int n_, unsigned seed) : k(k_), n(n_) {
        std::mt19937 rng(seed);
        std::uniform_real_distribution<double> dist(-2.0, 2.0);
        src_rows.resize(std::size_t(k));
        for (auto& row : src_rows) {
            row.resize(std::size_t(n));
            for (auto& v : row) v = dist(rng);
            srcs.push_back(row.data());
        }
        w.resize(std::size_t(k));
        for (auto& v : w) v = dist(rng);
        a.resize(std::size_t(n));
        b.resize(std::size_t(n));
        out0.resize(std::size_t(n));
        for (auto& v : a) v = dist(rng);
        for (auto& v : b) v = dist(rng);
        for (auto& v : out0) v = dist(rng);
    }
};

bool has_variant(const std::string& name) {
    int count = 0;
    const char* const* names = kernels::available(&count);
    for (int i = 0; i < count; ++i)
        if (name == names[i]) return true;
    return false;
}

} // namespace

TEST_CASE("scalar kernels compute the documented sums") {
    const auto& K = kernels::scalar_table;
    KernelInputs in(5, 23, 42u);

    std::vector<double> out = in.out0;
    K.weighted_sum(out.data(), in.srcs.data(), in.w.data(), in.k, in.n);
    for (int i = 0; i < in.n; ++i) {
        double want = 0.0;
        for (int kk = 0; kk < in.k; ++kk) want += in.w[std::size_t(kk)] * in.srcs[std::size_t(kk)][i];
        CHECK(out[std::size_t(i)] == doctest::Approx(want).epsilon(1e-14));
    }

    out = in.out0;
    K.weighted_sum_add(out.data(), in.srcs.data(), in.w.data(), in.k, in.n);
    for (int i = 0; i < in.n; ++i) {
        double want = in.out0[std::size_t(i)];
        for (int kk = 0; kk < in.k; ++kk) want += in.w[std::size_t(kk)] * in.srcs[std::size_t(kk)][i];
        CHECK(out[std::size_t(i)] == doctest::Approx(want).epsilon(1e-14));
    }

    out = in.out0;
    K.mul(out.data(), in.a.data(), in.b.data(), in.n);
    for (int i = 0; i < in.n; ++i)
        CHECK(out[std::size_t(i)] == in.a[std::size_t(i)] * in.b[std::size_t(i)]);

    out = in.out0;
    K.mul_add(out.data(), in.a.data(), in.b.data(), in.n);
    for (int i = 0; i < in.n; ++i)
        CHECK(out[std::size_t(i)] ==
              doctest::Approx(in.out0[std::size_t(i)] + in.a[std::size_t(i)] * in.b[std::size_t(i)])
                  .epsilon(1e-15));
}

TEST_CASE("SIMD variants are bit-identical to the scalar reference") {
    int count = 0;
    const char* const* names = kernels::available(&count);
    REQUIRE(count >= 1);

    // All widths that exercise full vectors plus every remainder lane count,
    // and stencil tap counts through the widest (2p+1)^2-free case used by
    // row sweeps (k up to 9).
    for (int variant = 0; variant < count; ++variant) {
        const std::string name = names[variant];
        if (name == std::string("scalar")) continue;
        for (int k : {1, 3, 5, 7, 9}) {
            for (int n : {1, 2, 3, 4, 5, 7, 8, 16, 31, 64, 101}) {
                KernelInputs in(k, n, unsigned(1000 * k + n));

                kernels::force("scalar");
                std::vector<double> ref = in.out0;
                kernels::active().weighted_sum(ref.data(), in.srcs.data(), in.w.data(), k, n);
                std::vector<double> ref_add = in.out0;
                kernels::active().weighted_sum_add(ref_add.data(), in.srcs.data(), in.w.data(), k, n);
                std::vector<double> ref_mul = in.out0;
                kernels::active().mul(ref_mul.data(), in.a.data(), in.b.data(), n);
                std::vector<double> ref_fma = in.out0;
                kernels::active().mul_add(ref_fma.data(), in.a.data(), in.b.data(), n);

                kernels::force(name);
                std::vector<double> got = in.out0;
                kernels::active().weighted_sum(got.data(), in.srcs.data(), in.w.data(), k, n);
                std::vector<double> got_add = in.out0;
                kernels::active().weighted_sum_add(got_add.data(), in.srcs.data(), in.w.data(), k, n);
                std::vector<double> got_mul = in.out0;
                kernels::active().mul(got_mul.data(), in.a.data(), in.b.data(), n);
                std::vector<double> got_fma = in.out0;
                kernels::active().mul_add(got_fma.data(), in.a.data(), in.b.data(), n);

                // Bit-identical contract: matched FMA ordering, compare with
                // memcmp, no tolerance.
                CHECK(std::memcmp(ref.data(), got.data(), sizeof(double) * std::size_t(n)) == 0);
                CHECK(std::memcmp(ref_add.data(), got_add.data(), sizeof(double) * std::size_t(n)) == 0);
                CHECK(std::memcmp(ref_mul.data(), got_mul.data(), sizeof(double) * std::size_t(n)) == 0);
                CHECK(std::memcmp(ref_fma.data(), got_fma.data(), sizeof(double) * std::size_t(n)) == 0);
            }
        }
    }
    kernels::force("scalar");
}

TEST_CASE("kernel variant selection") {
    CHECK(has_variant("scalar"));

    kernels::force("scalar");
    CHECK(std::string(kernels::active().name) == "scalar");

#if defined(__AVX2__) || defined(LCBC_HAVE_AVX2_TU)
    if (has_variant("avx2")) {
        kernels::force("avx2");
        CHECK(std::string(kernels::active().name) == "avx2");
        kernels::force("scalar");
    }
#endif

    CHECK_THROWS(kernels::force("no-such-variant"));
    CHECK(std::string(kernels::active().name) == "scalar");
}
