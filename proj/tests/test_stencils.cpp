#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "lcbc/stencils.hpp"

using namespace lcbc;

namespace {

// Applies a centered stencil to samples of x^deg around x0 with spacing h.
double apply_to_monomial(const Stencil1D& st, int deg, double x0, double h) {
    std::vector<double> line(std::size_t(2 * st.m + 1));
    for (int s = -st.m; s <= st.m; ++s) line[std::size_t(s + st.m)] = std::pow(x0 + s * h, deg);
    return st.apply(line.data() + st.m, 1);
}

double monomial_derivative(int deg, int mu, double x) {
    double c = 1.0;
    for (int i = 0; i < mu; ++i) c *= double(deg - i);
    if (deg - mu < 0) return 0.0;
    return c * std::pow(x, deg - mu);
}

} // namespace

TEST_CASE("first and second derivative stencils are exact on matching polynomials") {
    const double h = 0.08, x0 = 0.4;
    for (int d : {2, 4, 6}) {
        auto d1 = first_derivative_stencil(d, h);
        auto d2 = second_derivative_stencil(d, h);
        CHECK(d1.m == d / 2);
        CHECK(d2.m == d / 2);
        // The truncation terms involve u^(d+1) for the first derivative and
        // u^(d+2) for the second, so exactness holds through degree d and
        // d+1 respectively.
        for (int deg = 0; deg <= d; ++deg)
            CHECK(apply_to_monomial(d1, deg, x0, h) ==
                  doctest::Approx(monomial_derivative(deg, 1, x0)).epsilon(1e-10).scale(1.0));
        for (int deg = 0; deg <= d + 1; ++deg)
            CHECK(apply_to_monomial(d2, deg, x0, h) ==
                  doctest::Approx(monomial_derivative(deg, 2, x0)).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("derivative stencils converge at design order on a transcendental") {
    // errors(h) / errors(h/2) ~ 2^d for u = sin(3x).
    const double x0 = 0.3;
    for (int d : {2, 4, 6}) {
        double err[2];
        for (int k = 0; k < 2; ++k) {
            const double h = 0.1 / (1 << k);
            auto st = second_derivative_stencil(d, h);
            std::vector<double> line(std::size_t(2 * st.m + 1));
            for (int s = -st.m; s <= st.m; ++s)
                line[std::size_t(s + st.m)] = std::sin(3.0 * (x0 + s * h));
            err[k] = std::abs(st.apply(line.data() + st.m, 1) + 9.0 * std::sin(3.0 * x0));
        }
        const double rate = std::log2(err[0] / err[1]);
        CHECK(rate == doctest::Approx(double(d)).epsilon(0.08));
    }
}

TEST_CASE("centered_table reproduces interpolatory derivatives") {
    const double h = 0.05;
    for (int m : {1, 2, 3}) {
        for (int mu = 0; mu <= 2 * m; ++mu) {
            auto st = centered_table(mu, m, h);
            CHECK(st.m == m);
            // Exact on all polynomials of degree <= 2m, up to the roundoff
            // floor of the cancellation: weights scale as h^-mu, so measure
            // against the sum of |weight * sample| actually accumulated.
            for (int deg = 0; deg <= 2 * m; ++deg) {
                const double got = apply_to_monomial(st, deg, 0.7, h);
                const double want = monomial_derivative(deg, mu, 0.7);
                double wnorm = 0.0;
                for (int s = -m; s <= m; ++s)
                    wnorm += std::abs(st.w[std::size_t(s + m)]) *
                             std::abs(std::pow(0.7 + s * h, deg));
                CHECK(std::abs(got - want) <= 1e-13 * (1.0 + wnorm));
            }
        }
    }
    // mu = 0 is the cardinal-value row: picks the center sample exactly.
    auto id = centered_table(0, 2, 0.3);
    for (int s = -2; s <= 2; ++s)
        CHECK(id.w[std::size_t(s + 2)] == doctest::Approx(s == 0 ? 1.0 : 0.0).epsilon(1e-13));
}

TEST_CASE("centered_table validates its arguments") {
    CHECK_THROWS_AS(centered_table(5, 2, 0.1), std::invalid_argument);  // mu > 2m
    CHECK_THROWS_AS(centered_table(0, 0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(centered_table(-1, 2, 0.1), std::invalid_argument);
}

TEST_CASE("centered_for_accuracy uses the minimal half-width") {
    CHECK(centered_for_accuracy(1, 1, 0.1).m == 1);
    CHECK(centered_for_accuracy(1, 2, 0.1).m == 2);
    CHECK(centered_for_accuracy(2, 1, 0.1).m == 1);
    CHECK(centered_for_accuracy(3, 1, 0.1).m == 2);
    CHECK(centered_for_accuracy(4, 2, 0.1).m == 3);
    CHECK(centered_for_accuracy(0, 1, 0.1).m == 1);
}

TEST_CASE("LagrangeBasis is cardinal at nodes and sums to one") {
    for (int p : {1, 2, 3}) {
        LagrangeBasis basis(p);
        for (int m = -p; m <= p; ++m)
            for (int n = -p; n <= p; ++n)
                CHECK(basis.value(m, double(n)) == (m == n ? 1.0 : 0.0));  // exact at nodes

        for (double z : {-0.83, 0.21, 1.47}) {
            double sum = 0.0;
            for (int m = -p; m <= p; ++m) sum += basis.value(m, z);
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("LagrangeBasis derivatives at the center match centered_table weights") {
    // Two independent constructions of the same interpolatory derivative
    // weights: cardinal-polynomial derivatives vs the Vandermonde table.
    for (int p : {1, 2, 3}) {
        LagrangeBasis basis(p);
        for (int mu = 0; mu <= 2 * p; ++mu) {
            auto st = centered_table(mu, p, 1.0);
            double wmax = 0.0;
            for (double w : st.w) wmax = std::max(wmax, std::abs(w));
            for (int s = -p; s <= p; ++s)
                CHECK(std::abs(basis.derivative(s, 0.0, mu) - st.w[std::size_t(s + p)]) <=
                      1e-12 * (1.0 + wmax));
        }
    }
}
