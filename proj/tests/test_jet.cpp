#include <cmath>

#include "doctest.h"
#include "lcbc/jet.hpp"

using lcbc::Jet;
using lcbc::TJet;

namespace {

// Coefficient-wise comparison with an absolute-plus-relative bound; tol = 0
// demands bitwise equality.
template <std::size_t N>
void check_jet_equal(const Jet<N>& a, const Jet<N>& b, double tol) {
    for (std::size_t m = 0; m < N; ++m) {
        if (tol == 0.0)
            CHECK(a.c[m] == b.c[m]);
        else
            CHECK(std::abs(a.c[m] - b.c[m]) <= tol * (1.0 + std::abs(b.c[m])));
    }
}

} // namespace

TEST_CASE("jet variable and polynomial arithmetic") {
    // f(t) = t^3 at t = 2: value 8, f' = 12, f'' = 12, f''' = 6, f'''' = 0.
    auto t = Jet<6>::variable(2.0);
    auto f = t * t * t;
    CHECK(f.value() == doctest::Approx(8.0));
    CHECK(f.derivative(1) == doctest::Approx(12.0));
    CHECK(f.derivative(2) == doctest::Approx(12.0));
    CHECK(f.derivative(3) == doctest::Approx(6.0));
    CHECK(f.derivative(4) == doctest::Approx(0.0));
    CHECK(f.derivative(7) == 0.0);  // beyond jet order reads as zero

    // (2t + 1)(t - 3) = 2t^2 - 5t - 3.
    auto g = (2.0 * t + Jet<6>(1.0)) * (t - Jet<6>(3.0));
    CHECK(g.value() == doctest::Approx(2.0 * 4 - 5.0 * 2 - 3));
    CHECK(g.derivative(1) == doctest::Approx(4.0 * 2 - 5.0));
    CHECK(g.derivative(2) == doctest::Approx(4.0));
}

TEST_CASE("jet derivative uses factorial scaling, not raw coefficients") {
    Jet<5> j;
    j.c[3] = 2.0;
    CHECK(j.derivative(3) == doctest::Approx(12.0));  // 2 * 3!
    CHECK(j.derivative(0) == 0.0);
}

TEST_CASE("jet elementary functions satisfy algebraic identities") {
    auto t = Jet<8>::variable(0.37);

    auto s = sin(t), c = cos(t);
    check_jet_equal(s * s + c * c, Jet<8>(1.0), 1e-14);

    auto e = exp(t), em = exp(-t);
    check_jet_equal(e * em, Jet<8>(1.0), 1e-14);

    auto a = Jet<8>(2.5) + 0.5 * t * t;  // positive argument
    check_jet_equal(sqrt(a) * sqrt(a), a, 1e-14);
    check_jet_equal(a * recip(a), Jet<8>(1.0), 1e-14);
    check_jet_equal(a / a, Jet<8>(1.0), 1e-14);
}

TEST_CASE("jet elementary functions match analytic derivatives") {
    const double t0 = 0.3;
    auto t = Jet<4>::variable(t0);
    auto f = exp(sin(t));
    const double v = std::exp(std::sin(t0));
    CHECK(f.value() == doctest::Approx(v));
    CHECK(f.derivative(1) == doctest::Approx(std::cos(t0) * v));
    CHECK(f.derivative(2) ==
          doctest::Approx((std::cos(t0) * std::cos(t0) - std::sin(t0)) * v));
}

TEST_CASE("dt_pow shifts a jet to its q-th time derivative") {
    // f(t) = t^5; f'' = 20 t^3.
    auto t = Jet<8>::variable(1.3);
    auto f = t * t * t * t * t;
    auto f2 = dt_pow(f, 2);
    const double t0 = 1.3;
    CHECK(f2.value() == doctest::Approx(20.0 * t0 * t0 * t0));
    CHECK(f2.derivative(1) == doctest::Approx(60.0 * t0 * t0));
    CHECK(f2.derivative(2) == doctest::Approx(120.0 * t0));
    CHECK(f2.derivative(3) == doctest::Approx(120.0));

    // q = 0 is the identity; derivatives commute: dt_pow(dt_pow(f,1),1) == dt_pow(f,2).
    check_jet_equal(dt_pow(f, 0), f, 0.0);
    check_jet_equal(dt_pow(dt_pow(f, 1), 1), dt_pow(f, 2), 1e-14);

    // Against the derivative() accessor on the undifferentiated jet.
    CHECK(dt_pow(f, 3).value() == doctest::Approx(f.derivative(3)));
}

TEST_CASE("TJet order covers the sixth-order start terms") {
    static_assert(lcbc::kTimeJetOrder >= 8);
    auto t = TJet::variable(0.0);
    auto f = cos(3.0 * t);
    // d^6/dt^6 cos(3t) at 0 = -3^6.
    CHECK(f.derivative(6) == doctest::Approx(-729.0));
}
