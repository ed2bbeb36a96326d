#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "lcbc/mapping.hpp"
#include "lcbc/problem.hpp"

using namespace lcbc;

namespace {

// Analytic test solution u = sin(a x) cos(b y) phi(t), phi = cos(c t),
// with all partial closures, in whatever coordinates it is used in.
ExactSolution trig_exact(double a, double b, double c) {
    auto phi = [c](const TJet& t) { return cos(c * t); };
    ExactSolution e;
    e.value = [=](double x, double y, const TJet& t) {
        return std::sin(a * x) * std::cos(b * y) * phi(t);
    };
    e.dx = [=](double x, double y, const TJet& t) {
        return a * std::cos(a * x) * std::cos(b * y) * phi(t);
    };
    e.dy = [=](double x, double y, const TJet& t) {
        return -b * std::sin(a * x) * std::sin(b * y) * phi(t);
    };
    e.dxx = [=](double x, double y, const TJet& t) {
        return -a * a * std::sin(a * x) * std::cos(b * y) * phi(t);
    };
    e.dxy = [=](double x, double y, const TJet& t) {
        return -a * b * std::cos(a * x) * std::sin(b * y) * phi(t);
    };
    e.dyy = [=](double x, double y, const TJet& t) {
        return -b * b * std::sin(a * x) * std::cos(b * y) * phi(t);
    };
    return e;
}

double comp_Q_of_exact(const CoefficientField& c, const ExactSolution& u, double x, double y,
                       double t) {
    TJet tj(t);
    return c.c11(x, y) * u.dxx(x, y, tj).value() + 2.0 * c.c12(x, y) * u.dxy(x, y, tj).value() +
           c.c22(x, y) * u.dyy(x, y, tj).value() + c.c1(x, y) * u.dx(x, y, tj).value() +
           c.c2(x, y) * u.dy(x, y, tj).value() + c.c0(x, y) * u.value(x, y, tj).value();
}

} // namespace

TEST_CASE("CoefficientField constants and tables") {
    auto cf = CoefficientField::constants(2, 0.5, 3, -1, 0, 4);
    CHECK(cf.c11(0.3, 0.9) == 2.0);
    CHECK(cf.c12(0.1, 0.1) == 0.5);
    CHECK(cf.c0(1.0, 0.0) == 4.0);

    GridSpec g(8, 8, 2);
    auto ct = CoefficientTables::build(g, cf);
    CHECK(ct.has_cross);
    CHECK(ct.has_c1);
    CHECK_FALSE(ct.has_c2);
    CHECK(ct.has_c0);
    CHECK(ct.c11(3, 5) == 2.0);
    CHECK(ct.c12(-2, 10) == 0.5);  // sampled on the extended grid too
}

TEST_CASE("validate_ellipticity accepts elliptic and rejects degenerate operators") {
    GridSpec g(8, 8, 1);
    CHECK_NOTHROW(validate_ellipticity(g, CoefficientField::laplacian()));
    CHECK_NOTHROW(validate_ellipticity(g, CoefficientField::constants(1, 0.4, 1, 2, 2, 2)));
    CHECK_THROWS_AS(validate_ellipticity(g, CoefficientField::constants(1, 1.2, 1, 0, 0, 0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate_ellipticity(g, CoefficientField::constants(-1, 0, 1, 0, 0, 0)),
                    std::invalid_argument);
}

TEST_CASE("manufactured_data produces a forcing that closes the PDE") {
    auto exact = trig_exact(1.3, 0.7, 2.0);

    for (int q : {0, 1, 2}) {
        PdeProblem prob;
        prob.q = q;
        prob.coeff = CoefficientField::constants(1.5, 0.2, 0.8, 0.3, -0.6, 1.1);
        manufactured_data(prob, exact);
        REQUIRE(prob.has_forcing());
        REQUIRE(prob.exact.has_value());

        for (double x : {0.2, 0.7}) {
            for (double y : {0.15, 0.9}) {
                const double t = 0.4;
                // f must equal d^q u/dt^q - Q u pointwise.
                auto tj = TJet::variable(t);
                const double f = prob.forcing(x, y, tj).value();
                const double qu = comp_Q_of_exact(prob.coeff, exact, x, y, t);
                const double dtq = exact.value(x, y, TJet::variable(t)).derivative(std::size_t(q));
                const double lhs = (q == 0) ? 0.0 : dtq;
                CHECK(f == doctest::Approx(lhs - qu).epsilon(1e-12).scale(1.0));
            }
        }

        // Initial data mirrors the exact solution.
        CHECK(prob.u0(0.3, 0.4) == doctest::Approx(exact.at(0.3, 0.4, 0.0)));
        if (q == 2)
            CHECK(prob.u1(0.3, 0.4) == doctest::Approx(exact.dt_at(0.3, 0.4, 0.0)));
    }
}

TEST_CASE("manufactured boundary data follows the declared kinds") {
    auto exact = trig_exact(0.9, 1.4, 1.0);
    PdeProblem prob;
    prob.q = 2;
    prob.coeff = CoefficientField::laplacian();
    prob.bc[side_index(Side::left)].kind = BoundaryKind::dirichlet;
    prob.bc[side_index(Side::right)].kind = BoundaryKind::dirichlet;
    prob.bc[side_index(Side::bottom)].kind = BoundaryKind::neumann;
    prob.bc[side_index(Side::top)].kind = BoundaryKind::neumann;
    manufactured_data(prob, exact);

    const double t = 0.6, tau = 0.35;
    auto tj = TJet::variable(t);

    // Dirichlet sides carry u itself; the tangential coordinate is y on
    // left/right and x on bottom/top.
    CHECK(prob.side(Side::left).g(tau, tj).value() ==
          doctest::Approx(exact.value(0.0, tau, tj).value()));
    CHECK(prob.side(Side::right).g(tau, tj).value() ==
          doctest::Approx(exact.value(1.0, tau, tj).value()));

    // Neumann sides carry the raw computational derivative (du/dy), no
    // outward-normal sign flip on the bottom.
    CHECK(prob.side(Side::bottom).g(tau, tj).value() ==
          doctest::Approx(exact.dy(tau, 0.0, tj).value()));
    CHECK(prob.side(Side::top).g(tau, tj).value() ==
          doctest::Approx(exact.dy(tau, 1.0, tj).value()));

    // Time derivatives ride along in the jet.
    const double dt_g = prob.side(Side::left).g(tau, tj).derivative(1);
    const double want = exact.value(0.0, tau, TJet::variable(t)).derivative(1);
    CHECK(dt_g == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("annulus mapping pulls the Laplacian back to the published operator") {
    // For rho1=1, rho2=2, theta2=pi/2 the mapped Laplacian is
    //   Q u = u_rr + 4/(pi^2 (1+r)^2) u_ss + 1/(1+r) u_r.
    auto map = Mapping::annulus(1.0, 2.0, M_PI / 2.0);
    auto cf = mapped_problem(map, PhysicalOperator::laplacian());

    for (double r : {0.0, 0.35, 1.0}) {
        for (double s : {0.1, 0.8}) {
            CHECK(cf.c11(r, s) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(cf.c12(r, s) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
            CHECK(cf.c22(r, s) ==
                  doctest::Approx(4.0 / (M_PI * M_PI * (1.0 + r) * (1.0 + r))).epsilon(1e-12));
            CHECK(cf.c1(r, s) == doctest::Approx(1.0 / (1.0 + r)).epsilon(1e-12));
            CHECK(cf.c2(r, s) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
            CHECK(cf.c0(r, s) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("mapping evaluations have consistent analytic derivatives") {
    for (auto map : {Mapping::annulus(1.0, 2.0, M_PI), Mapping::wavy_channel(-1, 1, -1, 1, 0.1)}) {
        const double h = 1e-5;
        for (double r : {0.2, 0.8}) {
            for (double s : {0.3, 0.6}) {
                auto e = map.at(r, s);
                auto er = map.at(r + h, s), el = map.at(r - h, s);
                auto es = map.at(r, s + h), eb = map.at(r, s - h);
                CHECK(e.xr == doctest::Approx((er.x - el.x) / (2 * h)).epsilon(1e-7));
                CHECK(e.yr == doctest::Approx((er.y - el.y) / (2 * h)).epsilon(1e-7));
                CHECK(e.xs == doctest::Approx((es.x - eb.x) / (2 * h)).epsilon(1e-7).scale(1.0));
                CHECK(e.ys == doctest::Approx((es.y - eb.y) / (2 * h)).epsilon(1e-7));
                CHECK(e.xrr ==
                      doctest::Approx((er.x - 2 * e.x + el.x) / (h * h)).epsilon(1e-4).scale(1.0));
                CHECK(e.yss ==
                      doctest::Approx((es.y - 2 * e.y + eb.y) / (h * h)).epsilon(1e-4).scale(1.0));
                CHECK(e.xrs == doctest::Approx((map.at(r + h, s + h).x - map.at(r + h, s - h).x -
                                                map.at(r - h, s + h).x + map.at(r - h, s - h).x) /
                                               (4 * h * h))
                                   .epsilon(1e-4)
                                   .scale(1.0));
            }
        }
    }
}

TEST_CASE("mapped operator and composed solution satisfy the pullback identity") {
    // Q_comp (u o G) must equal (Q_phys u) o G.  With Q_phys the Laplacian
    // and u = sin(x)cos(y), Delta u = -2u, so the mapped operator applied to
    // the composed solution must equal -2 times the composed value.
    auto phys_u = trig_exact(1.0, 1.0, 0.0);

    for (auto map : {Mapping::annulus(1.0, 2.0, M_PI / 2.0),
                     Mapping::wavy_channel(-1, 1, -1, 1, 0.1)}) {
        auto cf = mapped_problem(map, PhysicalOperator::laplacian());
        auto comp_u = compose_exact(phys_u, map);

        for (double r : {0.15, 0.5, 0.95}) {
            for (double s : {0.25, 0.7}) {
                const double qu = comp_Q_of_exact(cf, comp_u, r, s, 0.0);
                const double want = -2.0 * comp_u.value(r, s, TJet(0.0)).value();
                CHECK(qu == doctest::Approx(want).epsilon(1e-9).scale(1.0));
            }
        }
    }
}

TEST_CASE("advection-diffusion pullback matches hand-computed physical operator") {
    // Q_phys = D Lap - v . grad + gamma on u = sin(x)cos(y):
    //   Q u = -2 D u - v1 cos(x)cos(y) + v2 sin(x)sin(y) + gamma u.
    const double D = 0.2, v1 = 0.5, v2 = 0.3, gamma = 1.0;
    auto phys_u = trig_exact(1.0, 1.0, 0.0);
    auto map = Mapping::wavy_channel(-1, 1, -1, 1, 0.1);
    auto cf = mapped_problem(map, PhysicalOperator::advection_diffusion(D, v1, v2, gamma));
    auto comp_u = compose_exact(phys_u, map);

    for (double r : {0.2, 0.65}) {
        for (double s : {0.4, 0.85}) {
            auto e = map.at(r, s);
            const double want = -2.0 * D * std::sin(e.x) * std::cos(e.y) -
                                v1 * std::cos(e.x) * std::cos(e.y) +
                                v2 * std::sin(e.x) * std::sin(e.y) +
                                gamma * std::sin(e.x) * std::cos(e.y);
            CHECK(comp_Q_of_exact(cf, comp_u, r, s, 0.0) ==
                  doctest::Approx(want).epsilon(1e-9).scale(1.0));
        }
    }
}

TEST_CASE("identity mapping is a no-op pullback") {
    auto cf = mapped_problem(Mapping::identity(), PhysicalOperator::laplacian());
    CHECK(cf.c11(0.3, 0.6) == doctest::Approx(1.0));
    CHECK(cf.c22(0.3, 0.6) == doctest::Approx(1.0));
    CHECK(cf.c12(0.3, 0.6) == doctest::Approx(0.0).scale(1.0));
    CHECK(cf.c1(0.3, 0.6) == doctest::Approx(0.0).scale(1.0));
}
