#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "lcbc/analysis.hpp"
#include "lcbc/lcbc.hpp"

using namespace lcbc;

namespace {

/// Constant-coefficient patch at given half-widths and unit spacings.
PatchCoeffs constant_coeffs(int wx, int wy, double c11, double c12, double c22, double c1,
                            double c2, double c0, double dxh = 1.0, double dyh = 1.0) {
    PatchCoeffs pc;
    auto fill = [&](LocalPatch& P, double v) {
        P = LocalPatch(wx, wy);
        for (auto& e : P.v) e = v;
    };
    fill(pc.c11, c11);
    fill(pc.c12, c12);
    fill(pc.c22, c22);
    fill(pc.c1, c1);
    fill(pc.c2, c2);
    fill(pc.c0, c0);
    pc.dxh = dxh;
    pc.dyh = dyh;
    return pc;
}

struct LogDet {
    double logabs = 0.0;
    int sign = 0;
};

LogDet log_det(const Eigen::MatrixXd& A) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    LogDet r;
    r.sign = int(lu.permutationP().determinant());
    for (int i = 0; i < A.rows(); ++i) {
        const double d = lu.matrixLU()(i, i);
        if (d == 0.0) {
            r.sign = 0;
            return r;
        }
        if (d < 0.0) r.sign = -r.sign;
        r.logabs += std::log(std::abs(d));
    }
    return r;
}

LcbcSystem face_at_xi(BoundaryKind kind, int p, double xi) {
    // Unit spacings, c11 = 1: xi equals c1 directly.
    const PatchCoeffs pc = constant_coeffs(p, 2 * p, 1.0, 0.0, 1.0, xi, 0.0, 0.0);
    return assemble_local_face(kind, pc, p);
}

} // namespace

TEST_CASE("face system structure: sizes, ordering, block form") {
    for (BoundaryKind kind : {BoundaryKind::dirichlet, BoundaryKind::neumann}) {
        for (int p = 1; p <= 3; ++p) {
            CAPTURE(int(kind));
            CAPTURE(p);
            const int n = 2 * p + 1;
            const PatchCoeffs pc = constant_coeffs(p, 2 * p, 2.0, 0.3, 1.5, 0.4, -0.2, 0.1);
            const LcbcSystem S = assemble_local_face(kind, pc, p);

            CHECK(S.m == n * n);
            CHECK(S.m1 == p * n);
            CHECK(S.m2 == (p + 1) * n);
            CHECK(!S.is_corner);

            // Columns: ghosts (a < 0) first, lexicographic; then data (a >= 0).
            for (int c = 0; c < S.m1; ++c) CHECK(S.cols[std::size_t(c)].first < 0);
            for (int c = S.m1; c < S.m; ++c) CHECK(S.cols[std::size_t(c)].first >= 0);
            for (int c = 1; c < S.m1; ++c)
                CHECK(S.cols[std::size_t(c - 1)] < S.cols[std::size_t(c)]);

            // Ghost assignments: the inward-normal line only.
            REQUIRE(int(S.ghosts.size()) == p);
            for (int k = 0; k < p; ++k) {
                CHECK(S.ghosts[std::size_t(k)].first == -(k + 1));
                CHECK(S.ghosts[std::size_t(k)].second == 0);
            }

            // Expected constraint ladder ids.
            std::vector<int> want_nus;
            if (kind == BoundaryKind::dirichlet)
                for (int nu = 1; nu <= p; ++nu) want_nus.push_back(nu);
            else
                for (int nu = 0; nu <= p - 1; ++nu) want_nus.push_back(nu);
            CHECK(S.nus[0] == want_nus);
            CHECK(S.nus[1].empty());

            // Row layout: cbc rows (nu-major, mu ascending), then data rows.
            REQUIRE(int(S.rows.size()) == S.m);
            int row = 0;
            for (std::size_t l = 0; l < want_nus.size(); ++l)
                for (int mu = 0; mu <= 2 * p; ++mu, ++row) {
                    CHECK(S.rows[std::size_t(row)].kind == RowSpec::Kind::cbc);
                    CHECK(S.rows[std::size_t(row)].nu == want_nus[l]);
                    CHECK(S.rows[std::size_t(row)].mu == mu);
                }
            for (; row < S.m; ++row) {
                CHECK(S.rows[std::size_t(row)].kind == RowSpec::Kind::data);
                CHECK(S.cols[std::size_t(row)] ==
                      std::make_pair(S.rows[std::size_t(row)].a, S.rows[std::size_t(row)].b));
            }

            // Block form [[A11, A12], [0, I]].
            for (int r = S.m1; r < S.m; ++r)
                for (int c = 0; c < S.m; ++c)
                    CHECK(S.A(r, c) == (c == r ? 1.0 : 0.0));

            // Data coupling matrix: cbc rows carry tangential-table weights at
            // the matching ladder block; data rows carry none.
            REQUIRE(S.B[0].rows() == S.m);
            REQUIRE(S.B[0].cols() == int(want_nus.size()) * n);
            REQUIRE(S.B[1].cols() == 0);
            for (int r = S.m1; r < S.m; ++r) CHECK(S.B[0].row(r).cwiseAbs().maxCoeff() == 0.0);
            row = 0;
            for (std::size_t l = 0; l < want_nus.size(); ++l)
                for (int mu = 0; mu <= 2 * p; ++mu, ++row) {
                    const Stencil1D t = centered_table(mu, p, pc.dyh);
                    for (std::size_t l2 = 0; l2 < want_nus.size(); ++l2)
                        for (int dt = -p; dt <= p; ++dt) {
                            const double want =
                                (l2 == l) ? t.w[std::size_t(dt + p)] : 0.0;
                            CHECK(S.B[0](row, S.bcol(int(l2), dt)) == want);
                        }
                }

            // col_of agrees with the stored ordering.
            for (int c = 0; c < S.m; ++c)
                CHECK(S.col_of(S.cols[std::size_t(c)].first, S.cols[std::size_t(c)].second) ==
                      c);
            CHECK_THROWS_AS((void)S.col_of(p + 1, 0), std::out_of_range);
        }
    }
}

TEST_CASE("single-entry evaluator matches the assembled matrix") {
    const PatchCoeffs pc = constant_coeffs(2, 4, 1.3, -0.2, 0.8, 0.5, 0.1, -0.3);
    for (BoundaryKind kind : {BoundaryKind::dirichlet, BoundaryKind::neumann}) {
        const int p = 2;
        const LcbcSystem S = assemble_local_face(kind, pc, p);
        for (std::size_t l = 0; l < S.nus[0].size(); ++l)
            for (int mu = 0; mu <= 2 * p; ++mu) {
                const int row = int(l) * (2 * p + 1) + mu;
                for (const auto& [mhat, nhat] :
                     {std::pair{-1, 0}, {-2, 2}, {0, -1}, {1, 1}, {2, -2}}) {
                    const double want = element_A(kind, pc, p, mhat, nhat, S.nus[0][l], mu);
                    CHECK(S.A(row, S.col_of(mhat, nhat)) == want);
                }
            }
    }
}

TEST_CASE("production face determinant follows the closed-form profile at p=1") {
    // At p = 1 the order-2 constraint ladder is exact on the quadratic local
    // interpolant, so the production system realizes the same determinant
    // profile (in xi = c1 dx / c11) as the exact-derivative reference system.
    // Higher p use wider interpolants than the low-order ladder levels resolve,
    // so their production determinants follow different (nonvanishing) curves;
    // the closed-form profiles for all p are covered on the reference matrix
    // in the analysis tests.
    const std::vector<double> xis = {0.0, 0.25, 0.6, 0.95, 1.3, 1.7};
    for (BoundaryKind kind : {BoundaryKind::dirichlet, BoundaryKind::neumann}) {
        CAPTURE(int(kind));
        const SolvKind rk =
            (kind == BoundaryKind::dirichlet) ? SolvKind::face_D : SolvKind::face_N;
        double ref = 0.0;
        int ref_sign = 0;
        bool have_ref = false;
        for (double xi : xis) {
            CAPTURE(xi);
            const LcbcSystem S = face_at_xi(kind, 1, xi);
            const LogDet ld = log_det(S.A);
            REQUIRE(ld.sign != 0);
            const double prof = solvability_reference(1, rk, xi);
            REQUIRE(prof != 0.0);
            const double log_ratio = ld.logabs - std::log(std::abs(prof));
            const int sign_ratio = ld.sign * (prof > 0 ? 1 : -1);
            if (!have_ref) {
                ref = log_ratio;
                ref_sign = sign_ratio;
                have_ref = true;
            } else {
                CHECK(sign_ratio == ref_sign);
                CHECK(std::abs(log_ratio - ref) <= 1e-6);
            }
        }
    }
}

TEST_CASE("production face system is solvable where the reference profile is nonzero") {
    // p >= 2 production determinants do not follow the closed-form curves, but
    // solvability on the checked parameter range must still hold: well-scaled
    // pivots across the xi sweep for every order.
    for (BoundaryKind kind : {BoundaryKind::dirichlet, BoundaryKind::neumann}) {
        for (int p = 1; p <= 3; ++p) {
            CAPTURE(int(kind));
            CAPTURE(p);
            for (double xi : {0.0, 0.4, 0.9, 1.4}) {
                CAPTURE(xi);
                LcbcSystem S = face_at_xi(kind, p, xi);
                S.factor();
                CHECK(S.kappa() < 1e10);
            }
        }
    }
}

TEST_CASE("face determinant root: Dirichlet p=1 loses solvability at xi=2") {
    double scale = 0.0;
    for (double xi : {0.0, 0.5, 1.0, 1.5})
        scale = std::max(scale, std::abs(face_at_xi(BoundaryKind::dirichlet, 1, xi).A.determinant()));
    REQUIRE(scale > 0.0);
    const double at_root = std::abs(face_at_xi(BoundaryKind::dirichlet, 1, 2.0).A.determinant());
    CHECK(at_root < 1e-8 * scale);
}

TEST_CASE("pure second-order operator: symmetric extensions solve the face system") {
    // For c1 = c2 = c12 = 0 every constraint functional is an even operator in
    // the normal offset (Dirichlet) or an odd one (Neumann), so with zero
    // boundary tables the unique solution through odd (resp. even) data is its
    // reflection.  This pins down signs and the extraction conventions.
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (BoundaryKind kind : {BoundaryKind::dirichlet, BoundaryKind::neumann}) {
        for (int p = 1; p <= 3; ++p) {
            CAPTURE(int(kind));
            CAPTURE(p);
            const PatchCoeffs pc =
                constant_coeffs(p, 2 * p, 1.4, 0.0, 0.7, 0.0, 0.0, 0.0, 1.0, 1.0);
            LcbcSystem S = assemble_local_face(kind, pc, p);
            S.factor();
            const double kap = S.kappa();
            CHECK(kap >= 1.0);
            CHECK(kap < 1e8);

            // Data field: random on a > 0 (and on a = 0 for Neumann).
            std::vector<std::vector<double>> F(std::size_t(p) + 1,
                                               std::vector<double>(std::size_t(2 * p + 1)));
            for (int a = 0; a <= p; ++a)
                for (int b = -p; b <= p; ++b)
                    F[std::size_t(a)][std::size_t(b + p)] =
                        (a == 0 && kind == BoundaryKind::dirichlet) ? 0.0 : unif(rng);

            Eigen::VectorXd rhs = Eigen::VectorXd::Zero(S.m);
            for (int r = S.m1; r < S.m; ++r) {
                const RowSpec& row = S.rows[std::size_t(r)];
                rhs[r] = F[std::size_t(row.a)][std::size_t(row.b + p)];
            }
            const Eigen::VectorXd u = S.solve(rhs);

            const double s = (kind == BoundaryKind::dirichlet) ? -1.0 : 1.0;
            const double tol = kap * 1e-13 + 1e-12;
            for (int a = 1; a <= p; ++a)
                for (int b = -p; b <= p; ++b) {
                    CAPTURE(a);
                    CAPTURE(b);
                    const double ghost = u[S.col_of(-a, b)];
                    CHECK(std::abs(ghost - s * F[std::size_t(a)][std::size_t(b + p)]) <= tol);
                }

            // Residual check of the factored solve on the raw system.
            const double res = (S.A * u - rhs).cwiseAbs().maxCoeff();
            CHECK(res <= kap * 1e-13 + 1e-12);
        }
    }
}

TEST_CASE("side systems carry the face frame, signs and table indexing") {
    GridSpec g(12, 10, 2);
    PdeProblem prob;
    prob.q = 2;
    prob.coeff = CoefficientField::constants(1.0, 0.0, 1.0, 0.0, 0.0, 0.0);
    prob.bc = {BoundarySpec::dirichlet_zero(), BoundarySpec::neumann_zero(),
               BoundarySpec::neumann_zero(), BoundarySpec::dirichlet_zero()};

    const LcbcSystem L = assemble_side_system(prob, g, 4, Side::left, 5);
    CHECK(L.frame.i0 == 0);
    CHECK(L.frame.j0 == 5);
    CHECK(L.frame.grid(1, 2) == std::make_pair(1, 7));
    CHECK(L.arm_sign[0] == 1);
    CHECK(L.table_index(0, -2) == 3);
    CHECK(L.kinds[0] == BoundaryKind::dirichlet);

    const LcbcSystem R = assemble_side_system(prob, g, 4, Side::right, 4);
    CHECK(R.frame.i0 == g.nx);
    CHECK(R.frame.grid(1, 2) == std::make_pair(g.nx - 1, 6));
    CHECK(R.arm_sign[0] == -1);
    CHECK(R.table_index(0, 2) == 6);

    const LcbcSystem B = assemble_side_system(prob, g, 4, Side::bottom, 6);
    CHECK(B.frame.grid(1, 2) == std::make_pair(8, 1));
    CHECK(B.arm_sign[0] == 1);
    CHECK(B.table_index(0, -1) == 5);

    const LcbcSystem T = assemble_side_system(prob, g, 4, Side::top, 6);
    CHECK(T.frame.grid(1, 2) == std::make_pair(8, g.ny - 1));
    CHECK(T.arm_sign[0] == -1);
    CHECK(T.table_index(0, 1) == 7);

    CHECK_THROWS_AS(assemble_side_system(prob, g, 3, Side::left, 5), std::invalid_argument);
    CHECK_THROWS_AS(assemble_side_system(prob, g, 6, Side::left, 5), std::invalid_argument);
}

TEST_CASE("frame-local coefficient samples follow the change of variables") {
    GridSpec g(12, 10, 2);
    CoefficientField c;
    c.c11 = [](double x, double y) { return 2.0 + x + 0.5 * y; };
    c.c12 = [](double x, double y) { return 0.3 * x - 0.1 * y; };
    c.c22 = [](double x, double y) { return 1.0 + 0.25 * x * y; };
    c.c1 = [](double x, double y) { return x - y; };
    c.c2 = [](double x, double /*y*/) { return 1.0 + x; };
    c.c0 = [](double x, double y) { return x + 2.0 * y; };

    // Bottom frame swaps the axes: a runs along +y, b along +x.
    {
        const Frame f = face_frame(g, Side::bottom, 5);
        const PatchCoeffs pc = sample_patch_coeffs(c, g, f, 2, 4);
        CHECK(pc.dxh == g.dy());
        CHECK(pc.dyh == g.dx());
        const int a = 1, b = -2;
        const auto [i, j] = f.grid(a, b);
        const double x = g.x(i), y = g.y(j);
        CHECK(pc.c11.at(a, b) == doctest::Approx(c.c22(x, y)).epsilon(1e-14));
        CHECK(pc.c22.at(a, b) == doctest::Approx(c.c11(x, y)).epsilon(1e-14));
        CHECK(pc.c12.at(a, b) == doctest::Approx(c.c12(x, y)).epsilon(1e-14));
        CHECK(pc.c1.at(a, b) == doctest::Approx(c.c2(x, y)).epsilon(1e-14));
        CHECK(pc.c2.at(a, b) == doctest::Approx(c.c1(x, y)).epsilon(1e-14));
        CHECK(pc.c0.at(a, b) == doctest::Approx(c.c0(x, y)).epsilon(1e-14));
    }
    // Top frame: a runs along -y, b along +x; odd-order terms flip sign.
    {
        const Frame f = face_frame(g, Side::top, 4);
        const PatchCoeffs pc = sample_patch_coeffs(c, g, f, 2, 4);
        const int a = 2, b = 1;
        const auto [i, j] = f.grid(a, b);
        const double x = g.x(i), y = g.y(j);
        CHECK(pc.c11.at(a, b) == doctest::Approx(c.c22(x, y)).epsilon(1e-14));
        CHECK(pc.c12.at(a, b) == doctest::Approx(-c.c12(x, y)).epsilon(1e-14));
        CHECK(pc.c1.at(a, b) == doctest::Approx(-c.c2(x, y)).epsilon(1e-14));
        CHECK(pc.c2.at(a, b) == doctest::Approx(c.c1(x, y)).epsilon(1e-14));
    }
}
