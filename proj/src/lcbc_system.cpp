#include "lcbc/lcbc.hpp"
#include "lcbc/qpoly.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lcbc {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

/// Truncated operator powers of one cardinal interpolant, for a face system:
/// stages[m] = Q^m applied to the cardinal polynomial of node (mhat, nhat).
/// Caps keep every coefficient the row extraction reads exact: a face row at
/// level m reads x-degree <= 1 and y-degree <= 2p, each later application
/// consumes at most two degrees per axis, so stage m only needs degrees
/// (1 + 2*(depth - m), 2p + 2*(depth - m)).
std::vector<Poly2> face_stages(const QPolys& C, const LagrangeBasis& basis, int mhat, int nhat,
                               bool dirichlet) {
    const int p = C.p;
    const int depth = dirichlet ? p : p - 1;
    std::vector<Poly2> stages;
    stages.reserve(std::size_t(depth) + 1);
    stages.push_back(cardinal_poly(basis, mhat, nhat));
    for (int m = 1; m <= depth; ++m)
        stages.push_back(
            apply_q_poly(stages[std::size_t(m - 1)], C, 1 + 2 * (depth - m), 2 * p + 2 * (depth - m)));
    return stages;
}

/// Corner variant: both arms read tangential degrees up to 2p, so the caps
/// are symmetric in x and y.
std::vector<Poly2> corner_stages(const QPolys& C, const LagrangeBasis& basis, int mhat, int nhat,
                                 int depth) {
    const int p = C.p;
    std::vector<Poly2> stages;
    stages.reserve(std::size_t(depth) + 1);
    stages.push_back(cardinal_poly(basis, mhat, nhat));
    for (int m = 1; m <= depth; ++m) {
        const int cap = 2 * p + 2 * (depth - m);
        stages.push_back(apply_q_poly(stages[std::size_t(m - 1)], C, cap, cap));
    }
    return stages;
}

} // namespace

std::vector<CornerNuPlan> corner_plan(BoundaryKind k1, BoundaryKind k2, int p) {
    const bool d1 = (k1 == BoundaryKind::dirichlet);
    const bool d2 = (k2 == BoundaryKind::dirichlet);
    require(d1 || !d2, "corner_plan: mixed corners must put the Dirichlet arm first");
    std::vector<CornerNuPlan> plan;
    if (d1 && d2) {
        for (int nu = 0; nu <= p; ++nu) {
            CornerNuPlan pn;
            pn.nu = nu;
            for (int mu = 1; mu <= 2 * nu - 1; mu += 2) pn.mus1.push_back(mu);
            for (int mu = 2 * nu; mu <= 2 * p; ++mu) pn.mus1.push_back(mu);
            pn.mus2 = pn.mus1;
            pn.has_avg = true;
            pn.avg_mu1 = pn.avg_mu2 = 2 * nu;
            plan.push_back(std::move(pn));
        }
    } else if (!d1 && !d2) {
        for (int nu = 0; nu <= p - 1; ++nu) {
            CornerNuPlan pn;
            pn.nu = nu;
            for (int mu = 0; mu <= 2 * nu; mu += 2) pn.mus1.push_back(mu);
            for (int mu = 2 * nu + 1; mu <= 2 * p; ++mu) pn.mus1.push_back(mu);
            pn.mus2 = pn.mus1;
            pn.has_avg = true;
            pn.avg_mu1 = pn.avg_mu2 = 2 * nu + 1;
            plan.push_back(std::move(pn));
        }
    } else {
        for (int nu = 0; nu <= p - 1; ++nu) {
            CornerNuPlan pn;
            pn.nu = nu;
            pn.mus1.push_back(0);
            for (int mu = 2; mu <= 2 * nu; mu += 2) pn.mus1.push_back(mu);
            for (int mu = 2 * nu + 1; mu <= 2 * p; ++mu) pn.mus1.push_back(mu);
            for (int mu = 1; mu <= 2 * nu - 1; mu += 2) pn.mus2.push_back(mu);
            for (int mu = 2 * nu; mu <= 2 * p; ++mu) pn.mus2.push_back(mu);
            pn.has_avg = true;
            pn.avg_mu1 = 2 * nu + 1;
            pn.avg_mu2 = 2 * nu;
            plan.push_back(std::move(pn));
        }
        CornerNuPlan pn;
        pn.nu = p;
        for (int mu = 0; mu <= 2 * p; mu += 2) pn.mus1.push_back(mu);
        plan.push_back(std::move(pn));
    }
    return plan;
}

namespace {

void check_patch_coeffs(const PatchCoeffs& pc, int p) {
    require(pc.dxh > 0.0 && pc.dyh > 0.0, "assemble: patch spacings must be positive");
    require(pc.c11.wx >= p && pc.c11.wy >= p,
            "assemble: coefficient patch narrower than the interpolant needs");
}

void init_columns(LcbcSystem& S, const std::vector<std::pair<int, int>>& data_nodes) {
    const int p = S.p;
    const int n = 2 * p + 1;
    std::vector<char> is_data(std::size_t(n) * n, 0);
    for (const auto& [a, b] : data_nodes) is_data[std::size_t(a + p) * n + (b + p)] = 1;
    S.cols.clear();
    S.cols.reserve(std::size_t(n) * n);
    for (int a = -p; a <= p; ++a)
        for (int b = -p; b <= p; ++b)
            if (!is_data[std::size_t(a + p) * n + (b + p)]) S.cols.emplace_back(a, b);
    S.m1 = int(S.cols.size());
    for (const auto& nd : data_nodes) S.cols.push_back(nd);
    S.m = n * n;
    S.m2 = S.m - S.m1;
    require(S.m2 == int(data_nodes.size()), "init_columns: duplicate data node");
}

void append_data_rows(LcbcSystem& S) {
    for (int t = 0; t < S.m2; ++t) {
        RowSpec r;
        r.kind = RowSpec::Kind::data;
        r.a = S.cols[std::size_t(S.m1 + t)].first;
        r.b = S.cols[std::size_t(S.m1 + t)].second;
        S.rows.push_back(r);
        S.A(S.m1 + t, S.m1 + t) = 1.0;
    }
}

} // namespace

int LcbcSystem::col_of(int a, int b) const {
    for (int c = 0; c < m; ++c)
        if (cols[std::size_t(c)].first == a && cols[std::size_t(c)].second == b) return c;
    throw std::out_of_range("LcbcSystem::col_of: node (" + std::to_string(a) + "," +
                            std::to_string(b) + ") outside the local square");
}

void LcbcSystem::factor() {
    if (eq) return;
    eq = equilibrate(A);
}

Eigen::VectorXd LcbcSystem::solve(const Eigen::VectorXd& rhs) const {
    if (!eq) throw std::logic_error("LcbcSystem::solve: factor() has not been called");
    return eq->solve(rhs);
}

LcbcSystem assemble_local_face(BoundaryKind kind, const PatchCoeffs& pc, int p) {
    require(p >= 1 && p <= 3, "assemble_local_face: p outside [1,3]");
    check_patch_coeffs(pc, p);
    const int n = 2 * p + 1;

    LcbcSystem S;
    S.p = p;
    S.is_corner = false;
    S.kinds = {kind, kind};

    std::vector<std::pair<int, int>> data_nodes;
    for (int a = 0; a <= p; ++a)
        for (int b = -p; b <= p; ++b) data_nodes.emplace_back(a, b);
    init_columns(S, data_nodes);

    for (int a = -1; a >= -p; --a) S.ghosts.emplace_back(a, 0);

    S.nus[0].clear();
    if (kind == BoundaryKind::dirichlet)
        for (int nu = 1; nu <= p; ++nu) S.nus[0].push_back(nu);
    else
        for (int nu = 0; nu <= p - 1; ++nu) S.nus[0].push_back(nu);
    S.nus[1].clear();

    const int ncbc = p * n;
    require(ncbc == S.m1, "assemble_local_face: row/column count mismatch");

    S.A = Eigen::MatrixXd::Zero(S.m, S.m);
    S.B[0] = Eigen::MatrixXd::Zero(S.m, int(S.nus[0].size()) * n);
    S.B[1].resize(S.m, 0);

    std::vector<Stencil1D> tmu(static_cast<std::size_t>(n));
    for (int mu = 0; mu <= 2 * p; ++mu) tmu[std::size_t(mu)] = centered_table(mu, p, pc.dyh);

    // Constraint row order: nu ascending, mu ascending.
    S.rows.clear();
    S.rows.reserve(std::size_t(S.m));
    for (std::size_t l = 0; l < S.nus[0].size(); ++l)
        for (int mu = 0; mu <= 2 * p; ++mu) {
            RowSpec r;
            r.kind = RowSpec::Kind::cbc;
            r.arm = 0;
            r.nu = S.nus[0][l];
            r.mu = mu;
            const int row = int(S.rows.size());
            S.rows.push_back(r);
            for (int db = -p; db <= p; ++db)
                S.B[0](row, S.bcol(int(l), db)) = tmu[std::size_t(mu)].w[std::size_t(db + p)];
        }
    append_data_rows(S);

    const LagrangeBasis basis(p);
    const QPolys C = lift_coeff_polys(pc, p);
    const bool dir = (kind == BoundaryKind::dirichlet);
    for (int c = 0; c < S.m; ++c) {
        const auto [mhat, nhat] = S.cols[std::size_t(c)];
        const auto stages = face_stages(C, basis, mhat, nhat, dir);
        int row = 0;
        for (std::size_t l = 0; l < S.nus[0].size(); ++l) {
            const int nu = S.nus[0][l];
            for (int mu = 0; mu <= 2 * p; ++mu, ++row)
                S.A(row, c) =
                    deriv_at_origin(stages[std::size_t(nu)], dir ? 0 : 1, mu, pc.dxh, pc.dyh);
        }
    }
    return S;
}

LcbcSystem assemble_local_corner(BoundaryKind kind1, BoundaryKind kind2, const PatchCoeffs& pc,
                                 int p) {
    require(p >= 1 && p <= 3, "assemble_local_corner: p outside [1,3]");
    check_patch_coeffs(pc, p);
    const int n = 2 * p + 1;

    LcbcSystem S;
    S.p = p;
    S.is_corner = true;
    S.kinds = {kind1, kind2};

    std::vector<std::pair<int, int>> data_nodes;
    const int alo = (kind1 == BoundaryKind::dirichlet) ? 1 : 0;
    const int blo = (kind2 == BoundaryKind::dirichlet) ? 1 : 0;
    for (int a = alo; a <= p; ++a)
        for (int b = blo; b <= p; ++b) data_nodes.emplace_back(a, b);
    init_columns(S, data_nodes);

    for (int a = -p; a <= -1; ++a)
        for (int b = -p; b <= p - 1; ++b) S.ghosts.emplace_back(a, b);
    for (int a = 0; a <= p - 1; ++a)
        for (int b = -p; b <= -1; ++b) S.ghosts.emplace_back(a, b);

    S.nus[0].clear();
    S.nus[1].clear();
    const int nu1_max = (kind1 == BoundaryKind::dirichlet) ? p : p - 1;
    const int nu2_max = (kind2 == BoundaryKind::dirichlet) ? p : p - 1;
    for (int nu = 0; nu <= nu1_max; ++nu) S.nus[0].push_back(nu);
    for (int nu = 0; nu <= nu2_max; ++nu) S.nus[1].push_back(nu);

    const auto plan = corner_plan(kind1, kind2, p);

    S.A = Eigen::MatrixXd::Zero(S.m, S.m);
    S.B[0] = Eigen::MatrixXd::Zero(S.m, int(S.nus[0].size()) * n);
    S.B[1] = Eigen::MatrixXd::Zero(S.m, int(S.nus[1].size()) * n);

    std::vector<Stencil1D> tmu_b(static_cast<std::size_t>(n));
    std::vector<Stencil1D> tmu_a(static_cast<std::size_t>(n));
    for (int mu = 0; mu <= 2 * p; ++mu) {
        tmu_b[std::size_t(mu)] = centered_table(mu, p, pc.dyh);
        tmu_a[std::size_t(mu)] = centered_table(mu, p, pc.dxh);
    }

    // Averaging weights: arm-1 rows act along b (spacing dyh), arm-2 rows
    // along a (spacing dxh); the colliding pair is balanced by the
    // h^e : h^e rule with e the smaller tangential order.
    const auto avg_weights = [&](int mu1, int mu2) {
        const int e = std::min(mu1, mu2);
        const double wy = std::pow(pc.dyh, e), wx = std::pow(pc.dxh, e);
        return std::pair<double, double>{wy / (wx + wy), wx / (wx + wy)};
    };

    S.rows.clear();
    S.rows.reserve(std::size_t(S.m));
    for (const auto& pn : plan) {
        for (const int mu : pn.mus1) {
            if (pn.has_avg && mu == pn.avg_mu1) {
                RowSpec r;
                r.kind = RowSpec::Kind::avg;
                r.nu = pn.nu;
                r.mu = pn.avg_mu1;
                r.mu2 = pn.avg_mu2;
                std::tie(r.w1, r.w2) = avg_weights(pn.avg_mu1, pn.avg_mu2);
                const int row = int(S.rows.size());
                S.rows.push_back(r);
                for (int dt = -p; dt <= p; ++dt) {
                    S.B[0](row, S.bcol(pn.nu, dt)) =
                        r.w1 * tmu_b[std::size_t(r.mu)].w[std::size_t(dt + p)];
                    S.B[1](row, S.bcol(pn.nu, dt)) =
                        r.w2 * tmu_a[std::size_t(r.mu2)].w[std::size_t(dt + p)];
                }
            } else {
                RowSpec r;
                r.kind = RowSpec::Kind::cbc;
                r.arm = 0;
                r.nu = pn.nu;
                r.mu = mu;
                const int row = int(S.rows.size());
                S.rows.push_back(r);
                for (int dt = -p; dt <= p; ++dt)
                    S.B[0](row, S.bcol(pn.nu, dt)) = tmu_b[std::size_t(mu)].w[std::size_t(dt + p)];
            }
        }
        for (const int mu : pn.mus2) {
            if (pn.has_avg && mu == pn.avg_mu2) continue;
            RowSpec r;
            r.kind = RowSpec::Kind::cbc;
            r.arm = 1;
            r.nu = pn.nu;
            r.mu = mu;
            const int row = int(S.rows.size());
            S.rows.push_back(r);
            for (int dt = -p; dt <= p; ++dt)
                S.B[1](row, S.bcol(pn.nu, dt)) = tmu_a[std::size_t(mu)].w[std::size_t(dt + p)];
        }
    }
    require(int(S.rows.size()) == S.m1, "assemble_local_corner: constraint count mismatch");
    append_data_rows(S);

    const LagrangeBasis basis(p);
    const QPolys C = lift_coeff_polys(pc, p);
    const bool d1 = (kind1 == BoundaryKind::dirichlet);
    const bool d2 = (kind2 == BoundaryKind::dirichlet);
    const int depth = plan.back().nu;
    for (int c = 0; c < S.m; ++c) {
        const auto [mhat, nhat] = S.cols[std::size_t(c)];
        const auto stages = corner_stages(C, basis, mhat, nhat, depth);
        // Arm 1 rows differentiate along b (tangential) with the normal along
        // a; arm 2 swaps the roles.
        const auto arm1 = [&](int nu, int mu) {
            return deriv_at_origin(stages[std::size_t(nu)], d1 ? 0 : 1, mu, pc.dxh, pc.dyh);
        };
        const auto arm2 = [&](int nu, int mu) {
            return deriv_at_origin(stages[std::size_t(nu)], mu, d2 ? 0 : 1, pc.dxh, pc.dyh);
        };
        int row = 0;
        for (const CornerNuPlan& pn : plan) {
            for (const int mu : pn.mus1) {
                if (pn.has_avg && mu == pn.avg_mu1) {
                    const RowSpec& r = S.rows[std::size_t(row)];
                    S.A(row, c) = r.w1 * arm1(pn.nu, r.mu) + r.w2 * arm2(pn.nu, r.mu2);
                } else {
                    S.A(row, c) = arm1(pn.nu, mu);
                }
                ++row;
            }
            for (const int mu : pn.mus2) {
                if (pn.has_avg && mu == pn.avg_mu2) continue;
                S.A(row, c) = arm2(pn.nu, mu);
                ++row;
            }
        }
    }
    return S;
}

double element_A(BoundaryKind kind, const PatchCoeffs& pc, int p, int mhat, int nhat, int nu,
                 int mu) {
    require(mu >= 0 && mu <= 2 * p, "element_A: mu outside [0, 2p]");
    const bool dir = (kind == BoundaryKind::dirichlet);
    require(dir ? (nu >= 1 && nu <= p) : (nu >= 0 && nu <= p - 1),
            "element_A: nu outside the constraint range of this kind");
    check_patch_coeffs(pc, p);
    const LagrangeBasis basis(p);
    const QPolys C = lift_coeff_polys(pc, p);
    const auto stages = face_stages(C, basis, mhat, nhat, dir);
    return deriv_at_origin(stages[std::size_t(nu)], dir ? 0 : 1, mu, pc.dxh, pc.dyh);
}

Frame face_frame(const GridSpec& g, Side side, int jhat) {
    Frame f;
    switch (side) {
    case Side::left:
        f = {0, jhat, 1, 0, 0, 1};
        break;
    case Side::right:
        f = {g.nx, jhat, -1, 0, 0, 1};
        break;
    case Side::bottom:
        f = {jhat, 0, 0, 1, 1, 0};
        break;
    case Side::top:
        f = {jhat, g.ny, 0, -1, 1, 0};
        break;
    }
    return f;
}

std::array<Side, 2> corner_arm_sides(int corner) {
    require(corner >= 0 && corner < 4, "corner_arm_sides: corner outside [0,3]");
    const Side sx = (corner % 2 == 0) ? Side::left : Side::right;
    const Side sy = (corner / 2 == 0) ? Side::bottom : Side::top;
    return {sx, sy};
}

Frame corner_frame(const GridSpec& g, int corner, bool swap_arms) {
    require(corner >= 0 && corner < 4, "corner_frame: corner outside [0,3]");
    Frame f;
    f.i0 = (corner % 2 == 0) ? 0 : g.nx;
    f.j0 = (corner / 2 == 0) ? 0 : g.ny;
    const int sx = (f.i0 == 0) ? 1 : -1;
    const int sy = (f.j0 == 0) ? 1 : -1;
    if (!swap_arms) {
        f.axx = sx;
        f.ayx = 0;
        f.axy = 0;
        f.ayy = sy;
    } else {
        f.axx = 0;
        f.ayx = sy;
        f.axy = sx;
        f.ayy = 0;
    }
    return f;
}

PatchCoeffs sample_patch_coeffs(const CoefficientField& c, const GridSpec& g, const Frame& f,
                                int wx, int wy) {
    PatchCoeffs pc;
    pc.c11 = LocalPatch(wx, wy);
    pc.c12 = LocalPatch(wx, wy);
    pc.c22 = LocalPatch(wx, wy);
    pc.c1 = LocalPatch(wx, wy);
    pc.c2 = LocalPatch(wx, wy);
    pc.c0 = LocalPatch(wx, wy);
    pc.dxh = (f.axx != 0) ? g.dx() : g.dy();
    pc.dyh = (f.axy != 0) ? g.dx() : g.dy();
    const double axx = f.axx, ayx = f.ayx, axy = f.axy, ayy = f.ayy;
    for (int a = -wx; a <= wx; ++a)
        for (int b = -wy; b <= wy; ++b) {
            const auto [i, j] = f.grid(a, b);
            const double x = g.x(i), y = g.y(j);
            const double q11 = c.c11(x, y), q12 = c.c12(x, y), q22 = c.c22(x, y);
            pc.c11.at(a, b) = axx * axx * q11 + 2.0 * axx * ayx * q12 + ayx * ayx * q22;
            pc.c12.at(a, b) =
                axx * axy * q11 + (axx * ayy + ayx * axy) * q12 + ayx * ayy * q22;
            pc.c22.at(a, b) = axy * axy * q11 + 2.0 * axy * ayy * q12 + ayy * ayy * q22;
            const double q1 = c.c1(x, y), q2 = c.c2(x, y);
            pc.c1.at(a, b) = axx * q1 + ayx * q2;
            pc.c2.at(a, b) = axy * q1 + ayy * q2;
            pc.c0.at(a, b) = c.c0(x, y);
        }
    return pc;
}

LcbcSystem assemble_side_system(const PdeProblem& prob, const GridSpec& g, int d, Side side,
                                int jhat) {
    require(d == 2 || d == 4 || d == 6, "assemble_side_system: d must be 2, 4 or 6");
    const int p = d / 2;
    require(p == g.p, "assemble_side_system: grid ghost width does not match d/2");
    const Frame f = face_frame(g, side, jhat);
    const PatchCoeffs pc = sample_patch_coeffs(prob.coeff, g, f, p, p);
    LcbcSystem S = assemble_local_face(prob.side(side).kind, pc, p);
    S.frame = f;
    S.arm_sides = {side, side};
    S.arm_sign = {f.axis_sign(0), f.axis_sign(0)};
    return S;
}

LcbcSystem assemble_corner_system(const PdeProblem& prob, const GridSpec& g, int d, int corner) {
    require(d == 2 || d == 4 || d == 6, "assemble_corner_system: d must be 2, 4 or 6");
    const int p = d / 2;
    require(p == g.p, "assemble_corner_system: grid ghost width does not match d/2");
    const auto arms = corner_arm_sides(corner);
    const BoundaryKind kx = prob.side(arms[0]).kind;
    const BoundaryKind ky = prob.side(arms[1]).kind;
    const bool swap = (kx == BoundaryKind::neumann && ky == BoundaryKind::dirichlet);
    const Frame f = corner_frame(g, corner, swap);
    const PatchCoeffs pc = sample_patch_coeffs(prob.coeff, g, f, p, p);
    LcbcSystem S = assemble_local_corner(swap ? ky : kx, swap ? kx : ky, pc, p);
    S.frame = f;
    S.arm_sides = swap ? std::array<Side, 2>{arms[1], arms[0]} : arms;
    S.arm_sign = {f.axis_sign(0), f.axis_sign(1)};
    return S;
}

} // namespace lcbc
