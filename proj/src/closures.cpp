#include "lcbc/closures.hpp"

#include <algorithm>
#include <stdexcept>

namespace lcbc {

namespace {

/// Columns of the affine right-hand side: [B0 | B1 | data injection].
Eigen::MatrixXd rhs_basis(const LcbcSystem& sys) {
    const int b0 = int(sys.B[0].cols()), b1 = int(sys.B[1].cols());
    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(sys.m, b0 + b1 + sys.m2);
    if (b0 > 0) R.block(0, 0, sys.m, b0) = sys.B[0];
    if (b1 > 0) R.block(0, b0, sys.m, b1) = sys.B[1];
    for (int t = 0; t < sys.m2; ++t) R(sys.m1 + t, b0 + b1 + t) = 1.0;
    return R;
}

void set_dirichlet_lines(ExtendedField& U, const GridSpec& g, const BoundaryTables& tables,
                         const std::array<BoundaryKind, 4>& kinds, int extra_dt) {
    for (const Side side : kAllSides) {
        if (kinds[side_index(side)] != BoundaryKind::dirichlet) continue;
        const SideTables& tbl = tables.of(side);
        for (int t_idx = 0; t_idx <= tbl.nt; ++t_idx) {
            const double v = tbl.at(0, t_idx).derivative(extra_dt);
            switch (side) {
            case Side::left:
                U(0, t_idx) = v;
                break;
            case Side::right:
                U(g.nx, t_idx) = v;
                break;
            case Side::bottom:
                U(t_idx, 0) = v;
                break;
            case Side::top:
                U(t_idx, g.ny) = v;
                break;
            }
        }
    }
}

std::array<BoundaryKind, 4> problem_kinds(const PdeProblem& prob) {
    std::array<BoundaryKind, 4> k{};
    for (const Side s : kAllSides) k[side_index(s)] = prob.side(s).kind;
    return k;
}

} // namespace

int arm_table_index(const Frame& f, Side arm_side, int arm, int dt) {
    const auto [i, j] = (arm == 0) ? f.grid(0, dt) : f.grid(dt, 0);
    return (arm_side == Side::left || arm_side == Side::right) ? j : i;
}

GhostClosure build_ghost_closure(const PdeProblem& prob, const GridSpec& g, int d) {
    GhostClosure gc;
    gc.d = d;
    gc.p = d / 2;
    const int p = gc.p;
    const int n = 2 * p + 1;

    for (const Side side : kAllSides) {
        FaceClosure& fc = gc.faces[side_index(side)];
        fc.side = side;
        fc.kind = prob.side(side).kind;
        fc.p = p;
        fc.nt = (side == Side::left || side == Side::right) ? g.ny : g.nx;
        fc.pts.clear();
        fc.pts.reserve(std::size_t(std::max(0, fc.nt - 2 * p + 1)));
        for (int jhat = p; jhat <= fc.nt - p; ++jhat) {
            LcbcSystem sys = assemble_side_system(prob, g, d, side, jhat);
            sys.factor();
            if (jhat == p) {
                fc.nus = sys.nus[0];
                fc.sign = sys.arm_sign[0];
            }
            const Eigen::MatrixXd M = sys.eq->solve(rhs_basis(sys));
            const int b0 = int(sys.B[0].cols());

            FacePointClosure pt;
            pt.kappa = sys.kappa();
            pt.alpha.assign(std::size_t(p) * std::size_t(b0), 0.0);
            pt.beta.assign(std::size_t(p) * std::size_t(sys.m2), 0.0);
            for (int gi = 0; gi < p; ++gi) {
                const int c = sys.col_of(-1 - gi, 0);
                for (int k = 0; k < b0; ++k)
                    pt.alpha[std::size_t(gi) * b0 + std::size_t(k)] = M(c, k);
                for (int t = 0; t < sys.m2; ++t)
                    pt.beta[std::size_t(gi) * sys.m2 + std::size_t(t)] = M(c, b0 + t);
            }
            gc.kappa_max = std::max(gc.kappa_max, pt.kappa);
            fc.pts.push_back(std::move(pt));
        }
    }

    for (int corner = 0; corner < 4; ++corner) {
        LcbcSystem sys = assemble_corner_system(prob, g, d, corner);
        sys.factor();
        CornerClosure& cc = gc.corners[std::size_t(corner)];
        cc.corner = corner;
        cc.p = p;
        cc.frame = sys.frame;
        cc.arm_sides = sys.arm_sides;
        cc.kinds = sys.kinds;
        cc.arm_sign = sys.arm_sign;
        cc.nus = sys.nus;
        cc.ghosts = sys.ghosts;
        cc.data_nodes.assign(sys.cols.begin() + sys.m1, sys.cols.end());
        cc.kappa = sys.kappa();
        gc.kappa_max = std::max(gc.kappa_max, cc.kappa);

        const Eigen::MatrixXd M = sys.eq->solve(rhs_basis(sys));
        const int b0 = int(sys.B[0].cols()), b1 = int(sys.B[1].cols());
        const int ng = int(cc.ghosts.size());
        cc.alpha1.resize(ng, b0);
        cc.alpha2.resize(ng, b1);
        cc.gamma.resize(ng, sys.m2);
        for (int r = 0; r < ng; ++r) {
            const auto [a, b] = cc.ghosts[std::size_t(r)];
            const int c = sys.col_of(a, b);
            cc.alpha1.row(r) = M.block(c, 0, 1, b0);
            cc.alpha2.row(r) = M.block(c, b0, 1, b1);
            cc.gamma.row(r) = M.block(c, b0 + b1, 1, sys.m2);
        }
        (void)n;
    }
    return gc;
}

void apply_ghost_closure(ExtendedField& U, const GhostClosure& gc, const GridSpec& g,
                         const BoundaryTables& tables, int extra_dt) {
    const int p = gc.p;
    const int n = 2 * p + 1;

    std::array<BoundaryKind, 4> kinds{};
    for (const Side s : kAllSides) kinds[side_index(s)] = gc.faces[side_index(s)].kind;
    set_dirichlet_lines(U, g, tables, kinds, extra_dt);

    for (const Side side : kAllSides) {
        const FaceClosure& fc = gc.faces[side_index(side)];
        const SideTables& tbl = tables.of(side);
        const double sgn = (fc.kind == BoundaryKind::neumann) ? double(fc.sign) : 1.0;
        const int nl = int(fc.nus.size());
        for (int jhat = p; jhat <= fc.nt - p; ++jhat) {
            const FacePointClosure& pt = fc.pts[std::size_t(jhat - p)];
            const Frame f = face_frame(g, side, jhat);
            for (int gi = 0; gi < p; ++gi) {
                double val = 0.0;
                const double* al = pt.alpha.data() + std::size_t(gi) * nl * n;
                for (int l = 0; l < nl; ++l)
                    for (int db = -p; db <= p; ++db) {
                        const double w = al[l * n + (db + p)];
                        if (w == 0.0) continue;
                        val += w * sgn * tbl.at(fc.nus[std::size_t(l)], jhat + db).derivative(extra_dt);
                    }
                const double* be = pt.beta.data() + std::size_t(gi) * (p + 1) * n;
                for (int i = 0; i <= p; ++i)
                    for (int db = -p; db <= p; ++db) {
                        const double w = be[i * n + (db + p)];
                        if (w == 0.0) continue;
                        const auto [ii, jj] = f.grid(i, db);
                        val += w * U(ii, jj);
                    }
                const auto [ig, jg] = f.grid(-1 - gi, 0);
                U(ig, jg) = val;
            }
        }
    }

    for (int corner = 0; corner < 4; ++corner) {
        const CornerClosure& cc = gc.corners[std::size_t(corner)];
        // Table value slices of both arms, canonical orientation.
        std::array<Eigen::VectorXd, 2> slice;
        for (int arm = 0; arm < 2; ++arm) {
            const SideTables& tbl = tables.of(cc.arm_sides[std::size_t(arm)]);
            const double sgn =
                (cc.kinds[std::size_t(arm)] == BoundaryKind::neumann)
                    ? double(cc.arm_sign[std::size_t(arm)])
                    : 1.0;
            const int nl = int(cc.nus[std::size_t(arm)].size());
            slice[std::size_t(arm)].resize(nl * n);
            for (int l = 0; l < nl; ++l)
                for (int dt = -p; dt <= p; ++dt) {
                    const int t_idx = arm_table_index(cc.frame, cc.arm_sides[std::size_t(arm)],
                                                      arm, dt);
                    slice[std::size_t(arm)][l * n + (dt + p)] =
                        sgn *
                        tbl.at(cc.nus[std::size_t(arm)][std::size_t(l)], t_idx).derivative(extra_dt);
                }
        }
        Eigen::VectorXd data(cc.data_nodes.size());
        for (std::size_t t = 0; t < cc.data_nodes.size(); ++t) {
            const auto [a, b] = cc.data_nodes[t];
            const auto [i, j] = cc.frame.grid(a, b);
            data[Eigen::Index(t)] = U(i, j);
        }
        const Eigen::VectorXd vals =
            cc.alpha1 * slice[0] + cc.alpha2 * slice[1] + cc.gamma * data;
        for (std::size_t r = 0; r < cc.ghosts.size(); ++r) {
            const auto [a, b] = cc.ghosts[r];
            const auto [i, j] = cc.frame.grid(a, b);
            U(i, j) = vals[Eigen::Index(r)];
        }
    }
}

DirectSolver::DirectSolver(const PdeProblem& prob, const GridSpec& g, int d)
    : grid_(g), d_(d), p_(d / 2), kinds_(problem_kinds(prob)) {
    for (const Side side : kAllSides) {
        const int nt = (side == Side::left || side == Side::right) ? g.ny : g.nx;
        auto& vec = face_sys_[side_index(side)];
        vec.clear();
        vec.reserve(std::size_t(std::max(0, nt - 2 * p_ + 1)));
        for (int jhat = p_; jhat <= nt - p_; ++jhat) {
            LcbcSystem sys = assemble_side_system(prob, g, d, side, jhat);
            sys.factor();
            vec.push_back(std::move(sys));
        }
    }
    for (int corner = 0; corner < 4; ++corner) {
        corner_sys_[std::size_t(corner)] = assemble_corner_system(prob, g, d, corner);
        corner_sys_[std::size_t(corner)].factor();
    }
}

namespace {

void direct_fill(ExtendedField& U, const LcbcSystem& sys, const BoundaryTables& tables,
                 int extra_dt) {
    const int p = sys.p;
    Eigen::VectorXd rhs(sys.m);
    for (int r = 0; r < sys.m; ++r) {
        const RowSpec& row = sys.rows[std::size_t(r)];
        if (row.kind == RowSpec::Kind::data) {
            const auto [i, j] = sys.frame.grid(row.a, row.b);
            rhs[r] = U(i, j);
            continue;
        }
        double acc = 0.0;
        for (int arm = 0; arm < 2; ++arm) {
            if (sys.B[std::size_t(arm)].cols() == 0) continue;
            const SideTables& tbl = tables.of(sys.arm_sides[std::size_t(arm)]);
            const double sgn = (sys.kinds[std::size_t(arm)] == BoundaryKind::neumann)
                                   ? double(sys.arm_sign[std::size_t(arm)])
                                   : 1.0;
            for (std::size_t l = 0; l < sys.nus[std::size_t(arm)].size(); ++l)
                for (int dt = -p; dt <= p; ++dt) {
                    const double w = sys.B[std::size_t(arm)](r, sys.bcol(int(l), dt));
                    if (w == 0.0) continue;
                    acc += w * sgn *
                           tbl.at(sys.nus[std::size_t(arm)][l], sys.table_index(arm, dt))
                               .derivative(extra_dt);
                }
        }
        rhs[r] = acc;
    }
    const Eigen::VectorXd x = sys.solve(rhs);
    for (const auto& [a, b] : sys.ghosts) {
        const auto [i, j] = sys.frame.grid(a, b);
        U(i, j) = x[sys.col_of(a, b)];
    }
}

} // namespace

void DirectSolver::apply(ExtendedField& U, const BoundaryTables& tables, int extra_dt) const {
    set_dirichlet_lines(U, grid_, tables, kinds_, extra_dt);
    for (const Side side : kAllSides)
        for (const LcbcSystem& sys : face_sys_[side_index(side)])
            direct_fill(U, sys, tables, extra_dt);
    for (const LcbcSystem& sys : corner_sys_) direct_fill(U, sys, tables, extra_dt);
}

} // namespace lcbc
