#pragma once

#include "lcbc/equilibrate.hpp"
#include "lcbc/grid.hpp"
#include "lcbc/patch.hpp"
#include "lcbc/problem.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace lcbc {

/// Orientation of a local boundary frame.  Local offsets (a, b) -- a along the
/// inward normal of the face (or of the first corner arm), b tangential --
/// map to grid-index offsets di = axx*a + axy*b, dj = ayx*a + ayy*b from the
/// anchor (i0, j0).  The matrix [[axx, axy], [ayx, ayy]] is a signed
/// permutation, so the frame is an isometry of index space.
struct Frame {
    int i0 = 0, j0 = 0;
    int axx = 1, ayx = 0, axy = 0, ayy = 1;

    std::pair<int, int> grid(int a, int b) const {
        return {i0 + axx * a + axy * b, j0 + ayx * a + ayy * b};
    }
    /// Sign relating the local axis derivative to the raw boundary-data
    /// convention of the side it points into (axis 0 = a, 1 = b).
    int axis_sign(int axis) const {
        if (axis == 0) return axx != 0 ? axx : ayx;
        return axy != 0 ? axy : ayy;
    }
};

/// Frame of one boundary face anchored at tangential index jhat (a y-index
/// for left/right, an x-index for bottom/top).
Frame face_frame(const GridSpec& g, Side side, int jhat);

/// Corners are numbered 0 = bottom-left, 1 = bottom-right, 2 = top-left,
/// 3 = top-right.  `swap_arms` makes the local a-axis point along the inward
/// normal of the y-facing arm instead of the x-facing one (used to put a
/// Dirichlet arm first in mixed corners).
Frame corner_frame(const GridSpec& g, int corner, bool swap_arms);

/// The two sides meeting at a corner: {x-facing side, y-facing side}.
std::array<Side, 2> corner_arm_sides(int corner);

/// Coefficients of the operator expressed in a local frame: the chain rule
/// for a signed permutation M gives Ctilde = M^T C M and ctilde = M^T c,
/// sampled at the frame-mapped grid points.
PatchCoeffs sample_patch_coeffs(const CoefficientField& c, const GridSpec& g, const Frame& f,
                                int wx, int wy);

/// One nu level of a corner constraint plan: tangential orders taken from each
/// arm, plus the one (mu1, mu2) pair whose two linearly dependent rows are
/// replaced by a weighted average.
struct CornerNuPlan {
    int nu = 0;
    std::vector<int> mus1, mus2;
    bool has_avg = false;
    int avg_mu1 = 0, avg_mu2 = 0;
};

/// Constraint plan of a corner where kinds (k1, k2) meet; mixed corners must
/// put the Dirichlet arm first.
std::vector<CornerNuPlan> corner_plan(BoundaryKind k1, BoundaryKind k2, int p);

/// One row of a boundary constraint system.
struct RowSpec {
    enum class Kind { data, cbc, avg };
    Kind kind = Kind::data;
    int a = 0, b = 0; ///< data node (local coords), kind == data only
    int arm = 0;      ///< owning arm for kind == cbc (faces: always 0)
    int nu = 0;       ///< number of operator applications
    int mu = 0;       ///< tangential derivative order (arm 1 for kind == avg)
    int mu2 = 0;      ///< arm-2 tangential order, kind == avg only
    double w1 = 1.0, w2 = 0.0; ///< averaging weights, kind == avg only
};

/// Dense constraint system for one boundary point (face) or corner.  Columns
/// are the (2p+1)^2 nodes of the local square [-p,p]^2 ordered with the
/// non-data nodes first (lexicographic in (a, b)), then the data nodes;
/// constraint rows come first and each data row r holds a single unit at
/// column m1 + (r - m1), so the matrix has the block form [[A11, A12], [0, I]].
struct LcbcSystem {
    int p = 0;
    int m = 0;  ///< total rows/cols, (2p+1)^2
    int m1 = 0; ///< constraint rows / non-data columns
    int m2 = 0; ///< data rows / data columns
    bool is_corner = false;
    Frame frame;
    std::array<BoundaryKind, 2> kinds{BoundaryKind::dirichlet, BoundaryKind::dirichlet};
    std::array<Side, 2> arm_sides{Side::left, Side::left};
    std::array<int, 2> arm_sign{1, 1}; ///< raw-to-local sign for Neumann data

    std::vector<std::pair<int, int>> cols;   ///< column index -> local node
    std::vector<RowSpec> rows;               ///< row descriptors, size m
    std::vector<std::pair<int, int>> ghosts; ///< local nodes this system assigns

    Eigen::MatrixXd A;
    std::array<std::vector<int>, 2> nus;  ///< boundary-table row ids used per arm
    std::array<Eigen::MatrixXd, 2> B;     ///< m x (nus[arm].size() * (2p+1))

    std::optional<Equilibration> eq;

    int col_of(int a, int b) const;
    int bcol(int nu_idx, int dt) const { return nu_idx * (2 * p + 1) + (dt + p); }

    /// Grid tangential index (a y-index for left/right arms, an x-index for
    /// bottom/top arms) of the arm's boundary point at tangential offset dt.
    int table_index(int arm, int dt) const {
        const auto [i, j] = (arm == 0) ? frame.grid(0, dt) : frame.grid(dt, 0);
        const Side s = arm_sides[std::size_t(arm)];
        return (s == Side::left || s == Side::right) ? j : i;
    }

    /// Equilibrate + factor A (idempotent).  Throws on singular systems.
    void factor();
    double kappa() const { return eq ? eq->kappa : 0.0; }
    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
};

/// Constraint system of a single face point in canonical local coordinates
/// (boundary along b, inward normal +a), for coefficients sampled on a patch
/// of half-widths at least (p, 2p).
LcbcSystem assemble_local_face(BoundaryKind kind, const PatchCoeffs& pc, int p);

/// Constraint system of a corner in canonical local coordinates (arm 1 normal
/// +a, arm 2 normal +b); coefficient patch half-widths at least (2p, 2p).
LcbcSystem assemble_local_corner(BoundaryKind kind1, BoundaryKind kind2, const PatchCoeffs& pc,
                                 int p);

/// Single entry of the face constraint matrix: the value of the (nu, mu)
/// compatibility functional on the cardinal interpolant of node (mhat, nhat).
double element_A(BoundaryKind kind, const PatchCoeffs& pc, int p, int mhat, int nhat, int nu,
                 int mu);

/// Face system at tangential index jhat of `side`, in that face's frame.
LcbcSystem assemble_side_system(const PdeProblem& prob, const GridSpec& g, int d, Side side,
                                int jhat);

/// Corner system (corner numbering as in corner_frame).  Mixed corners are
/// framed so that arm 1 is the Dirichlet arm.
LcbcSystem assemble_corner_system(const PdeProblem& prob, const GridSpec& g, int d, int corner);

} // namespace lcbc
