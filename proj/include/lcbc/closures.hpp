#pragma once

#include "lcbc/boundary_data.hpp"
#include "lcbc/lcbc.hpp"

#include <Eigen/Dense>

#include <array>
#include <utility>
#include <vector>

namespace lcbc {

/// Precomputed ghost rows of one face point's solved constraint system.
/// Ghost gi (grid offset -(1+gi) along the inward normal, gi = 0..p-1) gets
///   sum_{l,db} alpha[gi][l][db] * table(nus[l], jhat+db)
/// + sum_{i,db}  beta[gi][i][db] * U(frame(i, db)).
struct FacePointClosure {
    std::vector<double> alpha; ///< p * nus.size() * (2p+1), [gi][l][db+p]
    std::vector<double> beta;  ///< p * (p+1) * (2p+1),      [gi][i][db+p]
    double kappa = 0.0;
};

struct FaceClosure {
    Side side = Side::left;
    BoundaryKind kind = BoundaryKind::dirichlet;
    int p = 0;
    int nt = 0;
    int sign = 1;         ///< raw-to-local sign (applied to Neumann tables)
    std::vector<int> nus; ///< table rows consumed
    std::vector<FacePointClosure> pts; ///< jhat in [p, nt-p], index jhat-p
};

/// Precomputed ghost rows of one corner system (strict ghost L only).
struct CornerClosure {
    int corner = 0; ///< 0 BL, 1 BR, 2 TL, 3 TR
    int p = 0;
    Frame frame;
    std::array<Side, 2> arm_sides{Side::left, Side::bottom};
    std::array<BoundaryKind, 2> kinds{BoundaryKind::dirichlet, BoundaryKind::dirichlet};
    std::array<int, 2> arm_sign{1, 1};
    std::array<std::vector<int>, 2> nus;
    std::vector<std::pair<int, int>> ghosts;     ///< local nodes, 3p^2
    std::vector<std::pair<int, int>> data_nodes; ///< local nodes
    Eigen::MatrixXd alpha1, alpha2; ///< |ghosts| x (nus[arm].size() * (2p+1))
    Eigen::MatrixXd gamma;          ///< |ghosts| x |data_nodes|
    double kappa = 0.0;
};

/// All ghost-assignment coefficients of one (problem, grid, d) triple.  Faces
/// cover ghost columns at tangential indices [p, nt-p]; corners cover the
/// remaining strict-ghost L at each corner.  Together they assign every ghost
/// of the extended grid exactly once.
struct GhostClosure {
    int d = 0, p = 0;
    std::array<FaceClosure, 4> faces;
    std::array<CornerClosure, 4> corners;
    double kappa_max = 0.0;
};

GhostClosure build_ghost_closure(const PdeProblem& prob, const GridSpec& g, int d);

/// Writes every Dirichlet boundary line from table row 0, then every ghost
/// value through the closure coefficients.  extra_dt > 0 fills ghosts of the
/// extra_dt-th time derivative of the field (the tables are jets, so the
/// differentiated compatibility data is read off directly).
void apply_ghost_closure(ExtendedField& U, const GhostClosure& gc, const GridSpec& g,
                         const BoundaryTables& tables, int extra_dt = 0);

/// Grid tangential index of an arm's boundary point at offset dt in a frame.
int arm_table_index(const Frame& f, Side arm_side, int arm, int dt);

/// Reference route for the same assignment: keeps every boundary point's
/// factored system and solves it with a freshly assembled right-hand side at
/// each application.  Exists to cross-check the precomputed closure; the two
/// routes must agree to roundoff.
class DirectSolver {
public:
    DirectSolver(const PdeProblem& prob, const GridSpec& g, int d);

    void apply(ExtendedField& U, const BoundaryTables& tables, int extra_dt = 0) const;

    const std::array<std::vector<LcbcSystem>, 4>& face_systems() const { return face_sys_; }
    const std::array<LcbcSystem, 4>& corner_systems() const { return corner_sys_; }

private:
    GridSpec grid_;
    int d_ = 0, p_ = 0;
    std::array<BoundaryKind, 4> kinds_;
    std::array<std::vector<LcbcSystem>, 4> face_sys_; ///< per side, jhat-p indexed
    std::array<LcbcSystem, 4> corner_sys_;
};

} // namespace lcbc
