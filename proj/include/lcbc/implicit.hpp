#pragma once

#include "lcbc/steppers.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <vector>

namespace lcbc {

/// BDF coefficients a_0..a_k of order k in {2, 4, 6}:
///   (1/dt) * sum_m a_m U^{n+1-m}  approximates  du/dt at t^{n+1}.
const std::vector<double>& bdf_coefficients(int order);

/// Sparse realization of the spatial operator over the evolved unknowns
/// (interior plus Neumann-boundary points), with every ghost read eliminated
/// through the precomputed closure: the ghost's U-coupling folds into matrix
/// entries, and its data coupling (boundary tables, Dirichlet line values)
/// folds into the right-hand side.  The matrix is built once per
/// (problem, grid, d, scheme) and factored once; coefficients are
/// time-independent, so time enters only through the right-hand side.
class ImplicitOperator {
public:
    /// BDF form (q = 1): factors (a_0/dt) I - Q_elim for the given order.
    ImplicitOperator(TimeIntegrator& ti, int bdf_order, double dt);

    /// Plain form (q = 0): factors Q_elim for the elliptic solve.
    explicit ImplicitOperator(TimeIntegrator& ti);

    int unknown_count() const { return n_; }
    Box unknown_box() const { return box_; }

    Eigen::VectorXd pack(const ExtendedField& u) const;
    void unpack(const Eigen::VectorXd& x, ExtendedField& u) const;

    /// Matrix route of the homogeneous eliminated operator, y = Q_elim x.
    /// The reference route fills ghosts from zeroed tables and applies the
    /// sweep operator; the two must agree to roundoff.
    Eigen::VectorXd apply_q_eliminated(const Eigen::VectorXd& x) const;

    /// One BDF step.  history[m-1] holds U^{n+1-m} (newest first) and must
    /// have exactly `order` entries with ghosts consistent at their times.
    /// Returns U^{n+1} with Dirichlet lines and ghosts finished at t_next.
    ExtendedField step_bdf(const std::vector<ExtendedField>& history, double t_next);

    /// Solves Q U + f = 0 (q = 0) and verifies the relative residual of the
    /// sparse system is below `residual_tol`.
    ExtendedField solve_elliptic(double residual_tol = 1e-10);

private:
    void build_matrix();
    void factor(const Eigen::SparseMatrix<double>& M);
    Eigen::VectorXd affine_part(double t);
    Eigen::VectorXd forcing_at(double t) const;

    TimeIntegrator* ti_;
    int order_ = 0;    ///< BDF order, 0 for the plain/elliptic form
    double dt_ = 0.0;
    Box box_{0, 0, 0, 0};
    int wi_ = 0, n_ = 0;
    Eigen::SparseMatrix<double> q_elim_;
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
};

/// Global sparse solve of the elliptic problem on its own integrator context.
ExtendedField solve_elliptic(TimeIntegrator& ti, double residual_tol = 1e-10);

} // namespace lcbc
