#pragma once

#include <Eigen/Dense>

#include <vector>

namespace lcbc {

/// Two-sided diagonal scaling plus a row permutation that brings a square
/// matrix to doubly bounded form: the permuted, scaled matrix P*Dr*A*Dc has
/// |entry| <= 1 everywhere and |entry| = 1 on the diagonal (both up to
/// roundoff).  The scales come from the dual variables of a maximum-product
/// transversal on the entry magnitudes, so the guarantee holds for any
/// structurally nonsingular matrix regardless of its dynamic range.
struct Equilibration {
    Eigen::VectorXd dr;        ///< row scale factors (size n)
    Eigen::VectorXd dc;        ///< column scale factors (size n)
    std::vector<int> row_perm; ///< scaled row r takes original row row_perm[r]
    double kappa = 0.0;        ///< 2-norm condition number of the scaled matrix
    Eigen::MatrixXd scaled;    ///< P * Dr * A * Dc
    Eigen::PartialPivLU<Eigen::MatrixXd> lu; ///< factorization of `scaled`

    /// Solve A x = rhs through the scaled factorization.
    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
    Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const;
};

/// Equilibrate and factor a square matrix.  Throws std::runtime_error when the
/// matrix has no transversal of nonzero entries (structurally singular) or the
/// scaled factorization is exactly singular; for constraint systems this is
/// the numerical signature of a violated solvability condition.
Equilibration equilibrate(const Eigen::MatrixXd& A);

} // namespace lcbc
