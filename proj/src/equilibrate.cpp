#include "lcbc/equilibrate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lcbc {

namespace {

constexpr double kForbidden = 1e100;

/// Shortest-augmenting-path assignment on an n x n cost matrix (minimization)
/// with dual potentials.  Returns the column -> row matching in `rowof` and
/// potentials satisfying u[i] + v[j] <= cost(i, j) with equality on matched
/// pairs.  Costs >= kForbidden mark forbidden (zero) entries; failure to match
/// through finite edges reports structural singularity.
bool solve_assignment(const Eigen::MatrixXd& cost, std::vector<int>& rowof,
                      std::vector<double>& u, std::vector<double>& v) {
    const int n = int(cost.rows());
    u.assign(n + 1, 0.0);
    v.assign(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, std::numeric_limits<double>::infinity());
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = -1;
            double delta = std::numeric_limits<double>::infinity();
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            if (!(delta < kForbidden / 2)) return false;
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    rowof.assign(n, 0);
    for (int j = 1; j <= n; ++j) rowof[j - 1] = p[j] - 1;
    return true;
}

} // namespace

Eigen::VectorXd Equilibration::solve(const Eigen::VectorXd& rhs) const {
    const int n = int(dr.size());
    Eigen::VectorXd pr(n);
    for (int r = 0; r < n; ++r) pr[r] = dr[row_perm[r]] * rhs[row_perm[r]];
    Eigen::VectorXd y = lu.solve(pr);
    return dc.asDiagonal() * y;
}

Eigen::MatrixXd Equilibration::solve(const Eigen::MatrixXd& rhs) const {
    const int n = int(dr.size());
    Eigen::MatrixXd pr(n, rhs.cols());
    for (int r = 0; r < n; ++r) pr.row(r) = dr[row_perm[r]] * rhs.row(row_perm[r]);
    Eigen::MatrixXd y = lu.solve(pr);
    return dc.asDiagonal() * y;
}

Equilibration equilibrate(const Eigen::MatrixXd& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("equilibrate: matrix not square");
    const int n = int(A.rows());
    Eigen::MatrixXd cost(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double m = std::fabs(A(i, j));
            cost(i, j) = (m == 0.0) ? kForbidden : -std::log(m);
        }
    std::vector<int> rowof;
    std::vector<double> u, v;
    if (!solve_assignment(cost, rowof, u, v))
        throw std::runtime_error(
            "equilibrate: constraint matrix is structurally singular (no transversal of "
            "nonzero entries); a boundary solvability condition is violated");

    Equilibration eq;
    eq.dr.resize(n);
    eq.dc.resize(n);
    eq.row_perm.resize(n);
    for (int i = 0; i < n; ++i) eq.dr[i] = std::exp(u[i + 1]);
    for (int j = 0; j < n; ++j) eq.dc[j] = std::exp(v[j + 1]);
    for (int r = 0; r < n; ++r) eq.row_perm[r] = rowof[r];

    eq.scaled.resize(n, n);
    for (int r = 0; r < n; ++r)
        for (int j = 0; j < n; ++j)
            eq.scaled(r, j) = eq.dr[eq.row_perm[r]] * A(eq.row_perm[r], j) * eq.dc[j];

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(eq.scaled);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(n - 1);
    if (!(smin > 0.0))
        throw std::runtime_error(
            "equilibrate: constraint matrix is numerically singular; a boundary "
            "solvability condition is violated");
    eq.kappa = smax / smin;

    eq.lu.compute(eq.scaled);
    return eq;
}

} // namespace lcbc
