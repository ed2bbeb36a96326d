#pragma once

#include "lcbc/problem.hpp"

#include <Eigen/Dense>

#include <array>
#include <utility>
#include <vector>

namespace lcbc {

/// Amplification of the explicit wave schemes at one (Lambda_x, Lambda_y).
/// Roots of A^2 - 2 b A + 1 = 0 come in reciprocal pairs, so a_max >= 1 up to
/// roundoff; a_max <= 1 + eps means the sampled point is stable.
struct StabilityPoint {
    double lambda_x = 0.0; ///< c dt / dx
    double lambda_y = 0.0; ///< c dt / dy
    double z = 0.0;        ///< lambda_x^2 + lambda_y^2
    double a_max = 0.0;    ///< max |A| over the sampled frequency square
};

/// Max amplification-factor magnitude of the order-2p explicit wave scheme at
/// one time-step point, sampling (xi_x, xi_y) on an n-by-n grid over
/// [-pi, pi]^2 (n >= 3).
StabilityPoint stability_amplification(int p, double lambda_x, double lambda_y, int n = 129);

/// Scheme symbol value b_p at a single frequency pair; exposed for the
/// |b_2| < 1 sampled check.
double stability_symbol(int p, double lambda_x, double lambda_y, double xi_x, double xi_y);

/// Truncation control for the scattering series.
struct SeriesTruncation {
    int n_max = 200;        ///< highest Bessel order retained
    double tail_tol = 1e-12; ///< |J_n(k)/H_n(k)| threshold ending the sum
};

/// J_0..J_{n_max}(x) (Miller downward recurrence, even-sum normalization) and
/// Y_0..Y_{n_max}(x) (series/asymptotic Y0, Y1, upward recurrence).
/// Absolute accuracy ~1e-10 for x in [1, 60], n_max <= 200.
std::pair<std::vector<double>, std::vector<double>> bessel_JY(int n_max, double x);

/// Scattered field of a plane wave cos(k(x - c t)) hitting the unit cylinder
/// (field value is -incident on rho = 1), evaluated at (x, y) with
/// rho = |(x, y)| >= 1.  Truncation: smallest n with both |J_n(k)/H_n(k)| and
/// |J_n(k)| below tail_tol, capped at n_max.
double scattering_exact(double x, double y, double t, double k, double c,
                        const SeriesTruncation& trunc = {});

/// Advected-decaying Gaussian satisfying u_t = D lap(u) - v . grad(u) + gamma u:
///   e^{gamma t}/(1 + 4 sigma D t) exp(-sigma |x - v t|^2 / (1 + 4 sigma D t)).
double heat_gaussian_exact(double x, double y, double t, double diffusivity, double vx,
                           double vy, double gamma, double sigma);

/// Boundary-system families with closed-form determinant references.
enum class SolvKind { face_D, face_N, corner_DD, corner_NN, corner_DN };

/// Constant operator coefficients for the reference constraint systems.
struct ConstCoeffs {
    double c11 = 1.0, c12 = 0.0, c22 = 1.0;
    double c1 = 0.0, c2 = 0.0, c0 = 0.0;
};

/// Face parametrization of the determinant references: xi = c1 dx / c11
/// realized as c11 = 1, c1 = xi on a unit-spacing patch.
ConstCoeffs face_solvability_coeffs(double xi);

/// Corner parametrization: gamma = c12/sqrt(c11 c22), sigma = the normal-axis
/// scale ratio, realized as c11 = sigma, c22 = 1/sigma, c12 = gamma on a
/// unit-spacing patch.
ConstCoeffs corner_solvability_coeffs(double gamma, double sigma);

/// Closed-form reference determinant profile: faces take (a = xi), corners
/// take (a = gamma, b = sigma).  The assembled reference matrix determinant
/// equals this up to a parameter-independent prefactor for faces, and up to a
/// gamma-independent prefactor (fixed sigma) for corners.
double solvability_reference(int p, SolvKind kind, double a, double b = 1.0);

/// Reference constraint matrix of the boundary family with constant
/// coefficients: rows are the exact derivative constraints applied to the
/// tensor Lagrange cardinals of the (2p+1)^2 local nodes (data rows are unit
/// rows), on unit spacings.  Its determinant realizes the profiles checked by
/// solvability_reference.
Eigen::MatrixXd solvability_matrix(int p, SolvKind kind, const ConstCoeffs& c);

/// Richardson estimate from coarse-fine solution differences on grids with
/// spacings h1, h1/2, h1/4: du1 = |U1 - R U2|_inf, du2 = |U2 - R U3|_inf.
struct RichardsonFit {
    double sigma = 0.0;               ///< estimated convergence rate
    double C = 0.0;                   ///< estimated error constant
    std::array<double, 3> estimates{}; ///< C h_j^sigma for j = 1, 2, 3
};

RichardsonFit richardson_rates(double du1, double du2, double h1);

} // namespace lcbc
