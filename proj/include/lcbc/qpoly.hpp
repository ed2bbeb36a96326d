#pragma once

#include <vector>

#include "lcbc/patch.hpp"
#include "lcbc/stencils.hpp"

namespace lcbc {

/// Bivariate polynomial in the scaled local frame (X = a, Y = b counted in
/// units of the local spacings), stored as monomial coefficients: the
/// coefficient of X^i Y^j sits at c[i * (ny + 1) + j].  nx/ny are storage
/// bounds for the degree, not necessarily attained.
struct Poly2 {
    int nx = 0, ny = 0;
    std::vector<double> c;

    Poly2() : c(1, 0.0) {}
    Poly2(int nx_, int ny_) : nx(nx_), ny(ny_), c(std::size_t(nx_ + 1) * (ny_ + 1), 0.0) {}

    double& at(int i, int j) { return c[std::size_t(i) * (ny + 1) + j]; }
    double at(int i, int j) const { return c[std::size_t(i) * (ny + 1) + j]; }
    /// Coefficient with zero padding outside the stored degree box.
    double get(int i, int j) const {
        return (i >= 0 && i <= nx && j >= 0 && j <= ny) ? at(i, j) : 0.0;
    }
};

/// Drops trailing all-zero coefficient rows/columns so later products skip
/// the dead range.  Exact zeros only; no thresholding.
void trim(Poly2& P);

/// Tensor cardinal polynomial of local node (mhat, nhat): the unique
/// degree-(2p, 2p) polynomial that is 1 at that node and 0 at the other
/// nodes of the (2p+1)^2 square.
Poly2 cardinal_poly(const LagrangeBasis& basis, int mhat, int nhat);

/// The six coefficient polynomials of the operator in the scaled frame,
/// lifted from grid-point samples to their tensor interpolants, with the
/// physical spacing scalings folded in: applying them needs no further h's.
/// An exactly constant sample patch lifts to the exactly constant polynomial.
struct QPolys {
    Poly2 cxx, cxy, cyy, cx, cy, c0;
    int p = 0;
};

QPolys lift_coeff_polys(const PatchCoeffs& pc, int p);

/// One application of the operator by polynomial arithmetic:
///   out = cxx dXX P + cxy dXY P + cyy dYY P + cx dX P + cy dY P + c0 P,
/// truncated to degrees (xcap, ycap); pass a negative cap to keep everything.
/// Truncation is loss-free for any later coefficient extraction at degrees
/// <= cap - 2 * (remaining applications), because coefficient products only
/// raise degrees and derivatives lower them by at most two.
Poly2 apply_q_poly(const Poly2& P, const QPolys& C, int xcap, int ycap);

/// Transpose application for functional extraction: given a functional phi on
/// monomial coefficients (phi[i][j] weights coefficient (i,j)), returns phi'
/// with <phi', P> = <phi, Q P> for every polynomial P.  Degrees grow by at
/// most two per application.
Poly2 apply_q_poly_transpose(const Poly2& phi, const QPolys& C);

/// Weights of the functional phi over the (2p+1)^2 samples of a
/// degree-(2p, 2p) tensor interpolant, laid out w[(sa+p)*(2p+1) + (sb+p)].
std::vector<double> functional_sample_weights(const Poly2& phi, const LagrangeBasis& basis,
                                              int p);

/// Physical mixed derivative of the composed polynomial at the local origin:
/// alpha! beta! P[alpha][beta] / (hx^alpha hy^beta).
double deriv_at_origin(const Poly2& P, int alpha, int beta, double hx, double hy);

} // namespace lcbc
