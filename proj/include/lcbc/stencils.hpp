#pragma once

#include <array>
#include <vector>

namespace lcbc {

/// One-dimensional centered stencil on integer offsets [-m, m] with weights
/// already scaled by the grid spacing.
struct Stencil1D {
    int m = 0;                  // half-width
    std::vector<double> w;      // size 2m+1, w[s+m] multiplies u(center+s)

    double apply(const double* center, int stride) const {
        double acc = 0.0;
        for (int s = -m; s <= m; ++s) acc += w[s + m] * center[s * stride];
        return acc;
    }
};

/// Difference-operator correction coefficients from the high-order expansions
/// of D+D- and D0 composites: second-derivative corrections a_n and
/// first-derivative corrections b_n.
inline constexpr std::array<double, 3> kSecondDerivCorrection = {1.0, -1.0 / 12.0, 1.0 / 90.0};
inline constexpr std::array<double, 3> kFirstDerivCorrection = {1.0, -1.0 / 6.0, 1.0 / 30.0};

/// Centered first-derivative stencil of accuracy order d in {2,4,6} built as
/// D0 applied to the Neumann-series correction in D+D-; half-width d/2.
Stencil1D first_derivative_stencil(int d, double h);

/// Centered second-derivative stencil of accuracy order d in {2,4,6} built as
/// D+D- times its correction series; half-width d/2.
Stencil1D second_derivative_stencil(int d, double h);

/// Interpolatory differentiation stencil: the unique weights on offsets
/// [-m, m] exact for all polynomials of degree <= 2m, for derivative order
/// mu <= 2m, scaled by h^-mu.  Generated once per (mu, m) by a Vandermonde
/// solve in extended precision and cached.
Stencil1D centered_table(int mu, int m, double h);

/// Minimal centered stencil for derivative mu at accuracy order 2k:
/// half-width ceil(mu/2) + k - 1.
Stencil1D centered_for_accuracy(int mu, int k, double h);

/// 1-D Lagrange cardinal basis on the 2p+1 equispaced nodes -p..p (unit
/// spacing).  L_m(node n) = delta_{mn}; value and derivatives at arbitrary
/// points are available for diagnostics and tests.
class LagrangeBasis {
public:
    explicit LagrangeBasis(int p);

    int p() const { return p_; }

    /// Value of cardinal function for node m at point z (node units).
    double value(int m, double z) const;

    /// mu-th derivative of cardinal function m at z (node units).
    double derivative(int m, double z, int mu) const;

    /// Monomial coefficient of z^k in the cardinal polynomial of node m.
    double monomial_coeff(int m, int k) const { return poly_[std::size_t(m + p_)][std::size_t(k)]; }

private:
    int p_;
    // Monomial coefficients of each cardinal polynomial, computed from a
    // Vandermonde solve: poly[m][k] multiplies z^k.
    std::vector<std::vector<double>> poly_;
};

} // namespace lcbc
