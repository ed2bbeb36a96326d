#pragma once

#include <functional>

#include "lcbc/problem.hpp"

namespace lcbc {

/// Smooth invertible map G from the computational unit square (r,s) onto a
/// physical domain, with analytic first and second derivatives.  Closures
/// must extend smoothly slightly beyond [0,1]^2 (ghost points).
struct Mapping {
    struct Eval {
        double x, y;
        double xr, xs, yr, ys;
        double xrr, xrs, xss, yrr, yrs, yss;
    };
    std::function<Eval(double, double)> at;

    static Mapping identity();

    /// Annular sector: x = rho(r) cos(theta(s)), y = rho(r) sin(theta(s)),
    /// rho = rho1 + r (rho2 - rho1), theta = s * theta2.
    static Mapping annulus(double rho1, double rho2, double theta2);

    /// Channel with a sinusoidal lower/upper displacement:
    /// x = x1 + r (x2 - x1), y = y1 + s (y2 - y1) + A sin(2 pi r).
    static Mapping wavy_channel(double x1, double x2, double y1, double y2, double A);
};

/// First-order chain-rule factors at one computational point: gradients of
/// the inverse map components r(x,y), s(x,y).
struct InverseJacobian {
    double rx, ry, sx, sy, det;
};
InverseJacobian inverse_jacobian(const Mapping::Eval& e);

/// Physical-space operator coefficients (same layout as CoefficientField but
/// arguments are physical coordinates).
struct PhysicalOperator {
    CoefficientField::Fn c11, c12, c22, c1, c2, c0;

    static PhysicalOperator laplacian(double scale = 1.0);
    /// D * Laplacian - v . grad + gamma (advection-diffusion-reaction).
    static PhysicalOperator advection_diffusion(double D, double v1, double v2,
                                                double gamma);
};

/// Pulls a physical-space operator back through the mapping: returns the
/// computational CoefficientField such that Q_comp (u o G) = (Q_phys u) o G.
CoefficientField mapped_problem(const Mapping& map, const PhysicalOperator& op);

/// Composes a physical-space exact solution with the mapping, producing a
/// computational-space ExactSolution (spatial partials via the chain rule).
ExactSolution compose_exact(const ExactSolution& physical, const Mapping& map);

} // namespace lcbc
