#pragma once

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "lcbc/grid.hpp"
#include "lcbc/jet.hpp"

namespace lcbc {

/// Sides of the computational square, also used as indices 0..3.
enum class Side : int { left = 0, right = 1, bottom = 2, top = 3 };
inline constexpr std::array<Side, 4> kAllSides = {Side::left, Side::right,
                                                  Side::bottom, Side::top};
inline int side_index(Side s) { return int(s); }
const char* side_name(Side s);

enum class BoundaryKind { dirichlet, neumann };

/// Scalar coefficient of the spatial operator
///   Q u = c11 u_xx + 2 c12 u_xy + c22 u_yy + c1 u_x + c2 u_y + c0 u
/// evaluated in computational coordinates.  Closures must be evaluable on the
/// extended grid (slightly outside the unit square), since constraint
/// assembly samples them at ghost points.
struct CoefficientField {
    using Fn = std::function<double(double, double)>;
    Fn c11, c12, c22, c1, c2, c0;

    static CoefficientField constants(double a11, double a12, double a22,
                                      double a1, double a2, double a0);
    static CoefficientField laplacian() { return constants(1, 0, 1, 0, 0, 0); }
};

/// Boundary condition on one side.  Dirichlet prescribes u; Neumann
/// prescribes the raw computational-coordinate derivative (du/dx = g on
/// left/right, du/dy = g on bottom/top; no outward-normal sign flip).
/// `g(s, t)` takes the tangential coordinate and a time jet so the
/// compatibility machinery can read exact time derivatives; it must accept
/// tangential coordinates slightly outside [0,1] (corner footprints).
struct BoundarySpec {
    BoundaryKind kind = BoundaryKind::dirichlet;
    std::function<TJet(double, const TJet&)> g;

    static BoundarySpec dirichlet_zero();
    static BoundarySpec neumann_zero();
};

/// Time-dependent scalar with analytic spatial partials, used both for
/// manufactured exact solutions and for constructing their data.
struct ExactSolution {
    using Fn = std::function<TJet(double, double, const TJet&)>;
    Fn value, dx, dy, dxx, dxy, dyy;

    double at(double x, double y, double t) const {
        return value(x, y, TJet(t)).value();
    }
    double dt_at(double x, double y, double t) const {
        return value(x, y, TJet::variable(t)).derivative(1);
    }
};

/// Full problem statement: d^q u / dt^q = Q u + f on the unit square (q = 0
/// elliptic, 1 parabolic, 2 hyperbolic), with one condition per side.
struct PdeProblem {
    int q = 0;
    CoefficientField coeff;
    std::array<BoundarySpec, 4> bc;
    std::function<TJet(double, double, const TJet&)> forcing;  // null => zero
    std::function<double(double, double)> u0;                  // initial value
    std::function<double(double, double)> u1;                  // initial velocity (q=2)
    std::optional<ExactSolution> exact;
    std::string name = "problem";

    const BoundarySpec& side(Side s) const { return bc[side_index(s)]; }
    bool has_forcing() const { return bool(forcing); }
};

/// Coefficients sampled over the extended grid once per (problem, grid);
/// the sweep kernels consume these rows.  Flags record structurally-zero
/// terms so sweeps can skip them.
struct CoefficientTables {
    ExtendedField c11, c12, c22, c1, c2, c0;
    bool has_cross = true, has_c1 = true, has_c2 = true, has_c0 = true;

    static CoefficientTables build(const GridSpec& g, const CoefficientField& c);
};

/// Checks ellipticity (c11, c22 > 0 and c11 c22 - c12^2 >= delta > 0) at all
/// extended grid points; throws naming the first offending point.
void validate_ellipticity(const GridSpec& g, const CoefficientField& c,
                          double delta = 1e-12);

/// Fills forcing, boundary data, initial data, and the exact field of
/// `problem` so that `exact` solves it:  f = d^q exact/dt^q - Q exact, with
/// side data read off `exact` per the declared boundary kinds.
void manufactured_data(PdeProblem& problem, const ExactSolution& exact);

} // namespace lcbc
