#include "lcbc/mapping.hpp"

#include <cmath>

namespace lcbc {

Mapping Mapping::identity() {
    Mapping m;
    m.at = [](double r, double s) {
        Eval e{};
        e.x = r;
        e.y = s;
        e.xr = 1.0;
        e.ys = 1.0;
        return e;
    };
    return m;
}

Mapping Mapping::annulus(double rho1, double rho2, double theta2) {
    Mapping m;
    const double dr = rho2 - rho1;
    m.at = [rho1, dr, theta2](double r, double s) {
        const double rho = rho1 + r * dr;
        const double th = s * theta2;
        const double ct = std::cos(th), st = std::sin(th);
        Eval e{};
        e.x = rho * ct;
        e.y = rho * st;
        e.xr = dr * ct;
        e.yr = dr * st;
        e.xs = -rho * theta2 * st;
        e.ys = rho * theta2 * ct;
        e.xrr = 0.0;
        e.yrr = 0.0;
        e.xrs = -dr * theta2 * st;
        e.yrs = dr * theta2 * ct;
        e.xss = -rho * theta2 * theta2 * ct;
        e.yss = -rho * theta2 * theta2 * st;
        return e;
    };
    return m;
}

Mapping Mapping::wavy_channel(double x1, double x2, double y1, double y2, double A) {
    Mapping m;
    const double lx = x2 - x1, ly = y2 - y1;
    m.at = [x1, y1, lx, ly, A](double r, double s) {
        constexpr double twopi = 6.283185307179586476925286766559;
        Eval e{};
        e.x = x1 + r * lx;
        e.y = y1 + s * ly + A * std::sin(twopi * r);
        e.xr = lx;
        e.yr = A * twopi * std::cos(twopi * r);
        e.ys = ly;
        e.yrr = -A * twopi * twopi * std::sin(twopi * r);
        return e;
    };
    return m;
}

InverseJacobian inverse_jacobian(const Mapping::Eval& e) {
    InverseJacobian iv{};
    iv.det = e.xr * e.ys - e.xs * e.yr;
    iv.rx = e.ys / iv.det;
    iv.ry = -e.xs / iv.det;
    iv.sx = -e.yr / iv.det;
    iv.sy = e.xr / iv.det;
    return iv;
}

PhysicalOperator PhysicalOperator::laplacian(double scale) {
    PhysicalOperator op;
    op.c11 = [scale](double, double) { return scale; };
    op.c12 = [](double, double) { return 0.0; };
    op.c22 = [scale](double, double) { return scale; };
    op.c1 = [](double, double) { return 0.0; };
    op.c2 = [](double, double) { return 0.0; };
    op.c0 = [](double, double) { return 0.0; };
    return op;
}

PhysicalOperator PhysicalOperator::advection_diffusion(double D, double v1, double v2,
                                                       double gamma) {
    PhysicalOperator op;
    op.c11 = [D](double, double) { return D; };
    op.c12 = [](double, double) { return 0.0; };
    op.c22 = [D](double, double) { return D; };
    op.c1 = [v1](double, double) { return -v1; };
    op.c2 = [v2](double, double) { return -v2; };
    op.c0 = [gamma](double, double) { return gamma; };
    return op;
}

namespace {

// Second-derivative chain-rule factors of the inverse map at one point:
// rxx = d2r/dx2 etc., computed from the forward derivatives.
struct InverseSecond {
    double rxx, rxy, ryy, sxx, sxy, syy;
};

InverseSecond inverse_second(const Mapping::Eval& e, const InverseJacobian& iv) {
    const double det = iv.det;
    const double det_r = e.xrr * e.ys + e.xr * e.yrs - e.xrs * e.yr - e.xs * e.yrr;
    const double det_s = e.xrs * e.ys + e.xr * e.yss - e.xss * e.yr - e.xs * e.yrs;
    // Computational-coordinate derivatives of the inverse-Jacobian entries.
    const double rx_r = (e.yrs * det - e.ys * det_r) / (det * det);
    const double rx_s = (e.yss * det - e.ys * det_s) / (det * det);
    const double ry_r = -(e.xrs * det - e.xs * det_r) / (det * det);
    const double ry_s = -(e.xss * det - e.xs * det_s) / (det * det);
    const double sx_r = -(e.yrr * det - e.yr * det_r) / (det * det);
    const double sx_s = -(e.yrs * det - e.yr * det_s) / (det * det);
    const double sy_r = (e.xrr * det - e.xr * det_r) / (det * det);
    const double sy_s = (e.xrs * det - e.xr * det_s) / (det * det);
    InverseSecond d{};
    d.rxx = iv.rx * rx_r + iv.sx * rx_s;
    d.rxy = iv.ry * rx_r + iv.sy * rx_s;
    d.ryy = iv.ry * ry_r + iv.sy * ry_s;
    d.sxx = iv.rx * sx_r + iv.sx * sx_s;
    d.sxy = iv.ry * sx_r + iv.sy * sx_s;
    d.syy = iv.ry * sy_r + iv.sy * sy_s;
    return d;
}

} // namespace

CoefficientField mapped_problem(const Mapping& map, const PhysicalOperator& op) {
    // Each closure re-evaluates the shared chain-rule factors; sampling into
    // CoefficientTables happens once per grid, so clarity wins over caching.
    auto factors = [map](double r, double s) {
        const Mapping::Eval e = map.at(r, s);
        const InverseJacobian iv = inverse_jacobian(e);
        const InverseSecond d = inverse_second(e, iv);
        return std::tuple<Mapping::Eval, InverseJacobian, InverseSecond>(e, iv, d);
    };
    CoefficientField c;
    c.c11 = [factors, op](double r, double s) {
        auto [e, iv, d] = factors(r, s);
        return op.c11(e.x, e.y) * iv.rx * iv.rx + 2.0 * op.c12(e.x, e.y) * iv.rx * iv.ry +
               op.c22(e.x, e.y) * iv.ry * iv.ry;
    };
    c.c12 = [factors, op](double r, double s) {
        auto [e, iv, d] = factors(r, s);
        return op.c11(e.x, e.y) * iv.rx * iv.sx +
               op.c12(e.x, e.y) * (iv.rx * iv.sy + iv.ry * iv.sx) +
               op.c22(e.x, e.y) * iv.ry * iv.sy;
    };
    c.c22 = [factors, op](double r, double s) {
        auto [e, iv, d] = factors(r, s);
        return op.c11(e.x, e.y) * iv.sx * iv.sx + 2.0 * op.c12(e.x, e.y) * iv.sx * iv.sy +
               op.c22(e.x, e.y) * iv.sy * iv.sy;
    };
    c.c1 = [factors, op](double r, double s) {
        auto [e, iv, d] = factors(r, s);
        return op.c11(e.x, e.y) * d.rxx + 2.0 * op.c12(e.x, e.y) * d.rxy +
               op.c22(e.x, e.y) * d.ryy + op.c1(e.x, e.y) * iv.rx + op.c2(e.x, e.y) * iv.ry;
    };
    c.c2 = [factors, op](double r, double s) {
        auto [e, iv, d] = factors(r, s);
        return op.c11(e.x, e.y) * d.sxx + 2.0 * op.c12(e.x, e.y) * d.sxy +
               op.c22(e.x, e.y) * d.syy + op.c1(e.x, e.y) * iv.sx + op.c2(e.x, e.y) * iv.sy;
    };
    c.c0 = [map, op](double r, double s) {
        const Mapping::Eval e = map.at(r, s);
        return op.c0(e.x, e.y);
    };
    return c;
}

ExactSolution compose_exact(const ExactSolution& phys, const Mapping& map) {
    ExactSolution c;
    c.value = [phys, map](double r, double s, const TJet& t) {
        const Mapping::Eval e = map.at(r, s);
        return phys.value(e.x, e.y, t);
    };
    // First computational partials via the forward Jacobian.
    c.dx = [phys, map](double r, double s, const TJet& t) {  // d/dr
        const Mapping::Eval e = map.at(r, s);
        return phys.dx(e.x, e.y, t) * e.xr + phys.dy(e.x, e.y, t) * e.yr;
    };
    c.dy = [phys, map](double r, double s, const TJet& t) {  // d/ds
        const Mapping::Eval e = map.at(r, s);
        return phys.dx(e.x, e.y, t) * e.xs + phys.dy(e.x, e.y, t) * e.ys;
    };
    c.dxx = [phys, map](double r, double s, const TJet& t) {  // d2/dr2
        const Mapping::Eval e = map.at(r, s);
        return phys.dxx(e.x, e.y, t) * (e.xr * e.xr) +
               2.0 * phys.dxy(e.x, e.y, t) * (e.xr * e.yr) +
               phys.dyy(e.x, e.y, t) * (e.yr * e.yr) + phys.dx(e.x, e.y, t) * e.xrr +
               phys.dy(e.x, e.y, t) * e.yrr;
    };
    c.dxy = [phys, map](double r, double s, const TJet& t) {  // d2/drds
        const Mapping::Eval e = map.at(r, s);
        return phys.dxx(e.x, e.y, t) * (e.xr * e.xs) +
               phys.dxy(e.x, e.y, t) * (e.xr * e.ys + e.xs * e.yr) +
               phys.dyy(e.x, e.y, t) * (e.yr * e.ys) + phys.dx(e.x, e.y, t) * e.xrs +
               phys.dy(e.x, e.y, t) * e.yrs;
    };
    c.dyy = [phys, map](double r, double s, const TJet& t) {  // d2/ds2
        const Mapping::Eval e = map.at(r, s);
        return phys.dxx(e.x, e.y, t) * (e.xs * e.xs) +
               2.0 * phys.dxy(e.x, e.y, t) * (e.xs * e.ys) +
               phys.dyy(e.x, e.y, t) * (e.ys * e.ys) + phys.dx(e.x, e.y, t) * e.xss +
               phys.dy(e.x, e.y, t) * e.yss;
    };
    return c;
}

} // namespace lcbc
