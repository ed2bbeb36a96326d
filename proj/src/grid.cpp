#include "lcbc/grid.hpp"
#include "lcbc/problem.hpp"

namespace lcbc {

const char* side_name(Side s) {
    switch (s) {
        case Side::left: return "left";
        case Side::right: return "right";
        case Side::bottom: return "bottom";
        case Side::top: return "top";
    }
    return "?";
}

CoefficientField CoefficientField::constants(double a11, double a12, double a22,
                                             double a1, double a2, double a0) {
    CoefficientField c;
    c.c11 = [a11](double, double) { return a11; };
    c.c12 = [a12](double, double) { return a12; };
    c.c22 = [a22](double, double) { return a22; };
    c.c1 = [a1](double, double) { return a1; };
    c.c2 = [a2](double, double) { return a2; };
    c.c0 = [a0](double, double) { return a0; };
    return c;
}

BoundarySpec BoundarySpec::dirichlet_zero() {
    BoundarySpec b;
    b.kind = BoundaryKind::dirichlet;
    b.g = [](double, const TJet&) { return TJet(0.0); };
    return b;
}

BoundarySpec BoundarySpec::neumann_zero() {
    BoundarySpec b;
    b.kind = BoundaryKind::neumann;
    b.g = [](double, const TJet&) { return TJet(0.0); };
    return b;
}

CoefficientTables CoefficientTables::build(const GridSpec& g, const CoefficientField& c) {
    CoefficientTables t{ExtendedField(g), ExtendedField(g), ExtendedField(g),
                        ExtendedField(g), ExtendedField(g), ExtendedField(g)};
    double max12 = 0, max1 = 0, max2 = 0, max0 = 0;
    for (int j = -g.p; j <= g.ny + g.p; ++j) {
        for (int i = -g.p; i <= g.nx + g.p; ++i) {
            const double x = g.x(i), y = g.y(j);
            t.c11(i, j) = c.c11(x, y);
            t.c12(i, j) = c.c12(x, y);
            t.c22(i, j) = c.c22(x, y);
            t.c1(i, j) = c.c1(x, y);
            t.c2(i, j) = c.c2(x, y);
            t.c0(i, j) = c.c0(x, y);
            max12 = std::max(max12, std::abs(t.c12(i, j)));
            max1 = std::max(max1, std::abs(t.c1(i, j)));
            max2 = std::max(max2, std::abs(t.c2(i, j)));
            max0 = std::max(max0, std::abs(t.c0(i, j)));
        }
    }
    t.has_cross = max12 > 0.0;
    t.has_c1 = max1 > 0.0;
    t.has_c2 = max2 > 0.0;
    t.has_c0 = max0 > 0.0;
    return t;
}

void validate_ellipticity(const GridSpec& g, const CoefficientField& c, double delta) {
    for (int j = -g.p; j <= g.ny + g.p; ++j) {
        for (int i = -g.p; i <= g.nx + g.p; ++i) {
            const double x = g.x(i), y = g.y(j);
            const double a = c.c11(x, y), b = c.c12(x, y), d = c.c22(x, y);
            if (!(a > 0.0) || !(d > 0.0) || !(a * d - b * b >= delta))
                throw std::invalid_argument(
                    "validate_ellipticity: failure at grid point (" + std::to_string(i) +
                    "," + std::to_string(j) + "): c11=" + std::to_string(a) +
                    " c22=" + std::to_string(d) + " c11*c22-c12^2=" +
                    std::to_string(a * d - b * b));
        }
    }
}

} // namespace lcbc
