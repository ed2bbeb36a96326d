#include "lcbc/problem.hpp"

namespace lcbc {

namespace {

TJet apply_Q_exact(const CoefficientField& c, const ExactSolution& u, double x, double y,
                   const TJet& t) {
    return c.c11(x, y) * u.dxx(x, y, t) + 2.0 * c.c12(x, y) * u.dxy(x, y, t) +
           c.c22(x, y) * u.dyy(x, y, t) + c.c1(x, y) * u.dx(x, y, t) +
           c.c2(x, y) * u.dy(x, y, t) + c.c0(x, y) * u.value(x, y, t);
}

} // namespace

void manufactured_data(PdeProblem& problem, const ExactSolution& exact) {
    const CoefficientField c = problem.coeff;
    const int q = problem.q;
    problem.forcing = [c, exact, q](double x, double y, const TJet& t) {
        const TJet lhs = (q == 0) ? TJet(0.0) : dt_pow(exact.value(x, y, t), q);
        return lhs - apply_Q_exact(c, exact, x, y, t);
    };
    for (Side s : kAllSides) {
        BoundarySpec& b = problem.bc[side_index(s)];
        const bool vertical = (s == Side::left || s == Side::right);
        const double fixed = (s == Side::left || s == Side::bottom) ? 0.0 : 1.0;
        if (b.kind == BoundaryKind::dirichlet) {
            b.g = [exact, vertical, fixed](double tan, const TJet& t) {
                return vertical ? exact.value(fixed, tan, t) : exact.value(tan, fixed, t);
            };
        } else {
            // Raw coordinate-normal derivative, same sign on both opposing sides.
            b.g = [exact, vertical, fixed](double tan, const TJet& t) {
                return vertical ? exact.dx(fixed, tan, t) : exact.dy(tan, fixed, t);
            };
        }
    }
    problem.u0 = [exact](double x, double y) { return exact.at(x, y, 0.0); };
    problem.u1 = [exact](double x, double y) { return exact.dt_at(x, y, 0.0); };
    problem.exact = exact;
}

} // namespace lcbc
