#include "lcbc/qpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace lcbc {

namespace {

Poly2 dX(const Poly2& P) {
    if (P.nx == 0) return Poly2();
    Poly2 D(P.nx - 1, P.ny);
    for (int i = 0; i <= D.nx; ++i)
        for (int j = 0; j <= D.ny; ++j) D.at(i, j) = double(i + 1) * P.at(i + 1, j);
    return D;
}

Poly2 dY(const Poly2& P) {
    if (P.ny == 0) return Poly2();
    Poly2 D(P.nx, P.ny - 1);
    for (int i = 0; i <= D.nx; ++i)
        for (int j = 0; j <= D.ny; ++j) D.at(i, j) = double(j + 1) * P.at(i, j + 1);
    return D;
}

/// out += A * B over the comps that fit in out's degree box.
void acc_product(Poly2& out, const Poly2& A, const Poly2& B) {
    for (int i = 0; i <= A.nx && i <= out.nx; ++i)
        for (int j = 0; j <= A.ny && j <= out.ny; ++j) {
            const double a = A.at(i, j);
            if (a == 0.0) continue;
            const int kmax = std::min(B.nx, out.nx - i);
            const int lmax = std::min(B.ny, out.ny - j);
            for (int k = 0; k <= kmax; ++k)
                for (int l = 0; l <= lmax; ++l) out.at(i + k, j + l) += a * B.at(k, l);
        }
}

/// out += S componentwise (out must be at least as large).
void acc(Poly2& out, const Poly2& S) {
    for (int i = 0; i <= S.nx; ++i)
        for (int j = 0; j <= S.ny; ++j) out.at(i, j) += S.at(i, j);
}

/// Correlation (multiplication transpose): corr(phi, C)[i][j] weights the
/// coefficient (i, j) of H in <phi, C * H>.
Poly2 corr(const Poly2& phi, const Poly2& C) {
    Poly2 r(phi.nx, phi.ny);
    for (int i = 0; i <= r.nx; ++i)
        for (int j = 0; j <= r.ny; ++j) {
            double s = 0.0;
            for (int k = 0; k <= C.nx && i + k <= phi.nx; ++k)
                for (int l = 0; l <= C.ny && j + l <= phi.ny; ++l) {
                    const double cv = C.at(k, l);
                    if (cv != 0.0) s += phi.at(i + k, j + l) * cv;
                }
            r.at(i, j) = s;
        }
    trim(r);
    return r;
}

/// Derivative transposes: <psi, dX H> = <dXT(psi), H>.
Poly2 dXT(const Poly2& psi) {
    Poly2 r(psi.nx + 1, psi.ny);
    for (int i = 0; i <= psi.nx; ++i)
        for (int j = 0; j <= psi.ny; ++j) r.at(i + 1, j) = double(i + 1) * psi.at(i, j);
    return r;
}

Poly2 dYT(const Poly2& psi) {
    Poly2 r(psi.nx, psi.ny + 1);
    for (int i = 0; i <= psi.nx; ++i)
        for (int j = 0; j <= psi.ny; ++j) r.at(i, j + 1) = double(j + 1) * psi.at(i, j);
    return r;
}

Poly2 lift_patch(const LocalPatch& v, const LagrangeBasis& basis, int p, double scale) {
    // Interpolant through the (2p+1)^2 node samples, written as the center
    // value plus the lift of the differences: a constant patch collapses to
    // the exactly constant polynomial instead of accumulating table roundoff.
    Poly2 P(2 * p, 2 * p);
    const double base = v.at(0, 0);
    for (int m = -p; m <= p; ++m)
        for (int n = -p; n <= p; ++n) {
            const double dv = v.at(m, n) - base;
            if (dv == 0.0) continue;
            for (int i = 0; i <= 2 * p; ++i) {
                const double cm = basis.monomial_coeff(m, i);
                if (cm == 0.0) continue;
                for (int j = 0; j <= 2 * p; ++j)
                    P.at(i, j) += dv * cm * basis.monomial_coeff(n, j);
            }
        }
    P.at(0, 0) += base;
    for (double& cv : P.c) cv *= scale;
    trim(P);
    return P;
}

} // namespace

void trim(Poly2& P) {
    int nx = -1, ny = -1;
    for (int i = 0; i <= P.nx; ++i)
        for (int j = 0; j <= P.ny; ++j)
            if (P.at(i, j) != 0.0) {
                nx = std::max(nx, i);
                ny = std::max(ny, j);
            }
    if (nx < 0) {
        P = Poly2();
        return;
    }
    if (nx == P.nx && ny == P.ny) return;
    Poly2 R(nx, ny);
    for (int i = 0; i <= nx; ++i)
        for (int j = 0; j <= ny; ++j) R.at(i, j) = P.at(i, j);
    P = std::move(R);
}

Poly2 cardinal_poly(const LagrangeBasis& basis, int mhat, int nhat) {
    const int d = 2 * basis.p();
    Poly2 P(d, d);
    for (int i = 0; i <= d; ++i) {
        const double cm = basis.monomial_coeff(mhat, i);
        if (cm == 0.0) continue;
        for (int j = 0; j <= d; ++j) P.at(i, j) = cm * basis.monomial_coeff(nhat, j);
    }
    return P;
}

QPolys lift_coeff_polys(const PatchCoeffs& pc, int p) {
    if (pc.c11.wx < p || pc.c11.wy < p)
        throw std::invalid_argument("lift_coeff_polys: coefficient patch narrower than (p, p)");
    if (!(pc.dxh > 0.0 && pc.dyh > 0.0))
        throw std::invalid_argument("lift_coeff_polys: patch spacings must be positive");
    const LagrangeBasis basis(p);
    const double hx = pc.dxh, hy = pc.dyh;
    QPolys C;
    C.p = p;
    C.cxx = lift_patch(pc.c11, basis, p, 1.0 / (hx * hx));
    C.cxy = lift_patch(pc.c12, basis, p, 2.0 / (hx * hy));
    C.cyy = lift_patch(pc.c22, basis, p, 1.0 / (hy * hy));
    C.cx = lift_patch(pc.c1, basis, p, 1.0 / hx);
    C.cy = lift_patch(pc.c2, basis, p, 1.0 / hy);
    C.c0 = lift_patch(pc.c0, basis, p, 1.0);
    return C;
}

Poly2 apply_q_poly(const Poly2& P, const QPolys& C, int xcap, int ycap) {
    const int q = 2 * C.p;
    int onx = P.nx + q, ony = P.ny + q;
    if (xcap >= 0) onx = std::min(onx, xcap);
    if (ycap >= 0) ony = std::min(ony, ycap);
    Poly2 out(onx, ony);
    const Poly2 Px = dX(P), Py = dY(P);
    acc_product(out, C.cxx, dX(Px));
    acc_product(out, C.cxy, dY(Px));
    acc_product(out, C.cyy, dY(Py));
    acc_product(out, C.cx, Px);
    acc_product(out, C.cy, Py);
    acc_product(out, C.c0, P);
    trim(out);
    return out;
}

Poly2 apply_q_poly_transpose(const Poly2& phi, const QPolys& C) {
    Poly2 out(phi.nx + 2, phi.ny + 2);
    acc(out, dXT(dXT(corr(phi, C.cxx))));
    acc(out, dYT(dXT(corr(phi, C.cxy))));
    acc(out, dYT(dYT(corr(phi, C.cyy))));
    acc(out, dXT(corr(phi, C.cx)));
    acc(out, dYT(corr(phi, C.cy)));
    acc(out, corr(phi, C.c0));
    trim(out);
    return out;
}

std::vector<double> functional_sample_weights(const Poly2& phi, const LagrangeBasis& basis,
                                              int p) {
    const int n = 2 * p + 1;
    std::vector<double> w(std::size_t(n) * n, 0.0);
    for (int sa = -p; sa <= p; ++sa)
        for (int sb = -p; sb <= p; ++sb) {
            double s = 0.0;
            for (int i = 0; i <= 2 * p && i <= phi.nx; ++i) {
                const double ca = basis.monomial_coeff(sa, i);
                if (ca == 0.0) continue;
                for (int j = 0; j <= 2 * p && j <= phi.ny; ++j)
                    s += phi.at(i, j) * ca * basis.monomial_coeff(sb, j);
            }
            w[std::size_t(sa + p) * n + (sb + p)] = s;
        }
    return w;
}

double deriv_at_origin(const Poly2& P, int alpha, int beta, double hx, double hy) {
    double f = 1.0;
    for (int k = 2; k <= alpha; ++k) f *= double(k);
    for (int k = 2; k <= beta; ++k) f *= double(k);
    double scale = f;
    for (int k = 0; k < alpha; ++k) scale /= hx;
    for (int k = 0; k < beta; ++k) scale /= hy;
    return scale * P.get(alpha, beta);
}

} // namespace lcbc
