#include "lcbc/analysis.hpp"

#include "lcbc/lcbc.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lcbc {

namespace {

constexpr double pi = std::numbers::pi;

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// ---------------------------------------------------------------------------
// Wave-scheme symbols.

double symbol_b(int p, double lx2, double ly2, double sx2, double sy2) {
    const double z = lx2 + ly2;
    switch (p) {
    case 1:
        return 1.0 - 2.0 * z;
    case 2:
        return 1.0 - 2.0 * (z + lx2 * sx2 / 3.0 + ly2 * sy2 / 3.0) + (2.0 / 3.0) * z * z;
    case 3: {
        const double ax = 1.0 + sx2 / 3.0 + 8.0 * sx2 * sx2 / 45.0;
        const double ay = 1.0 + sy2 / 3.0 + 8.0 * sy2 * sy2 / 45.0;
        const double quart = lx2 * lx2 * (1.0 + 2.0 * sx2 / 3.0) + ly2 * ly2 * (1.0 + 2.0 * sy2 / 3.0) +
                             2.0 * lx2 * ly2 * (1.0 + sx2 / 3.0) * (1.0 + sy2 / 3.0);
        return 1.0 - 2.0 * (lx2 * ax + ly2 * ay) + (2.0 / 3.0) * quart -
               (4.0 / 45.0) * z * z * z;
    }
    default:
        throw std::invalid_argument("stability: p must be 1, 2, or 3");
    }
}

// ---------------------------------------------------------------------------
// Bessel functions.

/// Downward (Miller) recurrence for J_0..J_{n_max}(x), normalized with
/// J_0 + 2 J_2 + 2 J_4 + ... = 1.
std::vector<double> bessel_J(int n_max, double x) {
    const int start = std::max(n_max, int(x)) + 80;
    std::vector<double> J(std::size_t(n_max) + 1, 0.0);
    double jp = 0.0;        // J_{n+1}
    double jc = 1e-300;     // J_n (arbitrary seed, normalized away)
    double norm = 0.0;      // accumulates J_0 + 2 sum_{even n >= 2} J_n
    for (int n = start; n >= 1; --n) {
        const double jm = (2.0 * n / x) * jc - jp;
        jp = jc;
        jc = jm;
        if (n - 1 <= n_max) J[std::size_t(n - 1)] = jc;
        if ((n - 1) % 2 == 0) norm += (n - 1 == 0) ? jc : 2.0 * jc;
        if (std::abs(jc) > 1e250) {
            const double s = 1e-250;
            jc *= s;
            jp *= s;
            norm *= s;
            for (double& v : J) v *= s;
        }
    }
    for (double& v : J) v /= norm;
    return J;
}

/// Y_0 and Y_1 by the ascending series (moderate x) or the large-argument
/// asymptotic expansion; J_0, J_1 must be accurate values at x.
std::pair<double, double> bessel_Y01(double x, double J0, double J1) {
    constexpr double euler_gamma = 0.5772156649015328606;
    if (x < 14.0) {
        const double q = x * x / 4.0;
        // Y0 = (2/pi)[(ln(x/2)+gamma) J0 + sum_{k>=1} (-1)^{k+1} H_k q^k / (k!)^2]
        double sum0 = 0.0, term = 1.0, Hk = 0.0;
        for (int k = 1; k <= 60; ++k) {
            term *= q / (k * k);
            Hk += 1.0 / k;
            const double add = ((k % 2 == 1) ? 1.0 : -1.0) * Hk * term;
            sum0 += add;
            if (std::abs(add) < 1e-20 * (1.0 + std::abs(sum0))) break;
        }
        const double Y0 = (2.0 / pi) * ((std::log(x / 2.0) + euler_gamma) * J0 + sum0);
        // Y1 = (2/pi) ln(x/2) J1 - 2/(pi x)
        //      - (1/pi) sum_{k>=0} (-1)^k (-2 gamma + H_k + H_{k+1}) (x/2)^{2k+1} / (k! (k+1)!)
        double sum1 = 0.0, pw = x / 2.0;
        double Ha = 0.0, Hb = 1.0; // H_k, H_{k+1}
        for (int k = 0; k <= 60; ++k) {
            const double add = ((k % 2 == 0) ? 1.0 : -1.0) * (-2.0 * euler_gamma + Ha + Hb) * pw;
            sum1 += add;
            if (std::abs(add) < 1e-20 * (1.0 + std::abs(sum1)) && k > 2) break;
            pw *= q / ((k + 1.0) * (k + 2.0));
            Ha += 1.0 / (k + 1.0);
            Hb += 1.0 / (k + 2.0);
        }
        const double Y1 = (2.0 / pi) * std::log(x / 2.0) * J1 - 2.0 / (pi * x) - sum1 / pi;
        return {Y0, Y1};
    }
    // Asymptotic: Y_n = sqrt(2/(pi x)) [sin(chi) P_n + cos(chi) Q_n],
    // chi = x - (n/2 + 1/4) pi, with the standard P/Q series in 1/(8x).
    auto asym = [&](int n) {
        const double mu = 4.0 * n * n;
        double P = 0.0, Q = 0.0, term = 1.0;
        double prev = 1e300;
        for (int k = 0; k <= 40; ++k) {
            const double mag = std::abs(term);
            if (mag > prev) break; // divergent tail reached
            prev = mag;
            if (k % 2 == 0)
                P += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
            else
                Q += (((k - 1) / 2) % 2 == 0 ? 1.0 : -1.0) * term;
            term *= (mu - (2.0 * k + 1.0) * (2.0 * k + 1.0)) / ((k + 1.0) * 8.0 * x);
            if (mag < 1e-19) break;
        }
        const double chi = x - (0.5 * n + 0.25) * pi;
        return std::sqrt(2.0 / (pi * x)) * (std::sin(chi) * P + std::cos(chi) * Q);
    };
    return {asym(0), asym(1)};
}

// ---------------------------------------------------------------------------
// Bivariate polynomials with exact derivative rows for the reference
// (constant-coefficient) constraint systems.  Degree <= 2p <= 6 per variable.

constexpr int kPolyN = 7;

struct Poly2 {
    std::array<std::array<double, kPolyN>, kPolyN> c{}; // c[i][j] x^i y^j

    double at_origin() const { return c[0][0]; }
};

Poly2 ddx(const Poly2& P) {
    Poly2 R;
    for (int i = 1; i < kPolyN; ++i)
        for (int j = 0; j < kPolyN; ++j) R.c[std::size_t(i - 1)][std::size_t(j)] = i * P.c[std::size_t(i)][std::size_t(j)];
    return R;
}

Poly2 ddy(const Poly2& P) {
    Poly2 R;
    for (int i = 0; i < kPolyN; ++i)
        for (int j = 1; j < kPolyN; ++j) R.c[std::size_t(i)][std::size_t(j - 1)] = j * P.c[std::size_t(i)][std::size_t(j)];
    return R;
}

void axpy(Poly2& acc, double s, const Poly2& P) {
    for (int i = 0; i < kPolyN; ++i)
        for (int j = 0; j < kPolyN; ++j) acc.c[std::size_t(i)][std::size_t(j)] += s * P.c[std::size_t(i)][std::size_t(j)];
}

Poly2 apply_exact_Q(const Poly2& P, const ConstCoeffs& cc) {
    Poly2 R;
    axpy(R, cc.c11, ddx(ddx(P)));
    axpy(R, 2.0 * cc.c12, ddx(ddy(P)));
    axpy(R, cc.c22, ddy(ddy(P)));
    axpy(R, cc.c1, ddx(P));
    axpy(R, cc.c2, ddy(P));
    axpy(R, cc.c0, P);
    return R;
}

/// 1D Lagrange cardinal of node a on {-p..p}, as monomial coefficients.
std::array<double, kPolyN> cardinal1(int p, int a) {
    std::array<double, kPolyN> c{};
    c[0] = 1.0;
    int deg = 0;
    double den = 1.0;
    for (int n = -p; n <= p; ++n) {
        if (n == a) continue;
        for (int i = deg; i >= 0; --i) {
            c[std::size_t(i + 1)] += c[std::size_t(i)];
            c[std::size_t(i)] *= -n;
        }
        ++deg;
        den *= (a - n);
    }
    for (double& v : c) v /= den;
    return c;
}

Poly2 cardinal2(int p, int a, int b) {
    const auto cx = cardinal1(p, a), cy = cardinal1(p, b);
    Poly2 P;
    for (int i = 0; i < kPolyN; ++i)
        for (int j = 0; j < kPolyN; ++j) P.c[std::size_t(i)][std::size_t(j)] = cx[std::size_t(i)] * cy[std::size_t(j)];
    return P;
}

double exact_row_value(const Poly2& base, const ConstCoeffs& cc, int nu, bool normal_deriv,
                       int normal_axis, int mu, int tang_axis) {
    Poly2 P = base;
    for (int v = 0; v < nu; ++v) P = apply_exact_Q(P, cc);
    if (normal_deriv) P = (normal_axis == 0) ? ddx(P) : ddy(P);
    for (int m = 0; m < mu; ++m) P = (tang_axis == 0) ? ddx(P) : ddy(P);
    return P.at_origin();
}

} // namespace

double stability_symbol(int p, double lambda_x, double lambda_y, double xi_x, double xi_y) {
    const double sx = std::sin(xi_x / 2.0), sy = std::sin(xi_y / 2.0);
    const double lx = lambda_x * sx, ly = lambda_y * sy;
    return symbol_b(p, lx * lx, ly * ly, sx * sx, sy * sy);
}

StabilityPoint stability_amplification(int p, double lambda_x, double lambda_y, int n) {
    require(n >= 3, "stability_amplification: need at least 3 samples per axis");
    StabilityPoint pt;
    pt.lambda_x = lambda_x;
    pt.lambda_y = lambda_y;
    pt.z = lambda_x * lambda_x + lambda_y * lambda_y;
    double amax = 0.0;
    for (int i = 0; i < n; ++i) {
        const double xix = -pi + 2.0 * pi * i / (n - 1);
        for (int j = 0; j < n; ++j) {
            const double xiy = -pi + 2.0 * pi * j / (n - 1);
            const double b = stability_symbol(p, lambda_x, lambda_y, xix, xiy);
            // A^2 - 2 b A + 1 = 0: |A| = 1 for |b| <= 1, else |b| + sqrt(b^2 - 1).
            const double a = (std::abs(b) <= 1.0) ? 1.0 : std::abs(b) + std::sqrt(b * b - 1.0);
            amax = std::max(amax, a);
        }
    }
    pt.a_max = amax;
    return pt;
}

std::pair<std::vector<double>, std::vector<double>> bessel_JY(int n_max, double x) {
    if (x <= 0.0) throw std::domain_error("bessel_JY: x must be positive");
    require(n_max >= 1 && n_max <= 220, "bessel_JY: n_max out of range");
    std::vector<double> J = bessel_J(n_max, x);
    std::vector<double> Y(std::size_t(n_max) + 1, 0.0);
    const auto [y0, y1] = bessel_Y01(x, J[0], J[1]);
    Y[0] = y0;
    Y[1] = y1;
    for (int n = 1; n < n_max; ++n)
        Y[std::size_t(n + 1)] = (2.0 * n / x) * Y[std::size_t(n)] - Y[std::size_t(n - 1)];
    return {std::move(J), std::move(Y)};
}

double scattering_exact(double x, double y, double t, double k, double c,
                        const SeriesTruncation& trunc) {
    const double rho = std::hypot(x, y);
    if (rho < 1.0 - 1e-12) throw std::domain_error("scattering_exact: point inside the cylinder");
    const double theta = std::atan2(y, x);
    const auto [Jk, Yk] = bessel_JY(trunc.n_max, k);
    const auto [Jr, Yr] = bessel_JY(trunc.n_max, k * std::max(rho, 1.0));
    // Truncate once the term scale is negligible both in the exterior
    // (|J_n(k)/H_n(k)| -> coefficient of a bounded H_n(k rho)) and on the
    // boundary rho = 1 (terms reduce to 2 J_n(k) cos(n theta)).
    int N = trunc.n_max;
    for (int n = 0; n <= trunc.n_max; ++n) {
        const std::complex<double> H(Jk[std::size_t(n)], Yk[std::size_t(n)]);
        if (std::abs(Jk[std::size_t(n)] / H) < trunc.tail_tol &&
            std::abs(Jk[std::size_t(n)]) < trunc.tail_tol) {
            N = n;
            break;
        }
    }
    std::complex<double> sum(0.0, 0.0);
    const std::complex<double> iunit(0.0, 1.0);
    std::complex<double> ipow(1.0, 0.0);
    for (int n = 0; n <= N; ++n) {
        const std::complex<double> Hk(Jk[std::size_t(n)], Yk[std::size_t(n)]);
        const std::complex<double> Hr(Jr[std::size_t(n)], Yr[std::size_t(n)]);
        const double fac = (n == 0) ? 1.0 : 2.0 * std::cos(n * theta);
        sum += fac * ipow * (Jk[std::size_t(n)] / Hk) * Hr;
        ipow *= iunit;
    }
    const std::complex<double> phase = std::exp(std::complex<double>(0.0, -k * c * t));
    return -(phase * sum).real();
}

double heat_gaussian_exact(double x, double y, double t, double diffusivity, double vx, double vy,
                           double gamma, double sigma) {
    const double denom = 1.0 + 4.0 * sigma * diffusivity * t;
    const double dx = x - vx * t, dy = y - vy * t;
    return std::exp(gamma * t) / denom * std::exp(-sigma * (dx * dx + dy * dy) / denom);
}

ConstCoeffs face_solvability_coeffs(double xi) {
    ConstCoeffs c;
    c.c11 = 1.0;
    c.c1 = xi;
    return c;
}

ConstCoeffs corner_solvability_coeffs(double gamma, double sigma) {
    require(sigma > 0.0, "corner_solvability_coeffs: sigma must be positive");
    ConstCoeffs c;
    c.c11 = sigma;
    c.c22 = 1.0 / sigma;
    c.c12 = gamma;
    return c;
}

double solvability_reference(int p, SolvKind kind, double a, double b) {
    require(p >= 1 && p <= 3, "solvability_reference: p must be 1, 2, or 3");
    const double x = a, g = a, s = b;
    auto ipow = [](double v, int e) {
        double r = 1.0;
        for (int i = 0; i < e; ++i) r *= v;
        return r;
    };
    switch (kind) {
    case SolvKind::face_D: {
        double base = 0.0;
        if (p == 1)
            base = 1.0 - x / 2.0;
        else if (p == 2)
            base = 1.0 - 1.5 * x + 0.5 * x * x - x * x * x / 18.0;
        else
            base = 1.0 - 3.0 * x + 2.75 * x * x - 1691.0 / 1440.0 * ipow(x, 3) +
                   121.0 / 480.0 * ipow(x, 4) - 11.0 / 400.0 * ipow(x, 5) + ipow(x, 6) / 800.0;
        return ipow(base, 2 * p + 1);
    }
    case SolvKind::face_N: {
        double base = 1.0;
        if (p == 2)
            base = 1.0 - 2.0 * x / 9.0;
        else if (p == 3)
            base = 1.0 - 23.0 / 30.0 * x + 11.0 / 75.0 * x * x - ipow(x, 3) / 100.0;
        return ipow(base, 2 * p + 1);
    }
    case SolvKind::corner_DD: {
        const double g2 = g * g;
        double H = 0.0, F = 1.0;
        if (p == 1) {
            H = 1.0 - 4.0 * g2;
        } else if (p == 2) {
            H = ipow(1.0 - 4.0 * g2, 2) * (1.0 - 28.0 * g2 + 208.0 * g2 * g2 - 256.0 * ipow(g2, 3));
            F = 3.0 * (s + 1.0 / s) - 4.0 * g;
        } else {
            H = ipow(1.0 - 4.0 * g2, 4) * ipow(1.0 - 12.0 * g2 + 16.0 * g2 * g2, 2) *
                (1.0 - 104.0 * g2 + 3984.0 * ipow(g2, 2) - 68480.0 * ipow(g2, 3) +
                 509440.0 * ipow(g2, 4) - 1278976.0 * ipow(g2, 5) + 921600.0 * ipow(g2, 6));
            F = 7200.0 * (ipow(s, 3) + s + 1.0 / s + 1.0 / ipow(s, 3)) -
                g * (3960.0 * (ipow(s, 4) + 1.0 / ipow(s, 4)) + 28070.0 * (s * s + 1.0 / (s * s)) + 26620.0) +
                g2 * (13423.0 * (ipow(s, 3) + 1.0 / ipow(s, 3)) + 39483.0 * (s + 1.0 / s)) -
                g * g2 * (14399.0 * (s * s + 1.0 / (s * s)) + 28798.0) +
                g2 * g2 * 5940.0 * (s + 1.0 / s);
        }
        return H * F;
    }
    case SolvKind::corner_NN: {
        const double g2 = g * g;
        double H = 1.0, F = 1.0;
        if (p == 2) {
            H = 1.0 - 4.0 * g2;
            F = 27.0 * (s + 1.0 / s) - 32.0 * g;
        } else if (p == 3) {
            H = ipow(1.0 - 4.0 * g2, 2) * (1.0 - 28.0 * g2 + 208.0 * g2 * g2 - 256.0 * ipow(g2, 3));
            // The (s^3 + 1/s^3) gamma^2 coefficient below is 75450, pinned by
            // the exact-determinant interpolation tests in test_analysis.
            F = 56250.0 * (ipow(s, 3) + s + 1.0 / s + 1.0 / ipow(s, 3)) -
                g * (24750.0 * (ipow(s, 4) + 1.0 / ipow(s, 4)) + 194625.0 * (s * s + 1.0 / (s * s)) + 189750.0) +
                g2 * (240310.0 * (s + 1.0 / s) + 75450.0 * (ipow(s, 3) + 1.0 / ipow(s, 3))) -
                g * g2 * (71564.0 * (s * s + 1.0 / (s * s)) + 150040.0) +
                g2 * g2 * 25344.0 * (s + 1.0 / s);
        }
        return H * F;
    }
    case SolvKind::corner_DN: {
        const double g2 = g * g;
        double H = 1.0, F = 1.0;
        if (p == 2) {
            H = 1.0 - 12.0 * g2 + 32.0 * g2 * g2;
            F = 3.0 * (s + 1.0 / s) - 4.0 * g;
        } else if (p == 3) {
            H = ipow(1.0 - 4.0 * g2, 2) *
                (1.0 - 64.0 * g2 + 1504.0 * ipow(g2, 2) - 16128.0 * ipow(g2, 3) +
                 80640.0 * ipow(g2, 4) - 171008.0 * ipow(g2, 5) + 122880.0 * ipow(g2, 6));
            F = 135000.0 * (ipow(s, 3) + s + 1.0 / s + 1.0 / ipow(s, 3)) -
                75.0 * g * (660.0 * ipow(s, 4) + 7353.0 * s * s + 6523.0 + 6418.0 / (s * s) + 1188.0 / ipow(s, 4)) +
                5.0 * g2 * (35985.0 * ipow(s, 3) + 158555.0 * s + 126287.0 / s + 54738.0 / ipow(s, 3)) -
                g * g2 * (215985.0 * s * s + 520784.0 + 239532.0 / (s * s)) +
                g2 * g2 * 35640.0 * (3.0 * s + 2.0 / s);
        }
        return H * F;
    }
    }
    throw std::invalid_argument("solvability_reference: unknown kind");
}

Eigen::MatrixXd solvability_matrix(int p, SolvKind kind, const ConstCoeffs& cc) {
    require(p >= 1 && p <= 3, "solvability_matrix: p must be 1, 2, or 3");
    const int n = 2 * p + 1;
    const int m = n * n;
    auto col_index = [&](int a, int b) { return (a + p) * n + (b + p); };

    const bool face = (kind == SolvKind::face_D || kind == SolvKind::face_N);
    std::array<BoundaryKind, 2> kinds{BoundaryKind::dirichlet, BoundaryKind::dirichlet};
    if (kind == SolvKind::face_N || kind == SolvKind::corner_NN) kinds[0] = BoundaryKind::neumann;
    if (kind == SolvKind::corner_NN || kind == SolvKind::corner_DN) kinds[1] = BoundaryKind::neumann;

    // Data nodes: faces keep a >= 0 (the boundary-value rows are unit rows in
    // the cardinal basis); corners keep the interior quadrant, extended to the
    // boundary line along each Neumann arm.
    std::vector<std::pair<int, int>> data;
    if (face) {
        for (int a = 0; a <= p; ++a)
            for (int b = -p; b <= p; ++b) data.emplace_back(a, b);
    } else {
        const int alo = (kinds[0] == BoundaryKind::neumann) ? 0 : 1;
        const int blo = (kinds[1] == BoundaryKind::neumann) ? 0 : 1;
        for (int a = alo; a <= p; ++a)
            for (int b = blo; b <= p; ++b) data.emplace_back(a, b);
    }

    std::vector<Poly2> cards;
    cards.reserve(std::size_t(m));
    for (int a = -p; a <= p; ++a)
        for (int b = -p; b <= p; ++b) cards.push_back(cardinal2(p, a, b));

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
    int r = 0;
    for (const auto& [a, b] : data) A(r++, col_index(a, b)) = 1.0;

    if (face) {
        const bool neumann = (kind == SolvKind::face_N);
        const int nu_lo = neumann ? 0 : 1;
        const int nu_hi = neumann ? p - 1 : p;
        for (int nu = nu_lo; nu <= nu_hi; ++nu)
            for (int mu = 0; mu <= 2 * p; ++mu) {
                for (int cidx = 0; cidx < m; ++cidx)
                    A(r, cidx) = exact_row_value(cards[std::size_t(cidx)], cc, nu, neumann, 0, mu, 1);
                ++r;
            }
    } else {
        const auto plan = corner_plan(kinds[0], kinds[1], p);
        const bool n1 = (kinds[0] == BoundaryKind::neumann);
        const bool n2 = (kinds[1] == BoundaryKind::neumann);
        for (const auto& pn : plan) {
            for (int mu : pn.mus1) {
                if (pn.has_avg && mu == pn.avg_mu1) continue;
                for (int cidx = 0; cidx < m; ++cidx)
                    A(r, cidx) = exact_row_value(cards[std::size_t(cidx)], cc, pn.nu, n1, 0, mu, 1);
                ++r;
            }
            for (int mu : pn.mus2) {
                if (pn.has_avg && mu == pn.avg_mu2) continue;
                for (int cidx = 0; cidx < m; ++cidx)
                    A(r, cidx) = exact_row_value(cards[std::size_t(cidx)], cc, pn.nu, n2, 1, mu, 0);
                ++r;
            }
            if (pn.has_avg) {
                for (int cidx = 0; cidx < m; ++cidx)
                    A(r, cidx) =
                        0.5 * exact_row_value(cards[std::size_t(cidx)], cc, pn.nu, n1, 0, pn.avg_mu1, 1) +
                        0.5 * exact_row_value(cards[std::size_t(cidx)], cc, pn.nu, n2, 1, pn.avg_mu2, 0);
                ++r;
            }
        }
    }
    require(r == m, "solvability_matrix: row count mismatch");
    return A;
}

RichardsonFit richardson_rates(double du1, double du2, double h1) {
    if (!(du1 > 0.0) || !(du2 > 0.0))
        throw std::invalid_argument("richardson_rates: degenerate solution differences");
    require(h1 > 0.0, "richardson_rates: h must be positive");
    RichardsonFit fit;
    fit.sigma = std::log2(du1 / du2);
    fit.C = du1 / ((1.0 - std::pow(2.0, -fit.sigma)) * std::pow(h1, fit.sigma));
    for (int j = 0; j < 3; ++j) fit.estimates[std::size_t(j)] = fit.C * std::pow(h1 / (1 << j), fit.sigma);
    return fit;
}

} // namespace lcbc
