#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace lcbc {

/// Truncated Taylor polynomial in one variable ("jet"): value plus the first
/// N-1 derivatives, propagated exactly through arithmetic and elementary
/// functions.  Used so that boundary and forcing closures expose analytic
/// time derivatives to whatever order the compatibility conditions need,
/// without hand-derived formulas and without numerical differencing.
///
/// Coefficients are Taylor coefficients: f(t0 + e) = sum_m c[m] e^m, so the
/// m-th derivative at t0 is c[m] * m!.
template <std::size_t N>
struct Jet {
    static_assert(N >= 1);
    std::array<double, N> c{};

    Jet() = default;
    Jet(double value) { c[0] = value; }

    /// The independent variable itself: value `t`, unit first derivative.
    static Jet variable(double t) {
        Jet j(t);
        if constexpr (N > 1) j.c[1] = 1.0;
        return j;
    }

    double value() const { return c[0]; }

    /// m-th derivative (not the raw Taylor coefficient).
    double derivative(std::size_t m) const {
        if (m >= N) return 0.0;
        double fact = 1.0;
        for (std::size_t i = 2; i <= m; ++i) fact *= double(i);
        return c[m] * fact;
    }

    Jet operator-() const {
        Jet r;
        for (std::size_t i = 0; i < N; ++i) r.c[i] = -c[i];
        return r;
    }

    Jet& operator+=(const Jet& o) {
        for (std::size_t i = 0; i < N; ++i) c[i] += o.c[i];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (std::size_t i = 0; i < N; ++i) c[i] -= o.c[i];
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }

    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; i + j < N; ++j)
                r.c[i + j] += a.c[i] * b.c[j];
        return r;
    }

    friend Jet operator*(double s, Jet a) {
        for (std::size_t i = 0; i < N; ++i) a.c[i] *= s;
        return a;
    }
    friend Jet operator*(Jet a, double s) { return s * a; }

    friend Jet operator/(const Jet& a, const Jet& b) { return a * recip(b); }
    friend Jet operator/(Jet a, double s) { return (1.0 / s) * a; }

    /// 1/b via the recurrence r_k = (delta_{k0} - sum_{j<k} r_j b_{k-j}) / b_0.
    friend Jet recip(const Jet& b) {
        Jet r;
        r.c[0] = 1.0 / b.c[0];
        for (std::size_t k = 1; k < N; ++k) {
            double s = 0.0;
            for (std::size_t j = 0; j < k; ++j) s += r.c[j] * b.c[k - j];
            r.c[k] = -s / b.c[0];
        }
        return r;
    }
};

namespace jet_detail {

// Solves f' = g' * h with h given by `mul` acting on f's own prefix; covers
// exp/sin/cos/sqrt through the standard Taylor ODE recurrences.
template <std::size_t N>
Jet<N> exp(const Jet<N>& a) {
    Jet<N> r;
    r.c[0] = std::exp(a.c[0]);
    for (std::size_t k = 1; k < N; ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j <= k; ++j) s += double(j) * a.c[j] * r.c[k - j];
        r.c[k] = s / double(k);
    }
    return r;
}

template <std::size_t N>
void sincos(const Jet<N>& a, Jet<N>& sn, Jet<N>& cs) {
    sn.c[0] = std::sin(a.c[0]);
    cs.c[0] = std::cos(a.c[0]);
    for (std::size_t k = 1; k < N; ++k) {
        double ss = 0.0, sc = 0.0;
        for (std::size_t j = 1; j <= k; ++j) {
            ss += double(j) * a.c[j] * cs.c[k - j];
            sc += double(j) * a.c[j] * sn.c[k - j];
        }
        sn.c[k] = ss / double(k);
        cs.c[k] = -sc / double(k);
    }
}

template <std::size_t N>
Jet<N> sqrt(const Jet<N>& a) {
    Jet<N> r;
    r.c[0] = std::sqrt(a.c[0]);
    for (std::size_t k = 1; k < N; ++k) {
        double s = a.c[k];
        for (std::size_t j = 1; j < k; ++j) s -= r.c[j] * r.c[k - j];
        r.c[k] = s / (2.0 * r.c[0]);
    }
    return r;
}

} // namespace jet_detail

template <std::size_t N> Jet<N> exp(const Jet<N>& a) { return jet_detail::exp(a); }
template <std::size_t N> Jet<N> sqrt(const Jet<N>& a) { return jet_detail::sqrt(a); }

template <std::size_t N>
Jet<N> sin(const Jet<N>& a) {
    Jet<N> s, c;
    jet_detail::sincos(a, s, c);
    return s;
}

template <std::size_t N>
Jet<N> cos(const Jet<N>& a) {
    Jet<N> s, c;
    jet_detail::sincos(a, s, c);
    return c;
}

/// d^q/dt^q of a jet: shift Taylor coefficients down q slots with the
/// falling-factorial scale.  The top q derivatives are lost (set to zero).
template <std::size_t N>
Jet<N> dt_pow(const Jet<N>& v, int q) {
    if (q <= 0) return v;
    Jet<N> r;
    for (std::size_t m = 0; m + q < N; ++m) {
        double fall = 1.0;
        for (int i = 1; i <= q; ++i) fall *= double(m + i);
        r.c[m] = v.c[m + q] * fall;
    }
    return r;
}

/// Jet order used for time closures: enough for the sixth time derivative in
/// the degree-6 Taylor start plus one spare order for differentiated data.
inline constexpr std::size_t kTimeJetOrder = 8;
using TJet = Jet<kTimeJetOrder>;

} // namespace lcbc
