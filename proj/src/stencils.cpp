#include "lcbc/stencils.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace lcbc {

namespace {

// Convolution of two centered integer-offset stencils.
std::vector<double> convolve(const std::vector<double>& a, int ma,
                             const std::vector<double>& b, int mb) {
    const int m = ma + mb;
    std::vector<double> r(2 * m + 1, 0.0);
    for (int s = -ma; s <= ma; ++s)
        for (int t = -mb; t <= mb; ++t)
            r[s + t + m] += a[s + ma] * b[t + mb];
    return r;
}

// (D+D-)^n on unit spacing as a centered stencil of half-width n.
std::vector<double> dpdm_power(int n) {
    std::vector<double> r = {1.0};
    int m = 0;
    const std::vector<double> lap = {1.0, -2.0, 1.0};
    for (int i = 0; i < n; ++i) {
        r = convolve(r, m, lap, 1);
        m += 1;
    }
    return r;
}

void check_order(int d, const char* who) {
    if (d != 2 && d != 4 && d != 6)
        throw std::invalid_argument(std::string(who) + ": accuracy order d=" +
                                    std::to_string(d) + " not in {2,4,6}");
}

// Solves the (2m+1)x(2m+1) Vandermonde system sum_s w_s s^r = mu! delta_{r,mu}
// in long double via partial-pivot elimination; nodes are small integers so
// this is exact to roundoff for the widths used here (m <= 8).
std::vector<double> vandermonde_weights(int mu, int m) {
    const int n = 2 * m + 1;
    std::vector<std::vector<long double>> A(n, std::vector<long double>(n + 1, 0.0L));
    for (int r = 0; r < n; ++r) {
        for (int s = -m; s <= m; ++s) {
            long double v = 1.0L;
            for (int k = 0; k < r; ++k) v *= s;
            A[r][s + m] = v;
        }
        long double rhs = 0.0L;
        if (r == mu) {
            rhs = 1.0L;
            for (int k = 2; k <= mu; ++k) rhs *= k;
        }
        A[r][n] = rhs;
    }
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs((double)A[r][col]) > std::fabs((double)A[piv][col])) piv = r;
        std::swap(A[piv], A[col]);
        if (A[col][col] == 0.0L)
            throw std::runtime_error("vandermonde_weights: singular system");
        for (int r = col + 1; r < n; ++r) {
            const long double f = A[r][col] / A[col][col];
            for (int k = col; k <= n; ++k) A[r][k] -= f * A[col][k];
        }
    }
    std::vector<double> w(n);
    for (int r = n - 1; r >= 0; --r) {
        long double s = A[r][n];
        for (int k = r + 1; k < n; ++k) s -= A[r][k] * (long double)w[k];
        w[r] = double(s / A[r][r]);
    }
    return w;
}

} // namespace

Stencil1D first_derivative_stencil(int d, double h) {
    check_order(d, "first_derivative_stencil");
    const int k = d / 2;
    // D0 * sum_{n<k} b_n (D+D-)^n, all on unit spacing, then scale by 1/h.
    std::vector<double> acc = {0.0};
    int macc = 0;
    const std::vector<double> d0 = {-0.5, 0.0, 0.5};
    for (int n = 0; n < k; ++n) {
        std::vector<double> term = convolve(d0, 1, dpdm_power(n), n);
        const int mt = 1 + n;
        std::vector<double> grown(2 * mt + 1, 0.0);
        for (int s = -macc; s <= macc; ++s) grown[s + mt] = acc[s + macc];
        for (int s = -mt; s <= mt; ++s)
            grown[s + mt] += kFirstDerivCorrection[n] * term[s + mt];
        acc = std::move(grown);
        macc = mt;
    }
    Stencil1D st;
    st.m = macc;
    st.w = std::move(acc);
    for (double& wv : st.w) wv /= h;
    return st;
}

Stencil1D second_derivative_stencil(int d, double h) {
    check_order(d, "second_derivative_stencil");
    const int k = d / 2;
    std::vector<double> acc = {0.0};
    int macc = 0;
    for (int n = 0; n < k; ++n) {
        std::vector<double> term = dpdm_power(n + 1);
        const int mt = n + 1;
        std::vector<double> grown(2 * mt + 1, 0.0);
        for (int s = -macc; s <= macc; ++s) grown[s + mt] = acc[s + macc];
        for (int s = -mt; s <= mt; ++s)
            grown[s + mt] += kSecondDerivCorrection[n] * term[s + mt];
        acc = std::move(grown);
        macc = mt;
    }
    Stencil1D st;
    st.m = macc;
    st.w = std::move(acc);
    for (double& wv : st.w) wv /= (h * h);
    return st;
}

Stencil1D centered_table(int mu, int m, double h) {
    if (m < 1 || m > 8)
        throw std::invalid_argument("centered_table: half-width m=" + std::to_string(m) +
                                    " outside [1,8]");
    if (mu < 0 || mu > 2 * m)
        throw std::invalid_argument("centered_table: derivative order mu=" +
                                    std::to_string(mu) + " exceeds footprint 2m=" +
                                    std::to_string(2 * m));
    static std::map<std::pair<int, int>, std::vector<double>> cache;
    static std::mutex mtx;
    std::vector<double> w;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find({mu, m});
        if (it == cache.end())
            it = cache.emplace(std::pair<int, int>{mu, m}, vandermonde_weights(mu, m)).first;
        w = it->second;
    }
    Stencil1D st;
    st.m = m;
    st.w = std::move(w);
    const double scale = std::pow(h, -mu);
    for (double& wv : st.w) wv *= scale;
    return st;
}

Stencil1D centered_for_accuracy(int mu, int k, double h) {
    if (k < 1) throw std::invalid_argument("centered_for_accuracy: k must be >= 1");
    const int m = (mu + 1) / 2 + k - 1;
    return centered_table(mu, std::max(m, 1), h);
}

LagrangeBasis::LagrangeBasis(int p) : p_(p) {
    if (p < 1 || p > 3) throw std::invalid_argument("LagrangeBasis: p outside [1,3]");
    const int n = 2 * p + 1;
    poly_.assign(n, std::vector<double>(n, 0.0));
    // Cardinal m: delta data at nodes; monomial coefficients from the same
    // Vandermonde machinery (transpose problem solved per column).
    for (int mm = 0; mm < n; ++mm) {
        // Solve V c = e_m with V[r][k] = node_r^k.
        std::vector<std::vector<long double>> A(n, std::vector<long double>(n + 1, 0.0L));
        for (int r = 0; r < n; ++r) {
            const int node = r - p;
            long double v = 1.0L;
            for (int k = 0; k < n; ++k) {
                A[r][k] = v;
                v *= node;
            }
            A[r][n] = (r == mm) ? 1.0L : 0.0L;
        }
        for (int col = 0; col < n; ++col) {
            int piv = col;
            for (int r = col + 1; r < n; ++r)
                if (std::fabs((double)A[r][col]) > std::fabs((double)A[piv][col])) piv = r;
            std::swap(A[piv], A[col]);
            for (int r = col + 1; r < n; ++r) {
                const long double f = A[r][col] / A[col][col];
                for (int k = col; k <= n; ++k) A[r][k] -= f * A[col][k];
            }
        }
        for (int r = n - 1; r >= 0; --r) {
            long double s = A[r][n];
            for (int k = r + 1; k < n; ++k) s -= A[r][k] * (long double)poly_[mm][k];
            poly_[mm][r] = double(s / A[r][r]);
        }
    }
}

double LagrangeBasis::value(int m, double z) const {
    // Exact Kronecker values at the interpolation nodes themselves, so that
    // cardinal samples feed constraint assembly without Horner roundoff.
    const double zr = std::nearbyint(z);
    if (zr == z && std::fabs(zr) <= double(p_))
        return (int(zr) == m) ? 1.0 : 0.0;
    return derivative(m, z, 0);
}

double LagrangeBasis::derivative(int m, double z, int mu) const {
    const int n = 2 * p_ + 1;
    if (m < -p_ || m > p_) throw std::out_of_range("LagrangeBasis: node index");
    double acc = 0.0;
    for (int k = n - 1; k >= mu; --k) {
        double fall = 1.0;
        for (int t = 0; t < mu; ++t) fall *= double(k - t);
        acc = acc * z + fall * poly_[m + p_][k];
    }
    return acc;
}

} // namespace lcbc
