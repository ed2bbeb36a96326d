#include "lcbc/boundary_data.hpp"

#include <stdexcept>

namespace lcbc {

namespace {

/// Raw table frame of a side: local a along the raw data-derivative axis
/// (+x for left/right, +y for bottom/top), b tangential, anchored at
/// tangential index 0.  No inward-normal sign is applied anywhere in the
/// tables; consumers map raw to local orientation.
Frame table_frame(const GridSpec& g, Side side) {
    Frame f;
    switch (side) {
    case Side::left:
        f = {0, 0, 1, 0, 0, 1};
        break;
    case Side::right:
        f = {g.nx, 0, 1, 0, 0, 1};
        break;
    case Side::bottom:
        f = {0, 0, 0, 1, 1, 0};
        break;
    case Side::top:
        f = {0, g.ny, 0, 1, 1, 0};
        break;
    }
    return f;
}

/// Initial forcing-sample family: square entries of half-width p+1-k holding
/// plain samples (impulses here), surviving the p-1 ladder applications the
/// tables need.
PatchFamily<double> sample_impulse_family(int p, int sa, int sb) {
    PatchFamily<double> F;
    F.by_k.reserve(std::size_t(p) + 1);
    for (int k = 1; k <= p + 1; ++k) {
        const int w = p + 1 - k;
        PatchT<double> P(w, w);
        if (P.contains(sa, sb)) P.at(sa, sb) = 1.0;
        F.by_k.push_back(std::move(P));
    }
    return F;
}

int side_nt(const GridSpec& g, Side side) {
    return (side == Side::left || side == Side::right) ? g.ny : g.nx;
}

double tangential_coord(const GridSpec& g, Side side, int t_idx) {
    return (side == Side::left || side == Side::right) ? g.y(t_idx) : g.x(t_idx);
}

} // namespace

BoundaryDataBuilder::BoundaryDataBuilder(const PdeProblem& prob, const GridSpec& g, int d)
    : prob_(&prob), grid_(g), d_(d), p_(d / 2), use_forcing_(prob.has_forcing()) {
    if (d != 2 && d != 4 && d != 6)
        throw std::invalid_argument("BoundaryDataBuilder: d must be 2, 4 or 6");
    if (p_ != g.p)
        throw std::invalid_argument("BoundaryDataBuilder: grid ghost width does not match d/2");

    const int p = p_;
    const int n = 2 * p + 1;
    for (const Side side : kAllSides) {
        SideSetup& ss = sides_[side_index(side)];
        ss.side = side;
        ss.kind = prob.side(side).kind;
        ss.nt = side_nt(g, side);
        ss.frame0 = table_frame(g, side);
        ss.n_ladders = use_forcing_ ? p - 1 : 0;
        if (ss.n_ladders == 0) continue;

        const int n_anchor = ss.nt + 2 * p + 1;
        ss.weights.assign(std::size_t(n_anchor),
                          std::vector<std::vector<double>>(
                              std::size_t(ss.n_ladders), std::vector<double>(std::size_t(n) * n, 0.0)));
        for (int t_idx = -p; t_idx <= ss.nt + p; ++t_idx) {
            Frame f = ss.frame0;
            if (side == Side::left || side == Side::right)
                f.j0 = t_idx;
            else
                f.i0 = t_idx;
            const PatchCoeffs pc = sample_patch_coeffs(prob.coeff, g, f, p, p);
            auto& wsets = ss.weights[std::size_t(t_idx + p)];
            for (int sa = -p; sa <= p; ++sa)
                for (int sb = -p; sb <= p; ++sb) {
                    PatchFamily<double> F = sample_impulse_family(p, sa, sb);
                    const std::size_t sidx = std::size_t(sa + p) * n + (sb + p);
                    if (ss.kind == BoundaryKind::dirichlet) {
                        // ladder id l holds the (l+1)-fold value ladder center
                        for (int nn = 1; nn <= ss.n_ladders; ++nn) {
                            F = apply_Q_power(F, pc);
                            wsets[std::size_t(nn - 1)][sidx] = F.entry(p + 1 - nn).at(0, 0);
                        }
                    } else {
                        // ladder id l holds the l-fold derivative ladder center
                        for (int nn = 0; nn <= ss.n_ladders - 1; ++nn) {
                            if (nn > 0) F = apply_Q_power(F, pc);
                            const PatchFamily<double> D = apply_normal_derivative(F, pc, 0);
                            wsets[std::size_t(nn)][sidx] = D.entry(p - nn).at(0, 0);
                        }
                    }
                }
        }
    }
}

BoundaryTables BoundaryDataBuilder::build(double t) const {
    const int p = p_;
    const int n = 2 * p + 1;
    const int q = prob_->q;
    const TJet tj = TJet::variable(t);

    BoundaryTables T;
    T.t = t;
    for (const Side side : kAllSides) {
        const SideSetup& ss = sides_[side_index(side)];
        SideTables& st = T.side[side_index(side)];
        st.side = side;
        st.kind = ss.kind;
        st.p = p;
        st.nt = ss.nt;
        const bool dir = (ss.kind == BoundaryKind::dirichlet);
        const int nu_count = dir ? p + 1 : p;
        const int n_anchor = ss.nt + 2 * p + 1;
        st.rows.assign(std::size_t(nu_count), std::vector<TJet>(std::size_t(n_anchor)));

        for (int t_idx = -p; t_idx <= ss.nt + p; ++t_idx) {
            const double s = tangential_coord(grid_, side, t_idx);
            st.rows[0][std::size_t(t_idx + p)] = prob_->side(side).g(s, tj);
        }
        if (nu_count == 1) continue;

        // Ladder center jets per anchor.  For Dirichlet tables c[nn] is the
        // nn-fold value ladder (c[0] the plain forcing sample); for Neumann
        // tables c[nn] is the nn-fold derivative ladder.  All zero without
        // forcing.
        const int n_center = dir ? p : p - 1;
        std::vector<std::vector<TJet>> centers(
            std::size_t(n_center), std::vector<TJet>(std::size_t(n_anchor), TJet(0.0)));
        if (use_forcing_) {
            // Forcing jets on the shared sample band: band[a+p][tt+2p].
            const int n_band = ss.nt + 4 * p + 1;
            std::vector<std::vector<TJet>> band(
                static_cast<std::size_t>(n),
                std::vector<TJet>(static_cast<std::size_t>(n_band)));
            const bool vertical = (side == Side::left || side == Side::right);
            for (int a = -p; a <= p; ++a)
                for (int tt = -2 * p; tt <= ss.nt + 2 * p; ++tt) {
                    const double x = vertical ? grid_.x(ss.frame0.i0 + a) : grid_.x(tt);
                    const double y = vertical ? grid_.y(tt) : grid_.y(ss.frame0.j0 + a);
                    band[std::size_t(a + p)][std::size_t(tt + 2 * p)] =
                        prob_->forcing(x, y, tj);
                }
            for (int t_idx = -p; t_idx <= ss.nt + p; ++t_idx) {
                const std::size_t ai = std::size_t(t_idx + p);
                if (dir) centers[0][ai] = band[std::size_t(p)][std::size_t(t_idx + 2 * p)];
                if (ss.n_ladders == 0) continue;
                const auto& wsets = ss.weights[ai];
                const int l0 = dir ? 1 : 0;
                for (int l = l0; l < n_center; ++l) {
                    const auto& w = wsets[std::size_t(l - l0)];
                    TJet acc(0.0);
                    for (int sa = -p; sa <= p; ++sa)
                        for (int sb = -p; sb <= p; ++sb) {
                            const double wv = w[std::size_t(sa + p) * n + (sb + p)];
                            if (wv == 0.0) continue;
                            acc = acc +
                                  wv * band[std::size_t(sa + p)][std::size_t(t_idx + sb + 2 * p)];
                        }
                    centers[std::size_t(l)][ai] = acc;
                }
            }
        }

        for (int nu = 1; nu < nu_count; ++nu)
            for (int t_idx = -p; t_idx <= ss.nt + p; ++t_idx) {
                const std::size_t ai = std::size_t(t_idx + p);
                TJet r(0.0);
                if (q == 0) {
                    r = (-1.0) * centers[std::size_t(nu - 1)][ai];
                } else {
                    r = dt_pow(st.rows[0][ai], q * nu);
                    for (int nn = 0; nn <= nu - 1; ++nn)
                        r = r - dt_pow(centers[std::size_t(nn)][ai], q * (nu - 1 - nn));
                }
                st.rows[std::size_t(nu)][ai] = r;
            }
    }
    return T;
}

} // namespace lcbc
