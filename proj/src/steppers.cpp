#include "lcbc/steppers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lcbc {

namespace {

Box grown(const Box& b, int m) { return b.shrunk(-m); }

struct CoeffMaxima {
    double c11 = 0, c12 = 0, c22 = 0, c1 = 0, c2 = 0, c0 = 0;
};

CoeffMaxima coefficient_maxima(const PdeProblem& prob, const GridSpec& g) {
    CoeffMaxima m;
    for (int j = -g.p; j <= g.ny + g.p; ++j) {
        for (int i = -g.p; i <= g.nx + g.p; ++i) {
            const double x = g.x(i), y = g.y(j);
            m.c11 = std::max(m.c11, std::abs(prob.coeff.c11(x, y)));
            m.c12 = std::max(m.c12, std::abs(prob.coeff.c12(x, y)));
            m.c22 = std::max(m.c22, std::abs(prob.coeff.c22(x, y)));
            m.c1 = std::max(m.c1, std::abs(prob.coeff.c1(x, y)));
            m.c2 = std::max(m.c2, std::abs(prob.coeff.c2(x, y)));
            m.c0 = std::max(m.c0, std::abs(prob.coeff.c0(x, y)));
        }
    }
    return m;
}

} // namespace

const char* scheme_name(SchemeTag s) {
    switch (s) {
        case SchemeTag::forward_euler: return "forward-euler";
        case SchemeTag::bdf: return "bdf";
        case SchemeTag::me_wave: return "me-wave";
        case SchemeTag::elliptic: return "elliptic";
    }
    return "?";
}

TimeStepPlan stable_dt(const PdeProblem& prob, const GridSpec& g, int d, double T,
                       SchemeTag scheme, double cfl) {
    if (scheme == SchemeTag::elliptic)
        throw std::invalid_argument("stable_dt: elliptic problems take no time steps");
    if (!(T > 0.0)) throw std::invalid_argument("stable_dt: final time must be positive");
    if (!(cfl > 0.0)) throw std::invalid_argument("stable_dt: cfl must be positive");
    if (d != 2 && d != 4 && d != 6)
        throw std::invalid_argument("stable_dt: order d must be 2, 4, or 6");
    if ((scheme == SchemeTag::me_wave) != (prob.q == 2) ||
        (scheme != SchemeTag::me_wave && prob.q != 1))
        throw std::invalid_argument("stable_dt: scheme does not match problem q");

    const double dx = g.dx(), dy = g.dy();
    const CoeffMaxima m = coefficient_maxima(prob, g);

    TimeStepPlan plan;
    plan.scheme = scheme;
    plan.cfl = cfl;
    plan.T = T;

    double dt = 0.0;
    switch (scheme) {
        case SchemeTag::forward_euler: {
            // Stability-ellipse parameters of the order-d first/second
            // derivative symbols.
            double r = 4.0, s = 2.0, qq = 1.0;
            if (d == 4) { r = 16.0 / 3.0; s = 4.5; qq = 1.5; }
            if (d == 6) { r = 272.0 / 45.0; s = 1313.0 / 261.0; qq = 1199.0 / 756.0; }
            const double alpha = r * (m.c11 / (dx * dx) + m.c22 / (dy * dy)) +
                                 s * m.c12 / (dx * dy) + m.c0;
            const double beta = qq * (m.c1 / dx + m.c2 / dy);
            dt = cfl / std::sqrt(0.25 * alpha * alpha + beta * beta);
            break;
        }
        case SchemeTag::me_wave:
            dt = cfl / std::sqrt(m.c11 / (dx * dx) + m.c22 / (dy * dy));
            break;
        case SchemeTag::bdf:
            dt = std::min(dx, dy);
            break;
        case SchemeTag::elliptic:
            break; // unreachable
    }

    long n_t = long(std::ceil(T / dt - 1e-9));
    if (n_t < 1) n_t = 1;
    plan.n_t = n_t;
    plan.dt = T / double(n_t);
    return plan;
}

TimeIntegrator::TimeIntegrator(const PdeProblem& prob, const GridSpec& g, int d)
    : prob_(&prob), grid_(g), d_(d), p_(d / 2),
      coeff_(CoefficientTables::build(g, prob.coeff)),
      bdb_(prob, g, d),
      closure_(build_ghost_closure(prob, g, d)),
      f0_(g), f2_(g), f4_(g), w1_(g), w2_(g), w3_(g), w4_(g), s1_(g), s2_(g) {
    if (d != 2 && d != 4 && d != 6)
        throw std::invalid_argument("TimeIntegrator: order d must be 2, 4, or 6");
    if (g.p != p_)
        throw std::invalid_argument("TimeIntegrator: grid ghost width must equal d/2");
    const bool ld = prob.side(Side::left).kind == BoundaryKind::dirichlet;
    const bool rd = prob.side(Side::right).kind == BoundaryKind::dirichlet;
    const bool bd = prob.side(Side::bottom).kind == BoundaryKind::dirichlet;
    const bool td = prob.side(Side::top).kind == BoundaryKind::dirichlet;
    ubox_ = Box{ld ? 1 : 0, rd ? g.nx - 1 : g.nx, bd ? 1 : 0, td ? g.ny - 1 : g.ny};
}

void TimeIntegrator::refresh_boundary(ExtendedField& u, double t, int extra_dt) const {
    const BoundaryTables tables = bdb_.build(t);
    apply_ghost_closure(u, closure_, grid_, tables, extra_dt);
}

BoundaryTables TimeIntegrator::zero_tables() const {
    BoundaryTables tables = bdb_.build(0.0);
    for (auto& st : tables.side)
        for (auto& row : st.rows)
            for (auto& jet : row) jet = TJet(0.0);
    return tables;
}

ExtendedField TimeIntegrator::initial_state() {
    ExtendedField u(grid_);
    for (int j = 0; j <= grid_.ny; ++j)
        for (int i = 0; i <= grid_.nx; ++i) u(i, j) = prob_->u0(grid_.x(i), grid_.y(j));
    refresh_boundary(u, 0.0);
    return u;
}

ExtendedField TimeIntegrator::initial_velocity() {
    if (prob_->q != 2)
        throw std::logic_error("initial_velocity: only wave problems carry u1");
    ExtendedField v(grid_);
    for (int j = 0; j <= grid_.ny; ++j)
        for (int i = 0; i <= grid_.nx; ++i) v(i, j) = prob_->u1(grid_.x(i), grid_.y(j));
    refresh_boundary(v, 0.0, /*extra_dt=*/1);
    return v;
}

void TimeIntegrator::apply_operator(ExtendedField& out, const ExtendedField& in,
                                    int order, const Box& box) {
    apply_Q(out, in, coeff_, order, grid_, box, s1_, s2_);
}

void TimeIntegrator::compact_q_squared_4(ExtendedField& out, const ExtendedField& in,
                                         const Box& box) {
    // Q4(Q2 in) + Q2(Q4 in - Q2 in): each composition's inner factor carries
    // the accuracy the outer one lacks, so the sum is Q^2 + O(h^4) while the
    // widest path (Q2 after Q4) still fits in stencil half-width 3.
    ExtendedField a(grid_), b(grid_);
    apply_operator(a, in, 2, grown(box, 2));
    apply_operator(out, a, 4, box);
    apply_operator(b, in, 4, grown(box, 1));
    for (int j = box.jlo - 1; j <= box.jhi + 1; ++j)
        for (int i = box.ilo - 1; i <= box.ihi + 1; ++i) b(i, j) -= a(i, j);
    apply_operator(a, b, 2, box);
    for (int j = box.jlo; j <= box.jhi; ++j)
        for (int i = box.ilo; i <= box.ihi; ++i) out(i, j) += a(i, j);
}

void TimeIntegrator::sample_forcing_jets(double t, const Box& box) {
    if (!prob_->has_forcing()) {
        f0_.fill(0.0);
        f2_.fill(0.0);
        f4_.fill(0.0);
        return;
    }
    const TJet tj = TJet::variable(t);
    for (int j = box.jlo; j <= box.jhi; ++j) {
        for (int i = box.ilo; i <= box.ihi; ++i) {
            const TJet f = prob_->forcing(grid_.x(i), grid_.y(j), tj);
            f0_(i, j) = f.value();
            f2_(i, j) = f.derivative(2);
            f4_(i, j) = f.derivative(4);
        }
    }
}

double TimeIntegrator::finish_step(ExtendedField& u, double t_new, long step_index) {
    double umax = 0.0;
    for (int j = ubox_.jlo; j <= ubox_.jhi; ++j)
        for (int i = ubox_.ilo; i <= ubox_.ihi; ++i) umax = std::max(umax, std::abs(u(i, j)));
    if (!std::isfinite(umax)) throw InstabilityError(step_index, t_new);
    refresh_boundary(u, t_new);
    return umax;
}

double TimeIntegrator::step_forward_euler(ExtendedField& u, double t, double dt,
                                          long step_index) {
    if (prob_->q != 1)
        throw std::logic_error("step_forward_euler: problem is not first order in time");
    apply_operator(w1_, u, d_, ubox_);
    if (prob_->has_forcing()) {
        const TJet tj(t);
        for (int j = ubox_.jlo; j <= ubox_.jhi; ++j)
            for (int i = ubox_.ilo; i <= ubox_.ihi; ++i)
                u(i, j) += dt * (w1_(i, j) + prob_->forcing(grid_.x(i), grid_.y(j), tj).value());
    } else {
        for (int j = ubox_.jlo; j <= ubox_.jhi; ++j)
            for (int i = ubox_.ilo; i <= ubox_.ihi; ++i) u(i, j) += dt * w1_(i, j);
    }
    return finish_step(u, t + dt, step_index);
}

double TimeIntegrator::step_me_wave(ExtendedField& u_next, const ExtendedField& u_cur,
                                    const ExtendedField& u_prev, double t, double dt,
                                    long step_index) {
    if (prob_->q != 2)
        throw std::logic_error("step_me_wave: problem is not second order in time");
    const double dt2 = dt * dt;
    const double c2 = dt2 / 12.0, c4 = dt2 * dt2 / 360.0;

    // rhs (w4_) = Q_d U + f, plus the modified-equation corrections that
    // cancel the D+t D-t truncation error through order dt^(d-2).
    apply_operator(w4_, u_cur, d_, ubox_);
    if (d_ >= 4) {
        if (d_ == 4) {
            apply_operator(w1_, u_cur, 2, grown(ubox_, 1));
            apply_operator(w2_, w1_, 2, ubox_);
        } else {
            compact_q_squared_4(w2_, u_cur, ubox_);
        }
        for (int j = ubox_.jlo; j <= ubox_.jhi; ++j)
            for (int i = ubox_.ilo; i <= ubox_.ihi; ++i) w4_(i, j) += c2 * w2_(i, j);
    }
    if (d_ == 6) {
        apply_operator(w1_, u_cur, 2, grown(ubox_, 2));
        apply_operator(w2_, w1_, 2, grown(ubox_, 1));
        apply_operator(w3_, w2_, 2, ubox_);
        for (int j = ubox_.jlo; j <= ubox_.jhi; ++j)
            for (int i = ubox_.ilo; i <= ubox_.ihi; ++i) w4_(i, j) += c4 * w3_(i, j);
    }
    if (prob_->has_forcing()) {
        sample_forcing_jets(t, grown(ubox_, d_ == 6 ? 2 : (d_ == 4 ? 1 : 0)));
        for (int j = ubox_.jlo; j <= ubox_.jhi; ++j)
            for (int i = ubox_.ilo; i <= ubox_.ihi; ++i) w4_(i, j) += f0_(i, j);
        if (d_ >= 4) {
            apply_operator(w1_, f0_, 2, ubox_);
            for (int j = ubox_.jlo; j <= ubox_.jhi; ++j)
                for (int i = ubox_.ilo; i <= ubox_.ihi; ++i)
                    w4_(i, j) += c2 * (f2_(i, j) + w1_(i, j));
        }
        if (d_ == 6) {
            apply_operator(w1_, f0_, 2, grown(ubox_, 1));
            apply_operator(w2_, w1_, 2, ubox_);
            apply_operator(w3_, f2_, 2, ubox_);
            for (int j = ubox_.jlo; j <= ubox_.jhi; ++j)
                for (int i = ubox_.ilo; i <= ubox_.ihi; ++i)
                    w4_(i, j) += c4 * (f4_(i, j) + w3_(i, j) + w2_(i, j));
        }
    }

    for (int j = ubox_.jlo; j <= ubox_.jhi; ++j)
        for (int i = ubox_.ilo; i <= ubox_.ihi; ++i)
            u_next(i, j) = 2.0 * u_cur(i, j) - u_prev(i, j) + dt2 * w4_(i, j);
    return finish_step(u_next, t + dt, step_index);
}

ExtendedField TimeIntegrator::taylor_start(double dt) {
    if (prob_->q != 2)
        throw std::logic_error("taylor_start: only wave problems use a Taylor start");
    ExtendedField U = initial_state();
    ExtendedField V = initial_velocity();
    ExtendedField R = U;

    // Time-derivative fields of the forcing at t = 0, as far as the dt^d
    // expansion reaches.
    std::array<ExtendedField, 5> ft{ExtendedField(grid_), ExtendedField(grid_),
                                    ExtendedField(grid_), ExtendedField(grid_),
                                    ExtendedField(grid_)};
    if (prob_->has_forcing()) {
        const Box fb = grown(ubox_, p_ - 1 > 0 ? p_ - 1 : 0);
        const TJet tj = TJet::variable(0.0);
        for (int j = fb.jlo; j <= fb.jhi; ++j) {
            for (int i = fb.ilo; i <= fb.ihi; ++i) {
                const TJet f = prob_->forcing(grid_.x(i), grid_.y(j), tj);
                for (int k = 0; k <= 4; ++k) ft[k](i, j) = f.derivative(k);
            }
        }
    }

    const auto add = [&](const ExtendedField& term, double scale) {
        for (int j = ubox_.jlo; j <= ubox_.jhi; ++j)
            for (int i = ubox_.ilo; i <= ubox_.ihi; ++i) R(i, j) += scale * term(i, j);
    };

    // dt^1: u1.
    add(V, dt);

    // dt^2 / 2: Q_d u0 + f.
    apply_operator(w1_, U, d_, ubox_);
    add(w1_, dt * dt / 2.0);
    add(ft[0], dt * dt / 2.0);

    if (d_ >= 4) {
        const int dmid = d_ - 2; // accuracy slot for the dt^3 and dt^4 terms
        const double c3 = dt * dt * dt / 6.0;
        const double c4 = c3 * dt / 4.0;

        // dt^3 / 6: Q u1 + f_t.
        apply_operator(w1_, V, dmid, ubox_);
        add(w1_, c3);
        add(ft[1], c3);

        // dt^4 / 24: Q^2 u0 + Q f + f_tt.
        if (d_ == 4) {
            apply_operator(w1_, U, 2, grown(ubox_, 1));
            apply_operator(w2_, w1_, 2, ubox_);
        } else {
            compact_q_squared_4(w2_, U, ubox_);
        }
        add(w2_, c4);
        apply_operator(w1_, ft[0], dmid, ubox_);
        add(w1_, c4);
        add(ft[2], c4);

        if (d_ == 6) {
            const double c5 = c4 * dt / 5.0;
            const double c6 = c5 * dt / 6.0;

            // dt^5 / 120: Q^2 u1 + Q f_t + f_ttt.
            apply_operator(w1_, V, 2, grown(ubox_, 1));
            apply_operator(w2_, w1_, 2, ubox_);
            add(w2_, c5);
            apply_operator(w1_, ft[1], 2, ubox_);
            add(w1_, c5);
            add(ft[3], c5);

            // dt^6 / 720: Q^3 u0 + Q^2 f + Q f_tt + f_tttt.
            apply_operator(w1_, U, 2, grown(ubox_, 2));
            apply_operator(w2_, w1_, 2, grown(ubox_, 1));
            apply_operator(w3_, w2_, 2, ubox_);
            add(w3_, c6);
            apply_operator(w1_, ft[0], 2, grown(ubox_, 1));
            apply_operator(w2_, w1_, 2, ubox_);
            add(w2_, c6);
            apply_operator(w1_, ft[2], 2, ubox_);
            add(w1_, c6);
            add(ft[4], c6);
        }
    }

    refresh_boundary(R, dt);
    return R;
}

} // namespace lcbc
