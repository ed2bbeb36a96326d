#include "lcbc/implicit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace lcbc {

const std::vector<double>& bdf_coefficients(int order) {
    static const std::vector<double> k2 = {1.5, -2.0, 0.5};
    static const std::vector<double> k4 = {25.0 / 12.0, -4.0, 3.0, -4.0 / 3.0, 0.25};
    static const std::vector<double> k6 = {49.0 / 20.0, -6.0, 7.5, -20.0 / 3.0,
                                           3.75, -1.2, 1.0 / 6.0};
    switch (order) {
        case 2: return k2;
        case 4: return k4;
        case 6: return k6;
    }
    throw std::invalid_argument("bdf_coefficients: order must be 2, 4, or 6");
}

ImplicitOperator::ImplicitOperator(TimeIntegrator& ti, int bdf_order, double dt)
    : ti_(&ti), order_(bdf_order), dt_(dt) {
    if (ti.problem().q != 1)
        throw std::invalid_argument("ImplicitOperator: BDF form needs a parabolic problem");
    (void)bdf_coefficients(bdf_order); // validates the order
    if (!(dt > 0.0)) throw std::invalid_argument("ImplicitOperator: dt must be positive");
    if (bdf_order == 6)
        std::fprintf(stderr,
                     "[implicit] note: BDF6 has a reduced stability wedge; "
                     "spectra near the imaginary axis may destabilize the march\n");
    build_matrix();
    const double a0 = bdf_coefficients(order_)[0];
    Eigen::SparseMatrix<double> M = -q_elim_;
    Eigen::SparseMatrix<double> I(n_, n_);
    I.setIdentity();
    M += (a0 / dt_) * I;
    factor(M);
}

ImplicitOperator::ImplicitOperator(TimeIntegrator& ti) : ti_(&ti) {
    if (ti.problem().q != 0)
        throw std::invalid_argument("ImplicitOperator: plain form is for elliptic problems");
    build_matrix();
    factor(q_elim_);
}

Eigen::VectorXd ImplicitOperator::pack(const ExtendedField& u) const {
    Eigen::VectorXd x(n_);
    for (int j = box_.jlo; j <= box_.jhi; ++j)
        for (int i = box_.ilo; i <= box_.ihi; ++i)
            x[(j - box_.jlo) * wi_ + (i - box_.ilo)] = u(i, j);
    return x;
}

void ImplicitOperator::unpack(const Eigen::VectorXd& x, ExtendedField& u) const {
    for (int j = box_.jlo; j <= box_.jhi; ++j)
        for (int i = box_.ilo; i <= box_.ihi; ++i)
            u(i, j) = x[(j - box_.jlo) * wi_ + (i - box_.ilo)];
}

Eigen::VectorXd ImplicitOperator::apply_q_eliminated(const Eigen::VectorXd& x) const {
    return q_elim_ * x;
}

void ImplicitOperator::build_matrix() {
    const GridSpec& g = ti_->grid();
    const int d = ti_->d(), p = ti_->p();
    box_ = ti_->update_box();
    wi_ = box_.ihi - box_.ilo + 1;
    n_ = wi_ * (box_.jhi - box_.jlo + 1);

    const BoundaryTables zt = ti_->zero_tables();
    ExtendedField z(g), out(g);
    z.fill(0.0);

    // Column k of Q_elim is the eliminated operator applied to the k-th unit
    // vector: place the impulse, assign every ghost from the homogeneous
    // (zero-data) closure, sweep Q over the influenced neighborhood.  Ghost
    // values reach at most 2p from their data tangentially/diagonally and the
    // sweep reads at most d/2 further, so a 3p+1 margin bounds the support.
    const int margin = 3 * p + 1;
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(std::size_t(n_) * (2 * d + 2) * (d + 1));
    for (int jc = box_.jlo; jc <= box_.jhi; ++jc) {
        for (int ic = box_.ilo; ic <= box_.ihi; ++ic) {
            const int col = (jc - box_.jlo) * wi_ + (ic - box_.ilo);
            z(ic, jc) = 1.0;
            apply_ghost_closure(z, ti_->closure(), g, zt);
            const Box local{std::max(box_.ilo, ic - margin), std::min(box_.ihi, ic + margin),
                            std::max(box_.jlo, jc - margin), std::min(box_.jhi, jc + margin)};
            ti_->apply_operator(out, z, d, local);
            for (int j = local.jlo; j <= local.jhi; ++j) {
                for (int i = local.ilo; i <= local.ihi; ++i) {
                    const double v = out(i, j);
                    if (v != 0.0)
                        trips.emplace_back((j - box_.jlo) * wi_ + (i - box_.ilo), col, v);
                }
            }
            z(ic, jc) = 0.0;
        }
    }
    q_elim_.resize(n_, n_);
    q_elim_.setFromTriplets(trips.begin(), trips.end());
}

void ImplicitOperator::factor(const Eigen::SparseMatrix<double>& M) {
    Eigen::SparseMatrix<double> Mc = M;
    Mc.makeCompressed();
    lu_.compute(Mc);
    if (lu_.info() != Eigen::Success)
        throw std::runtime_error("ImplicitOperator: sparse factorization failed");
}

Eigen::VectorXd ImplicitOperator::affine_part(double t) {
    const GridSpec& g = ti_->grid();
    ExtendedField z(g), out(g);
    z.fill(0.0);
    const BoundaryTables tables = ti_->tables_at(t);
    apply_ghost_closure(z, ti_->closure(), g, tables);
    ti_->apply_operator(out, z, ti_->d(), box_);
    return pack(out);
}

Eigen::VectorXd ImplicitOperator::forcing_at(double t) const {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(n_);
    const PdeProblem& prob = ti_->problem();
    if (!prob.has_forcing()) return f;
    const GridSpec& g = ti_->grid();
    const TJet tj(t);
    for (int j = box_.jlo; j <= box_.jhi; ++j)
        for (int i = box_.ilo; i <= box_.ihi; ++i)
            f[(j - box_.jlo) * wi_ + (i - box_.ilo)] =
                prob.forcing(g.x(i), g.y(j), tj).value();
    return f;
}

ExtendedField ImplicitOperator::step_bdf(const std::vector<ExtendedField>& history,
                                         double t_next) {
    if (order_ == 0)
        throw std::logic_error("step_bdf: operator was built in plain (elliptic) form");
    const std::vector<double>& a = bdf_coefficients(order_);
    if (history.size() != std::size_t(order_))
        throw std::invalid_argument("step_bdf: history must hold exactly `order` levels");

    Eigen::VectorXd rhs = forcing_at(t_next) + affine_part(t_next);
    for (int m = 1; m <= order_; ++m) rhs -= (a[m] / dt_) * pack(history[m - 1]);

    const Eigen::VectorXd x = lu_.solve(rhs);
    if (lu_.info() != Eigen::Success)
        throw std::runtime_error("step_bdf: sparse solve failed");

    ExtendedField u(ti_->grid());
    unpack(x, u);
    ti_->refresh_boundary(u, t_next);
    return u;
}

ExtendedField ImplicitOperator::solve_elliptic(double residual_tol) {
    if (order_ != 0)
        throw std::logic_error("solve_elliptic: operator was built in BDF form");

    // Q_elim U + affine + f = 0.
    const Eigen::VectorXd b = -(forcing_at(0.0) + affine_part(0.0));
    const Eigen::VectorXd x = lu_.solve(b);
    if (lu_.info() != Eigen::Success)
        throw std::runtime_error("solve_elliptic: sparse solve failed");

    const Eigen::VectorXd r = q_elim_ * x - b;
    const double scale = b.lpNorm<Eigen::Infinity>() +
                         (q_elim_ * x).lpNorm<Eigen::Infinity>() + 1.0;
    const double rel = r.lpNorm<Eigen::Infinity>() / scale;
    if (rel > residual_tol)
        throw std::runtime_error("solve_elliptic: relative residual " + std::to_string(rel) +
                                 " exceeds tolerance");

    ExtendedField u(ti_->grid());
    unpack(x, u);
    ti_->refresh_boundary(u, 0.0);
    return u;
}

ExtendedField solve_elliptic(TimeIntegrator& ti, double residual_tol) {
    ImplicitOperator op(ti);
    return op.solve_elliptic(residual_tol);
}

} // namespace lcbc
