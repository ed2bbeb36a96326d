#pragma once

#include "lcbc/boundary_data.hpp"
#include "lcbc/closures.hpp"
#include "lcbc/fd_ops.hpp"
#include "lcbc/grid.hpp"
#include "lcbc/problem.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcbc {

enum class SchemeTag { forward_euler, bdf, me_wave, elliptic };
const char* scheme_name(SchemeTag s);

/// Time-step plan with the step shaved so that n_t * dt == T exactly.
struct TimeStepPlan {
    SchemeTag scheme = SchemeTag::forward_euler;
    double dt = 0.0;
    long n_t = 0;
    double cfl = 0.9;
    double T = 0.0;
};

/// Stable step for the scheme from the coefficient maxima:
///   forward_euler: dt = cfl / sqrt((alpha_d/2)^2 + beta_d^2) with the
///     per-order ellipse parameters (r_d, s_d, q_d);
///   me_wave:       dt = cfl / sqrt(c11max/dx^2 + c22max/dy^2);
///   bdf:           dt = min(dx, dy).
TimeStepPlan stable_dt(const PdeProblem& prob, const GridSpec& g, int d, double T,
                       SchemeTag scheme, double cfl = 0.9);

/// Thrown when a time step produces non-finite field values.
class InstabilityError : public std::runtime_error {
public:
    InstabilityError(long step, double t)
        : std::runtime_error("non-finite field values at step " + std::to_string(step) +
                             ", t = " + std::to_string(t)),
          step_(step), t_(t) {}
    long step() const { return step_; }
    double t() const { return t_; }

private:
    long step_ = 0;
    double t_ = 0.0;
};

/// Explicit time stepping and starting procedures for one (problem, grid, d):
/// owns the sampled coefficients, the boundary-data builder, the ghost
/// closure, and scratch fields.  The implicit (BDF / global elliptic) solver
/// builds on top of this context.
class TimeIntegrator {
public:
    TimeIntegrator(const PdeProblem& prob, const GridSpec& g, int d);

    const PdeProblem& problem() const { return *prob_; }
    const GridSpec& grid() const { return grid_; }
    int d() const { return d_; }
    int p() const { return p_; }
    const GhostClosure& closure() const { return closure_; }
    const CoefficientTables& coeff_tables() const { return coeff_; }
    const BoundaryDataBuilder& boundary_data() const { return bdb_; }

    /// Index rectangle of evolved unknowns: interior plus boundary lines of
    /// Neumann sides (Dirichlet lines are data).
    Box update_box() const { return ubox_; }

    BoundaryTables tables_at(double t) const { return bdb_.build(t); }

    /// u0 samples with Dirichlet lines and ghosts consistent at t = 0.
    ExtendedField initial_state();

    /// u1 samples with differentiated-data ghosts at t = 0 (q = 2 only).
    ExtendedField initial_velocity();

    /// Order-matched Taylor second level U^1 at t = dt for q = 2, with its
    /// ghosts filled at t = dt.
    ExtendedField taylor_start(double dt);

    /// One forward-Euler step (q = 1): advances u from t to t + dt in place,
    /// refilling Dirichlet lines and ghosts at t + dt.  Returns max |U| over
    /// the update box; throws InstabilityError on non-finite values.
    double step_forward_euler(ExtendedField& u, double t, double dt, long step_index);

    /// One modified-equation wave step (q = 2): u_next is written from
    /// (u_cur at t, u_prev at t - dt) and finished at t + dt.  Returns the
    /// max-norm as above.
    double step_me_wave(ExtendedField& u_next, const ExtendedField& u_cur,
                        const ExtendedField& u_prev, double t, double dt, long step_index);

    /// Fourth-order-accurate discrete Q^2 with stencil half-width <= 3,
    /// composed as Q4(Q2 u) + Q2(Q4 u - Q2 u); needs `in` on box grown by 3.
    void compact_q_squared_4(ExtendedField& out, const ExtendedField& in, const Box& box);

    /// Q_{order,h} applied through this problem's coefficient tables
    /// (exposed for stencil spot checks and the implicit assembly).
    void apply_operator(ExtendedField& out, const ExtendedField& in, int order,
                        const Box& box);

    /// Dirichlet lines + all ghosts of `u` from the tables at time t.
    void refresh_boundary(ExtendedField& u, double t, int extra_dt = 0) const;

    /// Zeroed copy of the boundary tables (for homogeneous-part assembly).
    BoundaryTables zero_tables() const;

private:
    void sample_forcing_jets(double t, const Box& box);
    double finish_step(ExtendedField& u, double t_new, long step_index);

    const PdeProblem* prob_;
    GridSpec grid_;
    int d_ = 0, p_ = 0;
    Box ubox_{0, 0, 0, 0};
    CoefficientTables coeff_;
    BoundaryDataBuilder bdb_;
    GhostClosure closure_;
    // Scratch pool: f value/dtt/dtttt samples and operator temporaries.
    ExtendedField f0_, f2_, f4_;
    ExtendedField w1_, w2_, w3_, w4_, s1_, s2_;
};

} // namespace lcbc
