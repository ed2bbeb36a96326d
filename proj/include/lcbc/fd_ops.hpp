#pragma once

#include <utility>

#include "lcbc/grid.hpp"
#include "lcbc/patch.hpp"
#include "lcbc/problem.hpp"
#include "lcbc/stencils.hpp"

namespace lcbc {

/// Inclusive index rectangle on the extended grid.
struct Box {
    int ilo, ihi, jlo, jhi;

    static Box interior(const GridSpec& g) { return {1, g.nx - 1, 1, g.ny - 1}; }
    static Box extended(const GridSpec& g) {
        return {-g.p, g.nx + g.p, -g.p, g.ny + g.p};
    }
    Box shrunk(int m) const { return {ilo + m, ihi - m, jlo + m, jhi - m}; }
    bool contains(const Box& o) const {
        return ilo <= o.ilo && ihi >= o.ihi && jlo <= o.jlo && jhi >= o.jhi;
    }
};

enum class Axis { x, y };

/// out = centered first derivative of order d along `axis`, on `box`.
/// Requires in's values on box grown by d/2 along the axis.
void apply_first_derivative(ExtendedField& out, const ExtendedField& in, int d,
                            Axis axis, const Box& box);

/// out = centered second derivative of order d along `axis`, on `box`.
void apply_second_derivative(ExtendedField& out, const ExtendedField& in, int d,
                             Axis axis, const Box& box);

/// out = Q_{d,h} in on `box`:
///   c11 Dxx + 2 c12 Dx Dy + c22 Dyy + c1 Dx + c2 Dy + c0 I,
/// all factors at accuracy order d.  Requires in on box grown by d/2 in both
/// axes (cross term composes the two one-dimensional operators).
/// `scratch` must be two fields of the same grid; contents are clobbered.
void apply_Q(ExtendedField& out, const ExtendedField& in, const CoefficientTables& ct,
             int d, const GridSpec& g, const Box& box, ExtendedField& scratch1,
             ExtendedField& scratch2);

/// Consecutive tangential derivatives (mu-1, mu) of a sampled line at its
/// center, both at accuracy order 2k, using minimal centered stencils.
/// `line` holds 2m+1 values around the center with spacing h and must be
/// long enough for the order-(2k) stencil of derivative mu.
std::pair<double, double> tangential_derivative_pair(const std::vector<double>& line,
                                                     int mu, int k, double h);

} // namespace lcbc
