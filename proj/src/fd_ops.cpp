#include "lcbc/fd_ops.hpp"

#include <array>
#include <stdexcept>

#include "lcbc/kernels.hpp"

namespace lcbc {

namespace {

// Applies a 1-D stencil along the given axis row-by-row through the fast
// kernels.  Source taps are shifted row pointers (x) or neighboring rows (y),
// both unit-stride over i.
void sweep_stencil(ExtendedField& out, const ExtendedField& in, const Stencil1D& st,
                   Axis axis, const Box& box) {
    const int n = box.ihi - box.ilo + 1;
    if (n <= 0) return;
    const auto& K = kernels::active();
    std::array<const double*, 16> srcs{};
    const int taps = 2 * st.m + 1;
    if (taps > int(srcs.size())) throw std::runtime_error("sweep_stencil: stencil too wide");
    for (int j = box.jlo; j <= box.jhi; ++j) {
        for (int s = -st.m; s <= st.m; ++s) {
            const int di = (axis == Axis::x) ? s : 0;
            const int dj = (axis == Axis::y) ? s : 0;
            srcs[s + st.m] = in.row(j + dj) + (box.ilo + di);
        }
        K.weighted_sum(&out(box.ilo, j), srcs.data(), st.w.data(), taps, n);
    }
}

void check_support(const ExtendedField& in, const Box& box, int mx, int my,
                   const char* who) {
    const Box need{box.ilo - mx, box.ihi + mx, box.jlo - my, box.jhi + my};
    const Box have{-in.p(), in.nx() + in.p(), -in.p(), in.ny() + in.p()};
    if (!have.contains(need))
        throw std::invalid_argument(std::string(who) +
                                    ": requested box plus stencil leaves the extended grid");
}

} // namespace

void apply_first_derivative(ExtendedField& out, const ExtendedField& in, int d, Axis axis,
                            const Box& box) {
    const double h = (axis == Axis::x) ? 1.0 / in.nx() : 1.0 / in.ny();
    const Stencil1D st = first_derivative_stencil(d, h);
    check_support(in, box, axis == Axis::x ? st.m : 0, axis == Axis::y ? st.m : 0,
                  "apply_first_derivative");
    sweep_stencil(out, in, st, axis, box);
}

void apply_second_derivative(ExtendedField& out, const ExtendedField& in, int d, Axis axis,
                             const Box& box) {
    const double h = (axis == Axis::x) ? 1.0 / in.nx() : 1.0 / in.ny();
    const Stencil1D st = second_derivative_stencil(d, h);
    check_support(in, box, axis == Axis::x ? st.m : 0, axis == Axis::y ? st.m : 0,
                  "apply_second_derivative");
    sweep_stencil(out, in, st, axis, box);
}

void apply_Q(ExtendedField& out, const ExtendedField& in, const CoefficientTables& ct,
             int d, const GridSpec& g, const Box& box, ExtendedField& scratch1,
             ExtendedField& scratch2) {
    const int w = d / 2;
    check_support(in, box, w, w, "apply_Q");
    const auto& K = kernels::active();
    const int n = box.ihi - box.ilo + 1;
    if (n <= 0) return;

    const Stencil1D sxx = second_derivative_stencil(d, g.dx());
    const Stencil1D syy = second_derivative_stencil(d, g.dy());

    // out = c22 * Dyy in
    sweep_stencil(scratch1, in, syy, Axis::y, box);
    for (int j = box.jlo; j <= box.jhi; ++j)
        K.mul(&out(box.ilo, j), ct.c22.row(j) + box.ilo, &scratch1(box.ilo, j), n);

    // out += c11 * Dxx in
    sweep_stencil(scratch1, in, sxx, Axis::x, box);
    for (int j = box.jlo; j <= box.jhi; ++j)
        K.mul_add(&out(box.ilo, j), ct.c11.row(j) + box.ilo, &scratch1(box.ilo, j), n);

    if (ct.has_cross) {
        // out += 2 c12 * Dx (Dy in); inner Dy needs an x-grown box.
        const Stencil1D sx = first_derivative_stencil(d, g.dx());
        const Stencil1D sy = first_derivative_stencil(d, g.dy());
        const Box grown{box.ilo - sx.m, box.ihi + sx.m, box.jlo, box.jhi};
        sweep_stencil(scratch1, in, sy, Axis::y, grown);
        sweep_stencil(scratch2, scratch1, sx, Axis::x, box);
        for (int j = box.jlo; j <= box.jhi; ++j) {
            const double* srcs[1] = {&scratch2(box.ilo, j)};
            const double two = 2.0;
            K.weighted_sum(&scratch1(box.ilo, j), srcs, &two, 1, n);
            K.mul_add(&out(box.ilo, j), ct.c12.row(j) + box.ilo, &scratch1(box.ilo, j), n);
        }
    }
    if (ct.has_c1) {
        const Stencil1D sx = first_derivative_stencil(d, g.dx());
        sweep_stencil(scratch1, in, sx, Axis::x, box);
        for (int j = box.jlo; j <= box.jhi; ++j)
            K.mul_add(&out(box.ilo, j), ct.c1.row(j) + box.ilo, &scratch1(box.ilo, j), n);
    }
    if (ct.has_c2) {
        const Stencil1D sy = first_derivative_stencil(d, g.dy());
        sweep_stencil(scratch1, in, sy, Axis::y, box);
        for (int j = box.jlo; j <= box.jhi; ++j)
            K.mul_add(&out(box.ilo, j), ct.c2.row(j) + box.ilo, &scratch1(box.ilo, j), n);
    }
    if (ct.has_c0) {
        for (int j = box.jlo; j <= box.jhi; ++j)
            K.mul_add(&out(box.ilo, j), ct.c0.row(j) + box.ilo, in.row(j) + box.ilo, n);
    }
}

std::pair<double, double> tangential_derivative_pair(const std::vector<double>& line,
                                                     int mu, int k, double h) {
    if (mu < 1) throw std::invalid_argument("tangential_derivative_pair: mu must be >= 1");
    const int m = int(line.size() / 2);
    const double* center = line.data() + m;
    const Stencil1D lo = centered_for_accuracy(mu - 1, k, h);
    const Stencil1D hi = centered_for_accuracy(mu, k, h);
    if (hi.m > m || lo.m > m)
        throw std::invalid_argument("tangential_derivative_pair: line of half-width " +
                                    std::to_string(m) + " too short for mu=" +
                                    std::to_string(mu) + " at order " + std::to_string(2 * k));
    return {mu - 1 == 0 ? *center : lo.apply(center, 1), hi.apply(center, 1)};
}

} // namespace lcbc
