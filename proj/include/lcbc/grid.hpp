#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcbc {

/// Classification of an extended-grid index pair.  Every point is exactly one
/// of these: ghost points lie strictly outside the unit square, boundary
/// points lie on one of its four edges, interior points are strictly inside.
enum class PointClass { interior, boundary, ghost };

/// Uniform grid on the computational unit square [0,1]^2 with `p` ghost
/// layers on each side.  Grid indices i in [-p, nx+p], j in [-p, ny+p];
/// x_i = i*dx, y_j = j*dy with dx = 1/nx, dy = 1/ny.
struct GridSpec {
    int nx = 0;
    int ny = 0;
    int p = 0;

    GridSpec() = default;
    GridSpec(int nx_, int ny_, int p_) : nx(nx_), ny(ny_), p(p_) {
        if (p < 1 || p > 3)
            throw std::invalid_argument("GridSpec: ghost width p=" + std::to_string(p) +
                                        " outside supported range [1,3]");
        // Side closures need boundary indices p..N-p to exist and corners
        // need disjoint data footprints, so demand a few cells of room.
        const int nmin = 2 * p + 2;
        if (nx < nmin || ny < nmin)
            throw std::invalid_argument("GridSpec: nx=" + std::to_string(nx) + " ny=" +
                                        std::to_string(ny) + " too small for p=" +
                                        std::to_string(p) + " (need >= " +
                                        std::to_string(nmin) + ")");
    }

    double dx() const { return 1.0 / nx; }
    double dy() const { return 1.0 / ny; }
    double x(int i) const { return i * dx(); }
    double y(int j) const { return j * dy(); }

    int ext_nx() const { return nx + 2 * p + 1; }  // count of extended i values
    int ext_ny() const { return ny + 2 * p + 1; }

    bool in_extended(int i, int j) const {
        return i >= -p && i <= nx + p && j >= -p && j <= ny + p;
    }

    PointClass classify(int i, int j) const {
        if (!in_extended(i, j))
            throw std::out_of_range("GridSpec::classify: index (" + std::to_string(i) +
                                    "," + std::to_string(j) + ") outside extended grid");
        if (i < 0 || i > nx || j < 0 || j > ny) return PointClass::ghost;
        if (i == 0 || i == nx || j == 0 || j == ny) return PointClass::boundary;
        return PointClass::interior;
    }
};

/// Scalar field stored over the extended grid.  Layout is j-major with i
/// contiguous, so x-direction sweeps and same-row y-stencil reads both walk
/// unit-stride memory.
class ExtendedField {
public:
    ExtendedField() = default;
    explicit ExtendedField(const GridSpec& g)
        : nx_(g.nx), ny_(g.ny), p_(g.p),
          stride_(g.ext_nx()), data_(std::size_t(g.ext_nx()) * g.ext_ny(), 0.0) {}

    double& operator()(int i, int j) { return data_[index(i, j)]; }
    double operator()(int i, int j) const { return data_[index(i, j)]; }

    double* row(int j) { return data_.data() + std::size_t(j + p_) * stride_ + p_; }
    const double* row(int j) const { return data_.data() + std::size_t(j + p_) * stride_ + p_; }

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int p() const { return p_; }
    std::size_t size() const { return data_.size(); }
    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    void fill(double v) { data_.assign(data_.size(), v); }

private:
    std::size_t index(int i, int j) const {
        return std::size_t(j + p_) * stride_ + std::size_t(i + p_);
    }

    int nx_ = 0, ny_ = 0, p_ = 0;
    int stride_ = 0;
    std::vector<double> data_;
};

/// Builds the extended grid for a requested interior resolution and ghost
/// width, validating the sizes.
inline GridSpec build_extended_grid(int nx, int ny, int p) { return GridSpec(nx, ny, p); }

/// Samples fn(x, y) at every extended grid point, ghosts included.
inline ExtendedField sample_field(const GridSpec& g,
                                  const std::function<double(double, double)>& fn) {
    ExtendedField u(g);
    for (int j = -g.p; j <= g.ny + g.p; ++j)
        for (int i = -g.p; i <= g.nx + g.p; ++i)
            u(i, j) = fn(g.x(i), g.y(j));
    return u;
}

} // namespace lcbc
