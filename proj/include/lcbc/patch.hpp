#pragma once

#include <vector>

namespace lcbc {

/// Small dense patch of values on local offsets a in [-wx, wx] (normal
/// direction), b in [-wy, wy] (tangential direction), anchored at one
/// boundary or corner point.  Templated so the same containers hold doubles
/// (coefficient samples, extraction weights) and time jets (data tables).
template <typename T>
struct PatchT {
    int wx = 0, wy = 0;
    std::vector<T> v;

    PatchT() = default;
    PatchT(int wx_, int wy_) : wx(wx_), wy(wy_), v((2 * wx_ + 1) * (2 * wy_ + 1)) {}

    T& at(int a, int b) { return v[std::size_t(a + wx) * (2 * wy + 1) + (b + wy)]; }
    const T& at(int a, int b) const {
        return v[std::size_t(a + wx) * (2 * wy + 1) + (b + wy)];
    }
    bool contains(int a, int b) const {
        return a >= -wx && a <= wx && b >= -wy && b <= wy;
    }
};

using LocalPatch = PatchT<double>;

/// Operator coefficient samples at the grid points of the local frame, plus
/// local spacings.  dxh is the spacing along the normal (a) axis, dyh along
/// the tangential (b) axis.
struct PatchCoeffs {
    LocalPatch c11, c12, c22, c1, c2, c0;
    double dxh = 0, dyh = 0;
};

} // namespace lcbc
