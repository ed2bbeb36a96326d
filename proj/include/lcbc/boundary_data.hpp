#pragma once

#include "lcbc/grid.hpp"
#include "lcbc/jet.hpp"
#include "lcbc/lcbc.hpp"
#include "lcbc/problem.hpp"

#include <array>
#include <vector>

namespace lcbc {

/// Time-jet compatibility data for one side, anchored at every boundary
/// index t_idx in [-p, nt + p] (nt boundary points run 0..nt; the overhang
/// serves the corner systems).  Dirichlet sides hold value ladders R_nu for
/// nu = 0..p; Neumann sides hold derivative ladders S_nu for nu = 0..p-1 in
/// the raw convention (d/dx on left/right, d/dy on bottom/top, no inward
/// sign).  Row 0 is always the prescribed data g itself.
struct SideTables {
    Side side = Side::left;
    BoundaryKind kind = BoundaryKind::dirichlet;
    int p = 0;
    int nt = 0;
    std::vector<std::vector<TJet>> rows;

    const TJet& at(int nu, int t_idx) const {
        return rows.at(std::size_t(nu)).at(std::size_t(t_idx + p));
    }
};

/// Tables of all four sides at one time.
struct BoundaryTables {
    double t = 0.0;
    std::array<SideTables, 4> side;

    const SideTables& of(Side s) const { return side[side_index(s)]; }
};

/// Builds compatibility tables at any time after a one-off setup pass.
///
/// The forcing enters the tables only through center values of discrete
/// operator ladders.  Those are linear in the forcing samples near each
/// anchor, with time-independent weights; the constructor extracts the
/// weights by running the ladder on cardinal impulses, and build(t) then
/// evaluates one forcing jet per sample point and takes weighted sums.  The
/// ladder code is shared with constraint assembly, which keeps the tables
/// and the constraint rows exactly consistent.
class BoundaryDataBuilder {
public:
    BoundaryDataBuilder(const PdeProblem& prob, const GridSpec& g, int d);

    BoundaryTables build(double t) const;

    int p() const { return p_; }

private:
    struct SideSetup {
        Side side = Side::left;
        BoundaryKind kind = BoundaryKind::dirichlet;
        int nt = 0;
        Frame frame0;                      // anchor frame at tangential index 0
        int n_ladders = 0;                 // ladder depths needed (n = 1..n_ladders)
        // weights[t_idx + p][n - 1] is a (2p+1)^2 patch (a-major) mapping
        // forcing samples around the anchor to the n-fold ladder center.
        std::vector<std::vector<std::vector<double>>> weights;
    };

    const PdeProblem* prob_;
    GridSpec grid_;
    int d_ = 0, p_ = 0;
    bool use_forcing_ = false;
    std::array<SideSetup, 4> sides_;
};

} // namespace lcbc
