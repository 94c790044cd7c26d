#pragma once

// Internal DP machinery shared by the serial reference kernel and the
// OpenMP kernel. Both kernels call the same per-cell relaxation, so their
// outputs are bit-identical.

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "elastic/align.hpp"

namespace elastic::detail {

inline constexpr double kUnreached = std::numeric_limits<double>::infinity();

// Path costs within this fraction of ||q1||^2 + ||q2||^2 count as tied, so
// that paths of equal exact cost are ranked by the tie-break, not by rounding.
inline constexpr double kTieRelTol = 1e-13;

/// Exact integral of (q1(t) - q2(gamma(t)) sqrt(gamma'))^2 over one straight
/// lattice segment.
class SegmentCost {
public:
    SegmentCost(const CellFunction& q1, const CellFunction& q2, int grid_size);

    double operator()(LatticePoint from, LatticePoint to) const;
    int grid_size() const noexcept { return M_; }
    double tie_tolerance() const noexcept { return tie_tol_; }
    double lattice(int k) const noexcept { return lattice_[static_cast<std::size_t>(k)]; }

private:
    std::span<const double> n1_, v1_, n2_, v2_;
    std::vector<std::size_t> cell1_, cell2_;
    std::vector<double> lattice_;
    int M_;
    double tie_tol_;
};

/// Admissible vertices, one contiguous j-range per row.
struct Region {
    std::vector<int> lo;
    std::vector<int> hi;

    static Region full(int grid_size);
    static Region empty(int grid_size);
    bool contains(int i, int j) const noexcept {
        return j >= lo[static_cast<std::size_t>(i)] && j <= hi[static_cast<std::size_t>(i)];
    }
    void absorb(const Region& other);
    bool operator==(const Region&) const = default;
};

struct DpOutcome {
    double cost = kUnreached;
    LatticePath path;
    std::int64_t expanded = 0;
};

DpOutcome run_dp_serial(const SegmentCost& seg, const Region& region,
                        std::span<const Slope> slopes);
DpOutcome run_dp_openmp(const SegmentCost& seg, const Region& region,
                        std::span<const Slope> slopes);

inline DpOutcome run_dp(DpKernel kernel, const SegmentCost& seg, const Region& region,
                        std::span<const Slope> slopes) {
    return kernel == DpKernel::serial ? run_dp_serial(seg, region, slopes)
                                      : run_dp_openmp(seg, region, slopes);
}

// ---- helpers used by both kernels ----

struct Cell {
    double cost = kUnreached;
    int pi = -1;
    int pj = -1;
};

/// Fixed tie-break among costs within tol: closest-to-diagonal
/// predecessor, then smaller i.
inline bool preferred(double cost, int pi, int pj, const Cell& best, double tol) noexcept {
    if (best.pi < 0) return cost < kUnreached;
    if (cost < best.cost - tol) return true;
    if (cost > best.cost + tol) return false;
    const int d_new = pi > pj ? pi - pj : pj - pi;
    const int d_old = best.pi > best.pj ? best.pi - best.pj : best.pj - best.pi;
    if (d_new != d_old) return d_new < d_old;
    return pi < best.pi;
}

/// Relaxes vertex (i, j) from all admissible predecessors. Returns the
/// number of segment costs evaluated.
int relax(const SegmentCost& seg, const Region& region, std::span<const Slope> slopes,
          const std::vector<Cell>& table, int i, int j, Cell& out);

LatticePath backtrack(const std::vector<Cell>& table, int grid_size);

}  // namespace elastic::detail
