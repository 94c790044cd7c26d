#include "dp_kernel.hpp"

#include <algorithm>
#include <cmath>

namespace elastic::detail {

SegmentCost::SegmentCost(const CellFunction& q1, const CellFunction& q2, int grid_size)
    : n1_(q1.grid().nodes()),
      v1_(q1.values()),
      n2_(q2.grid().nodes()),
      v2_(q2.values()),
      M_(grid_size),
      tie_tol_(kTieRelTol * (integrate_cells(cell_square(q1)) + integrate_cells(cell_square(q2)))) {
    const auto count = static_cast<std::size_t>(M_) + 1;
    lattice_.resize(count);
    cell1_.resize(count);
    cell2_.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
        lattice_[k] = static_cast<double>(k) / static_cast<double>(M_);
        cell1_[k] = q1.grid().locate(lattice_[k]);
        cell2_[k] = q2.grid().locate(lattice_[k]);
    }
}

double SegmentCost::operator()(LatticePoint from, LatticePoint to) const {
    const double T0 = lattice(from.i);
    const double T1 = lattice(to.i);
    const double S0 = lattice(from.j);
    const double S1 = lattice(to.j);
    const double m = (S1 - S0) / (T1 - T0);
    const double root = std::sqrt(m);
    const std::size_t last1 = v1_.size() - 1;
    const std::size_t last2 = v2_.size() - 1;

    std::size_t c1 = cell1_[static_cast<std::size_t>(from.i)];
    std::size_t c2 = cell2_[static_cast<std::size_t>(from.j)];
    double tc = T0;
    CompensatedSum sum;
    for (;;) {
        const double e1 = (c1 < last1 && n1_[c1 + 1] < T1) ? n1_[c1 + 1] : T1;
        const double e2 =
            (c2 < last2 && n2_[c2 + 1] < S1) ? std::min(T0 + (n2_[c2 + 1] - S0) / m, T1) : T1;
        const double tn = std::min(e1, e2);
        if (tn - tc > kNodeMergeTol) {
            const double diff = v1_[c1] - v2_[c2] * root;
            sum.add(diff * diff * (tn - tc));
            tc = tn;
        }
        if (T1 - tn <= kNodeMergeTol) break;
        if (e1 - tn <= kNodeMergeTol) ++c1;
        if (e2 - tn <= kNodeMergeTol) ++c2;
    }
    // The final stretch up to T1 (possibly a sub-tolerance sliver) belongs to
    // the current pieces.
    if (T1 - tc > 0.0) {
        const double diff = v1_[c1] - v2_[c2] * root;
        sum.add(diff * diff * (T1 - tc));
    }
    return sum.value();
}

Region Region::full(int grid_size) {
    const auto rows = static_cast<std::size_t>(grid_size) + 1;
    return Region{std::vector<int>(rows, 0), std::vector<int>(rows, grid_size)};
}

Region Region::empty(int grid_size) {
    const auto rows = static_cast<std::size_t>(grid_size) + 1;
    return Region{std::vector<int>(rows, grid_size + 1), std::vector<int>(rows, -1)};
}

void Region::absorb(const Region& other) {
    for (std::size_t r = 0; r < lo.size(); ++r) {
        lo[r] = std::min(lo[r], other.lo[r]);
        hi[r] = std::max(hi[r], other.hi[r]);
    }
}

int relax(const SegmentCost& seg, const Region& region, std::span<const Slope> slopes,
          const std::vector<Cell>& table, int i, int j, Cell& out) {
    const int M = seg.grid_size();
    const auto stride = static_cast<std::size_t>(M) + 1;
    int evaluated = 0;
    Cell best;
    for (const Slope& s : slopes) {
        const int pi = i - s.a;
        const int pj = j - s.b;
        if (pi < 0 || pj < 0 || !region.contains(pi, pj)) continue;
        const Cell& prev = table[static_cast<std::size_t>(pi) * stride + static_cast<std::size_t>(pj)];
        if (prev.cost == kUnreached) continue;
        const double c = prev.cost + seg({pi, pj}, {i, j});
        ++evaluated;
        if (preferred(c, pi, pj, best, seg.tie_tolerance())) best = Cell{c, pi, pj};
    }
    out = best;
    return evaluated;
}

LatticePath backtrack(const std::vector<Cell>& table, int grid_size) {
    const auto stride = static_cast<std::size_t>(grid_size) + 1;
    LatticePath path;
    int i = grid_size;
    int j = grid_size;
    while (i > 0 || j > 0) {
        path.push_back({i, j});
        const Cell& c = table[static_cast<std::size_t>(i) * stride + static_cast<std::size_t>(j)];
        i = c.pi;
        j = c.pj;
    }
    path.push_back({0, 0});
    std::reverse(path.begin(), path.end());
    return path;
}

DpOutcome run_dp_serial(const SegmentCost& seg, const Region& region,
                        std::span<const Slope> slopes) {
    const int M = seg.grid_size();
    const auto stride = static_cast<std::size_t>(M) + 1;
    std::vector<Cell> table(stride * stride);
    table[0] = Cell{0.0, -1, -1};
    DpOutcome out;
    for (int i = 1; i <= M; ++i) {
        const auto row = static_cast<std::size_t>(i) * stride;
        for (int j = std::max(1, region.lo[static_cast<std::size_t>(i)]);
             j <= region.hi[static_cast<std::size_t>(i)]; ++j) {
            out.expanded += relax(seg, region, slopes, table, i, j, table[row + static_cast<std::size_t>(j)]);
        }
    }
    const Cell& end = table.back();
    out.cost = end.cost;
    if (end.cost < kUnreached) out.path = backtrack(table, M);
    return out;
}

}  // namespace elastic::detail
