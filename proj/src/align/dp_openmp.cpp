#include <algorithm>

#include "dp_kernel.hpp"

namespace elastic::detail {

// Every predecessor of row i lies in a strictly earlier row (slopes have
// a, b >= 1), so the vertices of one row are independent and the row is
// relaxed in parallel.
DpOutcome run_dp_openmp(const SegmentCost& seg, const Region& region,
                        std::span<const Slope> slopes) {
    const int M = seg.grid_size();
    const auto stride = static_cast<std::size_t>(M) + 1;
    std::vector<Cell> table(stride * stride);
    table[0] = Cell{0.0, -1, -1};
    std::int64_t expanded = 0;

#pragma omp parallel reduction(+ : expanded)
    for (int i = 1; i <= M; ++i) {
        const auto row = static_cast<std::size_t>(i) * stride;
        const int lo = std::max(1, region.lo[static_cast<std::size_t>(i)]);
        const int hi = region.hi[static_cast<std::size_t>(i)];
        // The implicit barrier closes the row before the next one starts.
#pragma omp for schedule(dynamic, 8)
        for (int j = lo; j <= hi; ++j) {
            expanded += relax(seg, region, slopes, table, i, j, table[row + static_cast<std::size_t>(j)]);
        }
    }

    DpOutcome out;
    out.expanded = expanded;
    const Cell& end = table.back();
    out.cost = end.cost;
    if (end.cost < kUnreached) out.path = backtrack(table, M);
    return out;
}

}  // namespace elastic::detail
