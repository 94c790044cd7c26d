#include <algorithm>
#include <cmath>

#include "elastic/measurelab.hpp"

namespace elastic::measurelab {

// The best packing of total length < delta takes cells in decreasing order
// of |slope| (fractional knapsack); the supremum is attained in the limit.
std::vector<AcRow> ac_diagnostic(const SampledFunction& f, std::span<const double> deltas) {
    const Grid& g = f.grid();
    struct Piece {
        double slope;
        double width;
        double rise;
    };
    std::vector<Piece> pieces(g.cells());
    double max_slope = 0.0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const double rise = std::abs(f[i + 1] - f[i]);
        pieces[i] = {rise / g.width(i), g.width(i), rise};
        max_slope = std::max(max_slope, pieces[i].slope);
    }
    std::stable_sort(pieces.begin(), pieces.end(),
                     [](const Piece& x, const Piece& y) { return x.slope > y.slope; });

    std::vector<AcRow> rows;
    for (double delta : deltas) {
        CompensatedSum total;
        double used = 0.0;
        for (const Piece& p : pieces) {
            if (p.slope == 0.0 || used >= delta) break;
            if (p.width <= delta - used) {
                total.add(p.rise);
                used += p.width;
            } else {
                total.add(p.slope * (delta - used));
                used = delta;
            }
        }
        rows.push_back({delta, total.value(), max_slope * delta});
    }
    return rows;
}

}  // namespace elastic::measurelab
