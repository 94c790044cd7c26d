#include "elastic/align.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dp_kernel.hpp"
#include "elastic/errors.hpp"

namespace elastic {

int DpConfig::max_slope_component() const {
    int m = 0;
    for (const Slope& s : slope_set) m = std::max({m, s.a, s.b});
    return m;
}

void DpConfig::validate() const {
    if (grid_size < 2) throw InputError("DP grid size must be at least 2");
    if (slope_set.empty()) throw InputError("slope set is empty");
    bool has_diagonal = false;
    for (const Slope& s : slope_set) {
        if (s.a < 1 || s.b < 1) {
            throw InputError("slope components must be >= 1, got (" + std::to_string(s.a) + "," +
                             std::to_string(s.b) + ")");
        }
        if (std::gcd(s.a, s.b) != 1) {
            throw InputError("slope (" + std::to_string(s.a) + "," + std::to_string(s.b) +
                             ") is not gcd-reduced");
        }
        has_diagonal = has_diagonal || (s.a == 1 && s.b == 1);
    }
    if (!has_diagonal) throw InputError("slope set must contain (1,1)");
    if (band_width && *band_width < max_slope_component()) {
        throw InputError("band width must be at least the largest slope component");
    }
}

Warp path_to_warp(const LatticePath& path, int grid_size) {
    std::vector<double> t(path.size());
    std::vector<double> g(path.size());
    const double M = static_cast<double>(grid_size);
    for (std::size_t k = 0; k < path.size(); ++k) {
        t[k] = static_cast<double>(path[k].i) / M;
        g[k] = static_cast<double>(path[k].j) / M;
    }
    t.front() = g.front() = 0.0;
    t.back() = g.back() = 1.0;
    return Warp(SampledFunction(Grid(std::move(t)), std::move(g)), true);
}

namespace {

detail::Region band_around(const LatticePath& path, int grid_size, int width) {
    detail::Region r = detail::Region::empty(grid_size);
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        const LatticePoint p = path[k];
        const LatticePoint q = path[k + 1];
        for (int i = p.i; i <= q.i; ++i) {
            const double j = p.j + static_cast<double>(q.j - p.j) * (i - p.i) / (q.i - p.i);
            const auto row = static_cast<std::size_t>(i);
            r.lo[row] = std::min(r.lo[row], std::max(0, static_cast<int>(std::floor(j)) - width));
            r.hi[row] = std::max(r.hi[row], std::min(grid_size, static_cast<int>(std::ceil(j)) + width));
        }
    }
    return r;
}

bool band_interior(const LatticePath& path, const detail::Region& region, int grid_size) {
    for (const LatticePoint& p : path) {
        const auto row = static_cast<std::size_t>(p.i);
        if (p.j == region.lo[row] && region.lo[row] > 0) return false;
        if (p.j == region.hi[row] && region.hi[row] < grid_size) return false;
    }
    return true;
}

LatticePath diagonal(int grid_size) {
    LatticePath p;
    for (int k = 0; k <= grid_size; ++k) p.push_back({k, k});
    return p;
}

// Band refinement: at each width of the schedule w0, w0+1, ..., band_width
// the band is re-centred on the current best path until the path no longer
// touches the band edge. The admissible region only ever grows, so a wider
// band can never return a worse path.
detail::DpOutcome banded_dp(const detail::SegmentCost& seg, const DpConfig& cfg) {
    const int M = cfg.grid_size;
    detail::Region region = detail::Region::empty(M);
    LatticePath path = diagonal(M);
    detail::DpOutcome best;
    std::int64_t expanded = 0;
    for (int w = cfg.max_slope_component(); w <= *cfg.band_width; ++w) {
        for (int iter = 0; iter <= M; ++iter) {
            detail::Region next = region;
            next.absorb(band_around(path, M, w));
            if (next == region && iter > 0) break;
            region = std::move(next);
            best = detail::run_dp(cfg.kernel, seg, region, cfg.slope_set);
            expanded += best.expanded;
            const bool settled = best.path == path;
            path = best.path;
            if (settled || band_interior(path, region, M)) break;
        }
    }
    best.expanded = expanded;
    return best;
}

}  // namespace

AlignmentResult constant_convention(const Srsf& q1, const Srsf& q2) {
    const Grid grid = Grid::uniform(1);
    const double d = l2_distance(q1.q(), q2.q());
    return AlignmentResult{d,          d * d, identity_warp(grid), q2, std::nullopt,
                           {{0, 0}, {1, 1}}, 0, true};
}

AlignmentResult elastic_distance(const Srsf& q1, const Srsf& q2, const DpConfig& cfg) {
    cfg.validate();
    if (q1.norm() == 0.0 || q2.norm() == 0.0) {
        throw ZeroLength("elastic distance needs nonconstant functions");
    }
    const detail::SegmentCost seg(q1.q(), q2.q(), cfg.grid_size);
    const detail::DpOutcome dp =
        cfg.band_width ? banded_dp(seg, cfg)
                       : detail::run_dp(cfg.kernel, seg, detail::Region::full(cfg.grid_size),
                                        cfg.slope_set);
    Warp warp = path_to_warp(dp.path, cfg.grid_size);
    Srsf aligned = action(q2, warp);
    const double cost = std::max(dp.cost, 0.0);
    return AlignmentResult{std::sqrt(cost), cost,         std::move(warp), std::move(aligned),
                           std::nullopt,    dp.path,      dp.expanded,     false};
}

double fisher_rao_distance(const SampledFunction& f1, const SampledFunction& f2) {
    return l2_distance(srsf_of(f1).q(), srsf_of(f2).q());
}

AlignmentResult shape_distance(const SampledFunction& f1, const SampledFunction& f2,
                               const DpConfig& cfg) {
    const Srsf q2 = srsf_of(f2);
    AlignmentResult r = elastic_distance(normalize(srsf_of(f1)), normalize(q2), cfg);
    r.aligned_f = reconstruct(action(q2, r.warp), f2[0]);
    return r;
}

bool scalar_invariance_check(const Srsf& q1, const Srsf& q2, double b, double c,
                             const DpConfig& cfg) {
    if (!(b * c > 0.0)) throw DomainError("scalar invariance needs b c > 0");
    const AlignmentResult base = elastic_distance(q1, q2, cfg);
    const AlignmentResult scaled = elastic_distance(scale(q1, b), scale(q2, c), cfg);
    return base.path == scaled.path;
}

std::vector<SampledFunction> geodesic_path(const SampledFunction& f1, const SampledFunction& f2,
                                           int steps, bool aligned, const DpConfig& cfg) {
    if (steps < 2) throw InputError("geodesic needs at least 2 steps");
    if (f1[0] != f2[0]) {
        throw BasepointMismatch("f1(0) = " + std::to_string(f1[0]) +
                                " differs from f2(0) = " + std::to_string(f2[0]));
    }
    const Srsf q1 = srsf_of(f1);
    Srsf q2 = srsf_of(f2);
    if (aligned) q2 = elastic_distance(q1, q2, cfg).aligned_q;

    const Grid grid = merge_grids(q1.grid(), q2.grid());
    const CellFunction a = resample_cells(q1.q(), grid);
    const CellFunction b = resample_cells(q2.q(), grid);
    std::vector<SampledFunction> out;
    out.reserve(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) {
        const double s = static_cast<double>(k) / static_cast<double>(steps - 1);
        std::vector<double> v(grid.cells());
        for (std::size_t i = 0; i < v.size(); ++i) {
            // Endpoints are taken verbatim so they reproduce f1 and f2 exactly.
            v[i] = k == 0 ? a[i] : (k == steps - 1 ? b[i] : (1.0 - s) * a[i] + s * b[i]);
        }
        out.push_back(reconstruct(Srsf(CellFunction(grid, std::move(v))), f1[0]));
    }
    return out;
}

}  // namespace elastic
