#include "elastic/metric.hpp"

#include <cmath>
#include <string>

#include "elastic/errors.hpp"

namespace elastic {

namespace {

CellFunction positive_slope(const SampledFunction& f) {
    CellFunction d = derivative(f);
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (!(d[i] > 0.0)) {
            throw NotPositiveSlope("base function slope " + std::to_string(d[i]) + " on cell " +
                                   std::to_string(i));
        }
    }
    return d;
}

}  // namespace

double fisher_rao_inner(const TangentVector& u, const TangentVector& v, const SampledFunction& f) {
    const CellFunction df = positive_slope(f);
    const Grid grid = merge_grids(merge_grids(u.v.grid(), v.v.grid()), f.grid());
    const CellFunction du = resample_cells(derivative(u.v), grid);
    const CellFunction dv = resample_cells(derivative(v.v), grid);
    const CellFunction dd = resample_cells(df, grid);
    CompensatedSum s;
    for (std::size_t i = 0; i < grid.cells(); ++i) {
        s.add(0.25 * (du[i] * dv[i]) / dd[i] * grid.width(i));
    }
    return s.value();
}

CellFunction srsf_pushforward(const TangentVector& v, const SampledFunction& f) {
    const CellFunction df = positive_slope(f);
    const Grid grid = merge_grids(v.v.grid(), f.grid());
    const CellFunction dv = resample_cells(derivative(v.v), grid);
    const CellFunction dd = resample_cells(df, grid);
    std::vector<double> out(grid.cells());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = dv[i] / (2.0 * std::sqrt(dd[i]));
    return CellFunction(grid, std::move(out));
}

IsometryReport isometry_check(const TangentVector& u, const TangentVector& v,
                              const SampledFunction& f, const Warp& g) {
    if (!g.monotone_strict()) throw NotInvertible("isometry check needs a warp in Gamma_0");
    IsometryReport r;
    r.original = fisher_rao_inner(u, v, f);
    r.warped = fisher_rao_inner(TangentVector{compose_function(u.v, g)},
                                TangentVector{compose_function(v.v, g)}, compose_function(f, g));
    r.difference = r.warped - r.original;
    return r;
}

}  // namespace elastic
