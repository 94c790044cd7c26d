#include "elastic/fnspace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "elastic/errors.hpp"

namespace elastic {

void CompensatedSum::add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        comp_ += (sum_ - t) + x;
    } else {
        comp_ += (x - t) + sum_;
    }
    sum_ = t;
}

Grid::Grid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 2) {
        throw InputError("grid needs at least 2 nodes, got " + std::to_string(nodes_.size()));
    }
    if (nodes_.front() != 0.0 || nodes_.back() != 1.0) {
        throw InputError("grid must start at 0 and end at 1");
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!std::isfinite(nodes_[i])) {
            throw InputError("grid node " + std::to_string(i) + " is not finite");
        }
        if (i > 0 && !(nodes_[i] > nodes_[i - 1])) {
            throw InputError("grid nodes not strictly increasing at index " + std::to_string(i));
        }
    }
}

Grid Grid::uniform(std::size_t cells) {
    if (cells == 0) throw InputError("uniform grid needs at least one cell");
    std::vector<double> nodes(cells + 1);
    const double n = static_cast<double>(cells);
    for (std::size_t i = 0; i <= cells; ++i) nodes[i] = static_cast<double>(i) / n;
    return Grid(std::move(nodes));
}

double Grid::max_width() const noexcept {
    double w = 0.0;
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) w = std::max(w, width(i));
    return w;
}

std::size_t Grid::locate(double t) const noexcept {
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
    if (it == nodes_.begin()) return 0;
    const auto idx = static_cast<std::size_t>(it - nodes_.begin()) - 1;
    return std::min(idx, cells() - 1);
}

Grid merge_grids(const Grid& a, const Grid& b) {
    if (a == b) return a;
    std::vector<double> all;
    all.reserve(a.size() + b.size());
    std::merge(a.nodes().begin(), a.nodes().end(), b.nodes().begin(), b.nodes().end(),
               std::back_inserter(all));
    std::vector<double> out;
    out.reserve(all.size());
    for (double t : all) {
        if (out.empty() || t - out.back() > kNodeMergeTol) out.push_back(t);
    }
    // The right endpoint is pinned even when a neighbour sat within tolerance.
    out.back() = 1.0;
    return Grid(std::move(out));
}

SampledFunction::SampledFunction(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw InputError("sampled function has " + std::to_string(values_.size()) +
                         " values for " + std::to_string(grid_.size()) + " nodes");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw InputError("value at node " + std::to_string(i) + " is not finite");
        }
    }
}

double SampledFunction::operator()(double t) const noexcept {
    if (t <= 0.0) return values_.front();
    if (t >= 1.0) return values_.back();
    const std::size_t i = grid_.locate(t);
    const double t0 = grid_[i];
    if (t == t0) return values_[i];
    const double a = values_[i];
    const double b = values_[i + 1];
    const double w = (t - t0) / grid_.width(i);
    const double v = a + (b - a) * w;
    // Keeps the interpolant monotone across cell boundaries under rounding.
    return std::clamp(v, std::min(a, b), std::max(a, b));
}

CellFunction::CellFunction(Grid grid, std::vector<double> cell_values)
    : grid_(std::move(grid)), values_(std::move(cell_values)) {
    if (values_.size() != grid_.cells()) {
        throw InputError("cell function has " + std::to_string(values_.size()) +
                         " values for " + std::to_string(grid_.cells()) + " cells");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw InputError("value of cell " + std::to_string(i) + " is not finite");
        }
    }
}

CellFunction derivative(const SampledFunction& f) {
    const Grid& g = f.grid();
    std::vector<double> d(g.cells());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = (f[i + 1] - f[i]) / g.width(i);
    return CellFunction(g, std::move(d));
}

double integrate_cells(const CellFunction& g) {
    CompensatedSum s;
    for (std::size_t i = 0; i < g.size(); ++i) s.add(g[i] * g.grid().width(i));
    return s.value();
}

SampledFunction cumulative_integral(const CellFunction& g) {
    std::vector<double> F(g.grid().size());
    CompensatedSum s;
    F[0] = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        s.add(g[i] * g.grid().width(i));
        F[i + 1] = s.value();
    }
    return SampledFunction(g.grid(), std::move(F));
}

SampledFunction resample(const SampledFunction& f, const Grid& new_grid) {
    if (new_grid == f.grid()) return f;
    std::vector<double> v(new_grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(new_grid[i]);
    return SampledFunction(new_grid, std::move(v));
}

double l2_norm(const CellFunction& g) {
    CompensatedSum s;
    for (std::size_t i = 0; i < g.size(); ++i) s.add(g[i] * g[i] * g.grid().width(i));
    return std::sqrt(s.value());
}

double bounded_variation(const SampledFunction& f) {
    CompensatedSum s;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) s.add(std::abs(f[i + 1] - f[i]));
    return s.value();
}

CellFunction resample_cells(const CellFunction& g, const Grid& new_grid) {
    if (new_grid == g.grid()) return g;
    const Grid& old = g.grid();
    std::vector<double> v(new_grid.cells());
    std::size_t j = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double m = new_grid.midpoint(i);
        while (j + 1 < old.cells() && old[j + 1] <= m) ++j;
        v[i] = g[j];
    }
    return CellFunction(new_grid, std::move(v));
}

CellFunction cell_linear_combination(double alpha, const CellFunction& a, double beta,
                                     const CellFunction& b) {
    const Grid grid = merge_grids(a.grid(), b.grid());
    const CellFunction ra = resample_cells(a, grid);
    const CellFunction rb = resample_cells(b, grid);
    std::vector<double> v(grid.cells());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = alpha * ra[i] + beta * rb[i];
    return CellFunction(grid, std::move(v));
}

CellFunction cell_difference(const CellFunction& a, const CellFunction& b) {
    const Grid grid = merge_grids(a.grid(), b.grid());
    const CellFunction ra = resample_cells(a, grid);
    const CellFunction rb = resample_cells(b, grid);
    std::vector<double> v(grid.cells());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = ra[i] - rb[i];
    return CellFunction(grid, std::move(v));
}

CellFunction cell_scale(const CellFunction& g, double factor) {
    std::vector<double> v(g.values().begin(), g.values().end());
    for (double& x : v) x *= factor;
    return CellFunction(g.grid(), std::move(v));
}

CellFunction cell_abs(const CellFunction& g) {
    std::vector<double> v(g.values().begin(), g.values().end());
    for (double& x : v) x = std::abs(x);
    return CellFunction(g.grid(), std::move(v));
}

CellFunction cell_square(const CellFunction& g) {
    std::vector<double> v(g.values().begin(), g.values().end());
    for (double& x : v) x = x * x;
    return CellFunction(g.grid(), std::move(v));
}

double l2_inner(const CellFunction& a, const CellFunction& b) {
    const Grid grid = merge_grids(a.grid(), b.grid());
    const CellFunction ra = resample_cells(a, grid);
    const CellFunction rb = resample_cells(b, grid);
    CompensatedSum s;
    for (std::size_t i = 0; i < grid.cells(); ++i) s.add(ra[i] * rb[i] * grid.width(i));
    return s.value();
}

double l2_distance(const CellFunction& a, const CellFunction& b) {
    return l2_norm(cell_difference(a, b));
}

SampledFunction add_constant(const SampledFunction& f, double c) {
    std::vector<double> v(f.values().begin(), f.values().end());
    for (double& x : v) x += c;
    return SampledFunction(f.grid(), std::move(v));
}

SampledFunction ingest_samples(std::span<const double> t, std::span<const double> values,
                               bool rescale_domain) {
    if (t.size() != values.size()) throw InputError("abscissa/value count mismatch");
    std::vector<double> ts;
    std::vector<double> vs;
    ts.reserve(t.size());
    vs.reserve(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!std::isfinite(t[i]) || !std::isfinite(values[i])) {
            throw InputError("non-finite sample at row " + std::to_string(i + 1));
        }
        if (!ts.empty()) {
            if (t[i] < ts.back()) {
                throw InputError("decreasing abscissa at row " + std::to_string(i + 1));
            }
            if (t[i] == ts.back()) {
                vs.back() = values[i];
                continue;
            }
        }
        ts.push_back(t[i]);
        vs.push_back(values[i]);
    }
    if (ts.size() < 2) throw InputError("need at least two distinct abscissae");
    if (rescale_domain) {
        const double a = ts.front();
        const double span = ts.back() - a;
        for (double& x : ts) x = (x - a) / span;
        ts.front() = 0.0;
        ts.back() = 1.0;
        for (std::size_t i = 1; i < ts.size(); ++i) {
            if (!(ts[i] > ts[i - 1])) {
                throw InputError("abscissae collapse after rescaling near row " +
                                 std::to_string(i + 1));
            }
        }
    } else if (ts.front() != 0.0 || ts.back() != 1.0) {
        throw InputError("abscissae must span exactly [0,1] (use domain rescaling otherwise)");
    }
    return SampledFunction(Grid(std::move(ts)), std::move(vs));
}

}  // namespace elastic
