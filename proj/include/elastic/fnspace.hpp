#pragma once

// Numeric substrate: grids on [0,1], piecewise-linear sampled functions and
// piecewise-constant cell functions. Every operation is Delta-aware, so
// nonuniform grids are first class.

#include <cstddef>
#include <span>
#include <vector>

namespace elastic {

// Nodes closer than this are treated as the same node when grids are merged
// or breakpoint preimages are inserted.
inline constexpr double kNodeMergeTol = 64.0 * 2.220446049250313e-16;

// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Strictly increasing partition 0 = t_0 < t_1 < ... < t_{N-1} = 1, N >= 2.
class Grid {
public:
    explicit Grid(std::vector<double> nodes);

    static Grid uniform(std::size_t cells);

    std::span<const double> nodes() const noexcept { return nodes_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    std::size_t cells() const noexcept { return nodes_.size() - 1; }
    double operator[](std::size_t i) const noexcept { return nodes_[i]; }
    double width(std::size_t cell) const noexcept { return nodes_[cell + 1] - nodes_[cell]; }
    double midpoint(std::size_t cell) const noexcept {
        return 0.5 * (nodes_[cell] + nodes_[cell + 1]);
    }
    double max_width() const noexcept;

    /// Index of the cell [t_i, t_{i+1}) containing t; t = 1 maps to the last cell.
    std::size_t locate(double t) const noexcept;

    bool operator==(const Grid&) const = default;

private:
    std::vector<double> nodes_;
};

/// Sorted union of two grids; nodes within kNodeMergeTol of each other
/// collapse to the smaller one. Symmetric in its arguments.
Grid merge_grids(const Grid& a, const Grid& b);

/// Values on a grid with piecewise-linear interpolation between nodes.
class SampledFunction {
public:
    SampledFunction(Grid grid, std::vector<double> values);

    const Grid& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    std::size_t size() const noexcept { return values_.size(); }

    /// Linear interpolant; exact stored value at nodes. t is clamped to [0,1].
    double operator()(double t) const noexcept;

private:
    Grid grid_;
    std::vector<double> values_;
};

/// One value per cell [t_i, t_{i+1}). Carrier for derivatives and SRSFs.
class CellFunction {
public:
    CellFunction(Grid grid, std::vector<double> cell_values);

    const Grid& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }

    /// Value of the cell containing t.
    double at(double t) const noexcept { return values_[grid_.locate(t)]; }

private:
    Grid grid_;
    std::vector<double> values_;
};

CellFunction derivative(const SampledFunction& f);
double integrate_cells(const CellFunction& g);
SampledFunction cumulative_integral(const CellFunction& g);
SampledFunction resample(const SampledFunction& f, const Grid& new_grid);
double l2_norm(const CellFunction& g);
double bounded_variation(const SampledFunction& f);

/// Transfers g to a refinement (or snapped variant) of its grid: each new cell
/// takes the value of the old cell containing its midpoint.
CellFunction resample_cells(const CellFunction& g, const Grid& new_grid);

/// Pointwise combination on the merged grid of a and b.
CellFunction cell_difference(const CellFunction& a, const CellFunction& b);
CellFunction cell_linear_combination(double alpha, const CellFunction& a, double beta,
                                     const CellFunction& b);
CellFunction cell_scale(const CellFunction& g, double factor);
CellFunction cell_abs(const CellFunction& g);
CellFunction cell_square(const CellFunction& g);

/// <a, b> in L2, exact cell sum on the merged grid.
double l2_inner(const CellFunction& a, const CellFunction& b);
double l2_distance(const CellFunction& a, const CellFunction& b);

SampledFunction add_constant(const SampledFunction& f, double c);

/// Builds a SampledFunction from raw (t, value) samples. Exact duplicate
/// abscissae collapse to the last value; decreasing abscissae are rejected.
/// With rescale_domain the abscissae are mapped affinely from [t_0, t_last]
/// onto [0,1]; otherwise they must already start at 0 and end at 1.
SampledFunction ingest_samples(std::span<const double> t, std::span<const double> values,
                               bool rescale_domain);

}  // namespace elastic
