#pragma once

// Elastic distance d([q1],[q2]) = inf_gamma ||q1 - (q2, gamma)||_2 by dynamic
// programming over a uniform (M+1) x (M+1) lattice of warp vertices.
//
// A path runs from (0,0) to (M,M); each step (a,b) taken from the slope set
// advances a lattice cells along q1's axis and b along q2's, so the warp is
// piecewise linear with slope b/a on that segment. Segment costs are
// integrated exactly: on each piece of the merged breakpoint grid the
// integrand (q1 - q2(gamma) sqrt(gamma'))^2 is constant.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "elastic/fnspace.hpp"
#include "elastic/srsf.hpp"
#include "elastic/warp.hpp"

namespace elastic {

struct Slope {
    int a = 1;  // lattice cells along q1's axis (t)
    int b = 1;  // lattice cells along q2's axis (gamma(t))
    bool operator==(const Slope&) const = default;
};

enum class DpKernel { serial, openmp };

struct DpConfig {
    int grid_size = 128;  // M, lattice intervals per axis
    std::vector<Slope> slope_set = default_slopes();
    std::optional<int> band_width;
    DpKernel kernel = DpKernel::openmp;

    static std::vector<Slope> default_slopes() {
        return {{1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 1}, {2, 3}, {3, 2}};
    }
    int max_slope_component() const;

    /// Throws InputError on a malformed configuration.
    void validate() const;
};

struct LatticePoint {
    int i = 0;  // index along t
    int j = 0;  // index along gamma(t)
    bool operator==(const LatticePoint&) const = default;
};

using LatticePath = std::vector<LatticePoint>;

struct AlignmentResult {
    double distance = 0.0;
    double cost = 0.0;  // distance^2 as accumulated by the DP
    Warp warp;
    Srsf aligned_q;
    std::optional<SampledFunction> aligned_f;
    LatticePath path;
    std::int64_t nodes_expanded = 0;
    // Constant-function convention applied (no warp search was run).
    bool zero_length = false;
};

AlignmentResult elastic_distance(const Srsf& q1, const Srsf& q2, const DpConfig& cfg);

/// Result used when an input has zero length: distance ||q1 - q2||_2, identity warp.
AlignmentResult constant_convention(const Srsf& q1, const Srsf& q2);

double fisher_rao_distance(const SampledFunction& f1, const SampledFunction& f2);

/// Normalizes both SRSFs to unit norm, aligns, and attaches f2 o gamma.
AlignmentResult shape_distance(const SampledFunction& f1, const SampledFunction& f2,
                               const DpConfig& cfg);

/// True when the DP-optimal lattice path for (q1, q2) is also optimal (the
/// same path under the fixed tie-break) for (b q1, c q2). Requires b c > 0.
bool scalar_invariance_check(const Srsf& q1, const Srsf& q2, double b, double c,
                             const DpConfig& cfg);

/// reconstruct((1-s) q1 + s q2, f1(0)) for s = 0, 1/(steps-1), ..., 1. With
/// aligned, q2 is first replaced by its optimally warped version.
std::vector<SampledFunction> geodesic_path(const SampledFunction& f1, const SampledFunction& f2,
                                           int steps, bool aligned, const DpConfig& cfg);

/// Warp through the vertices of a lattice path (nodes i/M, values j/M).
Warp path_to_warp(const LatticePath& path, int grid_size);

}  // namespace elastic
