#pragma once

// Warping functions: nondecreasing piecewise-linear self-maps of [0,1] that
// fix both endpoints, and their action on SRSFs, (q, gamma) = (q o gamma) sqrt(gamma').

#include "elastic/fnspace.hpp"

namespace elastic {

class Srsf;

/// A member of Gamma (nondecreasing). monotone_strict() claims membership in
/// the invertible subgroup Gamma_0 and is validated on construction.
class Warp {
public:
    Warp(SampledFunction gamma, bool monotone_strict);

    const SampledFunction& gamma() const noexcept { return gamma_; }
    const Grid& grid() const noexcept { return gamma_.grid(); }
    bool monotone_strict() const noexcept { return strict_; }

    double operator()(double t) const noexcept { return gamma_(t); }

    /// Cell slopes gamma' (a.e. derivative of the interpolant).
    CellFunction slope() const { return derivative(gamma_); }

private:
    SampledFunction gamma_;
    bool strict_;
};

Warp identity_warp(const Grid& grid);

/// g1 o g2, exact: g2's grid refined by the g2-preimages of g1's nodes.
/// Strict iff both are.
Warp compose(const Warp& g1, const Warp& g2);

/// Graph reflection (nodes and values swap roles). Throws NotInvertible for
/// warps outside Gamma_0.
Warp invert(const Warp& g);

enum class ActionGrid {
    // Union of the warp's nodes and the gamma-preimages of q's breakpoints:
    // q o gamma is exactly piecewise constant on every output cell.
    refined,
    // The warp's own grid, q sampled at gamma(cell midpoint). First-order
    // accurate; keeps the output on a fixed grid.
    warp_grid,
};

Srsf action(const Srsf& q, const Warp& g, ActionGrid mode = ActionGrid::refined);

/// f o gamma sampled at gamma's nodes.
SampledFunction compose_function(const SampledFunction& f, const Warp& g);

struct ActionAlgebraReport {
    // ||((q,g1),g2) - (q, g1 o g2)||_2
    double associativity = 0.0;
    // ||((q,g1),g1^{-1}) - q||_2
    double inverse = 0.0;
};

ActionAlgebraReport action_algebra_check(const Srsf& q, const Warp& g1, const Warp& g2);

}  // namespace elastic
