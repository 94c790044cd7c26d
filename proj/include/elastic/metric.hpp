#pragma once

// Fisher-Rao inner product at f in AC^0[0,1] (f' > 0) and its pushforward
// to L2 under the SRSF map.

#include "elastic/fnspace.hpp"
#include "elastic/warp.hpp"

namespace elastic {

/// A perturbation direction at a base function; piecewise linear on [0,1].
struct TangentVector {
    SampledFunction v;
};

/// <<u, v>>_f = 1/4 int u' v' / f'. Throws NotPositiveSlope unless every
/// derivative cell of f is > 0.
double fisher_rao_inner(const TangentVector& u, const TangentVector& v, const SampledFunction& f);

/// v' / (2 sqrt(f')) on the merged grid of v and f.
CellFunction srsf_pushforward(const TangentVector& v, const SampledFunction& f);

struct IsometryReport {
    double original = 0.0;  // <<u, v>>_f
    double warped = 0.0;    // <<u o g, v o g>>_{f o g}
    double difference = 0.0;
};

/// Compares the metric before and after reparametrizing u, v and f by g
/// (sampled on g's grid). Exact when the breakpoints of u, v, f are images
/// of g's nodes; first order in the mesh otherwise.
IsometryReport isometry_check(const TangentVector& u, const TangentVector& v,
                              const SampledFunction& f, const Warp& g);

}  // namespace elastic
