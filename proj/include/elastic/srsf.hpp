#pragma once

// Square-root slope functions q = sign(f') sqrt|f'|, stored cell-wise so the
// a.e. definition needs no special cases at kinks.

#include "elastic/fnspace.hpp"
#include "elastic/warp.hpp"

namespace elastic {

class Srsf {
public:
    explicit Srsf(CellFunction q);

    const CellFunction& q() const noexcept { return q_; }
    const Grid& grid() const noexcept { return q_.grid(); }
    double norm() const noexcept { return norm_; }
    double operator[](std::size_t i) const noexcept { return q_[i]; }
    std::size_t size() const noexcept { return q_.size(); }

private:
    CellFunction q_;
    double norm_;
};

Srsf srsf_of(const SampledFunction& f);

/// f(t) = f0 + int_0^t q|q|.
SampledFunction reconstruct(const Srsf& q, double f0);

/// q / ||q||. Throws ZeroLength when ||q|| = 0.
Srsf normalize(const Srsf& q);

Srsf scale(const Srsf& q, double factor);

/// Length int |f'| of the interpolant.
double length(const SampledFunction& f);

struct ConstantSpeed {
    SampledFunction h;  // |h'| = length(f) on every cell
    Warp gamma;         // f = h o gamma
};

/// Constant-speed reparametrization. Flat runs of gamma collapse on h's grid.
ConstantSpeed constant_speed(const SampledFunction& f);

struct StandardFormPair {
    CellFunction w;  // cells are +sqrt(L), -sqrt(L) (or 0)
    Warp gamma;      // gamma(t) = (1/L) int_0^t q^2; may have plateaus
    double length;   // L = ||q||^2
};

StandardFormPair standard_form(const Srsf& q);

}  // namespace elastic
