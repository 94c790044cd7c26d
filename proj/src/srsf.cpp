#include "elastic/srsf.hpp"

#include <algorithm>
#include <cmath>

#include "elastic/errors.hpp"

namespace elastic {

namespace {

double signed_sqrt(double d) { return std::copysign(std::sqrt(std::abs(d)), d); }

// Normalized cumulative sum of per-cell masses, endpoints pinned to 0 and 1.
std::vector<double> normalized_cumulative(const std::vector<double>& mass, double total) {
    std::vector<double> gamma(mass.size() + 1);
    CompensatedSum s;
    gamma[0] = 0.0;
    for (std::size_t i = 0; i < mass.size(); ++i) {
        s.add(mass[i]);
        gamma[i + 1] = std::min(s.value() / total, 1.0);
    }
    gamma.back() = 1.0;
    return gamma;
}

bool strictly_increasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] > v[i - 1])) return false;
    }
    return true;
}

// Indices of the first node of each distinct value run in a nondecreasing sequence.
std::vector<std::size_t> distinct_runs(const std::vector<double>& v) {
    std::vector<std::size_t> keep{0};
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] > v[keep.back()]) keep.push_back(i);
    }
    return keep;
}

}  // namespace

Srsf::Srsf(CellFunction q) : q_(std::move(q)), norm_(l2_norm(q_)) {}

Srsf srsf_of(const SampledFunction& f) {
    const CellFunction d = derivative(f);
    std::vector<double> q(d.size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = signed_sqrt(d[i]);
    return Srsf(CellFunction(f.grid(), std::move(q)));
}

SampledFunction reconstruct(const Srsf& q, double f0) {
    std::vector<double> slope(q.size());
    for (std::size_t i = 0; i < slope.size(); ++i) slope[i] = q[i] * std::abs(q[i]);
    const SampledFunction F = cumulative_integral(CellFunction(q.grid(), std::move(slope)));
    return add_constant(F, f0);
}

Srsf normalize(const Srsf& q) {
    if (q.norm() == 0.0) throw ZeroLength("cannot normalize an SRSF with zero norm");
    return scale(q, 1.0 / q.norm());
}

Srsf scale(const Srsf& q, double factor) { return Srsf(cell_scale(q.q(), factor)); }

double length(const SampledFunction& f) { return integrate_cells(cell_abs(derivative(f))); }

ConstantSpeed constant_speed(const SampledFunction& f) {
    const Grid& grid = f.grid();
    std::vector<double> mass(grid.cells());
    CompensatedSum total;
    for (std::size_t i = 0; i < mass.size(); ++i) {
        mass[i] = std::abs(f[i + 1] - f[i]);
        total.add(mass[i]);
    }
    const double L = total.value();
    if (L == 0.0) throw ZeroLength("constant function has no constant-speed parametrization");

    std::vector<double> gamma = normalized_cumulative(mass, L);
    const bool strict = strictly_increasing(gamma);

    // h(gamma(t_i)) = f(t_i); on a flat run of gamma f is constant, keep the last value.
    const std::vector<std::size_t> runs = distinct_runs(gamma);
    std::vector<double> image(runs.size());
    std::vector<double> h(runs.size());
    for (std::size_t k = 0; k < runs.size(); ++k) {
        const std::size_t end = (k + 1 < runs.size()) ? runs[k + 1] : gamma.size();
        image[k] = gamma[runs[k]];
        h[k] = f[end - 1];
    }
    image.back() = 1.0;
    return ConstantSpeed{SampledFunction(Grid(std::move(image)), std::move(h)),
                         Warp(SampledFunction(grid, std::move(gamma)), strict)};
}

StandardFormPair standard_form(const Srsf& q) {
    if (q.norm() == 0.0) throw ZeroLength("standard form needs a nonzero SRSF");
    const Grid& grid = q.grid();
    std::vector<double> mass(grid.cells());
    CompensatedSum total;
    for (std::size_t i = 0; i < mass.size(); ++i) {
        mass[i] = q[i] * q[i] * grid.width(i);
        total.add(mass[i]);
    }
    const double L = total.value();
    std::vector<double> gamma = normalized_cumulative(mass, L);
    const bool strict = strictly_increasing(gamma);

    // Each cell with gamma' > 0 maps onto exactly one image cell.
    const std::vector<std::size_t> runs = distinct_runs(gamma);
    std::vector<double> image(runs.size());
    for (std::size_t k = 0; k < runs.size(); ++k) image[k] = gamma[runs[k]];
    image.back() = 1.0;
    const double root = std::sqrt(L);
    std::vector<double> w(image.size() - 1);
    for (std::size_t k = 0; k + 1 < runs.size(); ++k) {
        // The cell leaving node runs[k+1]-1 is the one that rises to image[k+1].
        const std::size_t cell = runs[k + 1] - 1;
        w[k] = q[cell] > 0.0 ? root : (q[cell] < 0.0 ? -root : 0.0);
    }
    return StandardFormPair{CellFunction(Grid(std::move(image)), std::move(w)),
                            Warp(SampledFunction(grid, std::move(gamma)), strict), L};
}

}  // namespace elastic
