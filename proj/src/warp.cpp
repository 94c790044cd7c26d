#include "elastic/warp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "elastic/errors.hpp"
#include "elastic/srsf.hpp"

namespace elastic {

Warp::Warp(SampledFunction gamma, bool monotone_strict)
    : gamma_(std::move(gamma)), strict_(monotone_strict) {
    const auto v = gamma_.values();
    if (v.front() != 0.0 || v.back() != 1.0) {
        throw InputError("warp must satisfy gamma(0) = 0 and gamma(1) = 1");
    }
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] < 0.0 || v[i] > 1.0) {
            throw InputError("warp value outside [0,1] at node " + std::to_string(i));
        }
        if (v[i] < v[i - 1] || (strict_ && v[i] == v[i - 1])) {
            throw InputError(std::string("warp not ") +
                             (strict_ ? "strictly increasing" : "nondecreasing") +
                             " at node " + std::to_string(i));
        }
    }
}

Warp identity_warp(const Grid& grid) {
    std::vector<double> v(grid.nodes().begin(), grid.nodes().end());
    return Warp(SampledFunction(grid, std::move(v)), true);
}

namespace {

bool is_identity(const Warp& g) {
    return std::ranges::equal(g.gamma().values(), g.grid().nodes());
}

}  // namespace

Warp compose(const Warp& g1, const Warp& g2) {
    const bool strict = g1.monotone_strict() && g2.monotone_strict();
    if (is_identity(g1)) return Warp(g2.gamma(), strict);
    const Grid& tg = g2.grid();
    const Grid& sg = g1.grid();
    const auto gam = g2.gamma().values();
    const auto s = sg.nodes();

    std::vector<double> nodes{0.0};
    std::vector<double> vals{0.0};
    for (std::size_t k = 0; k < tg.cells(); ++k) {
        const double t0 = tg[k];
        const double t1 = tg[k + 1];
        const double rise = gam[k + 1] - gam[k];
        if (rise > 0.0) {
            const double m = rise / (t1 - t0);
            for (std::size_t c = sg.locate(gam[k]) + 1; c < sg.cells() && s[c] < gam[k + 1]; ++c) {
                if (s[c] <= gam[k]) continue;
                const double tau = t0 + (s[c] - gam[k]) / m;
                if (t1 - tau <= kNodeMergeTol || tau - nodes.back() <= kNodeMergeTol) continue;
                nodes.push_back(tau);
                vals.push_back(g1.gamma()[c]);
            }
        }
        nodes.push_back(t1);
        vals.push_back(g1(gam[k + 1]));
    }
    vals.back() = 1.0;
    return Warp(SampledFunction(Grid(std::move(nodes)), std::move(vals)), strict);
}

Warp invert(const Warp& g) {
    if (!g.monotone_strict()) {
        throw NotInvertible("warp has flat runs (member of Gamma, not Gamma_0)");
    }
    std::vector<double> nodes(g.gamma().values().begin(), g.gamma().values().end());
    std::vector<double> vals(g.grid().nodes().begin(), g.grid().nodes().end());
    return Warp(SampledFunction(Grid(std::move(nodes)), std::move(vals)), true);
}

namespace {

Srsf action_refined(const Srsf& q, const Warp& g) {
    const Grid& tg = g.grid();
    const Grid& sg = q.grid();
    const auto gam = g.gamma().values();
    const auto s = sg.nodes();

    std::vector<double> nodes{0.0};
    std::vector<double> vals;
    nodes.reserve(tg.size() + sg.size());
    vals.reserve(tg.size() + sg.size());

    for (std::size_t k = 0; k < tg.cells(); ++k) {
        const double t0 = tg[k];
        const double t1 = tg[k + 1];
        const double rise = gam[k + 1] - gam[k];
        if (rise == 0.0) {
            // Flat run: sqrt(gamma') = 0 whatever q o gamma is.
            vals.push_back(0.0);
            nodes.push_back(t1);
            continue;
        }
        const double m = rise / (t1 - t0);
        const double root = std::sqrt(m);
        std::size_t c = sg.locate(gam[k]);
        while (c + 1 < sg.cells() && s[c + 1] < gam[k + 1]) {
            const double tau = t0 + (s[c + 1] - gam[k]) / m;
            if (t1 - tau <= kNodeMergeTol) break;
            if (tau - nodes.back() > kNodeMergeTol) {
                vals.push_back(q[c] * root);
                nodes.push_back(tau);
            }
            ++c;
        }
        vals.push_back(q[c] * root);
        nodes.push_back(t1);
    }
    return Srsf(CellFunction(Grid(std::move(nodes)), std::move(vals)));
}

Srsf action_on_warp_grid(const Srsf& q, const Warp& g) {
    const Grid& tg = g.grid();
    const auto gam = g.gamma().values();
    std::vector<double> vals(tg.cells());
    for (std::size_t k = 0; k < vals.size(); ++k) {
        const double rise = gam[k + 1] - gam[k];
        if (rise == 0.0) {
            vals[k] = 0.0;
            continue;
        }
        const double m = rise / tg.width(k);
        vals[k] = q.q().at(0.5 * (gam[k] + gam[k + 1])) * std::sqrt(m);
    }
    return Srsf(CellFunction(tg, std::move(vals)));
}

}  // namespace

Srsf action(const Srsf& q, const Warp& g, ActionGrid mode) {
    return mode == ActionGrid::refined ? action_refined(q, g) : action_on_warp_grid(q, g);
}

SampledFunction compose_function(const SampledFunction& f, const Warp& g) {
    std::vector<double> v(g.grid().size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(g.gamma()[i]);
    return SampledFunction(g.grid(), std::move(v));
}

ActionAlgebraReport action_algebra_check(const Srsf& q, const Warp& g1, const Warp& g2) {
    ActionAlgebraReport r;
    const Srsf q1 = action(q, g1);
    r.associativity = l2_distance(action(q1, g2).q(), action(q, compose(g1, g2)).q());
    r.inverse = l2_distance(action(q1, invert(g1)).q(), q.q());
    return r;
}

}  // namespace elastic
