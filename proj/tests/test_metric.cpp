#include <doctest.h>

#include <cmath>

#include "elastic/errors.hpp"
#include "elastic/metric.hpp"
#include "elastic/verify.hpp"

using namespace elastic;
using elastic::verify::within_ulps;

namespace {

SampledFunction identity_fn(const Grid& g) {
    return SampledFunction(g, std::vector<double>(g.nodes().begin(), g.nodes().end()));
}

SampledFunction sample(const Grid& g, double (*fn)(double)) {
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(g[i]);
    return SampledFunction(g, std::move(v));
}

}  // namespace

TEST_CASE("fisher_rao_inner") {
    const SampledFunction id = identity_fn(Grid::uniform(4));
    CHECK(fisher_rao_inner({id}, {id}, id) == 0.25);

    verify::Rng rng(61);
    const Grid g = verify::random_grid(rng, 30);
    const SampledFunction f = verify::random_increasing_function(rng, g);
    const SampledFunction v = verify::random_function(rng, verify::random_grid(rng, 17));
    const SampledFunction c(Grid::uniform(3), {2.0, 2.0, 2.0, 2.0});
    CHECK(fisher_rao_inner({c}, {v}, f) == 0.0);
    CHECK(fisher_rao_inner({f}, {v}, f) == fisher_rao_inner({v}, {f}, f));

    const SampledFunction bad(Grid::uniform(2), {0.0, 0.5, 0.5});
    CHECK_THROWS_AS(fisher_rao_inner({id}, {id}, bad), NotPositiveSlope);
    CHECK_THROWS_AS(srsf_pushforward({id}, bad), NotPositiveSlope);
}

TEST_CASE("srsf_pushforward") {
    const SampledFunction id = identity_fn(Grid::uniform(3));
    const CellFunction half = srsf_pushforward({id}, id);
    for (double x : half.values()) CHECK(x == 0.5);
    const SampledFunction c(Grid::uniform(3), {1.0, 1.0, 1.0, 1.0});
    const CellFunction zero = srsf_pushforward({c}, id);
    for (double x : zero.values()) CHECK(x == 0.0);
}

TEST_CASE("isometry_check") {
    verify::Rng rng(62);
    const Grid g = verify::random_grid(rng, 20);
    const SampledFunction f = verify::random_increasing_function(rng, g);
    const TangentVector u{verify::random_function(rng, g)};
    const TangentVector v{verify::random_function(rng, g)};
    const IsometryReport same = isometry_check(u, v, f, identity_warp(g));
    CHECK(same.difference == 0.0);

    const Warp plateau(SampledFunction(Grid::uniform(2), {0.0, 1.0, 1.0}), false);
    CHECK_THROWS_AS(isometry_check(u, v, f, plateau), NotInvertible);
}

// ---- properties ----

TEST_CASE("property: pushforward turns the Fisher-Rao product into the L2 product") {
    verify::Rng rng(63);
    for (int trial = 0; trial < 200; ++trial) {
        const SampledFunction f = verify::random_increasing_function(rng, verify::random_grid(rng, 2 + rng() % 100));
        const TangentVector v1{verify::random_function(rng, verify::random_grid(rng, 2 + rng() % 100))};
        const TangentVector v2{verify::random_function(rng, verify::random_grid(rng, 2 + rng() % 100))};
        const CellFunction a = srsf_pushforward(v1, f);
        const CellFunction b = srsf_pushforward(v2, f);
        const double scale = l2_inner(cell_abs(a), cell_abs(b));
        REQUIRE(within_ulps(l2_inner(a, b), fisher_rao_inner(v1, v2, f), 8, scale));
    }
}

TEST_CASE("property: Fisher-Rao product is bilinear, symmetric and positive semidefinite") {
    verify::Rng rng(64);
    for (int trial = 0; trial < 200; ++trial) {
        const Grid g = verify::random_grid(rng, 2 + rng() % 60);
        const SampledFunction f = verify::random_increasing_function(rng, g);
        const SampledFunction u = verify::random_function(rng, g);
        const SampledFunction v = verify::random_function(rng, g);
        const SampledFunction w = verify::random_function(rng, g);
        REQUIRE(fisher_rao_inner({u}, {v}, f) == fisher_rao_inner({v}, {u}, f));
        REQUIRE(fisher_rao_inner({v}, {v}, f) >= 0.0);

        // Dyadic coefficients keep the combination exact.
        std::vector<double> comb(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) comb[i] = 2.0 * u[i] + 0.5 * w[i];
        const double lhs = fisher_rao_inner({SampledFunction(g, comb)}, {v}, f);
        const double rhs = 2.0 * fisher_rao_inner({u}, {v}, f) + 0.5 * fisher_rao_inner({w}, {v}, f);
        const double scale = std::sqrt(fisher_rao_inner({SampledFunction(g, comb)}, {SampledFunction(g, comb)}, f) *
                                       fisher_rao_inner({v}, {v}, f)) +
                             2.0 * std::sqrt(fisher_rao_inner({u}, {u}, f) * fisher_rao_inner({v}, {v}, f)) +
                             0.5 * std::sqrt(fisher_rao_inner({w}, {w}, f) * fisher_rao_inner({v}, {v}, f));
        REQUIRE(within_ulps(lhs, rhs, 16, scale));
    }
}

TEST_CASE("property: isometry is exact for warps whose images carry the breakpoints") {
    verify::Rng rng(65);
    for (int trial = 0; trial < 200; ++trial) {
        const Warp g = verify::random_strict_warp(rng, 2 + rng() % 60);
        const Grid image(std::vector<double>(g.gamma().values().begin(), g.gamma().values().end()));
        const SampledFunction f = verify::random_increasing_function(rng, image);
        const TangentVector u{verify::random_function(rng, image)};
        const TangentVector v{verify::random_function(rng, image)};
        const IsometryReport r = isometry_check(u, v, f, g);
        const double scale = std::sqrt(fisher_rao_inner(u, u, f) * fisher_rao_inner(v, v, f));
        REQUIRE(within_ulps(r.warped, r.original, 8, scale));
    }
}

TEST_CASE("isometry on dense smooth warps converges at first order") {
    std::vector<double> errors;
    for (std::size_t n : {256u, 512u, 1024u}) {
        const Grid grid = Grid::uniform(n);
        const Warp g(sample(grid, [](double t) { return t + 0.3 * std::sin(M_PI * t) / M_PI; }), true);
        const SampledFunction f = sample(grid, [](double t) { return std::exp(t) + t * t; });
        const TangentVector u{sample(grid, [](double t) { return std::sin(4.0 * t); })};
        const TangentVector v{sample(grid, [](double t) { return std::cos(3.0 * t) + t; })};
        errors.push_back(std::abs(isometry_check(u, v, f, g).difference));
    }
    CHECK(errors[1] <= 0.55 * errors[0]);
    CHECK(errors[2] <= 0.55 * errors[1]);
}
