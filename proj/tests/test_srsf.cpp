#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "elastic/errors.hpp"
#include "elastic/srsf.hpp"
#include "elastic/verify.hpp"

using namespace elastic;
using elastic::verify::within_ulps;

namespace {

SampledFunction line(double a, double b) { return SampledFunction(Grid::uniform(1), {a, b}); }

CellFunction cells(std::vector<double> nodes, std::vector<double> v) {
    return CellFunction(Grid(std::move(nodes)), std::move(v));
}

}  // namespace

TEST_CASE("srsf_of") {
    const Srsf up = srsf_of(line(0.0, 1.0));
    CHECK(up[0] == 1.0);
    CHECK(up.norm() == 1.0);
    const Srsf down = srsf_of(line(1.0, 0.0));
    CHECK(down[0] == -1.0);
    CHECK(down.norm() == 1.0);

    const Srsf q = srsf_of(cumulative_integral(cells({0.0, 0.5, 1.0}, {4.0, 0.0})));
    CHECK(q[0] == 2.0);
    CHECK(q[1] == 0.0);
    CHECK(q.norm() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("reconstruct") {
    const SampledFunction f = reconstruct(Srsf(cells({0.0, 1.0}, {1.0})), 0.0);
    CHECK(f[0] == 0.0);
    CHECK(f[1] == 1.0);
    const SampledFunction c = reconstruct(Srsf(cells({0.0, 0.5, 1.0}, {0.0, 0.0})), 5.0);
    for (double v : c.values()) CHECK(v == 5.0);
    const SampledFunction h = reconstruct(Srsf(cells({0.0, 0.5, 1.0}, {2.0, 0.0})), 0.0);
    CHECK(std::vector<double>(h.values().begin(), h.values().end()) ==
          std::vector<double>{0.0, 2.0, 2.0});
}

TEST_CASE("normalize") {
    const Srsf two(cells({0.0, 0.5, 1.0}, {2.0, 2.0}));
    const Srsf n = normalize(two);
    CHECK(n[0] == 1.0);
    CHECK(n[1] == 1.0);
    const Srsf again = normalize(n);
    CHECK(within_ulps(again[0], n[0], 1));

    const Srsf q(cells({0.0, 0.5, 1.0}, {2.0, 0.0}));
    const Srsf u = normalize(q);
    CHECK(u[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(within_ulps(u.norm(), 1.0, 4));

    CHECK_THROWS_AS(normalize(Srsf(cells({0.0, 1.0}, {0.0}))), ZeroLength);
}

TEST_CASE("constant_speed examples") {
    const ConstantSpeed id = constant_speed(line(0.0, 1.0));
    CHECK(id.h[0] == 0.0);
    CHECK(id.h[1] == 1.0);
    CHECK(id.gamma.gamma()[1] == 1.0);

    const SampledFunction f = cumulative_integral(cells({0.0, 0.5, 1.0}, {2.0, 0.0}));
    const ConstantSpeed cs = constant_speed(f);
    CHECK(std::vector<double>(cs.gamma.gamma().values().begin(), cs.gamma.gamma().values().end()) ==
          std::vector<double>{0.0, 1.0, 1.0});
    CHECK_FALSE(cs.gamma.monotone_strict());
    CHECK(cs.h.size() == 2);
    CHECK(cs.h[0] == 0.0);
    CHECK(cs.h[1] == 1.0);

    CHECK_THROWS_AS(constant_speed(line(2.0, 2.0)), ZeroLength);
}

TEST_CASE("constant_speed of t^2 converges to the identity") {
    for (std::size_t n : {64u, 256u, 1024u}) {
        const Grid g = Grid::uniform(n);
        std::vector<double> v(g.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = g[i] * g[i];
        const ConstantSpeed cs = constant_speed(SampledFunction(g, v));
        double err = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            err = std::max(err, std::abs(cs.gamma.gamma()[i] - g[i] * g[i]));
        }
        for (std::size_t i = 0; i < cs.h.size(); ++i) {
            err = std::max(err, std::abs(cs.h[i] - cs.h.grid()[i]));
        }
        CHECK(err <= 2.0 / static_cast<double>(n));
    }
}

TEST_CASE("standard_form examples") {
    const StandardFormPair one = standard_form(Srsf(cells({0.0, 1.0}, {1.0})));
    CHECK(one.w[0] == 1.0);
    CHECK(one.length == 1.0);
    CHECK(one.gamma.gamma()[1] == 1.0);

    const StandardFormPair neg = standard_form(Srsf(cells({0.0, 1.0}, {-1.0})));
    CHECK(neg.w[0] == -1.0);

    const double h = std::sqrt(2.0) * 0.5;
    const StandardFormPair sf = standard_form(normalize(Srsf(cells({0.0, 0.5, 1.0}, {h, -h}))));
    REQUIRE(sf.w.size() == 2);
    CHECK(sf.w[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sf.w[1] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(sf.w.grid()[1] == doctest::Approx(sf.gamma(0.5)).epsilon(1e-15));

    CHECK_THROWS_AS(standard_form(Srsf(cells({0.0, 1.0}, {0.0}))), ZeroLength);
}

// ---- properties ----

TEST_CASE("property: srsf round trips") {
    verify::Rng rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + rng() % 500;
        const Grid g = verify::random_grid(rng, n);
        const SampledFunction f = verify::random_function(rng, g);
        const SampledFunction back = reconstruct(srsf_of(f), f[0]);
        double scale = 0.0;
        for (double v : f.values()) scale = std::max(scale, std::abs(v));
        for (std::size_t i = 0; i < n; ++i) {
            REQUIRE(within_ulps(back[i], f[i], 8.0 * static_cast<double>(n), scale));
        }

        const Srsf q(verify::random_cells(rng, g));
        const Srsf again = srsf_of(reconstruct(q, 0.7));
        double mass = 0.7;
        for (std::size_t i = 0; i < q.size(); ++i) {
            mass += q[i] * q[i] * g.width(i);
            const double s = mass / g.width(i);
            REQUIRE(within_ulps(again[i] * std::abs(again[i]), q[i] * std::abs(q[i]), 8, s));
        }
    }
}

TEST_CASE("property: squared norm is the length, translation leaves q unchanged") {
    verify::Rng rng(22);
    for (int trial = 0; trial < 100; ++trial) {
        const Grid g = verify::random_grid(rng, 2 + rng() % 200);
        const SampledFunction f = verify::random_function(rng, g);
        const Srsf q = srsf_of(f);
        REQUIRE(within_ulps(q.norm() * q.norm(), integrate_cells(cell_abs(derivative(f))), 4));
        REQUIRE(within_ulps(q.norm(), l2_norm(q.q()), 4));

        const Srsf shifted = srsf_of(add_constant(f, 0.0));
        REQUIRE(std::ranges::equal(shifted.q().values(), q.q().values()));
    }
}

TEST_CASE("property: srsf is translation invariant bit for bit on exact shifts") {
    verify::Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const Grid g = verify::random_grid(rng, 2 + rng() % 200);
        // Dyadic values and a dyadic shift keep f + c exact.
        std::vector<double> v(g.size());
        for (double& x : v) x = std::ldexp(static_cast<double>(rng() % 4096) - 2048.0, -10);
        const SampledFunction f(g, v);
        const double c = std::ldexp(static_cast<double>(rng() % 64), -3);
        REQUIRE(std::ranges::equal(srsf_of(add_constant(f, c)).q().values(), srsf_of(f).q().values()));
    }
}

TEST_CASE("property: constant speed reparametrization") {
    verify::Rng rng(24);
    for (int trial = 0; trial < 100; ++trial) {
        const Grid g = verify::random_grid(rng, 2 + rng() % 64);
        const SampledFunction f = verify::random_function(rng, g);
        const ConstantSpeed cs = constant_speed(f);
        const double L = length(f);
        const CellFunction dh = derivative(cs.h);
        for (std::size_t k = 0; k < dh.size(); ++k) {
            REQUIRE(std::abs(std::abs(dh[k]) - L) <= verify::speed_tolerance(cs.h, k) * L);
        }
        double scale = 0.0;
        for (double v : f.values()) scale = std::max(scale, std::abs(v));
        for (std::size_t i = 0; i < g.size(); ++i) {
            REQUIRE(within_ulps(cs.h(cs.gamma.gamma()[i]), f[i], 8, scale));
        }
    }
}

TEST_CASE("property: standard form reproduces q off its zero set") {
    verify::Rng rng(25);
    for (int trial = 0; trial < 100; ++trial) {
        const Grid g = verify::random_grid(rng, 2 + rng() % 64);
        std::vector<double> v(g.cells());
        for (double& x : v) x = (rng() % 5 == 0) ? 0.0 : std::normal_distribution<double>(0, 1)(rng);
        v[0] = 1.0;
        const Srsf q(CellFunction(g, v));
        const StandardFormPair sf = standard_form(q);
        const double root = std::sqrt(sf.length);
        for (double w : sf.w.values()) {
            REQUIRE((w == root || w == -root || w == 0.0));
        }
        const Srsf back = action(Srsf(sf.w), sf.gamma);
        for (std::size_t i = 0; i < g.cells(); ++i) {
            if (q[i] == 0.0) continue;
            const double t = g.midpoint(i);
            const double rise = sf.gamma.gamma()[i + 1] - sf.gamma.gamma()[i];
            const double tol = 1e-10 + 64.0 * 2.220446049250313e-16 / rise;
            REQUIRE(std::abs(back.q().at(t) - q[i]) <= tol * std::abs(q[i]));
        }
    }
}
