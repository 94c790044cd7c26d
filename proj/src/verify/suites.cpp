#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "elastic/errors.hpp"
#include "elastic/measurelab.hpp"
#include "elastic/metric.hpp"
#include "elastic/verify.hpp"

namespace elastic::verify {

namespace {

// Observed convergence orders are accepted from this value up.
constexpr double kMinOrder = 0.9;

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) h = (h ^ c) * 1099511628211ull;
    return h;
}

class Recorder {
public:
    Recorder(std::string suite, std::vector<CheckResult>& out) : suite_(std::move(suite)), out_(out) {}

    void record(std::string check, bool passed, std::string detail) {
        out_.push_back({suite_, std::move(check), passed, std::move(detail)});
    }

    // Worst value of a per-trial measure against a bound.
    void worst(std::string check, double worst, double bound, const char* unit = "") {
        std::ostringstream d;
        d << "worst " << worst << unit << ", bound " << bound << unit;
        record(std::move(check), worst <= bound, d.str());
    }

    void at_least(std::string check, double value, double bound, const char* what) {
        std::ostringstream d;
        d << what << " " << value << ", required >= " << bound;
        record(std::move(check), value >= bound, d.str());
    }

private:
    std::string suite_;
    std::vector<CheckResult>& out_;
};

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

Grid image_grid(const Warp& g) {
    return Grid(std::vector<double>(g.gamma().values().begin(), g.gamma().values().end()));
}

void fnspace_suite(Rng& rng, Recorder& r) {
    double inverse = 0.0;
    double round_trip = 0.0;
    double split = 0.0;
    double norm = 0.0;
    bool subadditive = true;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng() % 300;
        const Grid g = random_grid(rng, n);
        const CellFunction c = random_cells(rng, g);
        const SampledFunction F = cumulative_integral(c);
        const CellFunction back = derivative(F);
        for (std::size_t i = 0; i < c.size(); ++i) {
            const double scale = std::max(std::abs(F[i]), std::abs(F[i + 1])) / g.width(i);
            inverse = std::max(inverse, ulps_apart(back[i], c[i], scale));
        }

        const SampledFunction f = random_function(rng, g);
        const SampledFunction G = cumulative_integral(derivative(f));
        const double fs = max_abs(f.values());
        for (std::size_t i = 0; i < n; ++i) {
            round_trip = std::max(round_trip, ulps_apart(G[i], f[i] - f[0], fs) / static_cast<double>(n));
        }

        const std::size_t cell = rng() % g.cells();
        std::vector<double> nodes(g.nodes().begin(), g.nodes().end());
        nodes.insert(nodes.begin() + static_cast<std::ptrdiff_t>(cell) + 1, g[cell] + 0.37 * g.width(cell));
        const CellFunction refined = resample_cells(c, Grid(std::move(nodes)));
        split = std::max(split, ulps_apart(integrate_cells(refined), integrate_cells(c),
                                           integrate_cells(cell_abs(c))));

        const SampledFunction h = random_function(rng, g);
        std::vector<double> sum(n);
        for (std::size_t i = 0; i < n; ++i) sum[i] = f[i] + h[i];
        subadditive = subadditive && bounded_variation(SampledFunction(g, sum)) <=
                                         (bounded_variation(f) + bounded_variation(h)) * (1 + 1e-15);

        const double l = l2_norm(c);
        norm = std::max(norm, ulps_apart(l * l, integrate_cells(cell_square(c))));
    }
    r.worst("derivative inverts cumulative_integral", inverse, 4, " ulp");
    r.worst("cumulative_integral inverts derivative", round_trip, 4, " ulp per node");
    r.worst("integral additive over cell splits", split, 2, " ulp");
    r.record("bounded variation subadditive", subadditive, "");
    r.worst("squared l2 norm is the integral of the square", norm, 4, " ulp");
}

void srsf_suite(Rng& rng, Recorder& r) {
    double round_trip = 0.0;
    double inverse = 0.0;
    double length = 0.0;
    double cached = 0.0;
    bool translation = true;
    double speed = 0.0;
    double composed = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng() % 300;
        const Grid g = random_grid(rng, n);
        const SampledFunction f = random_function(rng, g);
        const Srsf q = srsf_of(f);
        const SampledFunction back = reconstruct(q, f[0]);
        const double fs = max_abs(f.values());
        for (std::size_t i = 0; i < n; ++i) {
            round_trip = std::max(round_trip, ulps_apart(back[i], f[i], fs) / static_cast<double>(n));
        }

        const Srsf p(random_cells(rng, g));
        const SampledFunction rec = reconstruct(p, 0.5);
        const Srsf again = srsf_of(rec);
        double mass = 0.5;
        for (std::size_t i = 0; i < p.size(); ++i) {
            mass += p[i] * p[i] * g.width(i);
            const double scale = mass / g.width(i);
            inverse = std::max(inverse, ulps_apart(again[i] * std::abs(again[i]), p[i] * std::abs(p[i]), scale));
        }

        length = std::max(length, ulps_apart(q.norm() * q.norm(), integrate_cells(cell_abs(derivative(f)))));
        cached = std::max(cached, ulps_apart(q.norm(), l2_norm(q.q())));

        std::vector<double> dyadic(n);
        for (double& x : dyadic) x = std::ldexp(static_cast<double>(rng() % 4096) - 2048.0, -10);
        const SampledFunction d(g, dyadic);
        translation = translation &&
                      std::ranges::equal(srsf_of(add_constant(d, 0.375)).q().values(), srsf_of(d).q().values());

        const SampledFunction small = random_function(rng, random_grid(rng, 2 + rng() % 64));
        const ConstantSpeed cs = constant_speed(small);
        const double L = elastic::length(small);
        const CellFunction dh = derivative(cs.h);
        for (std::size_t k = 0; k < dh.size(); ++k) {
            speed = std::max(speed, std::abs(std::abs(dh[k]) - L) / (L * speed_tolerance(cs.h, k)));
        }
        const double ss = max_abs(small.values());
        for (std::size_t i = 0; i < small.size(); ++i) {
            composed = std::max(composed, ulps_apart(cs.h(cs.gamma.gamma()[i]), small[i], ss));
        }
    }
    r.worst("reconstruct inverts srsf_of", round_trip, 8, " ulp per node");
    r.worst("srsf_of inverts reconstruct", inverse, 8, " ulp");
    r.worst("squared norm equals length", length, 4, " ulp");
    r.worst("cached norm", cached, 4, " ulp");
    r.record("translation invariance", translation, "bit for bit");
    r.worst("constant speed |h'| = L", speed, 1, " x tolerance");
    r.worst("constant speed h o gamma = f", composed, 8, " ulp");
}

void warp_suite(Rng& rng, Recorder& r) {
    bool pinned = true;
    double norm_exact = 0.0;
    double dist_exact = 0.0;
    double norm_general = 0.0;
    double assoc = 0.0;
    double inverse = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Warp a = random_strict_warp(rng, 2 + rng() % 60);
        const Warp b = random_strict_warp(rng, 2 + rng() % 60);
        for (const Warp& w : {compose(a, b), invert(a)}) {
            pinned = pinned && w.gamma()[0] == 0.0 && w.gamma()[w.grid().size() - 1] == 1.0 &&
                     w.monotone_strict();
        }

        const Grid image = image_grid(a);
        const Srsf p1(random_cells(rng, image));
        const Srsf p2(random_cells(rng, image));
        const Srsf v1 = action(p1, a);
        norm_exact = std::max(norm_exact, ulps_apart(v1.norm(), p1.norm()));
        dist_exact = std::max(dist_exact, ulps_apart(l2_distance(v1.q(), action(p2, a).q()),
                                                     l2_distance(p1.q(), p2.q()), p1.norm() + p2.norm()));

        const Srsf q = random_srsf(rng, 1 + rng() % 80);
        norm_general = std::max(norm_general, ulps_apart(action(q, b).norm(), q.norm()));
        const ActionAlgebraReport rep = action_algebra_check(q, a, b);
        assoc = std::max(assoc, rep.associativity / q.norm());
        inverse = std::max(inverse, rep.inverse / q.norm());
    }
    r.record("endpoints pinned, monotonicity kept", pinned, "compose and invert");
    r.worst("norm preserved (exact refinement)", norm_exact, 8, " ulp");
    r.worst("distance preserved (exact refinement)", dist_exact, 8, " ulp");
    r.worst("norm preserved (general inputs)", norm_general, 32, " ulp");
    r.worst("action associativity", assoc, 1e-10, " relative");
    r.worst("action inverse", inverse, 1e-10, " relative");

    // Warp-grid action on a dense smooth warp: first order.
    std::vector<double> errors;
    for (std::size_t n : {256u, 512u, 1024u}) {
        const Grid g = Grid::uniform(n);
        std::vector<double> gv(g.size());
        std::vector<double> qv(g.cells());
        for (std::size_t i = 0; i < g.size(); ++i) gv[i] = g[i] + 0.3 * std::sin(M_PI * g[i]) / M_PI;
        gv.back() = 1.0;
        for (std::size_t i = 0; i < qv.size(); ++i) qv[i] = std::cos(3.0 * g.midpoint(i)) + 1.5;
        const Srsf q(CellFunction(g, qv));
        const Warp w(SampledFunction(g, gv), true);
        errors.push_back(std::abs(action(q, w, ActionGrid::warp_grid).norm() - q.norm()));
    }
    r.at_least("norm error order on dense warps", std::log2(errors[1] / errors[2]), kMinOrder, "observed order");
}

void align_suite(Rng& rng, Recorder& r, int M) {
    DpConfig cfg;
    cfg.grid_size = M;
    double consistency = 0.0;
    double identity = 0.0;
    bool warps_valid = true;
    bool band_ok = true;
    bool slopes_ok = true;
    bool kernels = true;
    bool symmetric = true;
    for (int trial = 0; trial < 10; ++trial) {
        const Srsf q1 = random_srsf(rng, 1 + rng() % 60);
        const Srsf q2 = random_srsf(rng, 1 + rng() % 60);
        const double tie = kTieTolerance * (q1.norm() * q1.norm() + q2.norm() * q2.norm());
        const AlignmentResult full = elastic_distance(q1, q2, cfg);
        consistency = std::max(consistency, std::abs(full.distance - l2_distance(q1.q(), full.aligned_q.q())) /
                                                std::max({full.distance, q1.norm(), q2.norm()}));
        warps_valid = warps_valid && full.warp.gamma()[0] == 0.0 &&
                      full.warp.gamma()[full.warp.grid().size() - 1] == 1.0;
        identity = std::max(identity, elastic_distance(q1, q1, cfg).distance);

        double previous = std::numeric_limits<double>::infinity();
        for (int w = cfg.max_slope_component(); w <= M; w += std::max(1, M / 4)) {
            DpConfig banded = cfg;
            banded.band_width = w;
            const double c = elastic_distance(q1, q2, banded).cost;
            band_ok = band_ok && c >= full.cost - tie && c <= previous;
            previous = c;
        }

        double last = std::numeric_limits<double>::infinity();
        for (const auto& s : std::vector<std::vector<Slope>>{{{1, 1}}, {{1, 1}, {1, 2}, {2, 1}}, DpConfig::default_slopes()}) {
            DpConfig c = cfg;
            c.slope_set = s;
            const double d = elastic_distance(q1, q2, c).cost;
            slopes_ok = slopes_ok && d <= last + tie;
            last = d;
        }

        DpConfig serial = cfg;
        serial.kernel = DpKernel::serial;
        const AlignmentResult s = elastic_distance(q1, q2, serial);
        kernels = kernels && s.cost == full.cost && s.path == full.path;

        symmetric = symmetric &&
                    std::abs(elastic_distance(q2, q1, cfg).distance - full.distance) <= 1e-12 * (q1.norm() + q2.norm());
    }
    r.worst("distance matches aligned q", consistency, 1e-12, " relative");
    r.worst("distance(q, q) = 0", identity, 1e-12);
    r.record("returned warps valid", warps_valid, "");
    r.record("band never beats full DP, widening never hurts", band_ok, "");
    r.record("larger slope sets never hurt", slopes_ok, "");
    r.record("serial and OpenMP kernels identical", kernels, "");
    r.record("symmetric slope set gives symmetric distance", symmetric, "");

    int recovered = 0;
    double worst = 0.0;
    const int trials = 10;
    for (int trial = 0; trial < trials; ++trial) {
        const Srsf q1 = random_srsf(rng, 1 + rng() % 64);
        const LatticePath p = random_lattice_path(rng, M, cfg.slope_set);
        const AlignmentResult res = elastic_distance(q1, action(q1, invert(path_to_warp(p, M))), cfg);
        worst = std::max(worst, res.distance);
        recovered += res.path == p ? 1 : 0;
    }
    r.worst("known warp distance", worst, 1e-8);
    r.record("known warp path recovered", recovered == trials,
             std::to_string(recovered) + "/" + std::to_string(trials));

    const double scales[3][2] = {{2.0, 3.0}, {1e-3, 1e-3}, {5.0, 0.1}};
    int invariant = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const Srsf q1 = random_srsf(rng, 1 + rng() % 60);
        const Srsf q2 = random_srsf(rng, 1 + rng() % 60);
        for (const auto& bc : scales) invariant += scalar_invariance_check(q1, q2, bc[0], bc[1], cfg) ? 1 : 0;
    }
    r.record("optimal path invariant under positive scaling", invariant == 30, std::to_string(invariant) + "/30");
}

void oracle_suite(Rng& rng, Recorder& r, int max_grid) {
    const std::vector<Slope> slopes{{1, 1}, {1, 2}, {2, 1}};
    double cost = 0.0;
    int same = 0;
    int total = 0;
    for (int M = 2; M <= max_grid; ++M) {
        for (int trial = 0; trial < 10; ++trial) {
            const Srsf q1 = random_srsf(rng, 1 + rng() % 12);
            const Srsf q2 = random_srsf(rng, 1 + rng() % 12);
            DpConfig cfg;
            cfg.grid_size = M;
            cfg.slope_set = slopes;
            const AlignmentResult dp = elastic_distance(q1, q2, cfg);
            const BruteForceResult bf = brute_force_alignment(q1, q2, M, slopes);
            cost = std::max(cost, std::abs(dp.cost - bf.best_cost));
            same += dp.path == bf.best_path ? 1 : 0;
            ++total;
        }
    }
    r.worst("DP cost equals brute force", cost, 1e-12);
    r.record("DP path equals brute force", same == total, std::to_string(same) + "/" + std::to_string(total));
}

void metric_suite(Rng& rng, Recorder& r) {
    double push = 0.0;
    double iso = 0.0;
    bool symmetric = true;
    bool semidefinite = true;
    for (int trial = 0; trial < 100; ++trial) {
        const SampledFunction f = random_increasing_function(rng, random_grid(rng, 2 + rng() % 100));
        const TangentVector v1{random_function(rng, random_grid(rng, 2 + rng() % 100))};
        const TangentVector v2{random_function(rng, random_grid(rng, 2 + rng() % 100))};
        const CellFunction a = srsf_pushforward(v1, f);
        const CellFunction b = srsf_pushforward(v2, f);
        push = std::max(push, ulps_apart(l2_inner(a, b), fisher_rao_inner(v1, v2, f), l2_inner(cell_abs(a), cell_abs(b))));
        symmetric = symmetric && fisher_rao_inner(v1, v2, f) == fisher_rao_inner(v2, v1, f);
        semidefinite = semidefinite && fisher_rao_inner(v1, v1, f) >= 0.0;

        const Warp g = random_strict_warp(rng, 2 + rng() % 60);
        const Grid image = image_grid(g);
        const SampledFunction h = random_increasing_function(rng, image);
        const TangentVector u{random_function(rng, image)};
        const TangentVector v{random_function(rng, image)};
        const IsometryReport rep = isometry_check(u, v, h, g);
        iso = std::max(iso, ulps_apart(rep.warped, rep.original,
                                       std::sqrt(fisher_rao_inner(u, u, h) * fisher_rao_inner(v, v, h))));
    }
    r.worst("pushforward identity", push, 8, " ulp");
    r.record("symmetric", symmetric, "bit for bit");
    r.record("positive semidefinite", semidefinite, "");
    r.worst("isometry on lattice warps", iso, 8, " ulp");
}

void measurelab_suite(Rng& rng, Recorder& r) {
    using namespace measurelab;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto random_union = [&] {
        std::vector<Interval> parts;
        const int n = static_cast<int>(rng() % 6);
        for (int k = 0; k < n; ++k) {
            double a = u(rng);
            double b = u(rng);
            if (a > b) std::swap(a, b);
            parts.push_back({a, b});
        }
        return IntervalUnion(std::move(parts));
    };
    double additivity = 0.0;
    double representation = 0.0;
    double riemann = 0.0;
    std::normal_distribution<double> coef(0.0, 2.0);
    for (int trial = 0; trial < 500; ++trial) {
        const IntervalUnion a = random_union();
        const IntervalUnion b = random_union();
        const SetOps ops = set_ops(a, b);
        additivity = std::max(additivity, ulps_apart(measure(ops.united) + measure(ops.intersection),
                                                     measure(a) + measure(b), measure(a) + measure(b)));

        SimpleFunction phi;
        double scale = 0.0;
        for (int k = 0, n = 1 + static_cast<int>(rng() % 5); k < n; ++k) {
            phi.terms.push_back({coef(rng), random_union()});
            scale += std::abs(phi.terms.back().coefficient) * measure(phi.terms.back().support);
        }
        representation = std::max(representation, ulps_apart(lebesgue_integral_simple(canonicalize(phi)),
                                                              lebesgue_integral_simple(phi), scale));

        const CellFunction psi = random_cells(rng, random_grid(rng, 2 + rng() % 50));
        riemann = std::max(riemann, ulps_apart(riemann_step_integral(psi),
                                               lebesgue_integral_simple(to_simple_function(psi)),
                                               integrate_cells(cell_abs(psi))));
    }
    r.worst("measure additive", additivity, 4, " ulp");
    r.worst("simple integral independent of representation", representation, 4, " ulp");
    r.worst("Riemann equals Lebesgue on step functions", riemann, 4, " ulp");

    const auto dirichlet = [](const Tag& t) { return t.rational ? 1.0 : 0.0; };
    const auto p = uniform_partition(0.0, 1.0, 1024);
    const double rational = riemann_sum(dirichlet, p, TagRule::midpoint);
    const double irrational = riemann_sum(dirichlet, p, TagRule::irrational_offset);
    r.record("indicator of rationals: tag choice decides the sum", std::abs(rational - 1.0) < 1e-12 && irrational == 0.0,
             "rational tags " + std::to_string(rational) + ", irrational tags " + std::to_string(irrational));

    const auto smooth = [](const Tag& t) { return std::exp(t.x) * std::sin(3.0 * t.x); };
    std::vector<std::vector<double>> parts;
    for (std::size_t n = 8; n <= 512; n *= 2) parts.push_back(uniform_partition(0.0, 1.0, n));
    const RiemannReport rep = riemann_sum_converge(smooth, parts, TagRule::left);
    r.at_least("Riemann sums of a continuous function converge at first order",
               *std::min_element(rep.orders.begin(), rep.orders.end()), kMinOrder, "lowest observed order");
}

void cantor_suite(Recorder& r) {
    using namespace measurelab;
    const auto at = [](const char* x) { return cantor_function(Rational::parse(x)); };
    bool golden = at("0") == 0.0 && at("1") == 1.0;
    for (const char* x : {"1/3", "2/5", "1/2", "2/3"}) golden = golden && at(x) == 0.5;
    for (const char* x : {"1/9", "1/6", "2/9"}) golden = golden && at(x) == 0.25;
    for (const char* x : {"7/9", "5/6", "8/9"}) golden = golden && at(x) == 0.75;
    r.record("golden values", golden, "f(0)=0, f(1)=1, 1/2 on [1/3,2/3], 1/4 on [1/9,2/9], 3/4 on [7/9,8/9]");

    bool monotone = true;
    double previous = 0.0;
    for (std::uint64_t k = 0; k <= 10000; ++k) {
        const double y = cantor_function(Rational::make(k, 10000));
        monotone = monotone && y >= previous;
        previous = y;
    }
    r.record("monotone on 10^4 ordered samples", monotone, "");

    bool measures = true;
    for (int m = 0; m <= 20; ++m) {
        measures = measures && cantor_level(m).measure_exact() == Rational::make(std::uint64_t{1} << m, pow3(m));
    }
    r.record("level measures (2/3)^m exact", measures, "m <= 20");

    bool dyadic = true;
    for (int m = 1; m <= 8; ++m) {
        const CantorLevel level = cantor_level(m);
        for (std::uint64_t k = 0; k < level.count(); ++k) {
            dyadic = dyadic &&
                     cantor_function(Rational::make(level.interval(k).first, level.denominator())) ==
                         std::ldexp(static_cast<double>(k), -m);
        }
    }
    r.record("endpoint values dyadic", dyadic, "m <= 8");

    const bool membership = in_cantor_set(Rational::parse("1/4"), 40) && !in_cantor_set(Rational::parse("1/2"), 40) &&
                            in_cantor_set(Rational::parse("1/3"), 40);
    r.record("membership of 1/4, 1/2, 1/3", membership, "");
}

using SuiteFn = std::function<void(Rng&, Recorder&, const SuiteOptions&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> suites{
        {"fnspace", [](Rng& g, Recorder& r, const SuiteOptions&) { fnspace_suite(g, r); }},
        {"srsf", [](Rng& g, Recorder& r, const SuiteOptions&) { srsf_suite(g, r); }},
        {"warp", [](Rng& g, Recorder& r, const SuiteOptions&) { warp_suite(g, r); }},
        {"align", [](Rng& g, Recorder& r, const SuiteOptions& o) { align_suite(g, r, o.grid_size); }},
        {"oracle", [](Rng& g, Recorder& r, const SuiteOptions& o) { oracle_suite(g, r, std::min(o.grid_size, 8)); }},
        {"metric", [](Rng& g, Recorder& r, const SuiteOptions&) { metric_suite(g, r); }},
        {"measurelab", [](Rng& g, Recorder& r, const SuiteOptions&) { measurelab_suite(g, r); }},
        {"cantor", [](Rng&, Recorder& r, const SuiteOptions&) { cantor_suite(r); }},
    };
    return suites;
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : registry()) names.push_back(name);
    return names;
}

std::vector<CheckResult> run_suites(const SuiteOptions& opts) {
    if (opts.grid_size < 2) throw InputError("verify grid size must be at least 2");
    bool known = opts.only.empty();
    for (const auto& [name, fn] : registry()) known = known || name == opts.only;
    if (!known) throw InputError("unknown suite '" + opts.only + "'");

    std::vector<CheckResult> out;
    for (const auto& [name, fn] : registry()) {
        if (!opts.only.empty() && name != opts.only) continue;
        // The oracle suite enumerates every lattice path, so it only joins a
        // full run at small M.
        if (name == "oracle" && opts.only.empty() && opts.grid_size > 8) continue;
        // Each suite draws from its own stream so selecting one does not shift the others.
        Rng rng(opts.seed ^ fnv1a(name));
        Recorder rec(name, out);
        fn(rng, rec, opts);
    }
    return out;
}

}  // namespace elastic::verify
