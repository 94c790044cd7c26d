#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "elastic/verify.hpp"

namespace elastic::verify {

double ulps_apart(double a, double b, double scale) {
    const double m = std::max({std::abs(a), std::abs(b), std::abs(scale)});
    if (m == 0.0) return 0.0;
    const double ulp = std::nextafter(m, std::numeric_limits<double>::infinity()) - m;
    return std::abs(a - b) / ulp;
}

bool within_ulps(double a, double b, double n, double scale) {
    return ulps_apart(a, b, scale) <= n;
}

double speed_tolerance(const SampledFunction& h, std::size_t cell) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const Grid& g = h.grid();
    const double dv = std::abs(h[cell + 1] - h[cell]);
    const double kappa = (g[cell] + g[cell + 1]) / g.width(cell) +
                         (std::abs(h[cell]) + std::abs(h[cell + 1])) / dv;
    return 1e-12 + 8.0 * eps * kappa;
}

Grid random_grid(Rng& rng, std::size_t nodes) {
    std::uniform_real_distribution<double> w(0.2, 1.8);
    std::vector<double> cum(nodes);
    cum[0] = 0.0;
    for (std::size_t i = 1; i < nodes; ++i) cum[i] = cum[i - 1] + w(rng);
    const double total = cum.back();
    for (double& x : cum) x /= total;
    cum.back() = 1.0;
    return Grid(std::move(cum));
}

SampledFunction random_function(Rng& rng, const Grid& grid, double scale) {
    std::normal_distribution<double> n(0.0, scale);
    std::vector<double> v(grid.size());
    for (double& x : v) x = n(rng);
    return SampledFunction(grid, std::move(v));
}

SampledFunction random_increasing_function(Rng& rng, const Grid& grid) {
    std::uniform_real_distribution<double> slope(0.25, 4.0);
    std::vector<double> v(grid.size());
    v[0] = std::normal_distribution<double>(0.0, 1.0)(rng);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) v[i + 1] = v[i] + slope(rng) * grid.width(i);
    return SampledFunction(grid, std::move(v));
}

CellFunction random_cells(Rng& rng, const Grid& grid, double scale) {
    std::normal_distribution<double> n(0.0, scale);
    std::vector<double> v(grid.cells());
    for (double& x : v) x = n(rng);
    return CellFunction(grid, std::move(v));
}

Srsf random_srsf(Rng& rng, std::size_t cells) {
    return Srsf(random_cells(rng, random_grid(rng, cells + 1)));
}

Warp random_strict_warp(Rng& rng, std::size_t nodes) {
    const Grid grid = random_grid(rng, nodes);
    const Grid image = random_grid(rng, nodes);
    std::vector<double> v(image.nodes().begin(), image.nodes().end());
    return Warp(SampledFunction(grid, std::move(v)), true);
}

namespace {

std::vector<char> reachability(int M, const std::vector<Slope>& slopes) {
    const auto stride = static_cast<std::size_t>(M) + 1;
    std::vector<char> reach(stride * stride, 0);
    reach.back() = 1;
    for (int i = M; i >= 0; --i) {
        for (int j = M; j >= 0; --j) {
            if (i == M && j == M) continue;
            for (const Slope& s : slopes) {
                const int ni = i + s.a;
                const int nj = j + s.b;
                if (ni <= M && nj <= M && reach[static_cast<std::size_t>(ni) * stride + static_cast<std::size_t>(nj)]) {
                    reach[static_cast<std::size_t>(i) * stride + static_cast<std::size_t>(j)] = 1;
                    break;
                }
            }
        }
    }
    return reach;
}

}  // namespace

LatticePath random_lattice_path(Rng& rng, int grid_size, const std::vector<Slope>& slopes) {
    const auto stride = static_cast<std::size_t>(grid_size) + 1;
    const std::vector<char> reach = reachability(grid_size, slopes);
    LatticePath path{{0, 0}};
    while (path.back().i != grid_size || path.back().j != grid_size) {
        const LatticePoint p = path.back();
        std::vector<LatticePoint> options;
        for (const Slope& s : slopes) {
            const int ni = p.i + s.a;
            const int nj = p.j + s.b;
            if (ni <= grid_size && nj <= grid_size &&
                reach[static_cast<std::size_t>(ni) * stride + static_cast<std::size_t>(nj)]) {
                options.push_back({ni, nj});
            }
        }
        std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
        path.push_back(options[pick(rng)]);
    }
    return path;
}

double path_cost(const Srsf& q1, const Srsf& q2, const LatticePath& path, int grid_size) {
    const Srsf warped = action(q2, path_to_warp(path, grid_size));
    return integrate_cells(cell_square(cell_difference(q1.q(), warped.q())));
}

namespace {

// True when a should win a tie against b: walking back from (M,M), the first
// differing predecessor decides, closest to the diagonal first, then smaller i.
bool wins_tie(const LatticePath& a, const LatticePath& b) {
    auto ia = a.rbegin();
    auto ib = b.rbegin();
    while (ia != a.rend() && ib != b.rend()) {
        if (*ia != *ib) {
            const int da = std::abs(ia->i - ia->j);
            const int db = std::abs(ib->i - ib->j);
            if (da != db) return da < db;
            return ia->i < ib->i;
        }
        ++ia;
        ++ib;
    }
    return false;
}

}  // namespace

BruteForceResult brute_force_alignment(const Srsf& q1, const Srsf& q2, int grid_size,
                                       const std::vector<Slope>& slopes) {
    const auto stride = static_cast<std::size_t>(grid_size) + 1;
    const std::vector<char> reach = reachability(grid_size, slopes);
    std::vector<std::pair<double, LatticePath>> all;
    LatticePath current{{0, 0}};
    std::function<void()> walk = [&] {
        const LatticePoint p = current.back();
        if (p.i == grid_size && p.j == grid_size) {
            all.emplace_back(path_cost(q1, q2, current, grid_size), current);
            return;
        }
        for (const Slope& s : slopes) {
            const int ni = p.i + s.a;
            const int nj = p.j + s.b;
            if (ni > grid_size || nj > grid_size ||
                !reach[static_cast<std::size_t>(ni) * stride + static_cast<std::size_t>(nj)]) {
                continue;
            }
            current.push_back({ni, nj});
            walk();
            current.pop_back();
        }
    };
    walk();

    BruteForceResult r;
    r.paths = all.size();
    r.best_cost = std::numeric_limits<double>::infinity();
    for (const auto& [c, path] : all) r.best_cost = std::min(r.best_cost, c);
    const double tol = kTieTolerance * (q1.norm() * q1.norm() + q2.norm() * q2.norm());
    const LatticePath* chosen = nullptr;
    for (const auto& [c, path] : all) {
        if (c > r.best_cost + tol) continue;
        if (chosen == nullptr || wins_tie(path, *chosen)) chosen = &path;
    }
    r.best_path = *chosen;
    r.runner_up_cost = std::numeric_limits<double>::infinity();
    for (const auto& [c, path] : all) {
        if (&path != chosen) r.runner_up_cost = std::min(r.runner_up_cost, c);
    }
    return r;
}

}  // namespace elastic::verify
