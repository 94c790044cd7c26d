#pragma once

// Verification support: random fixtures, the brute-force path enumerator
// used as an independent oracle for the DP, and the invariant suites run by
// `elastic verify`.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "elastic/align.hpp"
#include "elastic/fnspace.hpp"
#include "elastic/srsf.hpp"
#include "elastic/warp.hpp"

namespace elastic::verify {

using Rng = std::mt19937_64;

// ---- floating-point comparison ----

/// Distance in units of the last place of max(|a|, |b|, scale).
double ulps_apart(double a, double b, double scale = 0.0);
bool within_ulps(double a, double b, double n, double scale = 0.0);

/// Relative tolerance for |h'| = L on cell k of a constant-speed h: 1e-12
/// plus the cancellation in both nodal differences.
double speed_tolerance(const SampledFunction& h, std::size_t cell);

// ---- fixtures ----

/// Nonuniform grid with `nodes` nodes; cell widths vary by up to a factor ~9.
Grid random_grid(Rng& rng, std::size_t nodes);
SampledFunction random_function(Rng& rng, const Grid& grid, double scale = 1.0);
/// Strictly increasing values; slopes bounded away from zero.
SampledFunction random_increasing_function(Rng& rng, const Grid& grid);
CellFunction random_cells(Rng& rng, const Grid& grid, double scale = 1.0);
Srsf random_srsf(Rng& rng, std::size_t cells);
Warp random_strict_warp(Rng& rng, std::size_t nodes);
/// Uniform random admissible lattice path from (0,0) to (M,M).
LatticePath random_lattice_path(Rng& rng, int grid_size, const std::vector<Slope>& slopes);

// ---- brute-force oracle ----

/// Paths whose costs differ by at most this fraction of ||q1||^2 + ||q2||^2
/// are ties; the DP uses the same rule.
inline constexpr double kTieTolerance = 1e-13;

struct BruteForceResult {
    double best_cost = 0.0;
    LatticePath best_path;
    double runner_up_cost = 0.0;  // best cost among the other paths (inf if none)
    std::size_t paths = 0;
};

/// Enumerates every admissible lattice path and scores it through the warp
/// action and an L2 distance; shares no code with the DP's segment costs.
/// Ties are resolved by the DP's tie-break rule applied to whole paths.
BruteForceResult brute_force_alignment(const Srsf& q1, const Srsf& q2, int grid_size,
                                       const std::vector<Slope>& slopes);

/// ||q1 - (q2, warp(path))||^2 via the warp module.
double path_cost(const Srsf& q1, const Srsf& q2, const LatticePath& path, int grid_size);

// ---- invariant suites ----

struct CheckResult {
    std::string suite;
    std::string check;
    bool passed = false;
    std::string detail;
};

struct SuiteOptions {
    std::uint64_t seed = 20240601;
    int grid_size = 32;  // DP lattice for the align suite; <= 8 adds the brute-force oracle suite
    std::string only;    // run a single suite when nonempty
};

std::vector<std::string> suite_names();
std::vector<CheckResult> run_suites(const SuiteOptions& opts);

}  // namespace elastic::verify
