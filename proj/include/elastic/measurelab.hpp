#pragma once

// Desk-scale measure theory: finite interval unions, simple and step
// function integrals, Riemann sums, the Cantor set and Cantor function in
// exact integer arithmetic, and an empirical absolute-continuity modulus.

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "elastic/fnspace.hpp"

namespace elastic::measurelab {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool operator==(const Interval&) const = default;
};

/// Finite union of intervals in canonical form: sorted, disjoint, touching
/// intervals merged. Endpoint openness is not tracked (measure-equivalent).
class IntervalUnion {
public:
    IntervalUnion() = default;
    /// Accepts any list of intervals with lo <= hi; degenerate ones are dropped.
    explicit IntervalUnion(std::vector<Interval> intervals);

    std::span<const Interval> intervals() const noexcept { return parts_; }
    bool empty() const noexcept { return parts_.empty(); }
    std::size_t size() const noexcept { return parts_.size(); }
    bool operator==(const IntervalUnion&) const = default;

private:
    std::vector<Interval> parts_;
};

double measure(const IntervalUnion& u);

IntervalUnion unite(const IntervalUnion& a, const IntervalUnion& b);
IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b);
IntervalUnion subtract(const IntervalUnion& a, const IntervalUnion& b);
IntervalUnion complement(const IntervalUnion& a, Interval within);

struct SetOps {
    IntervalUnion united;
    IntervalUnion intersection;
    IntervalUnion difference;  // a \ b
};

SetOps set_ops(const IntervalUnion& a, const IntervalUnion& b);

/// phi = sum c_i chi_{E_i}; the E_i may overlap (any representation).
struct SimpleFunction {
    struct Term {
        double coefficient = 0.0;
        IntervalUnion support;
    };
    std::vector<Term> terms;
};

/// Throws InputError if a support leaves [0,1].
void validate(const SimpleFunction& phi);

/// sum c_i m(E_i).
double lebesgue_integral_simple(const SimpleFunction& phi);

/// Canonical representation: disjoint supports, distinct nonzero values.
SimpleFunction canonicalize(const SimpleFunction& phi);

/// One term per cell of psi.
SimpleFunction to_simple_function(const CellFunction& psi);

/// sum c_i (xi_i - xi_{i-1}).
double riemann_step_integral(const CellFunction& psi);

// ---- Riemann sums ----

/// A tag point. The rationality flag lets indicator-of-rationals fixtures be
/// evaluated symbolically (every double is rational).
struct Tag {
    double x = 0.0;
    bool rational = true;
};

enum class TagRule {
    midpoint,           // rational tags
    left,               // rational tags
    irrational_offset,  // x_i + (x_{i+1} - x_i)/sqrt(2), flagged irrational
};

std::vector<double> uniform_partition(double a, double b, std::size_t cells);

double riemann_sum(const std::function<double(const Tag&)>& f, std::span<const double> partition,
                   TagRule rule);

struct RiemannReport {
    std::vector<double> mesh;         // max cell width per partition
    std::vector<double> sums;         // S(P_k, f)
    std::vector<double> differences;  // |S_{k+1} - S_k|
    std::vector<double> orders;       // log(d_k / d_{k+1}) / log(h_k / h_{k+1})
};

RiemannReport riemann_sum_converge(const std::function<double(const Tag&)>& f,
                                   std::span<const std::vector<double>> partitions, TagRule rule);

// ---- exact rationals and the Cantor construction ----

/// Nonnegative rational p/q in lowest terms, q > 0.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    static Rational make(std::uint64_t p, std::uint64_t q);
    /// "p/q" or a decimal literal such as "0.125" (at most 18 fractional digits).
    static Rational parse(std::string_view text);
    double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational&) const = default;
};

inline constexpr int kMaxCantorLevel = 35;
inline constexpr int kMaxMembershipDigits = 40;
inline constexpr int kMaxCantorFunctionDigits = 63;

std::uint64_t pow3(int m);

/// E_m: 2^m closed intervals of length 3^-m, stored as integer numerators
/// over 3^m and generated on demand from the binary digits of their index.
class CantorLevel {
public:
    explicit CantorLevel(int level);

    int level() const noexcept { return level_; }
    std::uint64_t count() const noexcept { return std::uint64_t{1} << level_; }
    std::uint64_t denominator() const noexcept { return pow3(level_); }
    /// Numerators (lo, hi) of the k-th interval, 0 <= k < count().
    std::pair<std::uint64_t, std::uint64_t> interval(std::uint64_t k) const;
    /// (2/3)^m as the exact rational 2^m / 3^m.
    Rational measure_exact() const;
    IntervalUnion to_interval_union() const;

private:
    int level_;
};

/// Throws LevelTooDeep for m > kMaxCantorLevel.
CantorLevel cantor_level(int m);

/// Leading ternary digits of x in [0,1] (terminating expansion for triadic
/// rationals; x = 1 is 0.222...).
std::vector<int> ternary_digits(Rational x, int digits);
std::vector<int> ternary_digits(double x, int digits);

/// Membership decided from the first `digits` ternary digits, preferring the
/// expansion without 1s at triadic endpoints (1/3 = 0.0222...).
bool in_cantor_set(Rational x, int digits);
bool in_cantor_set(double x, int digits);

/// The Cantor function from the first `digits` ternary digits.
double cantor_function(Rational x, int digits = kMaxCantorFunctionDigits);
double cantor_function(double x, int digits = kMaxCantorFunctionDigits);

// ---- absolute continuity ----

struct AcRow {
    double delta = 0.0;
    double worst_sum = 0.0;       // sup of sum |f(x_i') - f(x_i)| over packings of length < delta
    double lipschitz_bound = 0.0;  // max|slope| * delta
};

/// Empirical modulus of absolute continuity of the interpolant. Exact for
/// the interpolant; for the function the samples came from it is a lower
/// bound, so it can expose a failure of absolute continuity but never certify it.
std::vector<AcRow> ac_diagnostic(const SampledFunction& f, std::span<const double> deltas);

}  // namespace elastic::measurelab
