#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "elastic/errors.hpp"
#include "elastic/measurelab.hpp"

namespace elastic::measurelab {

IntervalUnion::IntervalUnion(std::vector<Interval> intervals) {
    for (const Interval& iv : intervals) {
        if (!(iv.lo <= iv.hi)) {
            throw InputError("interval with lo > hi: (" + std::to_string(iv.lo) + ", " +
                             std::to_string(iv.hi) + ")");
        }
    }
    std::erase_if(intervals, [](const Interval& iv) { return iv.lo == iv.hi; });
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    for (const Interval& iv : intervals) {
        if (!parts_.empty() && iv.lo <= parts_.back().hi) {
            parts_.back().hi = std::max(parts_.back().hi, iv.hi);
        } else {
            parts_.push_back(iv);
        }
    }
}

double measure(const IntervalUnion& u) {
    CompensatedSum s;
    for (const Interval& iv : u.intervals()) s.add(iv.hi - iv.lo);
    return s.value();
}

IntervalUnion unite(const IntervalUnion& a, const IntervalUnion& b) {
    std::vector<Interval> all(a.intervals().begin(), a.intervals().end());
    all.insert(all.end(), b.intervals().begin(), b.intervals().end());
    return IntervalUnion(std::move(all));
}

IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b) {
    std::vector<Interval> out;
    const auto x = a.intervals();
    const auto y = b.intervals();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < x.size() && j < y.size()) {
        const double lo = std::max(x[i].lo, y[j].lo);
        const double hi = std::min(x[i].hi, y[j].hi);
        if (lo < hi) out.push_back({lo, hi});
        if (x[i].hi < y[j].hi) {
            ++i;
        } else {
            ++j;
        }
    }
    return IntervalUnion(std::move(out));
}

IntervalUnion complement(const IntervalUnion& a, Interval within) {
    std::vector<Interval> out;
    double cursor = within.lo;
    for (const Interval& iv : a.intervals()) {
        if (iv.hi <= within.lo || iv.lo >= within.hi) continue;
        if (iv.lo > cursor) out.push_back({cursor, iv.lo});
        cursor = std::max(cursor, iv.hi);
    }
    if (cursor < within.hi) out.push_back({cursor, within.hi});
    return IntervalUnion(std::move(out));
}

IntervalUnion subtract(const IntervalUnion& a, const IntervalUnion& b) {
    if (a.empty()) return a;
    const Interval hull{a.intervals().front().lo, a.intervals().back().hi};
    return intersect(a, complement(b, hull));
}

SetOps set_ops(const IntervalUnion& a, const IntervalUnion& b) {
    return SetOps{unite(a, b), intersect(a, b), subtract(a, b)};
}

void validate(const SimpleFunction& phi) {
    for (const auto& term : phi.terms) {
        if (!std::isfinite(term.coefficient)) throw InputError("non-finite simple-function coefficient");
        for (const Interval& iv : term.support.intervals()) {
            if (iv.lo < 0.0 || iv.hi > 1.0) throw InputError("simple-function support leaves [0,1]");
        }
    }
}

double lebesgue_integral_simple(const SimpleFunction& phi) {
    CompensatedSum s;
    for (const auto& term : phi.terms) s.add(term.coefficient * measure(term.support));
    return s.value();
}

SimpleFunction canonicalize(const SimpleFunction& phi) {
    std::vector<double> cuts;
    for (const auto& term : phi.terms) {
        for (const Interval& iv : term.support.intervals()) {
            cuts.push_back(iv.lo);
            cuts.push_back(iv.hi);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::map<double, std::vector<Interval>> by_value;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
        double value = 0.0;
        for (const auto& term : phi.terms) {
            for (const Interval& iv : term.support.intervals()) {
                if (iv.lo <= mid && mid < iv.hi) {
                    value += term.coefficient;
                    break;
                }
            }
        }
        if (value != 0.0) by_value[value].push_back({cuts[k], cuts[k + 1]});
    }
    SimpleFunction out;
    for (auto& [value, parts] : by_value) {
        out.terms.push_back({value, IntervalUnion(std::move(parts))});
    }
    return out;
}

SimpleFunction to_simple_function(const CellFunction& psi) {
    SimpleFunction phi;
    const Grid& g = psi.grid();
    for (std::size_t i = 0; i < psi.size(); ++i) {
        phi.terms.push_back({psi[i], IntervalUnion({{g[i], g[i + 1]}})});
    }
    return phi;
}

double riemann_step_integral(const CellFunction& psi) {
    CompensatedSum s;
    const Grid& g = psi.grid();
    for (std::size_t i = 0; i < psi.size(); ++i) s.add(psi[i] * (g[i + 1] - g[i]));
    return s.value();
}

}  // namespace elastic::measurelab
