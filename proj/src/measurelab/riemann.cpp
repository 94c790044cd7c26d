#include <algorithm>
#include <cmath>

#include "elastic/errors.hpp"
#include "elastic/measurelab.hpp"

namespace elastic::measurelab {

std::vector<double> uniform_partition(double a, double b, std::size_t cells) {
    if (cells == 0 || !(a < b)) throw InputError("uniform partition needs a < b and cells > 0");
    std::vector<double> p(cells + 1);
    const double n = static_cast<double>(cells);
    for (std::size_t i = 0; i <= cells; ++i) p[i] = a + (b - a) * (static_cast<double>(i) / n);
    p.back() = b;
    return p;
}

double riemann_sum(const std::function<double(const Tag&)>& f, std::span<const double> partition,
                   TagRule rule) {
    if (partition.size() < 2) throw InputError("partition needs at least two points");
    CompensatedSum s;
    for (std::size_t i = 0; i + 1 < partition.size(); ++i) {
        const double lo = partition[i];
        const double hi = partition[i + 1];
        Tag tag;
        switch (rule) {
            case TagRule::midpoint: tag = {0.5 * (lo + hi), true}; break;
            case TagRule::left: tag = {lo, true}; break;
            case TagRule::irrational_offset: tag = {lo + (hi - lo) / std::sqrt(2.0), false}; break;
        }
        s.add(f(tag) * (hi - lo));
    }
    return s.value();
}

RiemannReport riemann_sum_converge(const std::function<double(const Tag&)>& f,
                                   std::span<const std::vector<double>> partitions, TagRule rule) {
    RiemannReport r;
    for (const auto& p : partitions) {
        double h = 0.0;
        for (std::size_t i = 0; i + 1 < p.size(); ++i) h = std::max(h, p[i + 1] - p[i]);
        r.mesh.push_back(h);
        r.sums.push_back(riemann_sum(f, p, rule));
    }
    for (std::size_t k = 0; k + 1 < r.sums.size(); ++k) {
        r.differences.push_back(std::abs(r.sums[k + 1] - r.sums[k]));
    }
    for (std::size_t k = 0; k + 1 < r.differences.size(); ++k) {
        const double d0 = r.differences[k];
        const double d1 = r.differences[k + 1];
        const double ratio = r.mesh[k] / r.mesh[k + 1];
        r.orders.push_back(d0 > 0.0 && d1 > 0.0 ? std::log(d0 / d1) / std::log(ratio) : INFINITY);
    }
    return r;
}

}  // namespace elastic::measurelab
