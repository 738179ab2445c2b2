#include "jfod/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "jfod/errors.hpp"

namespace jfod {

RealProfile::RealProfile(RealVector entries, Order order) : entries_(std::move(entries)), order_(order) {
    if (order_ == Order::NonIncreasing && !std::is_sorted(entries_.begin(), entries_.end(), std::greater<>{}))
        throw InvalidInput("profile tagged non-increasing is not sorted");
    if (order_ == Order::NonDecreasing && !std::is_sorted(entries_.begin(), entries_.end()))
        throw InvalidInput("profile tagged non-decreasing is not sorted");
}

RealVector RealProfile::descending() const {
    RealVector out = entries_;
    if (order_ == Order::NonDecreasing)
        std::reverse(out.begin(), out.end());
    else if (order_ == Order::Unsorted)
        std::sort(out.begin(), out.end(), std::greater<>{});
    return out;
}

double majorization_tolerance(std::span<const double> x, std::span<const double> y) {
    double scale = 0.0;
    for (double v : x) scale = std::max(scale, std::abs(v));
    for (double v : y) scale = std::max(scale, std::abs(v));
    return 1e-9 * (1.0 + scale);
}

namespace {

bool partial_sums_dominated(const RealVector& xs, const RealVector& ys, double tol) {
    const std::size_t len = std::min(xs.size(), ys.size());
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        sx += xs[i];
        sy += ys[i];
        if (sx > sy + tol) return false;
    }
    return true;
}

RealVector sorted_desc(std::span<const double> v) {
    RealVector out(v.begin(), v.end());
    std::sort(out.begin(), out.end(), std::greater<>{});
    return out;
}

}  // namespace

bool submajorizes(const RealProfile& x, const RealProfile& y) {
    return partial_sums_dominated(x.descending(), y.descending(),
                                  majorization_tolerance(x.entries(), y.entries()));
}

bool submajorizes(std::span<const double> x, std::span<const double> y) {
    return partial_sums_dominated(sorted_desc(x), sorted_desc(y), majorization_tolerance(x, y));
}

bool majorizes(const RealProfile& x, const RealProfile& y) {
    if (!submajorizes(x, y)) return false;
    const auto& xe = x.entries();
    const auto& ye = y.entries();
    const double tx = std::accumulate(xe.begin(), xe.end(), 0.0);
    const double ty = std::accumulate(ye.begin(), ye.end(), 0.0);
    return std::abs(tx - ty) <= majorization_tolerance(xe, ye);
}

bool majorizes(std::span<const double> x, std::span<const double> y) {
    return majorizes(RealProfile(RealVector(x.begin(), x.end())), RealProfile(RealVector(y.begin(), y.end())));
}

double waterfill_mass(std::span<const double> levels, double x) {
    double acc = 0.0;
    for (double l : levels) acc += std::max(l - x, 0.0);
    return acc;
}

double waterfill_solve(double weight_sum, std::span<const double> levels) {
    if (!(weight_sum > 0.0)) throw InvalidWeights("waterfill: weight sum must be positive");
    if (levels.empty()) throw InvalidInput("waterfill: no levels supplied");

    const RealVector u = sorted_desc(levels);
    // On [u[k], u[k-1]] exactly the top k levels are active and the
    // right-hand side equals prefix(k) - k x.
    // The segment is the first k whose lower breakpoint already carries
    // enough mass; the last segment extends to -infinity.
    double prefix = 0.0;
    for (std::size_t k = 1; k <= u.size(); ++k) {
        prefix += u[k - 1];
        const double kd = static_cast<double>(k);
        if (k < u.size() && prefix - kd * u[k] < weight_sum) continue;
        const double x = (prefix - weight_sum) / kd;
        return k < u.size() ? std::clamp(x, u[k], u[k - 1]) : std::min(x, u[k - 1]);
    }
    throw InternalContradiction("waterfill: breakpoint scan found no bracketing segment");
}

double waterfill_solve(double weight_sum, std::span<const RealVector> rows) {
    RealVector flat;
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    return waterfill_solve(weight_sum, flat);
}

}  // namespace jfod
