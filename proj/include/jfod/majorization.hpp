#pragma once

#include <span>
#include <vector>

#include "jfod/linalg.hpp"

namespace jfod {

enum class Order { NonIncreasing, NonDecreasing, Unsorted };

// A real vector together with the ordering it is known to satisfy.
class RealProfile {
public:
    RealProfile() = default;
    // Throws InvalidInput when entries do not honour the claimed order.
    explicit RealProfile(RealVector entries, Order order = Order::Unsorted);

    const RealVector& entries() const { return entries_; }
    Order order() const { return order_; }
    std::size_t size() const { return entries_.size(); }

    RealVector descending() const;

private:
    RealVector entries_;
    Order order_ = Order::Unsorted;
};

// 1e-9 * (1 + max |entry|) over both vectors.
double majorization_tolerance(std::span<const double> x, std::span<const double> y);

// x ≺_w y: sorted partial sums of x never exceed those of y, compared over
// the first min(|x|, |y|) entries.
bool submajorizes(const RealProfile& x, const RealProfile& y);
bool submajorizes(std::span<const double> x, std::span<const double> y);

// x ≺ y: x ≺_w y and equal totals.
bool majorizes(const RealProfile& x, const RealProfile& y);
bool majorizes(std::span<const double> x, std::span<const double> y);

// Solves  weight_sum = sum_k (levels_k - x)^+  for x.
//
// The right-hand side is continuous, piecewise linear and non-increasing in
// x with breakpoints at the levels, so the root is located exactly by a scan
// over the sorted levels. For weight_sum > 0 the root lies strictly below
// max(levels), where the right-hand side is strictly decreasing, hence it is
// unique. Throws InvalidWeights for weight_sum <= 0 and InvalidInput for an
// empty level set.
double waterfill_solve(double weight_sum, std::span<const double> levels);

// Row-structured form: each row contributes its own list of levels.
double waterfill_solve(double weight_sum, std::span<const RealVector> rows);

// sum_k (levels_k - x)^+
double waterfill_mass(std::span<const double> levels, double x);

}  // namespace jfod
