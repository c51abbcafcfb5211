#pragma once

#include <vector>

#include "common.hpp"

namespace exos::majorization {

using RealVector = std::vector<double>;

// Absolute slack absorbing floating-point accumulation in sum comparisons.
inline constexpr double kSumSlack = 1e-12;

// Entries sorted ascending; validates finiteness/non-negativity.
RealVector order_coordinates(const RealVector& v);

// x majorizes y (y <=^m x): prefix sums of sorted y dominate those of x,
// totals equal.
bool majorizes(const RealVector& x, const RealVector& y);

// x weakly submajorizes y (y <=_w x): every tail sum of sorted y is at most
// the corresponding tail sum of sorted x.
bool weakly_submajorizes(const RealVector& x, const RealVector& y);

// x weakly supermajorizes y (y <=^w x): every prefix sum of sorted y is at
// least the corresponding prefix sum of sorted x.
bool weakly_supermajorizes(const RealVector& x, const RealVector& y);

// (a,...,a, b,...,b) with multiplicities n1 and n2.
RealVector expand_outlier_vector(double a, double b, int n1, int n2);

// Cone of positive increasing vectors (x1 > 0 required).
bool in_increasing_cone(const RealVector& v);
// Cone of positive decreasing vectors (xn > 0 required).
bool in_decreasing_cone(const RealVector& v);

}  // namespace exos::majorization
