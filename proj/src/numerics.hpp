#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"

namespace exos::numerics {

enum class Spacing { Linear, Log };

// Strictly increasing evaluation support on (0, inf).
struct Grid {
  std::vector<double> points;
  Spacing spacing = Spacing::Linear;

  std::size_t size() const { return points.size(); }
  double lo() const { return points.front(); }
  double hi() const { return points.back(); }
};

Grid make_grid(double lo, double hi, int count, Spacing spacing);

enum class ShapeStatus { Pass, Fail, Inconclusive };

// Outcome of a pointwise shape check. `margin` is the smallest headroom seen,
// normalised to slack units: Pass requires margin >= -1, and a margin above
// +10 means the property held with room to spare (used by the audit).
// `witness2` is set only for two-argument properties (super-additivity).
struct ShapeVerdict {
  ShapeStatus status = ShapeStatus::Inconclusive;
  std::optional<double> witness;
  std::optional<double> witness2;
  long excluded = 0;
  double margin = std::numeric_limits<double>::infinity();

  bool pass() const { return status == ShapeStatus::Pass; }
  bool fail() const { return status == ShapeStatus::Fail; }
};

ShapeVerdict pass_verdict(double margin = std::numeric_limits<double>::infinity());
ShapeVerdict bool_verdict(bool ok);
std::string to_string(ShapeStatus s);

using Fn = std::function<double(double)>;

// Central differences with step max(1e-6, 1e-6*|x|).
double derivative(const Fn& f, double x);
double second_derivative(const Fn& f, double x);

enum class Direction { Increasing, Decreasing };
enum class Curvature { Convex, Concave };

// Relative slack applied to monotonicity/convexity comparisons.
inline constexpr double kShapeSlack = 1e-8;

ShapeVerdict check_monotone(const Fn& f, const Grid& g, Direction dir);
ShapeVerdict check_convex(const Fn& f, const Grid& g, Curvature sense);

// Shape scans over precomputed samples; exclusions must already be removed.
ShapeVerdict monotone_scan(const std::vector<double>& xs, const std::vector<double>& ys,
                           Direction dir, long excluded, std::size_t grid_size,
                           double rel_slack = kShapeSlack);
ShapeVerdict convexity_scan(const std::vector<double>& xs, const std::vector<double>& ys,
                            Curvature sense, long excluded, std::size_t grid_size,
                            double rel_slack = kShapeSlack);

// Bisection on a sign-changing bracket.
double find_root(const Fn& f, double lo, double hi);

// Adaptive Simpson quadrature, abs tol 1e-10 / rel tol 1e-8, <= 20 levels.
double integrate(const Fn& f, double lo, double hi);

// Evaluates f(x), returning nullopt when the point must be excluded
// (EvaluationError/CapError/BracketError/QuadratureError or non-finite value).
std::optional<double> try_eval(const Fn& f, double x);

}  // namespace exos::numerics
