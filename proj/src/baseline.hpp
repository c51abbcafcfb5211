#pragma once

#include <functional>
#include <string>
#include <vector>

#include "numerics.hpp"

namespace exos::baselines {

enum class Family { Exponential, Kummer, LomaxHalf, Power, Pareto, Custom };

// Scale-family lifetime distribution. A Baseline carries its family at unit
// scale plus a scale factor s, so that cdf(x) = F(s*x); scaled() just
// multiplies the factor. Supports are open at ends where F is 0 or 1; hazard
// and reversed hazard raise EvaluationError outside the open support.
class Baseline {
 public:
  static Baseline exponential();
  // F(x) = 1 - exp(1 - (1+x^2)^(1/5)) on (0, inf).
  static Baseline kummer();
  // F(x) = 1 - (1+2x)^(-1/2) on (0, inf).
  static Baseline lomax_half();
  // F(x) = (x/a)^l on (0, a].
  static Baseline power(double a, double l);
  // F(x) = 1 - (x/b)^(-a) on [b, inf).
  static Baseline pareto(double a, double b);
  // User-supplied CDF on (lo, hi); pdf and quantile fall back to numerics.
  static Baseline custom(std::function<double(double)> cdf, double lo, double hi);

  double cdf(double x) const;   // clipped to 0 / 1 outside the support
  double sf(double x) const;
  double pdf(double x) const;   // 0 outside the support
  double hazard(double x) const;
  double rev_hazard(double x) const;
  double quantile(double u) const;  // u in (0,1), clamped to the support

  double support_lo() const { return lo_ / scale_; }
  double support_hi() const { return hi_ / scale_; }
  double scale() const { return scale_; }

  Baseline scaled(double lambda) const;

  Family family() const { return family_; }
  const std::vector<double>& params() const { return params_; }
  std::string label() const;

 private:
  Baseline() = default;
  void validate() const;
  double base_cdf(double t) const;   // unit-scale family functions
  double base_sf(double t) const;    // survival in closed form (tail-accurate)
  double base_pdf(double t) const;
  double base_quantile(double u) const;

  Family family_ = Family::Custom;
  std::vector<double> params_;
  double scale_ = 1.0;
  double lo_ = 0.0;                              // unit-scale support
  double hi_ = std::numeric_limits<double>::infinity();
  std::function<double(double)> custom_cdf_;
};

// Log-spaced grid spanning [q(1e-4), q(1-1e-4)] of both baselines,
// intersected with both supports.
numerics::Grid default_baseline_grid(const Baseline& b1, const Baseline& b2, int count = 2000);

// Hypothesis functionals of the hazard r and reversed hazard rt.
enum class ShapeKind {
  RDecreasing,
  RIncreasing,
  RtDecreasing,
  XrDecreasing,
  XrConvex,
  XrtIncreasing,
  XrtConvex,
  ElasticityRtDecreasing,  // x rt'(x)/rt(x) decreasing
  ElasticityRDecreasing,   // x r'(x)/r(x) decreasing
  XrDecreasingStar,        // x r(x) decreasing (star-order hypothesis)
};

numerics::ShapeVerdict check_baseline_shape(const Baseline& b, ShapeKind kind,
                                            const numerics::Grid& grid);

enum class CompareMode { HazardLeq, RevHazardLeq, CdfLeq };

// Pointwise inequality between two baselines on the grid: r1 <= r2,
// rt1 <= rt2, or F1 <= F2. Hazards compare with relative slack 1e-6,
// CDFs with absolute slack 1e-8.
numerics::ShapeVerdict compare_hazards(const Baseline& b1, const Baseline& b2, CompareMode mode,
                                       const numerics::Grid& grid);

// True when the two distributions coincide (family/params/scale or pointwise
// CDF agreement within 1e-9 on the joint grid).
bool same_baseline(const Baseline& a, const Baseline& b);

}  // namespace exos::baselines
