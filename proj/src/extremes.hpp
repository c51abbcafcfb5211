#pragma once

#include <string>

#include "baseline.hpp"
#include "copula.hpp"

namespace exos::extremes {

enum class Extreme { Max, Min };

// Two homogeneous blocks of dependent scale-model lifetimes sharing one
// Archimedean generator: block i has count_i observations with distribution
// F_i(scale_i * x). Max couples the copula on CDFs (parallel system), Min the
// survival copula on SFs (series system).
struct MultipleOutlierModel {
  copula::Generator generator;
  baselines::Baseline baseline1;
  baselines::Baseline baseline2;
  double scale1 = 1.0;
  double scale2 = 1.0;
  int count1 = 1;
  int count2 = 1;
  Extreme extreme = Extreme::Max;
};

// Distribution of the extreme order statistic of a MultipleOutlierModel.
//
//   Max: F(x)  = psi[ n1 phi(F1(l1 x)) + n2 phi(F2(l2 x)) ]
//   Min: SF(x) = psi[ n1 phi(SF1(l1 x)) + n2 phi(SF2(l2 x)) ]
//
// Marginal values at or below the 1e-300 cap drive the composition to exactly
// 0 (phi diverges there and psi(inf) = 0).
class ExtremeDistribution {
 public:
  explicit ExtremeDistribution(MultipleOutlierModel m);

  double cdf(double x) const;
  double sf(double x) const;
  // Central difference of the CDF, clamped at 0.
  double pdf(double x) const;
  // Closed form for Min; pdf/sf for Max. EvaluationError at boundaries.
  double hazard(double x) const;
  // Closed form for Max; pdf/cdf for Min.
  double rev_hazard(double x) const;
  // Root of cdf(q) = u with |cdf(q) - u| <= 1e-9.
  double quantile(double u) const;

  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }
  const MultipleOutlierModel& model() const { return model_; }
  std::string label() const;

 private:
  double composition(double u1, double u2) const;
  double quantile_impl(double u, double lo, double hi) const;
  friend double quantile_bracketed(const ExtremeDistribution&, double, double, double);

  MultipleOutlierModel model_;
  baselines::Baseline m1_, m2_;  // scaled marginals
  double lo_ = 0.0;
  double hi_ = std::numeric_limits<double>::infinity();
};

// Quantile search constrained to a known bracket (monotone sweeps).
double quantile_bracketed(const ExtremeDistribution& d, double u, double lo, double hi);

// Log-spaced grid spanning [q(1e-4), q(1-1e-4)] of both distributions,
// intersected with both supports.
numerics::Grid default_pair_grid(const ExtremeDistribution& a, const ExtremeDistribution& b,
                                 int count = 2000);

}  // namespace exos::extremes
