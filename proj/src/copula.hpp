#pragma once

#include <functional>
#include <string>

#include "numerics.hpp"

namespace exos::copula {

enum class Family { GumbelExp, LogExp, Independence, Custom };

// Arguments below this floor make phi unrepresentable; callers must exclude
// the point (CapError).
inline constexpr double kUMin = 1e-300;

// Archimedean generator psi with inverse phi and derivative. Immutable after
// construction; named families use closed forms, Custom falls back to
// find_root / finite differences. Construction runs a validity spot check
// (psi(0)=1, decreasing, convex, phi round-trip) on the natural grid.
class Generator {
 public:
  // psi(x) = exp(-x^(1/theta)), theta >= 1. theta = 1 is independence.
  static Generator gumbel_exp(double theta);
  // psi(x) = exp((1 - e^x)/theta), 0 < theta <= 1 (convexity fails above 1).
  static Generator log_exp(double theta);
  // psi(x) = exp(-x).
  static Generator independence();
  // User-supplied psi; x_hi bounds the region where psi stays above ~1e-12.
  static Generator custom(std::function<double(double)> psi, double x_hi);

  double psi(double x) const;
  double psi_prime(double x) const;
  // ln psi(x) in closed form for named families; avoids cancellation noise in
  // log-convexity checks and stays evaluable where psi underflows.
  double log_psi(double x) const;
  // psi'(x)/psi(x), computed in closed form for named families so that deep
  // tails (psi underflowing to 0) stay evaluable.
  double log_derivative(double x) const;
  // Inverse of psi on (kUMin, 1]. phi(1) = 0 exactly.
  double phi(double u) const;

  Family family() const { return family_; }
  double theta() const { return theta_; }
  // Right end of the natural check grid (where psi has decayed to ~1e-12).
  double check_hi() const { return check_hi_; }
  std::string label() const;

 private:
  Generator() = default;
  void validate() const;

  Family family_ = Family::Custom;
  double theta_ = 0.0;
  double check_hi_ = 1.0;
  std::function<double(double)> custom_psi_;
};

// True when the two generators are the same function (same named family and
// parameter, or pointwise equal within 1e-9 on the joint check grid).
bool same_generator(const Generator& a, const Generator& b);

// Log-spaced grid over the region where psi is numerically alive.
numerics::Grid default_generator_grid(const Generator& g, int count = 2000);

numerics::ShapeVerdict check_log_convex(const Generator& g, const numerics::Grid& grid);
numerics::ShapeVerdict check_log_concave(const Generator& g, const numerics::Grid& grid);

// Super-additivity of f = phi_outer o psi_inner: f(x) + f(y) <= f(x+y) for
// all pairs on a 64x64 subsample of the grid.
numerics::ShapeVerdict check_super_additive(const Generator& outer, const Generator& inner,
                                            const numerics::Grid& grid);

enum class RatioKind {
  PsiOverDPsi,            // psi/psi'
  OneMinusPsiOverDPsi,    // (1-psi)/psi'
  ProductRuleTerm,        // [(1-psi)/psi'] * [(1-psi)/psi']'
  RatioOfDerivatives,     // [(1-psi)/psi']' / (psi/psi')
};
enum class RatioShape { Decreasing, Increasing, Convex };

numerics::ShapeVerdict check_ratio_shape(const Generator& g, RatioKind which, RatioShape prop,
                                         const numerics::Grid& grid);

// Advisory sign check of low-order derivatives (d <= 4); not a certification.
numerics::ShapeVerdict check_d_monotone(const Generator& g, int d, const numerics::Grid& grid);

}  // namespace exos::copula
