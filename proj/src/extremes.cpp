#include "extremes.hpp"

#include <algorithm>
#include <cmath>

namespace exos::extremes {

ExtremeDistribution::ExtremeDistribution(MultipleOutlierModel m)
    : model_(std::move(m)),
      m1_(model_.baseline1.scaled(model_.scale1)),
      m2_(model_.baseline2.scaled(model_.scale2)) {
  if (model_.count1 < 1 || model_.count2 < 1) {
    throw InvalidInput("ExtremeDistribution: counts must be >= 1");
  }
  if (model_.extreme == Extreme::Max) {
    lo_ = std::max(m1_.support_lo(), m2_.support_lo());
    hi_ = std::max(m1_.support_hi(), m2_.support_hi());
  } else {
    lo_ = std::min(m1_.support_lo(), m2_.support_lo());
    hi_ = std::min(m1_.support_hi(), m2_.support_hi());
  }
}

double ExtremeDistribution::composition(double u1, double u2) const {
  if (u1 <= copula::kUMin || u2 <= copula::kUMin) return 0.0;
  const auto& g = model_.generator;
  const double z = model_.count1 * g.phi(u1) + model_.count2 * g.phi(u2);
  return g.psi(z);
}

double ExtremeDistribution::cdf(double x) const {
  if (model_.extreme == Extreme::Max) {
    if (x <= lo_) return 0.0;
    return composition(m1_.cdf(x), m2_.cdf(x));
  }
  return 1.0 - sf(x);
}

double ExtremeDistribution::sf(double x) const {
  if (model_.extreme == Extreme::Min) {
    if (x <= lo_) return 1.0;
    if (x >= hi_) return 0.0;
    return composition(m1_.sf(x), m2_.sf(x));
  }
  return 1.0 - cdf(x);
}

double ExtremeDistribution::pdf(double x) const {
  const double h = std::max(1e-6, 1e-6 * std::abs(x));
  const double v = (cdf(x + h) - cdf(std::max(x - h, 0.0))) / (x + h - std::max(x - h, 0.0));
  return v > 0.0 ? v : 0.0;
}

double ExtremeDistribution::rev_hazard(double x) const {
  if (model_.extreme == Extreme::Min) {
    const double c = cdf(x);
    if (!(c > 0.0)) throw EvaluationError("rev_hazard: cdf vanished");
    return pdf(x) / c;
  }
  const auto& g = model_.generator;
  const double u1 = m1_.cdf(x);
  const double u2 = m2_.cdf(x);
  if (!(u1 > 0.0) || !(u1 < 1.0) || !(u2 > 0.0) || !(u2 < 1.0)) {
    throw EvaluationError("rev_hazard: marginal cdf outside (0,1)");
  }
  const double z = model_.count1 * g.phi(u1) + model_.count2 * g.phi(u2);
  const double t1 = model_.count1 * m1_.pdf(x) / g.psi_prime(g.phi(u1));
  const double t2 = model_.count2 * m2_.pdf(x) / g.psi_prime(g.phi(u2));
  const double v = g.log_derivative(z) * (t1 + t2);
  if (!std::isfinite(v)) throw EvaluationError("rev_hazard: formula not finite");
  return v;
}

double ExtremeDistribution::hazard(double x) const {
  if (model_.extreme == Extreme::Max) {
    const double s = sf(x);
    if (!(s > 0.0)) throw EvaluationError("hazard: survival vanished");
    return pdf(x) / s;
  }
  const auto& g = model_.generator;
  const double s1 = m1_.sf(x);
  const double s2 = m2_.sf(x);
  if (!(s1 > 0.0) || !(s1 < 1.0) || !(s2 > 0.0) || !(s2 < 1.0)) {
    throw EvaluationError("hazard: marginal survival outside (0,1)");
  }
  const double z = model_.count1 * g.phi(s1) + model_.count2 * g.phi(s2);
  const double t1 = model_.count1 * m1_.pdf(x) / g.psi_prime(g.phi(s1));
  const double t2 = model_.count2 * m2_.pdf(x) / g.psi_prime(g.phi(s2));
  const double v = g.log_derivative(z) * (t1 + t2);
  if (!std::isfinite(v)) throw EvaluationError("hazard: formula not finite");
  return v;
}

double ExtremeDistribution::quantile_impl(double u, double lo, double hi) const {
  const double flo = cdf(lo) - u;
  if (flo >= 0.0) return lo;
  return numerics::find_root([&](double x) { return cdf(x) - u; }, lo, hi);
}

double ExtremeDistribution::quantile(double u) const {
  if (!(u > 0.0) || !(u < 1.0)) throw InvalidInput("quantile: u must lie in (0,1)");
  double lo = lo_ > 0.0 ? lo_ : 0.0;
  double hi = hi_;
  if (!std::isfinite(hi)) {
    hi = std::max(1.0, 2.0 * std::max(lo, 1.0));
    int grow = 0;
    while (cdf(hi) < u) {
      hi *= 2.0;
      if (++grow > 1100) throw BracketError("quantile: cdf never reached the target");
    }
  }
  return quantile_impl(u, lo, hi);
}

double quantile_bracketed(const ExtremeDistribution& d, double u, double lo, double hi) {
  if (!(u > 0.0) || !(u < 1.0)) throw InvalidInput("quantile: u must lie in (0,1)");
  if (d.cdf(hi) < u) return d.quantile(u);  // bracket hint too tight
  return d.quantile_impl(u, lo, hi);
}

std::string ExtremeDistribution::label() const {
  const char* kind = model_.extreme == Extreme::Max ? "max" : "min";
  return std::string(kind) + "[" + model_.generator.label() + "; " + m1_.label() + " x" +
         std::to_string(model_.count1) + "; " + m2_.label() + " x" +
         std::to_string(model_.count2) + "]";
}

numerics::Grid default_pair_grid(const ExtremeDistribution& a, const ExtremeDistribution& b,
                                 int count) {
  double lo = std::min(a.quantile(1e-4), b.quantile(1e-4));
  double hi = std::max(a.quantile(1.0 - 1e-4), b.quantile(1.0 - 1e-4));
  lo = std::max({lo, a.support_lo() * (1.0 + 1e-9), b.support_lo() * (1.0 + 1e-9)});
  for (const ExtremeDistribution* d : {&a, &b}) {
    if (std::isfinite(d->support_hi())) hi = std::min(hi, d->support_hi() * (1.0 - 1e-9));
  }
  if (!(lo < hi)) throw InvalidInput("default_pair_grid: supports do not overlap");
  return numerics::make_grid(lo, hi, count, numerics::Spacing::Log);
}

}  // namespace exos::extremes
