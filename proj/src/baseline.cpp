#include "baseline.hpp"

#include <algorithm>
#include <cmath>

namespace exos::baselines {

Baseline Baseline::exponential() {
  Baseline b;
  b.family_ = Family::Exponential;
  b.validate();
  return b;
}

Baseline Baseline::kummer() {
  Baseline b;
  b.family_ = Family::Kummer;
  b.validate();
  return b;
}

Baseline Baseline::lomax_half() {
  Baseline b;
  b.family_ = Family::LomaxHalf;
  b.validate();
  return b;
}

Baseline Baseline::power(double a, double l) {
  if (!(a > 0.0) || !(l > 0.0) || !std::isfinite(a) || !std::isfinite(l)) {
    throw InvalidInput("power baseline: requires a > 0 and l > 0");
  }
  Baseline b;
  b.family_ = Family::Power;
  b.params_ = {a, l};
  b.hi_ = a;
  b.validate();
  return b;
}

Baseline Baseline::pareto(double a, double b0) {
  if (!(a > 0.0) || !(b0 > 0.0) || !std::isfinite(a) || !std::isfinite(b0)) {
    throw InvalidInput("pareto baseline: requires a > 0 and b > 0");
  }
  Baseline b;
  b.family_ = Family::Pareto;
  b.params_ = {a, b0};
  b.lo_ = b0;
  b.validate();
  return b;
}

Baseline Baseline::custom(std::function<double(double)> cdf, double lo, double hi) {
  if (!cdf) throw InvalidInput("custom baseline: cdf required");
  if (!(lo >= 0.0) || !(hi > lo)) throw InvalidInput("custom baseline: bad support");
  Baseline b;
  b.family_ = Family::Custom;
  b.custom_cdf_ = std::move(cdf);
  b.lo_ = lo;
  b.hi_ = hi;
  b.validate();
  return b;
}

double Baseline::base_cdf(double t) const {
  switch (family_) {
    case Family::Exponential:
      return -std::expm1(-t);
    case Family::Kummer:
      return -std::expm1(1.0 - std::pow(1.0 + t * t, 0.2));
    case Family::LomaxHalf:
      return 1.0 - 1.0 / std::sqrt(1.0 + 2.0 * t);
    case Family::Power:
      return std::pow(t / params_[0], params_[1]);
    case Family::Pareto:
      return 1.0 - std::pow(t / params_[1], -params_[0]);
    case Family::Custom:
      return custom_cdf_(t);
  }
  return 0.0;
}

double Baseline::base_sf(double t) const {
  switch (family_) {
    case Family::Exponential:
      return std::exp(-t);
    case Family::Kummer:
      return std::exp(1.0 - std::pow(1.0 + t * t, 0.2));
    case Family::LomaxHalf:
      return 1.0 / std::sqrt(1.0 + 2.0 * t);
    case Family::Power:
      return 1.0 - std::pow(t / params_[0], params_[1]);
    case Family::Pareto:
      return std::pow(t / params_[1], -params_[0]);
    case Family::Custom:
      return 1.0 - custom_cdf_(t);
  }
  return 0.0;
}

double Baseline::base_pdf(double t) const {
  switch (family_) {
    case Family::Exponential:
      return std::exp(-t);
    case Family::Kummer:
      return 0.4 * t * std::pow(1.0 + t * t, -0.8) * std::exp(1.0 - std::pow(1.0 + t * t, 0.2));
    case Family::LomaxHalf:
      return std::pow(1.0 + 2.0 * t, -1.5);
    case Family::Power:
      return params_[1] * std::pow(t / params_[0], params_[1]) / t;
    case Family::Pareto:
      return params_[0] / params_[1] * std::pow(t / params_[1], -params_[0] - 1.0);
    case Family::Custom:
      return numerics::derivative([this](double s) { return base_cdf(s); }, t);
  }
  return 0.0;
}

double Baseline::base_quantile(double u) const {
  switch (family_) {
    case Family::Exponential:
      return -std::log1p(-u);
    case Family::Kummer: {
      const double t = 1.0 - std::log1p(-u);
      return std::sqrt(std::pow(t, 5.0) - 1.0);
    }
    case Family::LomaxHalf: {
      const double s = 1.0 - u;
      return 0.5 * (1.0 / (s * s) - 1.0);
    }
    case Family::Power:
      return params_[0] * std::pow(u, 1.0 / params_[1]);
    case Family::Pareto:
      return params_[1] * std::pow(1.0 - u, -1.0 / params_[0]);
    case Family::Custom: {
      double lo = lo_;
      double hi = std::isfinite(hi_) ? hi_ : std::max(1.0, 2.0 * std::max(lo_, 1.0));
      if (!std::isfinite(hi_)) {
        for (int i = 0; i < 1100 && base_cdf(hi) < u; ++i) hi *= 2.0;
      }
      return numerics::find_root([&](double t) { return base_cdf(t) - u; }, lo, hi);
    }
  }
  return 0.0;
}

double Baseline::cdf(double x) const {
  const double t = scale_ * x;
  if (t <= lo_) return 0.0;
  if (t >= hi_) return 1.0;
  return std::clamp(base_cdf(t), 0.0, 1.0);
}

double Baseline::sf(double x) const {
  const double t = scale_ * x;
  if (t <= lo_) return 1.0;
  if (t >= hi_) return 0.0;
  return std::clamp(base_sf(t), 0.0, 1.0);
}

double Baseline::pdf(double x) const {
  const double t = scale_ * x;
  if (t <= lo_ || t > hi_) return 0.0;
  const double v = scale_ * base_pdf(t);
  return v > 0.0 ? v : 0.0;
}

double Baseline::hazard(double x) const {
  const double t = scale_ * x;
  if (t <= lo_ || t >= hi_) {
    throw EvaluationError("hazard: point outside the open support");
  }
  const double s = sf(x);
  if (!(s > 0.0)) throw EvaluationError("hazard: survival vanished");
  return pdf(x) / s;
}

double Baseline::rev_hazard(double x) const {
  const double t = scale_ * x;
  if (t <= lo_ || t >= hi_) {
    throw EvaluationError("rev_hazard: point outside the open support");
  }
  const double c = cdf(x);
  if (!(c > 0.0)) throw EvaluationError("rev_hazard: cdf vanished");
  return pdf(x) / c;
}

double Baseline::quantile(double u) const {
  if (!(u > 0.0) || !(u < 1.0)) throw InvalidInput("quantile: u must lie in (0,1)");
  double q = base_quantile(u) / scale_;
  q = std::max(q, support_lo());
  if (std::isfinite(support_hi())) q = std::min(q, support_hi());
  return q;
}

Baseline Baseline::scaled(double lambda) const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidInput("scaled: lambda must be positive and finite");
  }
  Baseline b = *this;
  b.scale_ = scale_ * lambda;
  return b;
}

std::string Baseline::label() const {
  std::string s;
  switch (family_) {
    case Family::Exponential: s = "exponential"; break;
    case Family::Kummer: s = "kummer"; break;
    case Family::LomaxHalf: s = "lomax_half"; break;
    case Family::Power: s = "power(" + std::to_string(params_[0]) + "," + std::to_string(params_[1]) + ")"; break;
    case Family::Pareto: s = "pareto(" + std::to_string(params_[0]) + "," + std::to_string(params_[1]) + ")"; break;
    case Family::Custom: s = "custom"; break;
  }
  if (scale_ != 1.0) s += " scaled " + std::to_string(scale_);
  return s;
}

void Baseline::validate() const {
  // F must start at 0, end at 1, and integrate its density to 1.
  const double qlo = base_quantile(1e-9);
  const double qhi = base_quantile(1.0 - 1e-9);
  if (base_cdf(qlo) > 1e-6) {
    throw InvalidInput("baseline: cdf does not vanish at the lower support end");
  }
  if (base_cdf(qhi) < 1.0 - 1e-6) {
    throw InvalidInput("baseline: cdf does not reach 1 at the upper support end");
  }
  double prev = -1.0;
  const numerics::Grid g = numerics::make_grid(qlo, qhi, 64, numerics::Spacing::Log);
  for (double t : g.points) {
    const double v = base_cdf(t);
    if (!std::isfinite(v) || v < -1e-12 || v > 1.0 + 1e-12) {
      throw InvalidInput("baseline: cdf must map into [0,1]");
    }
    if (v < prev - 1e-12) throw InvalidInput("baseline: cdf must be nondecreasing");
    prev = v;
  }
  // Heavy-tailed supports span many decades; substituting x = e^t keeps the
  // quadrature well resolved everywhere.
  const double mass = numerics::integrate(
      [this](double t) {
        const double x = std::exp(t);
        return x * base_pdf(x);
      },
      std::log(qlo), std::log(qhi));
  if (std::abs(mass - (1.0 - 2e-9)) > 1e-6) {
    throw InvalidInput("baseline: density does not integrate to 1");
  }
}

numerics::Grid default_baseline_grid(const Baseline& b1, const Baseline& b2, int count) {
  double lo = std::min(b1.quantile(1e-4), b2.quantile(1e-4));
  double hi = std::max(b1.quantile(1.0 - 1e-4), b2.quantile(1.0 - 1e-4));
  lo = std::max({lo, b1.support_lo() * (1.0 + 1e-9), b2.support_lo() * (1.0 + 1e-9)});
  for (const Baseline* b : {&b1, &b2}) {
    if (std::isfinite(b->support_hi())) hi = std::min(hi, b->support_hi() * (1.0 - 1e-9));
  }
  if (!(lo < hi)) throw InvalidInput("default_baseline_grid: supports do not overlap");
  return numerics::make_grid(lo, hi, count, numerics::Spacing::Log);
}

numerics::ShapeVerdict check_baseline_shape(const Baseline& b, ShapeKind kind,
                                            const numerics::Grid& grid) {
  auto r = [&b](double x) { return b.hazard(x); };
  auto rt = [&b](double x) { return b.rev_hazard(x); };
  using numerics::Direction;
  using numerics::Curvature;
  switch (kind) {
    case ShapeKind::RDecreasing:
      return numerics::check_monotone(r, grid, Direction::Decreasing);
    case ShapeKind::RIncreasing:
      return numerics::check_monotone(r, grid, Direction::Increasing);
    case ShapeKind::RtDecreasing:
      return numerics::check_monotone(rt, grid, Direction::Decreasing);
    case ShapeKind::XrDecreasing:
    case ShapeKind::XrDecreasingStar:
      return numerics::check_monotone([r](double x) { return x * r(x); }, grid,
                                      Direction::Decreasing);
    case ShapeKind::XrConvex:
      return numerics::check_convex([r](double x) { return x * r(x); }, grid, Curvature::Convex);
    case ShapeKind::XrtIncreasing:
      return numerics::check_monotone([rt](double x) { return x * rt(x); }, grid,
                                      Direction::Increasing);
    case ShapeKind::XrtConvex:
      return numerics::check_convex([rt](double x) { return x * rt(x); }, grid, Curvature::Convex);
    case ShapeKind::ElasticityRtDecreasing:
      return numerics::check_monotone(
          [rt](double x) { return x * numerics::derivative(rt, x) / rt(x); }, grid,
          Direction::Decreasing);
    case ShapeKind::ElasticityRDecreasing:
      return numerics::check_monotone(
          [r](double x) { return x * numerics::derivative(r, x) / r(x); }, grid,
          Direction::Decreasing);
  }
  throw InvalidInput("check_baseline_shape: unknown kind");
}

numerics::ShapeVerdict compare_hazards(const Baseline& b1, const Baseline& b2, CompareMode mode,
                                       const numerics::Grid& grid) {
  numerics::ShapeVerdict v;
  v.margin = std::numeric_limits<double>::infinity();
  long compared = 0;
  for (double x : grid.points) {
    std::optional<double> lhs, rhs;
    double slack = 1.0;
    switch (mode) {
      case CompareMode::HazardLeq:
        lhs = numerics::try_eval([&](double t) { return b1.hazard(t); }, x);
        rhs = numerics::try_eval([&](double t) { return b2.hazard(t); }, x);
        break;
      case CompareMode::RevHazardLeq:
        lhs = numerics::try_eval([&](double t) { return b1.rev_hazard(t); }, x);
        rhs = numerics::try_eval([&](double t) { return b2.rev_hazard(t); }, x);
        break;
      case CompareMode::CdfLeq:
        lhs = numerics::try_eval([&](double t) { return b1.cdf(t); }, x);
        rhs = numerics::try_eval([&](double t) { return b2.cdf(t); }, x);
        break;
    }
    if (!lhs || !rhs) {
      ++v.excluded;
      continue;
    }
    ++compared;
    if (mode == CompareMode::CdfLeq) {
      slack = 1e-8;
    } else {
      slack = 1e-6 * std::max({1.0, std::abs(*lhs), std::abs(*rhs)});
    }
    const double headroom = (*rhs - *lhs) / slack;
    if (headroom < v.margin) v.margin = headroom;
    if (headroom < -1.0 && !v.witness) v.witness = x;
  }
  if (v.witness) {
    v.status = numerics::ShapeStatus::Fail;
  } else if (v.excluded > static_cast<long>(grid.size()) / 10 || compared < 2) {
    v.status = numerics::ShapeStatus::Inconclusive;
  } else {
    v.status = numerics::ShapeStatus::Pass;
  }
  return v;
}

bool same_baseline(const Baseline& a, const Baseline& b) {
  if (a.family() == b.family() && a.family() != Family::Custom && a.params() == b.params() &&
      a.scale() == b.scale()) {
    return true;
  }
  numerics::Grid g;
  try {
    g = default_baseline_grid(a, b, 256);
  } catch (const InvalidInput&) {
    return false;
  }
  for (double x : g.points) {
    if (std::abs(a.cdf(x) - b.cdf(x)) > 1e-9) return false;
  }
  return true;
}

}  // namespace exos::baselines
