#include "copula.hpp"

#include <cmath>

namespace exos::copula {

namespace {

constexpr double kPsiDecayed = 1e-12;

double require_nonneg(double x, const char* who) {
  if (!(x >= 0.0)) throw InvalidInput(std::string(who) + ": argument must be >= 0");
  return x;
}

}  // namespace

Generator Generator::gumbel_exp(double theta) {
  if (!(theta >= 1.0) || !std::isfinite(theta)) {
    throw InvalidInput("gumbel_exp: theta must be >= 1");
  }
  Generator g;
  g.family_ = Family::GumbelExp;
  g.theta_ = theta;
  g.check_hi_ = std::pow(-std::log(kPsiDecayed), theta);
  g.validate();
  return g;
}

Generator Generator::log_exp(double theta) {
  if (!(theta > 0.0) || !(theta <= 1.0)) {
    throw InvalidInput("log_exp: theta must lie in (0, 1]");
  }
  Generator g;
  g.family_ = Family::LogExp;
  g.theta_ = theta;
  g.check_hi_ = std::log1p(-theta * std::log(kPsiDecayed));
  g.validate();
  return g;
}

Generator Generator::independence() {
  Generator g;
  g.family_ = Family::Independence;
  g.theta_ = 1.0;
  g.check_hi_ = -std::log(kPsiDecayed);
  g.validate();
  return g;
}

Generator Generator::custom(std::function<double(double)> psi, double x_hi) {
  if (!psi) throw InvalidInput("custom generator: psi required");
  if (!(x_hi > 0.0) || !std::isfinite(x_hi)) {
    throw InvalidInput("custom generator: x_hi must be positive and finite");
  }
  Generator g;
  g.family_ = Family::Custom;
  g.custom_psi_ = std::move(psi);
  g.check_hi_ = x_hi;
  g.validate();
  return g;
}

double Generator::psi(double x) const {
  require_nonneg(x, "psi");
  switch (family_) {
    case Family::GumbelExp:
      return std::exp(-std::pow(x, 1.0 / theta_));
    case Family::LogExp:
      return std::exp(-std::expm1(x) / theta_);
    case Family::Independence:
      return std::exp(-x);
    case Family::Custom:
      return custom_psi_(x);
  }
  return 0.0;
}

double Generator::log_psi(double x) const {
  require_nonneg(x, "log_psi");
  switch (family_) {
    case Family::GumbelExp:
      return -std::pow(x, 1.0 / theta_);
    case Family::LogExp:
      return -std::expm1(x) / theta_;
    case Family::Independence:
      return -x;
    case Family::Custom: {
      const double p = custom_psi_(x);
      if (!(p > 0.0)) throw EvaluationError("log_psi: psi vanished");
      return std::log(p);
    }
  }
  return 0.0;
}

double Generator::psi_prime(double x) const {
  require_nonneg(x, "psi_prime");
  switch (family_) {
    case Family::GumbelExp: {
      const double inv = 1.0 / theta_;
      return -inv * std::pow(x, inv - 1.0) * std::exp(-std::pow(x, inv));
    }
    case Family::LogExp:
      // -(e^x/theta) psi(x), fused into one exp so the tail underflows cleanly.
      return -std::exp(x - std::expm1(x) / theta_) / theta_;
    case Family::Independence:
      return -std::exp(-x);
    case Family::Custom:
      return numerics::derivative([this](double t) { return custom_psi_(t); }, x);
  }
  return 0.0;
}

double Generator::log_derivative(double x) const {
  require_nonneg(x, "log_derivative");
  switch (family_) {
    case Family::GumbelExp: {
      const double inv = 1.0 / theta_;
      return -inv * std::pow(x, inv - 1.0);
    }
    case Family::LogExp:
      return -std::exp(x) / theta_;
    case Family::Independence:
      return -1.0;
    case Family::Custom: {
      const double p = psi(x);
      if (!(p > 0.0)) throw EvaluationError("log_derivative: psi vanished");
      return psi_prime(x) / p;
    }
  }
  return 0.0;
}

double Generator::phi(double u) const {
  if (u > 1.0) throw InvalidInput("phi: argument must be <= 1");
  if (!(u > kUMin)) throw CapError("phi: argument at or below representable floor");
  if (u == 1.0) return 0.0;
  switch (family_) {
    case Family::GumbelExp:
      return std::pow(-std::log(u), theta_);
    case Family::LogExp:
      return std::log1p(-theta_ * std::log(u));
    case Family::Independence:
      return -std::log(u);
    case Family::Custom: {
      // psi is decreasing; bracket [0, hi] with hi grown until psi(hi) <= u.
      double hi = check_hi_;
      for (int i = 0; i < 64 && custom_psi_(hi) > u; ++i) hi *= 2.0;
      if (custom_psi_(hi) > u) throw CapError("phi: custom generator did not decay to argument");
      return numerics::find_root([&](double t) { return custom_psi_(t) - u; }, 0.0, hi);
    }
  }
  return 0.0;
}

std::string Generator::label() const {
  switch (family_) {
    case Family::GumbelExp: return "gumbel_exp(" + std::to_string(theta_) + ")";
    case Family::LogExp: return "log_exp(" + std::to_string(theta_) + ")";
    case Family::Independence: return "independence";
    case Family::Custom: return "custom";
  }
  return "?";
}

void Generator::validate() const {
  if (std::abs(psi(0.0) - 1.0) > 1e-12) {
    throw InvalidInput("generator: psi(0) must equal 1");
  }
  const numerics::Grid grid = numerics::make_grid(1e-6, check_hi_, 64, numerics::Spacing::Log);
  auto p = [this](double x) { return psi(x); };
  double prev = 1.0;
  for (double x : grid.points) {
    const double v = psi(x);
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw InvalidInput("generator: psi must map into [0, 1]");
    }
    if (v > prev + 1e-12) throw InvalidInput("generator: psi must be nonincreasing");
    prev = v;
  }
  if (!numerics::check_convex(p, grid, numerics::Curvature::Convex).pass()) {
    throw InvalidInput("generator: psi failed the convexity spot check");
  }
  // Round-trip phi(psi(x)) = x where psi is representable.
  for (double x : grid.points) {
    const double u = psi(x);
    if (u <= kUMin) continue;
    const double back = phi(u);
    if (std::abs(back - x) > 1e-9 * std::max(1.0, std::abs(x))) {
      throw InvalidInput("generator: phi does not invert psi");
    }
  }
}

bool same_generator(const Generator& a, const Generator& b) {
  if (a.family() == b.family() && a.family() != Family::Custom) {
    return a.theta() == b.theta();
  }
  const double hi = std::min(a.check_hi(), b.check_hi());
  const numerics::Grid grid = numerics::make_grid(1e-6, hi, 128, numerics::Spacing::Log);
  for (double x : grid.points) {
    if (std::abs(a.psi(x) - b.psi(x)) > 1e-9) return false;
  }
  return true;
}

numerics::Grid default_generator_grid(const Generator& g, int count) {
  return numerics::make_grid(1e-6, g.check_hi(), count, numerics::Spacing::Log);
}

numerics::ShapeVerdict check_log_convex(const Generator& g, const numerics::Grid& grid) {
  auto f = [&g](double x) { return g.log_psi(x); };
  return numerics::check_convex(f, grid, numerics::Curvature::Convex);
}

numerics::ShapeVerdict check_log_concave(const Generator& g, const numerics::Grid& grid) {
  auto f = [&g](double x) { return g.log_psi(x); };
  return numerics::check_convex(f, grid, numerics::Curvature::Concave);
}

numerics::ShapeVerdict check_super_additive(const Generator& outer, const Generator& inner,
                                            const numerics::Grid& grid) {
  // f = phi_outer o psi_inner, f(0) = 0; test f(x)+f(y) <= f(x+y) pairwise.
  auto f = [&](double t) { return outer.phi(inner.psi(t)); };
  std::vector<double> pts;
  const std::size_t stride = std::max<std::size_t>(1, grid.size() / 64);
  for (std::size_t i = 0; i < grid.size(); i += stride) pts.push_back(grid.points[i]);

  numerics::ShapeVerdict v;
  v.margin = std::numeric_limits<double>::infinity();
  long total = 0;
  std::vector<std::optional<double>> fx(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    fx[i] = numerics::try_eval(f, pts[i]);
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i; j < pts.size(); ++j) {
      ++total;
      if (!fx[i] || !fx[j]) {
        ++v.excluded;
        continue;
      }
      const auto fsum = numerics::try_eval(f, pts[i] + pts[j]);
      if (!fsum) {
        ++v.excluded;
        continue;
      }
      const double slack = numerics::kShapeSlack * std::max(1.0, std::abs(*fsum));
      const double headroom = (*fsum - *fx[i] - *fx[j]) / slack;
      if (headroom < v.margin) v.margin = headroom;
      if (headroom < -1.0 && !v.witness) {
        v.witness = pts[i];
        v.witness2 = pts[j];
      }
    }
  }
  if (v.witness) {
    v.status = numerics::ShapeStatus::Fail;
  } else if (v.excluded > total / 10 || total - v.excluded < 3) {
    v.status = numerics::ShapeStatus::Inconclusive;
  } else {
    v.status = numerics::ShapeStatus::Pass;
  }
  return v;
}

numerics::ShapeVerdict check_ratio_shape(const Generator& g, RatioKind which, RatioShape prop,
                                         const numerics::Grid& grid) {
  auto ratio = [&g](double x) {
    const double d = g.psi_prime(x);
    if (d == 0.0) throw EvaluationError("check_ratio_shape: psi' vanished");
    return g.psi(x) / d;
  };
  auto one_minus = [&g](double x) {
    const double d = g.psi_prime(x);
    if (d == 0.0) throw EvaluationError("check_ratio_shape: psi' vanished");
    return (1.0 - g.psi(x)) / d;
  };
  numerics::Fn f;
  switch (which) {
    case RatioKind::PsiOverDPsi:
      f = ratio;
      break;
    case RatioKind::OneMinusPsiOverDPsi:
      f = one_minus;
      break;
    case RatioKind::ProductRuleTerm:
      f = [one_minus](double x) {
        return one_minus(x) * numerics::derivative(one_minus, x);
      };
      break;
    case RatioKind::RatioOfDerivatives:
      f = [ratio, one_minus](double x) {
        return numerics::derivative(one_minus, x) / ratio(x);
      };
      break;
  }
  switch (prop) {
    case RatioShape::Decreasing:
      return numerics::check_monotone(f, grid, numerics::Direction::Decreasing);
    case RatioShape::Increasing:
      return numerics::check_monotone(f, grid, numerics::Direction::Increasing);
    case RatioShape::Convex:
      return numerics::check_convex(f, grid, numerics::Curvature::Convex);
  }
  throw InvalidInput("check_ratio_shape: unknown property");
}

numerics::ShapeVerdict check_d_monotone(const Generator& g, int d, const numerics::Grid& grid) {
  if (d < 2 || d > 4) throw InvalidInput("check_d_monotone: d must be in [2, 4]");
  auto p = [&g](double x) { return g.psi(x); };
  if (d == 2) {
    return numerics::check_convex(p, grid, numerics::Curvature::Convex);
  }
  // (-1)^(d-2) psi^(d-2) must be nonincreasing and convex; sampled through
  // low-order finite differences.
  const double sign = (d % 2 == 0) ? 1.0 : -1.0;
  numerics::Fn f;
  if (d == 3) {
    f = [p, sign](double x) { return sign * numerics::derivative(p, x); };
  } else {
    f = [p, sign](double x) { return sign * numerics::second_derivative(p, x); };
  }
  auto mono = numerics::check_monotone(f, grid, numerics::Direction::Decreasing);
  if (!mono.pass()) return mono;
  return numerics::check_convex(f, grid, numerics::Curvature::Convex);
}

}  // namespace exos::copula
