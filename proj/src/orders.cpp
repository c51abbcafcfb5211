#include "orders.hpp"

#include <algorithm>
#include <cmath>

namespace exos::orders {

using extremes::ExtremeDistribution;
using numerics::Grid;
using numerics::ShapeStatus;
using numerics::ShapeVerdict;

std::string to_string(Relation r) {
  switch (r) {
    case Relation::St: return "st";
    case Relation::Hr: return "hr";
    case Relation::Rh: return "rh";
    case Relation::Star: return "star";
    case Relation::Lorenz: return "lorenz";
  }
  return "?";
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Holds: return "HOLDS";
    case Status::Fails: return "FAILS";
    case Status::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

namespace {

constexpr double kUGridLo = 1e-4;
constexpr double kUGridHi = 1.0 - 1e-4;

Grid x_grid(const ExtremeDistribution& a, const ExtremeDistribution& b, const Options& opts) {
  if (opts.grid) return *opts.grid;
  return extremes::default_pair_grid(a, b, opts.grid_count);
}

Grid u_grid(const Options& opts) {
  if (opts.ugrid) return *opts.ugrid;
  return numerics::make_grid(kUGridLo, kUGridHi, opts.grid_count, numerics::Spacing::Linear);
}

OrderVerdict inconclusive(Relation rel, std::string note) {
  OrderVerdict v;
  v.relation = rel;
  v.status = Status::Inconclusive;
  v.margin = -std::numeric_limits<double>::infinity();
  v.note = std::move(note);
  return v;
}

// Pointwise comparison lhs(x) <= rhs(x) with the given slack policy.
struct PointwiseResult {
  ShapeStatus status = ShapeStatus::Inconclusive;
  std::optional<double> witness;
  double margin = std::numeric_limits<double>::infinity();
  long excluded = 0;
};

PointwiseResult pointwise_leq(const Grid& g, const numerics::Fn& lhs, const numerics::Fn& rhs,
                              bool relative_slack, double slack0) {
  PointwiseResult r;
  long compared = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (double x : g.points) {
    const auto l = numerics::try_eval(lhs, x);
    const auto h = numerics::try_eval(rhs, x);
    if (!l || !h) {
      ++r.excluded;
      continue;
    }
    ++compared;
    const double slack =
        relative_slack ? slack0 * std::max({1.0, std::abs(*l), std::abs(*h)}) : slack0;
    const double headroom = (*h - *l) / slack;
    if (headroom < worst) {
      worst = headroom;
      if (headroom < -1.0) r.witness = x;
    }
  }
  r.margin = worst;
  if (r.witness) {
    r.status = ShapeStatus::Fail;
  } else if (r.excluded > static_cast<long>(g.size()) / 10 || compared < 2) {
    r.status = ShapeStatus::Inconclusive;
  } else {
    r.status = ShapeStatus::Pass;
  }
  return r;
}

// Monotone-increasing check of ratio(x) = num(x)/den(x) over the grid,
// excluding points where the denominator has decayed below 1e-280.
ShapeVerdict ratio_increasing(const Grid& g, const numerics::Fn& num, const numerics::Fn& den) {
  std::vector<double> xs, ys;
  long excluded = 0;
  for (double x : g.points) {
    const auto n = numerics::try_eval(num, x);
    const auto d = numerics::try_eval(den, x);
    if (!n || !d || !(*d > 1e-280)) {
      ++excluded;
      continue;
    }
    const double ratio = *n / *d;
    if (!std::isfinite(ratio)) {
      ++excluded;
      continue;
    }
    xs.push_back(x);
    ys.push_back(ratio);
  }
  return numerics::monotone_scan(xs, ys, numerics::Direction::Increasing, excluded, g.size());
}

Status from_shape(ShapeStatus s) {
  switch (s) {
    case ShapeStatus::Pass: return Status::Holds;
    case ShapeStatus::Fail: return Status::Fails;
    case ShapeStatus::Inconclusive: return Status::Inconclusive;
  }
  return Status::Inconclusive;
}

// Combines the pointwise route with the ratio cross-check; the two must agree
// or the verdict degrades to Inconclusive.
OrderVerdict dual_route(Relation rel, const PointwiseResult& pt, const ShapeVerdict& ratio) {
  OrderVerdict v;
  v.relation = rel;
  v.excluded = pt.excluded;
  v.margin = std::min(pt.margin, ratio.margin);
  v.witness = pt.witness ? pt.witness : ratio.witness;
  const Status s1 = from_shape(pt.status);
  const Status s2 = from_shape(ratio.status);
  if (s1 == Status::Holds && s2 == Status::Holds) {
    v.status = Status::Holds;
  } else if (s1 == Status::Fails && s2 == Status::Fails) {
    v.status = Status::Fails;
  } else {
    v.status = Status::Inconclusive;
    v.note = (s1 == Status::Inconclusive || s2 == Status::Inconclusive)
                 ? "a verification route was inconclusive"
                 : "pointwise and ratio routes disagree";
  }
  return v;
}

}  // namespace

OrderVerdict check_st(const ExtremeDistribution& a, const ExtremeDistribution& b,
                      const Options& opts) {
  Grid g;
  try {
    g = x_grid(a, b, opts);
  } catch (const InvalidInput& e) {
    return inconclusive(Relation::St, e.what());
  } catch (const BracketError& e) {
    return inconclusive(Relation::St, e.what());
  }
  const auto pt = pointwise_leq(
      g, [&](double x) { return a.sf(x); }, [&](double x) { return b.sf(x); }, false,
      opts.prob_slack);
  OrderVerdict v;
  v.relation = Relation::St;
  v.status = from_shape(pt.status);
  v.witness = pt.witness;
  v.margin = pt.margin;
  v.excluded = pt.excluded;
  return v;
}

OrderVerdict check_hr(const ExtremeDistribution& a, const ExtremeDistribution& b,
                      const Options& opts) {
  Grid g;
  try {
    g = x_grid(a, b, opts);
  } catch (const InvalidInput& e) {
    return inconclusive(Relation::Hr, e.what());
  } catch (const BracketError& e) {
    return inconclusive(Relation::Hr, e.what());
  }
  // A <=_hr B demands hazard_A >= hazard_B, i.e. hazard_B <= hazard_A.
  const auto pt = pointwise_leq(
      g, [&](double x) { return b.hazard(x); }, [&](double x) { return a.hazard(x); }, true,
      opts.hazard_slack);
  const auto ratio = ratio_increasing(
      g, [&](double x) { return b.sf(x); }, [&](double x) { return a.sf(x); });
  auto v = dual_route(Relation::Hr, pt, ratio);
  v.relation = Relation::Hr;
  return v;
}

OrderVerdict check_rh(const ExtremeDistribution& a, const ExtremeDistribution& b,
                      const Options& opts) {
  Grid g;
  try {
    g = x_grid(a, b, opts);
  } catch (const InvalidInput& e) {
    return inconclusive(Relation::Rh, e.what());
  } catch (const BracketError& e) {
    return inconclusive(Relation::Rh, e.what());
  }
  const auto pt = pointwise_leq(
      g, [&](double x) { return a.rev_hazard(x); }, [&](double x) { return b.rev_hazard(x); },
      true, opts.hazard_slack);
  const auto ratio = ratio_increasing(
      g, [&](double x) { return b.cdf(x); }, [&](double x) { return a.cdf(x); });
  auto v = dual_route(Relation::Rh, pt, ratio);
  v.relation = Relation::Rh;
  return v;
}

OrderVerdict check_star(const ExtremeDistribution& a, const ExtremeDistribution& b,
                        const Options& opts) {
  const Grid ug = u_grid(opts);
  std::vector<double> us, ratios;
  long excluded = 0;
  double qa_prev = a.support_lo();
  double qb_prev = b.support_lo();
  double qa_hi = 0.0, qb_hi = 0.0;
  try {
    const double u_pad = std::min(1.0 - 1e-9, ug.hi() + 0.5 * (1.0 - ug.hi()));
    qa_hi = a.quantile(u_pad);
    qb_hi = b.quantile(u_pad);
  } catch (const BracketError& e) {
    return inconclusive(Relation::Star, e.what());
  }
  for (double u : ug.points) {
    try {
      const double qa = extremes::quantile_bracketed(a, u, qa_prev, qa_hi);
      const double qb = extremes::quantile_bracketed(b, u, qb_prev, qb_hi);
      qa_prev = qa;
      qb_prev = qb;
      if (!(qa > 0.0)) {
        ++excluded;
        continue;
      }
      const double ratio = qb / qa;
      if (!std::isfinite(ratio)) {
        ++excluded;
        continue;
      }
      us.push_back(u);
      ratios.push_back(ratio);
    } catch (const BracketError&) {
      ++excluded;
    } catch (const EvaluationError&) {
      ++excluded;
    }
  }
  const auto scan =
      numerics::monotone_scan(us, ratios, numerics::Direction::Increasing, excluded, ug.size());
  OrderVerdict v;
  v.relation = Relation::Star;
  v.status = from_shape(scan.status);
  v.witness = scan.witness;
  v.margin = scan.margin;
  v.excluded = scan.excluded;
  return v;
}

namespace {

// Integral of the quantile over [ulo, uhi]. The upper tail is computed under
// the substitution u = 1 - s^5, which flattens the integrable quantile
// singularity of heavy-tailed distributions.
double quantile_integral(const ExtremeDistribution& d, double ulo, double uhi, double qlo,
                         double qhi) {
  // u is clamped at 1e-12 from both ends: the quantile contract only resolves
  // the cdf to 1e-9, so probing deeper into the tails buys nothing.
  auto q = [&](double u) {
    const double uc = std::clamp(u, 1e-12, 1.0 - 1e-12);
    return extremes::quantile_bracketed(d, uc, qlo, qhi);
  };
  const double split = 0.9;
  double total = 0.0;
  if (ulo < split) {
    total += numerics::integrate(q, ulo, std::min(uhi, split));
  }
  if (uhi > split) {
    const double slo = std::pow(1.0 - uhi, 0.2);
    const double shi = std::pow(1.0 - std::max(ulo, split), 0.2);
    total += numerics::integrate(
        [&](double s) {
          const double s4 = s * s * s * s;
          return 5.0 * s4 * q(1.0 - s4 * s);
        },
        slo, shi);
  }
  return total;
}

}  // namespace

double mean_from_quantiles(const ExtremeDistribution& d) {
  const double qlo = d.support_lo();
  const double qhi = d.quantile(1.0 - 1e-12);
  return quantile_integral(d, 0.0, 1.0, qlo, qhi * 2.0 + 1.0);
}

OrderVerdict check_lorenz(const ExtremeDistribution& a, const ExtremeDistribution& b,
                          const Options& opts) {
  const Grid ug = u_grid(opts);
  double mean_a = 0.0, mean_b = 0.0;
  try {
    mean_a = mean_from_quantiles(a);
    mean_b = mean_from_quantiles(b);
  } catch (const QuadratureError& e) {
    return inconclusive(Relation::Lorenz, std::string("mean quadrature failed: ") + e.what());
  } catch (const BracketError& e) {
    return inconclusive(Relation::Lorenz, std::string("mean quadrature failed: ") + e.what());
  }
  if (!(mean_a > 0.0) || !(mean_b > 0.0) || !std::isfinite(mean_a) || !std::isfinite(mean_b)) {
    return inconclusive(Relation::Lorenz, "mean not finite and positive");
  }

  OrderVerdict v;
  v.relation = Relation::Lorenz;
  double qa_hi = 0.0, qb_hi = 0.0;
  try {
    qa_hi = a.quantile(1.0 - 1e-12) * 2.0 + 1.0;
    qb_hi = b.quantile(1.0 - 1e-12) * 2.0 + 1.0;
  } catch (const BracketError& e) {
    return inconclusive(Relation::Lorenz, e.what());
  }
  double ca = 0.0, cb = 0.0;  // cumulative quantile mass up to the current node
  double prev = 0.0;
  double worst = std::numeric_limits<double>::infinity();
  try {
    for (double u : ug.points) {
      ca += quantile_integral(a, prev, u, a.support_lo(), qa_hi);
      cb += quantile_integral(b, prev, u, b.support_lo(), qb_hi);
      prev = u;
      const double la = ca / mean_a;
      const double lb = cb / mean_b;
      const double headroom = (la - lb) / opts.prob_slack;
      if (headroom < worst) {
        worst = headroom;
        if (headroom < -1.0 && !v.witness) v.witness = u;
      }
    }
  } catch (const QuadratureError& e) {
    return inconclusive(Relation::Lorenz, std::string("curve quadrature failed: ") + e.what());
  } catch (const BracketError& e) {
    return inconclusive(Relation::Lorenz, std::string("curve quadrature failed: ") + e.what());
  }
  v.margin = worst;
  v.status = v.witness ? Status::Fails : Status::Holds;
  return v;
}

OrderVerdict check(Relation rel, const ExtremeDistribution& a, const ExtremeDistribution& b,
                   const Options& opts) {
  switch (rel) {
    case Relation::St: return check_st(a, b, opts);
    case Relation::Hr: return check_hr(a, b, opts);
    case Relation::Rh: return check_rh(a, b, opts);
    case Relation::Star: return check_star(a, b, opts);
    case Relation::Lorenz: return check_lorenz(a, b, opts);
  }
  throw InvalidInput("check: unknown relation");
}

}  // namespace exos::orders
