#include "numerics.hpp"

#include <algorithm>
#include <cmath>

namespace exos::numerics {

namespace {

double eval_strict(const Fn& f, double x, const char* what) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    throw EvaluationError(std::string(what) + ": non-finite value at x=" + std::to_string(x));
  }
  return v;
}

}  // namespace

Grid make_grid(double lo, double hi, int count, Spacing spacing) {
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw InvalidInput("make_grid: requires 0 < lo < hi, both finite");
  }
  if (count < 2) {
    throw InvalidInput("make_grid: count must be >= 2");
  }
  Grid g;
  g.spacing = spacing;
  g.points.resize(static_cast<std::size_t>(count));
  const double n1 = static_cast<double>(count - 1);
  if (spacing == Spacing::Linear) {
    for (int i = 0; i < count; ++i) {
      g.points[static_cast<std::size_t>(i)] = lo + (hi - lo) * (static_cast<double>(i) / n1);
    }
  } else {
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < count; ++i) {
      g.points[static_cast<std::size_t>(i)] = std::exp(llo + (lhi - llo) * (static_cast<double>(i) / n1));
    }
  }
  g.points.front() = lo;
  g.points.back() = hi;
  return g;
}

ShapeVerdict pass_verdict(double margin) {
  ShapeVerdict v;
  v.status = ShapeStatus::Pass;
  v.margin = margin;
  return v;
}

ShapeVerdict bool_verdict(bool ok) {
  ShapeVerdict v;
  v.status = ok ? ShapeStatus::Pass : ShapeStatus::Fail;
  v.margin = ok ? std::numeric_limits<double>::infinity()
                : -std::numeric_limits<double>::infinity();
  return v;
}

std::string to_string(ShapeStatus s) {
  switch (s) {
    case ShapeStatus::Pass: return "PASS";
    case ShapeStatus::Fail: return "FAIL";
    case ShapeStatus::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

std::optional<double> try_eval(const Fn& f, double x) {
  try {
    const double v = f(x);
    if (!std::isfinite(v)) return std::nullopt;
    return v;
  } catch (const EvaluationError&) {
    return std::nullopt;
  } catch (const CapError&) {
    return std::nullopt;
  } catch (const BracketError&) {
    return std::nullopt;
  } catch (const QuadratureError&) {
    return std::nullopt;
  }
}

double derivative(const Fn& f, double x) {
  const double h = std::max(1e-6, 1e-6 * std::abs(x));
  const double fp = eval_strict(f, x + h, "derivative");
  const double fm = eval_strict(f, x - h, "derivative");
  return (fp - fm) / (2.0 * h);
}

double second_derivative(const Fn& f, double x) {
  const double h = std::max(1e-6, 1e-6 * std::abs(x));
  const double fp = eval_strict(f, x + h, "second_derivative");
  const double f0 = eval_strict(f, x, "second_derivative");
  const double fm = eval_strict(f, x - h, "second_derivative");
  return (fp - 2.0 * f0 + fm) / (h * h);
}

ShapeVerdict monotone_scan(const std::vector<double>& xs, const std::vector<double>& ys,
                           Direction dir, long excluded, std::size_t grid_size,
                           double rel_slack) {
  ShapeVerdict v;
  v.excluded = excluded;
  if (ys.size() < 2) {
    v.status = ShapeStatus::Inconclusive;
    v.margin = -std::numeric_limits<double>::infinity();
    return v;
  }
  double margin = std::numeric_limits<double>::infinity();
  std::optional<double> witness;
  for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
    double step = ys[i + 1] - ys[i];
    if (dir == Direction::Decreasing) step = -step;
    const double slack = rel_slack * std::max({1.0, std::abs(ys[i]), std::abs(ys[i + 1])});
    const double headroom = step / slack;
    if (headroom < margin) margin = headroom;
    if (headroom < -1.0 && !witness) witness = xs[i + 1];
  }
  v.margin = margin;
  if (witness) {
    v.status = ShapeStatus::Fail;
    v.witness = witness;
  } else if (excluded > static_cast<long>(grid_size) / 10) {
    v.status = ShapeStatus::Inconclusive;
  } else {
    v.status = ShapeStatus::Pass;
  }
  return v;
}

ShapeVerdict convexity_scan(const std::vector<double>& xs, const std::vector<double>& ys,
                            Curvature sense, long excluded, std::size_t grid_size,
                            double rel_slack) {
  ShapeVerdict v;
  v.excluded = excluded;
  if (ys.size() < 3) {
    v.status = ShapeStatus::Inconclusive;
    v.margin = -std::numeric_limits<double>::infinity();
    return v;
  }
  std::vector<double> slopes(ys.size() - 1);
  for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
    slopes[i] = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
  }
  double margin = std::numeric_limits<double>::infinity();
  std::optional<double> witness;
  for (std::size_t i = 0; i + 1 < slopes.size(); ++i) {
    double step = slopes[i + 1] - slopes[i];
    if (sense == Curvature::Concave) step = -step;
    const double slack = rel_slack * std::max({1.0, std::abs(slopes[i]), std::abs(slopes[i + 1])});
    const double headroom = step / slack;
    if (headroom < margin) margin = headroom;
    if (headroom < -1.0 && !witness) witness = xs[i + 1];
  }
  v.margin = margin;
  if (witness) {
    v.status = ShapeStatus::Fail;
    v.witness = witness;
  } else if (excluded > static_cast<long>(grid_size) / 10) {
    v.status = ShapeStatus::Inconclusive;
  } else {
    v.status = ShapeStatus::Pass;
  }
  return v;
}

namespace {

struct Samples {
  std::vector<double> xs, ys;
  long excluded = 0;
};

Samples sample(const Fn& f, const Grid& g) {
  Samples s;
  s.xs.reserve(g.size());
  s.ys.reserve(g.size());
  for (double x : g.points) {
    if (auto v = try_eval(f, x)) {
      s.xs.push_back(x);
      s.ys.push_back(*v);
    } else {
      ++s.excluded;
    }
  }
  return s;
}

}  // namespace

ShapeVerdict check_monotone(const Fn& f, const Grid& g, Direction dir) {
  const Samples s = sample(f, g);
  return monotone_scan(s.xs, s.ys, dir, s.excluded, g.size());
}

ShapeVerdict check_convex(const Fn& f, const Grid& g, Curvature sense) {
  const Samples s = sample(f, g);
  return convexity_scan(s.xs, s.ys, sense, s.excluded, g.size());
}

double find_root(const Fn& f, double lo, double hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw InvalidInput("find_root: requires finite lo < hi");
  }
  double flo = eval_strict(f, lo, "find_root");
  double fhi = eval_strict(f, hi, "find_root");
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0) {
    throw BracketError("find_root: no sign change on [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
  }
  const double scale = std::max({1.0, std::abs(flo), std::abs(fhi)});
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // no representable midpoint left
    const double fm = eval_strict(f, mid, "find_root");
    if (std::abs(fm) <= 1e-12 * scale) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-14 * std::abs(mid)) break;
  }
  return 0.5 * (lo + hi);
}

namespace {

constexpr double kQuadAbsTol = 1e-10;
constexpr double kQuadRelTol = 1e-8;
constexpr int kQuadMaxDepth = 20;

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const Fn& f, double a, double m, double b, double fa, double fm, double fb,
             double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = eval_strict(f, lm, "integrate");
  const double frm = eval_strict(f, rm, "integrate");
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  const double err = left + right - whole;
  if (std::abs(err) <= 15.0 * tol) {
    return left + right + err / 15.0;
  }
  if (depth >= kQuadMaxDepth) {
    throw QuadratureError("integrate: no convergence after 20 refinement levels");
  }
  return adapt(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         adapt(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate(const Fn& f, double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
    throw InvalidInput("integrate: requires finite lo <= hi");
  }
  if (lo == hi) return 0.0;
  const double offset = 1e-10 * (hi - lo);
  // Endpoint values may be replaced by one-sided limits just inside the range.
  auto endpoint = [&](double x, double off) {
    double v = f(x);
    if (std::isfinite(v)) return v;
    v = f(x + off);
    if (!std::isfinite(v)) {
      throw QuadratureError("integrate: integrand not finite near endpoint");
    }
    return v;
  };
  const double fa = endpoint(lo, offset);
  const double fb = endpoint(hi, -offset);
  const double m = 0.5 * (lo + hi);
  const double fm = eval_strict(f, m, "integrate");
  const double whole = simpson(lo, hi, fa, fm, fb);
  const double tol = std::max(kQuadAbsTol, kQuadRelTol * std::abs(whole));
  return adapt(f, lo, m, hi, fa, fm, fb, whole, tol, 0);
}

}  // namespace exos::numerics
