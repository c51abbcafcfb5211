#include "theorems.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "majorization.hpp"

namespace exos::theorems {

using baselines::Baseline;
using baselines::CompareMode;
using baselines::ShapeKind;
using copula::Generator;
using copula::RatioKind;
using copula::RatioShape;
using extremes::Extreme;
using extremes::ExtremeDistribution;
using extremes::MultipleOutlierModel;
using numerics::ShapeStatus;
using numerics::ShapeVerdict;

void ComparisonScenario::validate() const {
  if (model_x.extreme != model_y.extreme) {
    throw InvalidInput("ComparisonScenario: models must share the extreme type");
  }
}

bool ConditionReport::all_pass() const {
  return std::all_of(hypotheses.begin(), hypotheses.end(),
                     [](const Hypothesis& h) { return h.verdict.pass(); });
}

double ConditionReport::min_hypothesis_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& h : hypotheses) m = std::min(m, h.verdict.margin);
  return m;
}

bool ConditionReport::consistent() const { return !(all_pass() && conclusion.fails()); }

bool ConditionReport::red_flag(double margin_units) const {
  return all_pass() && min_hypothesis_margin() > margin_units && conclusion.fails();
}

namespace {

// ---------------------------------------------------------------------------
// Hypothesis rows
// ---------------------------------------------------------------------------

enum class Row {
  CountsInterleaved,
  CountsSubW,
  ScalesSuperW,
  ScalesSubW,
  LogScalesSubW,
  LambdaInD,
  LambdaInE,
  MuInD,
  MuInE,
  N1GeqN2,
  N1LeqN2,
  SuperAdditive,
  LogConvexEither,
  LogConcave,
  GenEqual,
  BaseEqual,
  Rt1LeqRt2,
  Rt1GeqRt2,
  R1LeqR2,
  R1GeqR2,
  F1GeqF2,
  F1LeqF2,
  RtDecEither,
  RIncEither,
  RDecreasing,
  RIncreasing,
  XrDecreasing,
  XrConvex,
  XrDecreasingStar,
  XrtIncreasing,
  XrtConvex,
  ElastRtDecreasing,
  ElastRDecreasing,
  PsiRatioDecreasing,
  PsiRatioConvex,
  OneMinusDec,
  ProductRuleInc,
  DerivRatioInc,
  ScaleRatio,
};

const char* row_name(Row r) {
  switch (r) {
    case Row::CountsInterleaved: return "counts interleaved (n1 <= n1* <= n2* <= n2)";
    case Row::CountsSubW: return "counts: (n1,n2) >=_w (n1*,n2*)";
    case Row::ScalesSuperW: return "scales: lambda >=^w mu (expanded)";
    case Row::ScalesSubW: return "scales: lambda >=_w mu (expanded)";
    case Row::LogScalesSubW: return "log-scales: m >=_w v (expanded)";
    case Row::LambdaInD: return "lambda in D+";
    case Row::LambdaInE: return "lambda in E+";
    case Row::MuInD: return "mu in D+";
    case Row::MuInE: return "mu in E+";
    case Row::N1GeqN2: return "n1* >= n2*";
    case Row::N1LeqN2: return "n1* <= n2*";
    case Row::SuperAdditive: return "phi2 o psi1 super-additive";
    case Row::LogConvexEither: return "psi1 or psi2 log-convex";
    case Row::LogConcave: return "psi log-concave";
    case Row::GenEqual: return "psi1 = psi2";
    case Row::BaseEqual: return "F1 = F2";
    case Row::Rt1LeqRt2: return "rt1 <= rt2";
    case Row::Rt1GeqRt2: return "rt1 >= rt2";
    case Row::R1LeqR2: return "r1 <= r2";
    case Row::R1GeqR2: return "r1 >= r2";
    case Row::F1GeqF2: return "F1 >= F2";
    case Row::F1LeqF2: return "F1 <= F2";
    case Row::RtDecEither: return "rt1 or rt2 decreasing";
    case Row::RIncEither: return "r1 or r2 increasing";
    case Row::RDecreasing: return "r decreasing";
    case Row::RIncreasing: return "r increasing";
    case Row::XrDecreasing: return "x r(x) decreasing";
    case Row::XrConvex: return "x r(x) convex";
    case Row::XrDecreasingStar: return "x r(x) decreasing";
    case Row::XrtIncreasing: return "x rt(x) increasing";
    case Row::XrtConvex: return "x rt(x) convex";
    case Row::ElastRtDecreasing: return "x rt'(x)/rt(x) decreasing";
    case Row::ElastRDecreasing: return "x r'(x)/r(x) decreasing";
    case Row::PsiRatioDecreasing: return "psi/psi' decreasing";
    case Row::PsiRatioConvex: return "psi/psi' convex";
    case Row::OneMinusDec: return "(1-psi)/psi' decreasing";
    case Row::ProductRuleInc: return "[(1-psi)/psi'] * [(1-psi)/psi']' increasing";
    case Row::DerivRatioInc: return "[(1-psi)/psi']' / (psi/psi') increasing";
    case Row::ScaleRatio: return "scale ratio: max(lambda)/min(lambda) >= max(mu)/min(mu)";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

// How the conclusion's two distributions derive from the scenario. Xn keeps
// model X as given; Xs rebuilds it with Y's counts; Ys is model Y. The pair
// (A, B) reads "A is dominated by B" in the theorem's relation.
enum class Pairing { YsXs, XsXn, YsXn, XsYs, XnXs, XnYs };

struct TheoremDef {
  const char* id;
  bool max;
  Pairing pairing;
  orders::Relation relation;
  std::vector<Row> rows;
};

const std::vector<TheoremDef>& registry() {
  using orders::Relation;
  static const std::vector<TheoremDef> defs = {
      // Largest order statistics.
      {"MAX_ST_SAME_N_INC", true, Pairing::YsXs, Relation::St,
       {Row::LambdaInE, Row::MuInE, Row::N1GeqN2, Row::Rt1GeqRt2, Row::ScalesSuperW,
        Row::SuperAdditive, Row::LogConvexEither, Row::RtDecEither}},
      {"MAX_ST_SAME_N_DEC", true, Pairing::YsXs, Relation::St,
       {Row::LambdaInD, Row::MuInD, Row::N1LeqN2, Row::Rt1LeqRt2, Row::ScalesSuperW,
        Row::SuperAdditive, Row::LogConvexEither, Row::RtDecEither}},
      {"MAX_ST_SAMPLE_SIZES", true, Pairing::XsXn, Relation::St,
       {Row::CountsInterleaved, Row::CountsSubW, Row::LambdaInD, Row::F1GeqF2}},
      {"MAX_ST_SAMPLE_SIZES_EQ", true, Pairing::XsXn, Relation::St,
       {Row::CountsInterleaved, Row::CountsSubW, Row::LambdaInD, Row::BaseEqual}},
      {"MAX_ST_COMBINED", true, Pairing::YsXn, Relation::St,
       {Row::CountsInterleaved, Row::CountsSubW, Row::LambdaInD, Row::MuInD, Row::F1GeqF2,
        Row::Rt1LeqRt2, Row::ScalesSuperW, Row::SuperAdditive, Row::LogConvexEither,
        Row::RtDecEither}},
      {"MAX_ST_COMBINED_COR1", true, Pairing::YsXn, Relation::St,
       {Row::CountsInterleaved, Row::CountsSubW, Row::LambdaInD, Row::MuInD, Row::GenEqual,
        Row::LogConvexEither, Row::RtDecEither, Row::Rt1LeqRt2, Row::F1GeqF2,
        Row::ScalesSuperW}},
      {"MAX_ST_COMBINED_COR2", true, Pairing::YsXn, Relation::St,
       {Row::CountsInterleaved, Row::CountsSubW, Row::LambdaInD, Row::MuInD, Row::GenEqual,
        Row::LogConvexEither, Row::BaseEqual, Row::RtDecEither, Row::ScalesSuperW}},
      {"MAX_RH_SAME_N_INC", true, Pairing::YsXs, Relation::Rh,
       {Row::GenEqual, Row::BaseEqual, Row::N1GeqN2, Row::LambdaInE, Row::MuInE,
        Row::LogConcave, Row::OneMinusDec, Row::ProductRuleInc, Row::RDecreasing,
        Row::XrDecreasing, Row::XrConvex, Row::ScalesSuperW}},
      {"MAX_RH_SAME_N_DEC", true, Pairing::YsXs, Relation::Rh,
       {Row::GenEqual, Row::BaseEqual, Row::N1LeqN2, Row::LambdaInD, Row::MuInD,
        Row::LogConcave, Row::OneMinusDec, Row::ProductRuleInc, Row::RDecreasing,
        Row::XrDecreasing, Row::XrConvex, Row::ScalesSuperW}},
      {"MAX_RH_SAMPLE_SIZES", true, Pairing::XsXn, Relation::Rh,
       {Row::CountsInterleaved, Row::CountsSubW, Row::BaseEqual, Row::LambdaInD,
        Row::LogConcave, Row::OneMinusDec, Row::XrDecreasing}},
      {"MAX_RH_COMBINED", true, Pairing::YsXn, Relation::Rh,
       {Row::CountsInterleaved, Row::CountsSubW, Row::GenEqual, Row::BaseEqual, Row::LambdaInD,
        Row::MuInD, Row::LogConcave, Row::OneMinusDec, Row::ProductRuleInc, Row::XrDecreasing,
        Row::XrConvex, Row::RDecreasing, Row::ScalesSuperW}},
      {"MAX_STAR", true, Pairing::YsXs, Relation::Star,
       {Row::GenEqual, Row::BaseEqual, Row::ScaleRatio, Row::PsiRatioDecreasing,
        Row::PsiRatioConvex, Row::ElastRtDecreasing, Row::XrtIncreasing}},
      {"MAX_LORENZ", true, Pairing::YsXs, Relation::Lorenz,
       {Row::GenEqual, Row::BaseEqual, Row::ScaleRatio, Row::PsiRatioDecreasing,
        Row::PsiRatioConvex, Row::ElastRtDecreasing, Row::XrtIncreasing}},
      // Smallest order statistics.
      {"MIN_ST_SAME_N_INC", false, Pairing::XsYs, Relation::St,
       {Row::LambdaInE, Row::MuInE, Row::N1LeqN2, Row::R1LeqR2, Row::ScalesSubW,
        Row::SuperAdditive, Row::LogConvexEither, Row::RIncEither}},
      {"MIN_ST_SAME_N_DEC", false, Pairing::XsYs, Relation::St,
       {Row::LambdaInD, Row::MuInD, Row::N1GeqN2, Row::R1GeqR2, Row::ScalesSubW,
        Row::SuperAdditive, Row::LogConvexEither, Row::RIncEither}},
      {"MIN_ST_SAMPLE_SIZES", false, Pairing::XnXs, Relation::St,
       {Row::CountsInterleaved, Row::CountsSubW, Row::LambdaInE, Row::F1LeqF2}},
      {"MIN_ST_SAMPLE_SIZES_EQ", false, Pairing::XnXs, Relation::St,
       {Row::CountsInterleaved, Row::CountsSubW, Row::LambdaInE, Row::BaseEqual}},
      {"MIN_ST_COMBINED", false, Pairing::XnYs, Relation::St,
       {Row::CountsInterleaved, Row::CountsSubW, Row::LambdaInE, Row::MuInE, Row::R1LeqR2,
        Row::F1LeqF2, Row::ScalesSubW, Row::SuperAdditive, Row::LogConvexEither,
        Row::RIncEither}},
      {"MIN_ST_COMBINED_COR1", false, Pairing::XnYs, Relation::St,
       {Row::CountsInterleaved, Row::CountsSubW, Row::LambdaInE, Row::MuInE, Row::GenEqual,
        Row::LogConvexEither, Row::RIncEither, Row::R1LeqR2, Row::F1LeqF2, Row::ScalesSubW}},
      {"MIN_ST_COMBINED_COR2", false, Pairing::XnYs, Relation::St,
       {Row::CountsInterleaved, Row::CountsSubW, Row::LambdaInE, Row::MuInE, Row::GenEqual,
        Row::LogConvexEither, Row::BaseEqual, Row::RIncEither, Row::ScalesSubW}},
      {"MIN_HR_SAME_N_INC", false, Pairing::XsYs, Relation::Hr,
       {Row::GenEqual, Row::BaseEqual, Row::N1LeqN2, Row::LambdaInE, Row::MuInE,
        Row::LogConcave, Row::OneMinusDec, Row::DerivRatioInc, Row::RIncreasing,
        Row::XrtIncreasing, Row::XrtConvex, Row::LogScalesSubW}},
      {"MIN_HR_SAME_N_DEC", false, Pairing::XsYs, Relation::Hr,
       {Row::GenEqual, Row::BaseEqual, Row::N1GeqN2, Row::LambdaInD, Row::MuInD,
        Row::LogConcave, Row::OneMinusDec, Row::DerivRatioInc, Row::RIncreasing,
        Row::XrtIncreasing, Row::XrtConvex, Row::LogScalesSubW}},
      {"MIN_HR_SAMPLE_SIZES", false, Pairing::XnXs, Relation::Hr,
       {Row::CountsInterleaved, Row::CountsSubW, Row::BaseEqual, Row::LambdaInE,
        Row::XrtIncreasing, Row::LogConcave, Row::OneMinusDec}},
      {"MIN_HR_COMBINED", false, Pairing::XnYs, Relation::Hr,
       {Row::CountsInterleaved, Row::CountsSubW, Row::GenEqual, Row::BaseEqual, Row::LambdaInE,
        Row::MuInE, Row::LogConcave, Row::OneMinusDec, Row::DerivRatioInc, Row::RIncreasing,
        Row::XrtIncreasing, Row::XrtConvex, Row::LogScalesSubW}},
      {"MIN_STAR", false, Pairing::YsXs, Relation::Star,
       {Row::GenEqual, Row::BaseEqual, Row::ScaleRatio, Row::PsiRatioDecreasing,
        Row::PsiRatioConvex, Row::ElastRDecreasing, Row::XrDecreasingStar}},
      {"MIN_LORENZ", false, Pairing::YsXs, Relation::Lorenz,
       {Row::GenEqual, Row::BaseEqual, Row::ScaleRatio, Row::PsiRatioDecreasing,
        Row::PsiRatioConvex, Row::ElastRDecreasing, Row::XrDecreasingStar}},
  };
  return defs;
}

const TheoremDef* find_def(const std::string& id) {
  for (const auto& d : registry()) {
    if (id == d.id) return &d;
  }
  return nullptr;
}

ShapeVerdict inconclusive_verdict(const std::string&) {
  ShapeVerdict v;
  v.status = ShapeStatus::Inconclusive;
  v.margin = -std::numeric_limits<double>::infinity();
  return v;
}

// Disjunction of two verdicts: passes when either side passes.
ShapeVerdict either(const ShapeVerdict& a, const ShapeVerdict& b) {
  if (a.pass() || b.pass()) {
    ShapeVerdict v;
    v.status = ShapeStatus::Pass;
    v.margin = std::max(a.margin, b.margin);
    v.excluded = std::min(a.excluded, b.excluded);
    return v;
  }
  if (a.fail() && b.fail()) {
    ShapeVerdict v = a;
    v.margin = std::max(a.margin, b.margin);
    return v;
  }
  return a.fail() ? b : a;  // the inconclusive side dominates
}

// ---------------------------------------------------------------------------
// Row evaluation against one scenario
// ---------------------------------------------------------------------------

struct Context {
  const ComparisonScenario& s;
  const Generator& gx;
  const Generator& gy;
  const Baseline& f1;
  const Baseline& f2;
  double l1, l2, m1, m2;
  int n1, n2, n1s, n2s;

  explicit Context(const ComparisonScenario& sc)
      : s(sc),
        gx(sc.model_x.generator),
        gy(sc.model_y.generator),
        f1(sc.model_x.baseline1),
        f2(sc.model_x.baseline2),
        l1(sc.model_x.scale1),
        l2(sc.model_x.scale2),
        m1(sc.model_y.scale1),
        m2(sc.model_y.scale2),
        n1(sc.model_x.count1),
        n2(sc.model_x.count2),
        n1s(sc.model_y.count1),
        n2s(sc.model_y.count2) {}

  // Comparison rows sweep the union of both quantile ranges; single-baseline
  // shape rows stay on their own distribution's range.
  numerics::Grid base_grid() const { return baselines::default_baseline_grid(f1, f2); }
  numerics::Grid own_grid(const Baseline& b) const {
    return baselines::default_baseline_grid(b, b);
  }
  numerics::Grid gen_grid(const Generator& g) const { return copula::default_generator_grid(g); }
};

ShapeVerdict eval_row(const Context& c, Row row) {
  namespace maj = exos::majorization;
  using maj::expand_outlier_vector;
  auto lam_vec = [&] { return expand_outlier_vector(c.l1, c.l2, c.n1s, c.n2s); };
  auto mu_vec = [&] { return expand_outlier_vector(c.m1, c.m2, c.n1s, c.n2s); };
  try {
    switch (row) {
      case Row::CountsInterleaved:
        return numerics::bool_verdict(1 <= c.n1 && c.n1 <= c.n1s && c.n1s <= c.n2s &&
                                      c.n2s <= c.n2);
      case Row::CountsSubW:
        return numerics::bool_verdict(maj::weakly_submajorizes(
            {static_cast<double>(c.n1), static_cast<double>(c.n2)},
            {static_cast<double>(c.n1s), static_cast<double>(c.n2s)}));
      case Row::ScalesSuperW:
        return numerics::bool_verdict(maj::weakly_supermajorizes(lam_vec(), mu_vec()));
      case Row::ScalesSubW:
        return numerics::bool_verdict(maj::weakly_submajorizes(lam_vec(), mu_vec()));
      case Row::LogScalesSubW: {
        // Weak submajorization is invariant under a common shift; shift the
        // log-scales so both vectors stay nonnegative.
        std::vector<double> mv = {std::log(c.l1), std::log(c.l2)};
        std::vector<double> vv = {std::log(c.m1), std::log(c.m2)};
        const double low = std::min({mv[0], mv[1], vv[0], vv[1], 0.0});
        maj::RealVector mvec = expand_outlier_vector(mv[0] - low, mv[1] - low, c.n1s, c.n2s);
        maj::RealVector vvec = expand_outlier_vector(vv[0] - low, vv[1] - low, c.n1s, c.n2s);
        return numerics::bool_verdict(maj::weakly_submajorizes(mvec, vvec));
      }
      case Row::LambdaInD:
        return numerics::bool_verdict(maj::in_decreasing_cone({c.l1, c.l2}));
      case Row::LambdaInE:
        return numerics::bool_verdict(maj::in_increasing_cone({c.l1, c.l2}));
      case Row::MuInD:
        return numerics::bool_verdict(maj::in_decreasing_cone({c.m1, c.m2}));
      case Row::MuInE:
        return numerics::bool_verdict(maj::in_increasing_cone({c.m1, c.m2}));
      case Row::N1GeqN2:
        return numerics::bool_verdict(c.n1s >= c.n2s);
      case Row::N1LeqN2:
        return numerics::bool_verdict(c.n1s <= c.n2s);
      case Row::ScaleRatio: {
        const double lr = std::max(c.l1, c.l2) / std::min(c.l1, c.l2);
        const double mr = std::max(c.m1, c.m2) / std::min(c.m1, c.m2);
        return numerics::bool_verdict(lr >= mr);
      }
      case Row::SuperAdditive:
        return copula::check_super_additive(c.gy, c.gx, c.gen_grid(c.gx));
      case Row::LogConvexEither:
        return either(copula::check_log_convex(c.gx, c.gen_grid(c.gx)),
                      copula::check_log_convex(c.gy, c.gen_grid(c.gy)));
      case Row::LogConcave:
        return copula::check_log_concave(c.gx, c.gen_grid(c.gx));
      case Row::GenEqual:
        return numerics::bool_verdict(copula::same_generator(c.gx, c.gy));
      case Row::BaseEqual:
        return numerics::bool_verdict(baselines::same_baseline(c.f1, c.f2));
      case Row::Rt1LeqRt2:
        return baselines::compare_hazards(c.f1, c.f2, CompareMode::RevHazardLeq, c.base_grid());
      case Row::Rt1GeqRt2:
        return baselines::compare_hazards(c.f2, c.f1, CompareMode::RevHazardLeq, c.base_grid());
      case Row::R1LeqR2:
        return baselines::compare_hazards(c.f1, c.f2, CompareMode::HazardLeq, c.base_grid());
      case Row::R1GeqR2:
        return baselines::compare_hazards(c.f2, c.f1, CompareMode::HazardLeq, c.base_grid());
      case Row::F1GeqF2:
        return baselines::compare_hazards(c.f2, c.f1, CompareMode::CdfLeq, c.base_grid());
      case Row::F1LeqF2:
        return baselines::compare_hazards(c.f1, c.f2, CompareMode::CdfLeq, c.base_grid());
      case Row::RtDecEither:
        return either(
            baselines::check_baseline_shape(c.f1, ShapeKind::RtDecreasing, c.own_grid(c.f1)),
            baselines::check_baseline_shape(c.f2, ShapeKind::RtDecreasing, c.own_grid(c.f2)));
      case Row::RIncEither:
        return either(
            baselines::check_baseline_shape(c.f1, ShapeKind::RIncreasing, c.own_grid(c.f1)),
            baselines::check_baseline_shape(c.f2, ShapeKind::RIncreasing, c.own_grid(c.f2)));
      case Row::RDecreasing:
        return baselines::check_baseline_shape(c.f1, ShapeKind::RDecreasing, c.own_grid(c.f1));
      case Row::RIncreasing:
        return baselines::check_baseline_shape(c.f1, ShapeKind::RIncreasing, c.own_grid(c.f1));
      case Row::XrDecreasing:
        return baselines::check_baseline_shape(c.f1, ShapeKind::XrDecreasing, c.own_grid(c.f1));
      case Row::XrDecreasingStar:
        return baselines::check_baseline_shape(c.f1, ShapeKind::XrDecreasingStar,
                                               c.own_grid(c.f1));
      case Row::XrConvex:
        return baselines::check_baseline_shape(c.f1, ShapeKind::XrConvex, c.own_grid(c.f1));
      case Row::XrtIncreasing:
        return baselines::check_baseline_shape(c.f1, ShapeKind::XrtIncreasing, c.own_grid(c.f1));
      case Row::XrtConvex:
        return baselines::check_baseline_shape(c.f1, ShapeKind::XrtConvex, c.own_grid(c.f1));
      case Row::ElastRtDecreasing:
        return baselines::check_baseline_shape(c.f1, ShapeKind::ElasticityRtDecreasing,
                                               c.own_grid(c.f1));
      case Row::ElastRDecreasing:
        return baselines::check_baseline_shape(c.f1, ShapeKind::ElasticityRDecreasing,
                                               c.own_grid(c.f1));
      case Row::OneMinusDec:
        return copula::check_ratio_shape(c.gx, RatioKind::OneMinusPsiOverDPsi,
                                         RatioShape::Decreasing, c.gen_grid(c.gx));
      case Row::ProductRuleInc:
        return copula::check_ratio_shape(c.gx, RatioKind::ProductRuleTerm,
                                         RatioShape::Increasing, c.gen_grid(c.gx));
      case Row::DerivRatioInc:
        return copula::check_ratio_shape(c.gx, RatioKind::RatioOfDerivatives,
                                         RatioShape::Increasing, c.gen_grid(c.gx));
      case Row::PsiRatioDecreasing:
        return copula::check_ratio_shape(c.gx, RatioKind::PsiOverDPsi, RatioShape::Decreasing,
                                         c.gen_grid(c.gx));
      case Row::PsiRatioConvex:
        return copula::check_ratio_shape(c.gx, RatioKind::PsiOverDPsi, RatioShape::Convex,
                                         c.gen_grid(c.gx));
    }
  } catch (const InvalidInput& e) {
    return inconclusive_verdict(e.what());
  } catch (const EvaluationError& e) {
    return inconclusive_verdict(e.what());
  } catch (const BracketError& e) {
    return inconclusive_verdict(e.what());
  } catch (const QuadratureError& e) {
    return inconclusive_verdict(e.what());
  }
  throw InvalidInput("eval_row: unknown row");
}

// ---------------------------------------------------------------------------
// Conclusion evaluation
// ---------------------------------------------------------------------------

MultipleOutlierModel with_counts(const MultipleOutlierModel& m, int c1, int c2) {
  MultipleOutlierModel out = m;
  out.count1 = c1;
  out.count2 = c2;
  return out;
}

struct Pair {
  ExtremeDistribution a;
  ExtremeDistribution b;
  std::string claim;  // "A <= B" rendered with counts
};

std::string side_name(const char* base, int c1, int c2) {
  std::ostringstream os;
  os << base << "(" << c1 << "," << c2 << ")";
  return os.str();
}

std::string pair_claim(const ComparisonScenario& s, Pairing p, orders::Relation rel) {
  const std::string xn = side_name("X", s.model_x.count1, s.model_x.count2);
  const std::string xs = side_name("X", s.model_y.count1, s.model_y.count2);
  const std::string ys = side_name("Y", s.model_y.count1, s.model_y.count2);
  auto claim = [&](const std::string& a, const std::string& b) {
    return a + " <=_" + orders::to_string(rel) + " " + b;
  };
  switch (p) {
    case Pairing::YsXs: return claim(ys, xs);
    case Pairing::XsXn: return claim(xs, xn);
    case Pairing::YsXn: return claim(ys, xn);
    case Pairing::XsYs: return claim(xs, ys);
    case Pairing::XnXs: return claim(xn, xs);
    case Pairing::XnYs: return claim(xn, ys);
  }
  return "?";
}

Pair make_pair(const ComparisonScenario& s, Pairing p, orders::Relation rel) {
  const auto& mx = s.model_x;
  const auto& my = s.model_y;
  const MultipleOutlierModel xs = with_counts(mx, my.count1, my.count2);
  const std::string claim = pair_claim(s, p, rel);
  switch (p) {
    case Pairing::YsXs:
      return {ExtremeDistribution(my), ExtremeDistribution(xs), claim};
    case Pairing::XsXn:
      return {ExtremeDistribution(xs), ExtremeDistribution(mx), claim};
    case Pairing::YsXn:
      return {ExtremeDistribution(my), ExtremeDistribution(mx), claim};
    case Pairing::XsYs:
      return {ExtremeDistribution(xs), ExtremeDistribution(my), claim};
    case Pairing::XnXs:
      return {ExtremeDistribution(mx), ExtremeDistribution(xs), claim};
    case Pairing::XnYs:
      return {ExtremeDistribution(mx), ExtremeDistribution(my), claim};
  }
  throw InvalidInput("make_pair: unknown pairing");
}

orders::OrderVerdict conclusion_check(const ComparisonScenario& s, Pairing p,
                                      orders::Relation rel) {
  const Pair pr = make_pair(s, p, rel);
  orders::Options opts;
  if (s.grid) opts.grid = s.grid;
  return orders::check(rel, pr.a, pr.b, opts);
}

std::string conclusion_key(Pairing p, orders::Relation rel) {
  return std::to_string(static_cast<int>(p)) + ":" + orders::to_string(rel);
}

}  // namespace

// ---------------------------------------------------------------------------
// Public API
// ---------------------------------------------------------------------------

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& d : registry()) v.emplace_back(d.id);
    return v;
  }();
  return ids;
}

bool is_max_theorem(const std::string& id) {
  const TheoremDef* d = find_def(id);
  if (!d) throw InvalidInput("unknown theorem id: " + id);
  return d->max;
}

TheoremEvaluator::TheoremEvaluator(const ComparisonScenario& s) : s_(s) { s_.validate(); }

ConditionReport TheoremEvaluator::report(const std::string& id) {
  const TheoremDef* def = find_def(id);
  if (!def) throw InvalidInput("unknown theorem id: " + id);
  const bool is_max_scenario = s_.model_x.extreme == Extreme::Max;
  if (def->max != is_max_scenario) {
    throw InvalidInput("theorem " + id + " does not match the scenario's extreme type");
  }

  ConditionReport rep;
  rep.theorem_id = id;
  rep.relation = def->relation;

  const Context ctx(s_);
  for (Row row : def->rows) {
    const std::string name = row_name(row);
    auto it = std::find_if(hyp_cache_.begin(), hyp_cache_.end(),
                           [&](const auto& kv) { return kv.first == name; });
    if (it == hyp_cache_.end()) {
      hyp_cache_.emplace_back(name, eval_row(ctx, row));
      it = std::prev(hyp_cache_.end());
    }
    rep.hypotheses.push_back({name, it->second});
  }

  const std::string key = conclusion_key(def->pairing, def->relation);
  auto cit = std::find_if(concl_cache_.begin(), concl_cache_.end(),
                          [&](const auto& kv) { return kv.first == key; });
  if (cit == concl_cache_.end()) {
    concl_cache_.emplace_back(key, conclusion_check(s_, def->pairing, def->relation));
    cit = std::prev(concl_cache_.end());
  }
  rep.conclusion = cit->second;
  rep.claim = pair_claim(s_, def->pairing, def->relation);
  return rep;
}

ConditionReport evaluate_theorem(const std::string& id, const ComparisonScenario& s) {
  TheoremEvaluator ev(s);
  return ev.report(id);
}

// ---------------------------------------------------------------------------
// Built-in scenarios
// ---------------------------------------------------------------------------

namespace {

ComparisonScenario make_scenario(Extreme ex, Generator gx, Generator gy, Baseline f1, Baseline f2,
                                 double l1, double l2, double m1, double m2, int n1, int n2,
                                 int n1s, int n2s, std::string note) {
  MultipleOutlierModel mx{std::move(gx), f1, f2, l1, l2, n1, n2, ex};
  MultipleOutlierModel my{std::move(gy), std::move(f1), std::move(f2), m1, m2, n1s, n2s, ex};
  return ComparisonScenario(std::move(mx), std::move(my), std::move(note));
}

}  // namespace

const std::vector<BuiltinScenario>& builtin_scenarios() {
  static const std::vector<BuiltinScenario> all = [] {
    std::vector<BuiltinScenario> v;
    v.push_back({"ex_3_1",
                 make_scenario(Extreme::Max, Generator::gumbel_exp(9), Generator::gumbel_exp(10),
                               Baseline::exponential(), Baseline::kummer(), 5, 2, 6, 3, 1, 11, 5,
                               6, "parallel systems, usual stochastic order"),
                 "MAX_ST_COMBINED",
                 {},
                 orders::Status::Holds});
    v.push_back({"ce_3_1",
                 make_scenario(Extreme::Max, Generator::gumbel_exp(3), Generator::gumbel_exp(10),
                               Baseline::exponential(), Baseline::lomax_half(), 2, 6, 8, 2, 1, 8,
                               3, 4, "usual stochastic order fails when cone/rh conditions drop"),
                 "MAX_ST_COMBINED",
                 {row_name(Row::LambdaInD), row_name(Row::Rt1LeqRt2), row_name(Row::ScalesSuperW)},
                 orders::Status::Fails});
    v.push_back({"ex_3_2",
                 make_scenario(Extreme::Max, Generator::log_exp(0.2), Generator::log_exp(0.2),
                               Baseline::pareto(5, 1), Baseline::pareto(5, 1), 3, 2, 6, 5, 2, 10,
                               3, 4, "parallel systems, reversed hazard rate order"),
                 "MAX_RH_COMBINED",
                 {},
                 orders::Status::Holds});
    v.push_back({"ex_3_4",
                 make_scenario(Extreme::Min, Generator::gumbel_exp(9), Generator::gumbel_exp(10),
                               Baseline::power(400, 2), Baseline::exponential(), 2, 6, 1, 3, 4, 8,
                               6, 7, "series systems, usual stochastic order"),
                 "MIN_ST_COMBINED",
                 {row_name(Row::CountsSubW), row_name(Row::R1LeqR2)},
                 orders::Status::Holds});
    v.push_back({"ce_3_2",
                 make_scenario(Extreme::Min, Generator::gumbel_exp(4.5), Generator::gumbel_exp(5),
                               Baseline::exponential(), Baseline::lomax_half(), 1.2, 3.6, 1.4, 3,
                               2, 11, 3, 9, "usual stochastic order fails when r1<=r2 drops"),
                 "MIN_ST_COMBINED",
                 {row_name(Row::R1LeqR2), row_name(Row::F1LeqF2)},
                 orders::Status::Fails});
    v.push_back({"ex_3_5",
                 make_scenario(Extreme::Min, Generator::log_exp(0.99), Generator::log_exp(0.99),
                               Baseline::power(1000, 2), Baseline::power(1000, 2), std::exp(0.5),
                               std::exp(0.6), std::exp(0.2), std::exp(0.3), 2, 11, 3, 7,
                               "series systems, hazard rate order"),
                 "MIN_HR_COMBINED",
                 {},
                 orders::Status::Holds});
    return v;
  }();
  return all;
}

const BuiltinScenario* find_builtin(const std::string& name) {
  for (const auto& b : builtin_scenarios()) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Randomised scenarios and the soundness audit
// ---------------------------------------------------------------------------

ComparisonScenario random_scenario(std::mt19937_64& rng) {
  auto unif = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };

  auto random_generator = [&]() -> Generator {
    switch (pick(5)) {
      case 0:
      case 1:
        return Generator::gumbel_exp(unif(1.5, 12.0));
      case 2:
      case 3:
        return Generator::log_exp(unif(0.1, 1.0));
      default:
        return Generator::independence();
    }
  };
  auto random_baseline = [&]() -> Baseline {
    switch (pick(5)) {
      case 0: return Baseline::exponential();
      case 1: return Baseline::kummer();
      case 2: return Baseline::lomax_half();
      case 3: return Baseline::power(unif(50.0, 1000.0), unif(0.5, 6.0));
      default: return Baseline::pareto(unif(2.0, 8.0), unif(0.5, 2.0));
    }
  };

  const Extreme ex = pick(2) == 0 ? Extreme::Max : Extreme::Min;
  Generator gx = random_generator();
  Generator gy = pick(5) < 2 ? gx : random_generator();
  Baseline f1 = random_baseline();
  Baseline f2 = pick(2) == 0 ? f1 : random_baseline();

  double l1 = unif(0.5, 8.0), l2 = unif(0.5, 8.0);
  double m1 = unif(0.5, 8.0), m2 = unif(0.5, 8.0);
  switch (pick(4)) {
    case 0:  // aligned cone, mu dominated by lambda
      if (l1 < l2) std::swap(l1, l2);
      m1 = l1 * unif(0.8, 1.3);
      m2 = l2 * unif(0.8, 1.3);
      if (m1 < m2) std::swap(m1, m2);
      break;
    case 1:  // increasing cones
      if (l1 > l2) std::swap(l1, l2);
      if (m1 > m2) std::swap(m1, m2);
      break;
    default:
      break;
  }

  int c[4] = {1 + pick(12), 1 + pick(12), 1 + pick(12), 1 + pick(12)};
  std::sort(c, c + 4);
  int n1 = c[0], n1s = c[1], n2s = c[2], n2 = c[3];
  if (pick(4) == 0) {  // occasionally break the interleave assumption
    n1 = 1 + pick(12);
    n2 = 1 + pick(12);
  }

  return make_scenario(ex, std::move(gx), std::move(gy), std::move(f1), std::move(f2), l1, l2, m1,
                       m2, n1, n2, n1s, n2s, "randomized");
}

AuditResult run_audit(std::uint64_t seed, int n_random,
                      const std::function<void(const std::string&)>& log) {
  AuditResult res;
  std::mt19937_64 rng(seed);
  auto run_one = [&](const std::string& name, const ComparisonScenario& s) {
    TheoremEvaluator ev(s);
    const bool is_max = s.model_x.extreme == Extreme::Max;
    int flagged_here = 0;
    for (const auto& id : theorem_ids()) {
      if (is_max_theorem(id) != is_max) continue;
      const ConditionReport rep = ev.report(id);
      ++res.reports;
      if (rep.red_flag()) {
        ++res.red_flags;
        ++flagged_here;
        res.flagged.push_back(name + ": " + id + " [" + rep.claim + "]");
      }
    }
    ++res.scenarios;
    if (log) {
      std::ostringstream os;
      os << name << ": " << (flagged_here == 0 ? "ok" : "RED FLAG") << " ("
         << (is_max ? "max" : "min") << ")";
      log(os.str());
    }
  };

  for (const auto& b : builtin_scenarios()) run_one(b.name, b.scenario);
  for (int i = 0; i < n_random; ++i) {
    run_one("random_" + std::to_string(i), random_scenario(rng));
  }
  return res;
}

}  // namespace exos::theorems
