#pragma once

#include <optional>
#include <string>

#include "extremes.hpp"

namespace exos::orders {

enum class Relation { St, Hr, Rh, Star, Lorenz };
enum class Status { Holds, Fails, Inconclusive };

std::string to_string(Relation r);
std::string to_string(Status s);

// Outcome of one stochastic-order check A <= B. `margin` is the smallest
// slack-normalised headroom over the grid: Holds requires margin >= -1, and
// margin > 10 means the order held decisively (audit threshold). The witness
// is the worst point (x for st/hr/rh, u for star/lorenz).
struct OrderVerdict {
  Relation relation = Relation::St;
  Status status = Status::Inconclusive;
  std::optional<double> witness;
  double margin = std::numeric_limits<double>::infinity();
  long excluded = 0;
  std::string note;

  bool holds() const { return status == Status::Holds; }
  bool fails() const { return status == Status::Fails; }
};

struct Options {
  std::optional<numerics::Grid> grid;   // x-domain override for st/hr/rh
  std::optional<numerics::Grid> ugrid;  // probability-domain override for star/lorenz
  double prob_slack = 1e-8;             // absolute slack on probabilities
  double hazard_slack = 1e-6;           // relative slack on hazards
  int grid_count = 2000;
};

// A <=_st B: sf_A <= sf_B pointwise.
OrderVerdict check_st(const extremes::ExtremeDistribution& a,
                      const extremes::ExtremeDistribution& b, const Options& opts = {});

// A <=_hr B: hazard_A >= hazard_B pointwise, cross-checked against
// monotonicity of sf_B/sf_A; disagreement downgrades to Inconclusive.
OrderVerdict check_hr(const extremes::ExtremeDistribution& a,
                      const extremes::ExtremeDistribution& b, const Options& opts = {});

// A <=_rh B: rev_hazard_A <= rev_hazard_B pointwise, cross-checked against
// monotonicity of cdf_B/cdf_A.
OrderVerdict check_rh(const extremes::ExtremeDistribution& a,
                      const extremes::ExtremeDistribution& b, const Options& opts = {});

// A <=_* B: u -> quantile_B(u)/quantile_A(u) increasing on (0,1).
OrderVerdict check_star(const extremes::ExtremeDistribution& a,
                        const extremes::ExtremeDistribution& b, const Options& opts = {});

// A <=_Lorenz B: normalised cumulative quantile integrals satisfy
// L_A(u) >= L_B(u) on (0,1). Divergent means give Inconclusive.
OrderVerdict check_lorenz(const extremes::ExtremeDistribution& a,
                          const extremes::ExtremeDistribution& b, const Options& opts = {});

OrderVerdict check(Relation rel, const extremes::ExtremeDistribution& a,
                   const extremes::ExtremeDistribution& b, const Options& opts = {});

// Lorenz curve value L(u) and mean in the probability domain (exposed for
// tests).
double mean_from_quantiles(const extremes::ExtremeDistribution& d);

}  // namespace exos::orders
