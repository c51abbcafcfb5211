#include "exos.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>
#include <sstream>
#include <string>

#include "csvio.hpp"
#include "orders.hpp"
#include "scenario.hpp"
#include "theorems.hpp"

using exos::baselines::Baseline;
using exos::extremes::Extreme;
using exos::extremes::ExtremeDistribution;
using exos::extremes::MultipleOutlierModel;
using exos::numerics::Grid;
using exos::numerics::Spacing;
using exos::theorems::ComparisonScenario;
using exos::theorems::ConditionReport;

struct exos_scenario {
  ComparisonScenario s;
};

struct exos_report {
  ConditionReport r;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <typename F>
exos_status wrap(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const exos::ParseError& e) {
    set_error(e.what());
    return EXOS_E_PARSE;
  } catch (const exos::InvalidInput& e) {
    set_error(e.what());
    return EXOS_E_INVALID;
  } catch (const exos::EvaluationError& e) {
    set_error(e.what());
    return EXOS_E_EVAL;
  } catch (const exos::BracketError& e) {
    set_error(e.what());
    return EXOS_E_EVAL;
  } catch (const exos::QuadratureError& e) {
    set_error(e.what());
    return EXOS_E_EVAL;
  } catch (const exos::CapError& e) {
    set_error(e.what());
    return EXOS_E_EVAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return EXOS_E_INTERNAL;
  }
}

void copy_str(char* dst, size_t cap, const std::string& src) {
  if (!dst || cap == 0) return;
  const size_t n = std::min(cap - 1, src.size());
  std::memcpy(dst, src.data(), n);
  dst[n] = '\0';
}

ExtremeDistribution side_distribution(const ComparisonScenario& s, exos_side side) {
  return ExtremeDistribution(side == EXOS_SIDE_X ? s.model_x : s.model_y);
}

// Figure-style default range: maxima on [0.01, 50]; minima on
// [0.001, 0.999 * smallest upper support], falling back to the quantile
// range when every support is unbounded.
Grid figure_grid(const ComparisonScenario& s) {
  if (s.grid) return *s.grid;
  const ExtremeDistribution dx(s.model_x);
  const ExtremeDistribution dy(s.model_y);
  if (s.model_x.extreme == Extreme::Max) {
    return exos::numerics::make_grid(0.01, 50.0, 2000, Spacing::Log);
  }
  double hi = std::min(dx.support_hi(), dy.support_hi());
  if (std::isfinite(hi)) {
    hi *= 0.999;
  } else {
    hi = std::max(dx.quantile(1.0 - 1e-4), dy.quantile(1.0 - 1e-4));
  }
  return exos::numerics::make_grid(0.001, hi, 2000, Spacing::Log);
}

std::optional<Grid> override_grid(const exos_grid_opts* o, const ComparisonScenario& s) {
  if (!o || (o->lo <= 0 && o->hi <= 0 && o->count <= 0 && o->log_spacing < 0)) {
    return s.grid;  // file-level grid, when present
  }
  Grid base = s.grid ? *s.grid : figure_grid(s);
  const double lo = o->lo > 0 ? o->lo : base.lo();
  const double hi = o->hi > 0 ? o->hi : base.hi();
  const int count = o->count > 0 ? o->count : static_cast<int>(base.size());
  const Spacing sp = o->log_spacing < 0 ? base.spacing
                    : o->log_spacing == 1 ? Spacing::Log
                                          : Spacing::Linear;
  return exos::numerics::make_grid(lo, hi, count, sp);
}

double curve_value(const ExtremeDistribution& d, exos_curve what, double x) {
  switch (what) {
    case EXOS_CURVE_CDF: return d.cdf(x);
    case EXOS_CURVE_SF: return d.sf(x);
    case EXOS_CURVE_PDF: return d.pdf(x);
    case EXOS_CURVE_HAZARD: return d.hazard(x);
    case EXOS_CURVE_REV_HAZARD: return d.rev_hazard(x);
  }
  throw exos::InvalidInput("unknown curve kind");
}

exos::orders::Relation to_relation(exos_relation rel) {
  switch (rel) {
    case EXOS_REL_ST: return exos::orders::Relation::St;
    case EXOS_REL_HR: return exos::orders::Relation::Hr;
    case EXOS_REL_RH: return exos::orders::Relation::Rh;
    case EXOS_REL_STAR: return exos::orders::Relation::Star;
    case EXOS_REL_LORENZ: return exos::orders::Relation::Lorenz;
  }
  throw exos::InvalidInput("unknown relation");
}

void fill_result(exos_order_result* out, const exos::orders::OrderVerdict& v,
                 const std::string& claim) {
  std::memset(out, 0, sizeof(*out));
  out->status = static_cast<int>(v.status);
  out->has_witness = v.witness.has_value() ? 1 : 0;
  out->witness = v.witness.value_or(std::numeric_limits<double>::quiet_NaN());
  out->margin = v.margin;
  out->excluded = v.excluded;
  copy_str(out->claim, sizeof(out->claim), claim);
  copy_str(out->note, sizeof(out->note), v.note);
}

}  // namespace

extern "C" {

const char* exos_last_error(void) { return g_last_error.c_str(); }

const char* exos_version(void) { return "1.0.0"; }

exos_status exos_scenario_from_file(const char* path, exos_scenario** out) {
  return wrap([&]() {
    if (!path || !out) throw exos::InvalidInput("null argument");
    *out = new exos_scenario{exos::scenario::load_file(path)};
    return EXOS_OK;
  });
}

exos_status exos_scenario_from_string(const char* text, exos_scenario** out) {
  return wrap([&]() {
    if (!text || !out) throw exos::InvalidInput("null argument");
    *out = new exos_scenario{exos::scenario::load_string(text)};
    return EXOS_OK;
  });
}

exos_status exos_scenario_from_builtin(const char* name, exos_scenario** out) {
  return wrap([&]() {
    if (!name || !out) throw exos::InvalidInput("null argument");
    const auto* b = exos::theorems::find_builtin(name);
    if (!b) throw exos::InvalidInput(std::string("unknown built-in scenario '") + name + "'");
    *out = new exos_scenario{b->scenario};
    return EXOS_OK;
  });
}

exos_status exos_scenario_to_file(const exos_scenario* s, const char* path) {
  return wrap([&]() {
    if (!s || !path) throw exos::InvalidInput("null argument");
    exos::scenario::save_file(s->s, path);
    return EXOS_OK;
  });
}

void exos_scenario_free(exos_scenario* s) { delete s; }

int exos_builtin_count(void) {
  return static_cast<int>(exos::theorems::builtin_scenarios().size());
}

const char* exos_builtin_name(int index) {
  const auto& all = exos::theorems::builtin_scenarios();
  if (index < 0 || index >= static_cast<int>(all.size())) return nullptr;
  return all[static_cast<std::size_t>(index)].name.c_str();
}

const char* exos_builtin_theorem(const char* name) {
  if (!name) return nullptr;
  const auto* b = exos::theorems::find_builtin(name);
  return b ? b->theorem_id.c_str() : nullptr;
}

exos_status exos_scenario_is_max(const exos_scenario* s, int* out) {
  return wrap([&]() {
    if (!s || !out) throw exos::InvalidInput("null argument");
    *out = s->s.model_x.extreme == Extreme::Max ? 1 : 0;
    return EXOS_OK;
  });
}

exos_status exos_eval_curve(const exos_scenario* s, exos_side side, exos_curve what,
                            const exos_grid_opts* grid, double* xs, double* ys, size_t capacity,
                            size_t* out_n) {
  return wrap([&]() {
    if (!s || !xs || !ys || !out_n) throw exos::InvalidInput("null argument");
    const auto g = override_grid(grid, s->s);
    const Grid gg = g ? *g : figure_grid(s->s);
    const ExtremeDistribution d = side_distribution(s->s, side);
    size_t n = 0;
    for (double x : gg.points) {
      if (n >= capacity) break;
      const auto v =
          exos::numerics::try_eval([&](double t) { return curve_value(d, what, t); }, x);
      if (!v) continue;
      xs[n] = x;
      ys[n] = *v;
      ++n;
    }
    *out_n = n;
    return EXOS_OK;
  });
}

exos_status exos_eval_csv(const exos_scenario* s, exos_side side, exos_curve what,
                          const exos_grid_opts* grid, const char* out_path) {
  return wrap([&]() {
    if (!s || !out_path) throw exos::InvalidInput("null argument");
    const auto g = override_grid(grid, s->s);
    const Grid gg = g ? *g : figure_grid(s->s);
    const ExtremeDistribution d = side_distribution(s->s, side);
    std::vector<double> xs, ys;
    xs.reserve(gg.size());
    ys.reserve(gg.size());
    for (double x : gg.points) {
      const auto v =
          exos::numerics::try_eval([&](double t) { return curve_value(d, what, t); }, x);
      if (!v) continue;
      xs.push_back(x);
      ys.push_back(*v);
    }
    if (xs.empty()) throw exos::EvaluationError("curve not evaluable anywhere on the grid");
    exos::csvio::write_csv(out_path, {"x", "value"}, {xs, ys});
    return EXOS_OK;
  });
}

exos_status exos_compare(const exos_scenario* s, exos_relation rel, const exos_grid_opts* grid,
                         double slack_override, exos_order_result* out) {
  return wrap([&]() {
    if (!s || !out) throw exos::InvalidInput("null argument");
    const auto r = to_relation(rel);
    exos::orders::Options opts;
    opts.grid = override_grid(grid, s->s);
    if (slack_override > 0) {
      const double factor = slack_override / opts.prob_slack;
      opts.prob_slack = slack_override;
      opts.hazard_slack *= factor;
    }
    const bool is_max = s->s.model_x.extreme == Extreme::Max;
    // Paper orientation: maxima claim Y <= X, minima claim X <= Y; the star
    // and Lorenz results compare Y against X for both extremes.
    const bool y_first = is_max || r == exos::orders::Relation::Star ||
                         r == exos::orders::Relation::Lorenz;
    const ExtremeDistribution dx(s->s.model_x);
    const ExtremeDistribution dy(s->s.model_y);
    const ExtremeDistribution& a = y_first ? dy : dx;
    const ExtremeDistribution& b = y_first ? dx : dy;
    const auto verdict = exos::orders::check(r, a, b, opts);
    std::ostringstream claim;
    claim << (y_first ? "Y" : "X") << " <=_" << exos::orders::to_string(r) << " "
          << (y_first ? "X" : "Y");
    fill_result(out, verdict, claim.str());
    return EXOS_OK;
  });
}

int exos_theorem_count(void) { return static_cast<int>(exos::theorems::theorem_ids().size()); }

const char* exos_theorem_id(int index) {
  const auto& ids = exos::theorems::theorem_ids();
  if (index < 0 || index >= static_cast<int>(ids.size())) return nullptr;
  return ids[static_cast<std::size_t>(index)].c_str();
}

exos_status exos_theorem_eval(const exos_scenario* s, const char* theorem_id, exos_report** out) {
  return wrap([&]() {
    if (!s || !theorem_id || !out) throw exos::InvalidInput("null argument");
    *out = new exos_report{exos::theorems::evaluate_theorem(theorem_id, s->s)};
    return EXOS_OK;
  });
}

void exos_report_free(exos_report* r) { delete r; }

const char* exos_report_theorem(const exos_report* r) {
  return r ? r->r.theorem_id.c_str() : nullptr;
}

const char* exos_report_claim(const exos_report* r) { return r ? r->r.claim.c_str() : nullptr; }

int exos_report_hypothesis_count(const exos_report* r) {
  return r ? static_cast<int>(r->r.hypotheses.size()) : 0;
}

const char* exos_report_hypothesis_name(const exos_report* r, int index) {
  if (!r || index < 0 || index >= exos_report_hypothesis_count(r)) return nullptr;
  return r->r.hypotheses[static_cast<std::size_t>(index)].name.c_str();
}

int exos_report_hypothesis_status(const exos_report* r, int index) {
  if (!r || index < 0 || index >= exos_report_hypothesis_count(r)) return -1;
  return static_cast<int>(r->r.hypotheses[static_cast<std::size_t>(index)].verdict.status);
}

double exos_report_hypothesis_margin(const exos_report* r, int index) {
  if (!r || index < 0 || index >= exos_report_hypothesis_count(r)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return r->r.hypotheses[static_cast<std::size_t>(index)].verdict.margin;
}

int exos_report_hypothesis_witness(const exos_report* r, int index, double* witness,
                                   double* witness2) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (witness) *witness = nan;
  if (witness2) *witness2 = nan;
  if (!r || index < 0 || index >= exos_report_hypothesis_count(r)) return 0;
  const auto& v = r->r.hypotheses[static_cast<std::size_t>(index)].verdict;
  if (!v.witness) return 0;
  if (witness) *witness = *v.witness;
  if (witness2 && v.witness2) *witness2 = *v.witness2;
  return 1;
}

exos_status exos_report_conclusion(const exos_report* r, exos_order_result* out) {
  return wrap([&]() {
    if (!r || !out) throw exos::InvalidInput("null argument");
    fill_result(out, r->r.conclusion, r->r.claim);
    return EXOS_OK;
  });
}

int exos_report_all_pass(const exos_report* r) { return r && r->r.all_pass() ? 1 : 0; }

int exos_report_consistent(const exos_report* r) { return r && r->r.consistent() ? 1 : 0; }

exos_status exos_reproduce(const char* example_name, const char* out_dir, char* summary,
                           size_t summary_cap) {
  return wrap([&]() {
    if (!example_name || !out_dir) throw exos::InvalidInput("null argument");
    const auto* b = exos::theorems::find_builtin(example_name);
    if (!b) {
      throw exos::InvalidInput(std::string("unknown built-in scenario '") + example_name + "'");
    }
    const ComparisonScenario& s = b->scenario;
    const Grid g = figure_grid(s);
    const ExtremeDistribution dx(s.model_x);
    const ExtremeDistribution dy(s.model_y);
    const std::string name = b->name;

    std::vector<std::string> header;
    std::vector<std::vector<double>> cols;
    std::string expected;
    bool observed = false;
    const double slack = 1e-8;

    auto both_signs = [](const std::vector<double>& v, double eps) {
      const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
      return *mn < -eps && *mx > eps;
    };
    auto increasing = [](const std::vector<double>& xs, const std::vector<double>& ys) {
      return exos::numerics::monotone_scan(xs, ys, exos::numerics::Direction::Increasing, 0,
                                           xs.size())
          .pass();
    };

    if (name == "ex_3_1") {
      header = {"x", "cdf_x", "cdf_y"};
      cols.resize(3);
      for (double x : g.points) {
        cols[0].push_back(x);
        cols[1].push_back(dx.cdf(x));
        cols[2].push_back(dy.cdf(x));
      }
      expected = "cdf_y >= cdf_x everywhere (Y dominated in the st order)";
      observed = true;
      for (std::size_t i = 0; i < cols[0].size(); ++i) {
        if (cols[2][i] < cols[1][i] - slack) observed = false;
      }
    } else if (name == "ce_3_1") {
      header = {"x", "cdf_x_minus_cdf_y"};
      cols.resize(2);
      for (double x : g.points) {
        cols[0].push_back(x);
        cols[1].push_back(dx.cdf(x) - dy.cdf(x));
      }
      expected = "difference attains both signs (no st order)";
      observed = both_signs(cols[1], 1e-6);
    } else if (name == "ex_3_2") {
      header = {"x", "cdf_x_over_cdf_y"};
      cols.resize(2);
      for (double x : g.points) {
        const double fy = dy.cdf(x);
        const double fx = dx.cdf(x);
        if (!(fy > 0.0) || !(fx > 0.0)) continue;
        cols[0].push_back(x);
        cols[1].push_back(fx / fy);
      }
      expected = "ratio cdf_x/cdf_y increasing (Y below X in the rh order)";
      observed = increasing(cols[0], cols[1]);
    } else if (name == "ex_3_4") {
      header = {"x", "sf_x_minus_sf_y"};
      cols.resize(2);
      for (double x : g.points) {
        cols[0].push_back(x);
        cols[1].push_back(dx.sf(x) - dy.sf(x));
      }
      expected = "difference <= 0 everywhere (X dominated in the st order)";
      observed = true;
      for (double v : cols[1]) {
        if (v > slack) observed = false;
      }
    } else if (name == "ce_3_2") {
      header = {"x", "sf_x", "sf_y"};
      cols.resize(3);
      std::vector<double> diff;
      for (double x : g.points) {
        cols[0].push_back(x);
        cols[1].push_back(dx.sf(x));
        cols[2].push_back(dy.sf(x));
        diff.push_back(dx.sf(x) - dy.sf(x));
      }
      expected = "survival curves cross (no st order)";
      observed = both_signs(diff, 1e-6);
    } else {  // ex_3_5
      header = {"x", "sf_y_over_sf_x"};
      cols.resize(2);
      for (double x : g.points) {
        const double sx = dx.sf(x);
        const double sy = dy.sf(x);
        if (!(sx > 0.0) || !(sy > 0.0)) continue;
        cols[0].push_back(x);
        cols[1].push_back(sy / sx);
      }
      expected = "ratio sf_y/sf_x increasing (X below Y in the hr order)";
      observed = increasing(cols[0], cols[1]);
    }

    std::filesystem::create_directories(out_dir);
    const std::string path = (std::filesystem::path(out_dir) / (name + ".csv")).string();
    exos::csvio::write_csv(path, header, cols);
    const std::string line =
        name + ": expected " + expected + "; observed=" + (observed ? "yes" : "no");
    copy_str(summary, summary_cap, line);
    if (!observed) throw exos::EvaluationError("expected behaviour not observed: " + line);
    return EXOS_OK;
  });
}

exos_status exos_audit(unsigned long long seed, int n_random, exos_log_fn log, void* user,
                       exos_audit_stats* out) {
  return wrap([&]() {
    std::function<void(const std::string&)> fwd;
    if (log) {
      fwd = [log, user](const std::string& line) { log(line.c_str(), user); };
    }
    const auto res = exos::theorems::run_audit(seed, n_random, fwd);
    if (out) {
      out->scenarios = res.scenarios;
      out->reports = res.reports;
      out->red_flags = res.red_flags;
    }
    return EXOS_OK;
  });
}

}  // extern "C"
