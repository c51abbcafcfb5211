#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "orders.hpp"

namespace exos::theorems {

// Two multiple-outlier models under comparison. Both must share the extreme
// type; the registry additionally assumes they share baselines (scenario
// files enforce this) and verifies identity hypotheses numerically where a
// theorem needs them.
struct ComparisonScenario {
  extremes::MultipleOutlierModel model_x;
  extremes::MultipleOutlierModel model_y;
  std::string note;
  std::optional<numerics::Grid> grid;  // conclusion-grid override

  ComparisonScenario(extremes::MultipleOutlierModel x, extremes::MultipleOutlierModel y,
                     std::string n = "", std::optional<numerics::Grid> g = {})
      : model_x(std::move(x)), model_y(std::move(y)), note(std::move(n)), grid(std::move(g)) {
    validate();
  }

  void validate() const;
};

struct Hypothesis {
  std::string name;
  numerics::ShapeVerdict verdict;
};

// Machine-checked account of one theorem applied to one scenario: every
// sufficient condition with its verdict, plus the conclusion order check,
// evaluated independently of the hypotheses.
struct ConditionReport {
  std::string theorem_id;
  std::string claim;  // e.g. "Y(5,6) <=_st X(1,11)"
  orders::Relation relation = orders::Relation::St;
  std::vector<Hypothesis> hypotheses;
  orders::OrderVerdict conclusion;

  bool all_pass() const;
  double min_hypothesis_margin() const;
  // False only when every hypothesis passed yet the conclusion failed.
  bool consistent() const;
  // The audit's trigger: decisive all-pass (margins above `margin_units`
  // slack units) with a failing conclusion.
  bool red_flag(double margin_units = 10.0) const;
};

const std::vector<std::string>& theorem_ids();
bool is_max_theorem(const std::string& id);

ConditionReport evaluate_theorem(const std::string& id, const ComparisonScenario& s);

// Evaluates several theorems against one scenario, sharing hypothesis and
// conclusion computations across reports.
class TheoremEvaluator {
 public:
  explicit TheoremEvaluator(const ComparisonScenario& s);
  ConditionReport report(const std::string& id);
  const ComparisonScenario& scenario() const { return s_; }

 private:
  friend struct EvalAccess;
  ComparisonScenario s_;
  std::vector<std::pair<std::string, numerics::ShapeVerdict>> hyp_cache_;
  std::vector<std::pair<std::string, orders::OrderVerdict>> concl_cache_;
};

struct BuiltinScenario {
  std::string name;
  ComparisonScenario scenario;
  std::string theorem_id;                                // result it illustrates
  std::vector<std::string> expected_failing_hypotheses;  // empty = all pass
  orders::Status expected_conclusion = orders::Status::Holds;
};

// The six hard-coded comparison scenarios.
const std::vector<BuiltinScenario>& builtin_scenarios();
const BuiltinScenario* find_builtin(const std::string& name);

// Scenario drawn from the named families: gumbel_exp theta in [1.5,12] or
// log_exp theta in [0.1,1], scales in [0.5,8], counts in [1,12] interleaved.
ComparisonScenario random_scenario(std::mt19937_64& rng);

struct AuditResult {
  int scenarios = 0;
  int reports = 0;
  int red_flags = 0;
  std::vector<std::string> flagged;
};

// Soundness sweep: the six builtins plus n_random random scenarios, every
// matching theorem evaluated; red flags are all-pass-with-margin reports
// whose conclusion fails.
AuditResult run_audit(std::uint64_t seed, int n_random,
                      const std::function<void(const std::string&)>& log = {});

}  // namespace exos::theorems
