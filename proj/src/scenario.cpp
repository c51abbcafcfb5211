#include "scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "csvio.hpp"

namespace exos::scenario {

using json = nlohmann::json;
using baselines::Baseline;
using copula::Generator;
using extremes::Extreme;
using extremes::MultipleOutlierModel;
using theorems::ComparisonScenario;

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& field,
                       const std::string& msg) {
  throw ParseError(origin + ": field '" + field + "': " + msg);
}

const json& require(const json& j, const std::string& origin, const std::string& field) {
  auto it = j.find(field);
  if (it == j.end()) fail(origin, field, "missing");
  return *it;
}

double require_number(const json& j, const std::string& origin, const std::string& field) {
  const json& v = require(j, origin, field);
  if (!v.is_number()) fail(origin, field, "expected a number");
  return v.get<double>();
}

std::string require_string(const json& j, const std::string& origin, const std::string& field) {
  const json& v = require(j, origin, field);
  if (!v.is_string()) fail(origin, field, "expected a string");
  return v.get<std::string>();
}

std::pair<double, double> require_pair(const json& j, const std::string& origin,
                                       const std::string& field) {
  const json& v = require(j, origin, field);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    fail(origin, field, "expected an array of two numbers");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

Generator parse_generator(const json& j, const std::string& origin, const std::string& field) {
  const json& g = require(j, origin, field);
  if (!g.is_object()) fail(origin, field, "expected an object");
  const std::string family = require_string(g, origin, field + ".family");
  try {
    if (family == "gumbel_exp") return Generator::gumbel_exp(require_number(g, origin, field + ".theta"));
    if (family == "log_exp") return Generator::log_exp(require_number(g, origin, field + ".theta"));
    if (family == "independence") return Generator::independence();
  } catch (const InvalidInput& e) {
    fail(origin, field, e.what());
  }
  fail(origin, field + ".family", "unknown generator family '" + family + "'");
}

Baseline parse_baseline(const json& j, const std::string& origin, const std::string& field) {
  const json& b = require(j, origin, field);
  if (!b.is_object()) fail(origin, field, "expected an object");
  const std::string family = require_string(b, origin, field + ".family");
  std::vector<double> params;
  if (auto it = b.find("params"); it != b.end()) {
    if (!it->is_array()) fail(origin, field + ".params", "expected an array");
    for (const auto& p : *it) {
      if (!p.is_number()) fail(origin, field + ".params", "expected numbers");
      params.push_back(p.get<double>());
    }
  }
  auto need = [&](std::size_t n) {
    if (params.size() != n) {
      fail(origin, field + ".params",
           "family '" + family + "' takes " + std::to_string(n) + " parameter(s)");
    }
  };
  try {
    if (family == "exponential") { need(0); return Baseline::exponential(); }
    if (family == "kummer") { need(0); return Baseline::kummer(); }
    if (family == "lomax_half") { need(0); return Baseline::lomax_half(); }
    if (family == "power") { need(2); return Baseline::power(params[0], params[1]); }
    if (family == "pareto") { need(2); return Baseline::pareto(params[0], params[1]); }
  } catch (const InvalidInput& e) {
    fail(origin, field, e.what());
  }
  fail(origin, field + ".family", "unknown baseline family '" + family + "'");
}

std::pair<int, int> require_counts(const json& j, const std::string& origin,
                                   const std::string& field) {
  const auto [a, b] = require_pair(j, origin, field);
  if (a < 1 || b < 1 || a != std::floor(a) || b != std::floor(b)) {
    fail(origin, field, "counts must be integers >= 1");
  }
  return {static_cast<int>(a), static_cast<int>(b)};
}

json generator_json(const Generator& g) {
  json j;
  switch (g.family()) {
    case copula::Family::GumbelExp:
      j["family"] = "gumbel_exp";
      j["theta"] = g.theta();
      break;
    case copula::Family::LogExp:
      j["family"] = "log_exp";
      j["theta"] = g.theta();
      break;
    case copula::Family::Independence:
      j["family"] = "independence";
      break;
    case copula::Family::Custom:
      throw InvalidInput("scenario: custom generators cannot be serialized");
  }
  return j;
}

json baseline_json(const Baseline& b) {
  json j;
  switch (b.family()) {
    case baselines::Family::Exponential: j["family"] = "exponential"; break;
    case baselines::Family::Kummer: j["family"] = "kummer"; break;
    case baselines::Family::LomaxHalf: j["family"] = "lomax_half"; break;
    case baselines::Family::Power: j["family"] = "power"; break;
    case baselines::Family::Pareto: j["family"] = "pareto"; break;
    case baselines::Family::Custom:
      throw InvalidInput("scenario: custom baselines cannot be serialized");
  }
  if (!b.params().empty()) j["params"] = b.params();
  return j;
}

std::size_t line_of_offset(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

}  // namespace

ComparisonScenario load_string(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": line " + std::to_string(line_of_offset(text, e.byte)) + ": " +
                     e.what());
  }
  if (!j.is_object()) throw ParseError(origin + ": top level must be an object");

  const std::string extreme = require_string(j, origin, "extreme");
  Extreme ex;
  if (extreme == "max") {
    ex = Extreme::Max;
  } else if (extreme == "min") {
    ex = Extreme::Min;
  } else {
    fail(origin, "extreme", "must be \"max\" or \"min\"");
  }

  Generator gx = parse_generator(j, origin, "generator_x");
  Generator gy = parse_generator(j, origin, "generator_y");
  Baseline f1 = parse_baseline(j, origin, "baseline1");
  Baseline f2 = parse_baseline(j, origin, "baseline2");
  const auto [l1, l2] = require_pair(j, origin, "scales_x");
  const auto [m1, m2] = require_pair(j, origin, "scales_y");
  if (!(l1 > 0.0) || !(l2 > 0.0) || !(m1 > 0.0) || !(m2 > 0.0)) {
    fail(origin, "scales_x/scales_y", "scales must be > 0");
  }
  const auto [n1, n2] = require_counts(j, origin, "counts_x");
  const auto [n1s, n2s] = require_counts(j, origin, "counts_y");

  std::optional<numerics::Grid> grid;
  if (auto it = j.find("grid"); it != j.end()) {
    const json& g = *it;
    if (!g.is_object()) fail(origin, "grid", "expected an object");
    const double lo = require_number(g, origin, "grid.lo");
    const double hi = require_number(g, origin, "grid.hi");
    const double cnt = require_number(g, origin, "grid.count");
    const std::string spacing = require_string(g, origin, "grid.spacing");
    numerics::Spacing sp;
    if (spacing == "log") {
      sp = numerics::Spacing::Log;
    } else if (spacing == "linear") {
      sp = numerics::Spacing::Linear;
    } else {
      fail(origin, "grid.spacing", "must be \"log\" or \"linear\"");
    }
    if (cnt != std::floor(cnt) || cnt < 2) fail(origin, "grid.count", "must be an integer >= 2");
    try {
      grid = numerics::make_grid(lo, hi, static_cast<int>(cnt), sp);
    } catch (const InvalidInput& e) {
      fail(origin, "grid", e.what());
    }
  }

  std::string note;
  if (auto it = j.find("note"); it != j.end() && it->is_string()) note = it->get<std::string>();

  MultipleOutlierModel mx{gx, f1, f2, l1, l2, n1, n2, ex};
  MultipleOutlierModel my{std::move(gy), std::move(f1), std::move(f2), m1, m2, n1s, n2s, ex};
  return ComparisonScenario(std::move(mx), std::move(my), std::move(note), std::move(grid));
}

ComparisonScenario load_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError(path + ": cannot open file");
  std::ostringstream buf;
  buf << is.rdbuf();
  return load_string(buf.str(), path);
}

std::string to_json(const ComparisonScenario& s) {
  json j;
  j["extreme"] = s.model_x.extreme == Extreme::Max ? "max" : "min";
  j["generator_x"] = generator_json(s.model_x.generator);
  j["generator_y"] = generator_json(s.model_y.generator);
  j["baseline1"] = baseline_json(s.model_x.baseline1);
  j["baseline2"] = baseline_json(s.model_x.baseline2);
  j["scales_x"] = {s.model_x.scale1, s.model_x.scale2};
  j["scales_y"] = {s.model_y.scale1, s.model_y.scale2};
  j["counts_x"] = {s.model_x.count1, s.model_x.count2};
  j["counts_y"] = {s.model_y.count1, s.model_y.count2};
  if (s.grid) {
    j["grid"] = {{"lo", s.grid->lo()},
                 {"hi", s.grid->hi()},
                 {"count", s.grid->size()},
                 {"spacing", s.grid->spacing == numerics::Spacing::Log ? "log" : "linear"}};
  }
  if (!s.note.empty()) j["note"] = s.note;
  return j.dump(2) + "\n";
}

void save_file(const ComparisonScenario& s, const std::string& path) {
  csvio::write_text(path, to_json(s));
}

bool equivalent(const ComparisonScenario& a, const ComparisonScenario& b) {
  return to_json(a) == to_json(b);
}

}  // namespace exos::scenario
