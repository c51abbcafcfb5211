#pragma once

#include <string>

#include "theorems.hpp"

namespace exos::scenario {

// Scenario files are JSON documents:
//
//   {
//     "extreme": "max",
//     "generator_x": {"family": "gumbel_exp", "theta": 9},
//     "generator_y": {"family": "gumbel_exp", "theta": 10},
//     "baseline1": {"family": "exponential"},
//     "baseline2": {"family": "power", "params": [400, 2]},
//     "scales_x": [5, 2],
//     "scales_y": [6, 3],
//     "counts_x": [1, 11],
//     "counts_y": [5, 6],
//     "grid": {"lo": 0.01, "hi": 50, "count": 2000, "spacing": "log"},
//     "note": "optional free text"
//   }
//
// `grid` and `note` are optional. Parse failures raise ParseError with
// line/field diagnostics.
theorems::ComparisonScenario load_file(const std::string& path);
theorems::ComparisonScenario load_string(const std::string& text,
                                         const std::string& origin = "<string>");

std::string to_json(const theorems::ComparisonScenario& s);
// Atomic write (temp file + rename).
void save_file(const theorems::ComparisonScenario& s, const std::string& path);

// Structural equality of everything a scenario file can express.
bool equivalent(const theorems::ComparisonScenario& a, const theorems::ComparisonScenario& b);

}  // namespace exos::scenario
