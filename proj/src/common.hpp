#pragma once

#include <stdexcept>
#include <string>

namespace exos {

// Error taxonomy shared by every module. Grid sweeps treat EvaluationError,
// CapError and BracketError as point exclusions rather than hard failures;
// InvalidInput always propagates.
struct InvalidInput : std::invalid_argument {
  explicit InvalidInput(const std::string& msg) : std::invalid_argument(msg) {}
};

struct EvaluationError : std::runtime_error {
  explicit EvaluationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct BracketError : std::runtime_error {
  explicit BracketError(const std::string& msg) : std::runtime_error(msg) {}
};

struct QuadratureError : std::runtime_error {
  explicit QuadratureError(const std::string& msg) : std::runtime_error(msg) {}
};

// Generator inversion below the representable floor (u <= 1e-300).
struct CapError : std::runtime_error {
  explicit CapError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace exos
