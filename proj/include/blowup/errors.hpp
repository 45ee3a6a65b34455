#ifndef BLOWUP_ERRORS_HPP
#define BLOWUP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace blowup {

// Exit codes used by the CLI.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitNumerical = 2,
  kExitHypothesis = 3,
};

struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Base for failures of the numerical machinery (exit code 2).
struct NumericalFailure : std::runtime_error {
  explicit NumericalFailure(const std::string& msg) : std::runtime_error(msg) {}
};

// A fundamental-solution branch changed sign where theory forbids it:
// horizon/step inadequate or the coefficient hypotheses are violated.
struct NonOscillationFailure : NumericalFailure {
  explicit NonOscillationFailure(const std::string& msg) : NumericalFailure(msg) {}
};

struct DivergentL1 : NumericalFailure {
  explicit DivergentL1(const std::string& msg) : NumericalFailure(msg) {}
};

struct SandwichViolation : NumericalFailure {
  explicit SandwichViolation(const std::string& msg) : NumericalFailure(msg) {}
};

struct QuadratureNonConvergence : NumericalFailure {
  explicit QuadratureNonConvergence(const std::string& msg) : NumericalFailure(msg) {}
};

struct NonConvergence : NumericalFailure {
  explicit NonConvergence(const std::string& msg) : NumericalFailure(msg) {}
};

struct NoDivergenceOnGrid : NumericalFailure {
  explicit NoDivergenceOnGrid(const std::string& msg) : NumericalFailure(msg) {}
};

struct InsufficientData : NumericalFailure {
  explicit InsufficientData(const std::string& msg) : NumericalFailure(msg) {}
};

struct SupportViolation : NumericalFailure {
  explicit SupportViolation(const std::string& msg) : NumericalFailure(msg) {}
};

// Theorem-mode hypotheses (data sign conditions) failed (exit code 3).
struct HypothesisViolation : std::runtime_error {
  explicit HypothesisViolation(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace blowup

#endif
