#pragma once

#include <stdexcept>
#include <string>

namespace gtrack {

// Bad scenario/config input (unknown keys, unreadable files, invalid values).
// The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Control-law feasibility violations (p >= k, dead-band wider than the
// tolerance budget). The CLI maps this to exit code 3.
struct FeasibilityError : std::runtime_error {
  explicit FeasibilityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Integrator failure (step-size underflow, non-finite derivatives).
struct PropagationError : std::runtime_error {
  explicit PropagationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace gtrack
