#pragma once

#include <stdexcept>
#include <string>

namespace hyperball {

// An iterative routine reached its step or iteration budget without
// meeting its tolerance.
class NonConvergenceError : public std::runtime_error {
 public:
  explicit NonConvergenceError(const std::string& what)
      : std::runtime_error(what) {}
};

// A dynamical step left the admissible region (unit-ball interior) and the
// safeguard could not recover.
class StepFailureError : public std::runtime_error {
 public:
  explicit StepFailureError(const std::string& what)
      : std::runtime_error(what) {}
};

// Input data admits no finite estimate (all observations identical).
class DegenerateDataError : public std::runtime_error {
 public:
  explicit DegenerateDataError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace hyperball
