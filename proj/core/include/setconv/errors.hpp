#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace setconv {

/// Bad inputs: dimension mismatches, malformed JSON, invalid parameters.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Runtime numerical failures: empty windows, non-finite objectives, ...
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Newton failed to reach tolerance at a continuation stage.
class SolverDivergence : public NumericalError {
 public:
  SolverDivergence(const std::string& what, int stage, std::vector<double> last_iterate)
      : NumericalError(what), stage(stage), last_iterate(std::move(last_iterate)) {}

  int stage;
  std::vector<double> last_iterate;
};

}  // namespace setconv
