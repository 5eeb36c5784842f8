#pragma once

#include <stdexcept>
#include <string>

namespace diqss {

/// Constrained optimization could not find a feasible point.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A root bracket has no sign change (threshold not found).
class BracketError : public std::runtime_error {
 public:
  explicit BracketError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace diqss
