#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rehabkin {

/// Raised when a geometry record (or document) breaks its invariants.
/// Carries one entry per violated invariant; values are never repaired.
class InvalidGeometryError : public std::runtime_error {
 public:
  explicit InvalidGeometryError(std::vector<std::string> issues)
      : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  static std::string join(const std::vector<std::string>& issues) {
    std::string text = "invalid geometry:";
    for (const auto& issue : issues) {
      text += "\n  - ";
      text += issue;
    }
    return text;
  }

  std::vector<std::string> issues_;
};

/// Pose (or actuator target) outside the mechanism's reachable set.
class UnreachableError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class NoConvergenceError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class SingularJacobianError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class GridTooLargeError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class InvalidParamsError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rehabkin
