#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rehabkin/kinematics.hpp"

namespace rehabkin {

/// Infeasibility classification in fixed priority order:
/// Unreachable > Stroke > Cone > Singular > Rate.
/// Rate applies to trajectory samples only (actuator speed bound).
enum class FeasibilityCode { Unreachable, Stroke, Cone, Singular, Rate };

std::string to_string(FeasibilityCode code);

/// Pose acceptance rule shared by workspace sweeps and exercise checks:
/// reachable, violation-free, and singularity margin at least margin_min.
/// margin_min = 0 is pure reachability; 0.01 caps the condition number at 100.
struct FeasibilityRule {
  double margin_min = 0.0;
  double singular_eps = kDefaultSingularEps;
};

/// Outcome of evaluating one pose against a rule. q and kappa are absent when
/// the pose is unreachable; code is the first violated criterion by priority
/// and absent when feasible.
struct PoseCheck {
  bool feasible = false;
  std::optional<Eigen::Vector4d> q;
  std::optional<double> kappa;
  double margin = 0.0;
  std::vector<JointViolation> violations;
  std::optional<FeasibilityCode> code;
};

/// Pointwise ik + jacobian evaluation. Non-finite poses and z <= 0 are
/// reported as unreachable data, not errors.
PoseCheck check_pose(const MechanismGeometry& geom, const Pose2T2R& pose,
                     const FeasibilityRule& rule = {});

}  // namespace rehabkin
