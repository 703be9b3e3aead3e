#include "rehabkin/feasibility.hpp"

#include "rehabkin/errors.hpp"

namespace rehabkin {

std::string to_string(FeasibilityCode code) {
  switch (code) {
    case FeasibilityCode::Unreachable:
      return "UNREACHABLE";
    case FeasibilityCode::Stroke:
      return "STROKE";
    case FeasibilityCode::Cone:
      return "CONE";
    case FeasibilityCode::Singular:
      return "SINGULAR";
    case FeasibilityCode::Rate:
      return "RATE";
  }
  return "UNKNOWN";
}

PoseCheck check_pose(const MechanismGeometry& geom, const Pose2T2R& pose,
                     const FeasibilityRule& rule) {
  PoseCheck result;
  if (!pose_is_finite(pose) || !(pose.z > 0.0)) {
    result.code = FeasibilityCode::Unreachable;
    return result;
  }
  try {
    const ActuatorSolution solution = ik(geom, pose);
    const JacobianReport report = jacobian(geom, pose, rule.singular_eps);
    result.q = solution.q;
    result.violations = solution.violations;
    result.kappa = report.kappa;
    result.margin = singularity_margin(report);
  } catch (const UnreachableError&) {
    result.code = FeasibilityCode::Unreachable;
    return result;
  } catch (const SingularJacobianError&) {
    // slider rate blow-up at the strut reach boundary
    result.code = FeasibilityCode::Singular;
    return result;
  }

  bool stroke = false;
  bool cone = false;
  for (const JointViolation& violation : result.violations) {
    if (violation.kind == ViolationKind::StrokeUnder ||
        violation.kind == ViolationKind::StrokeOver) {
      stroke = true;
    } else {
      cone = true;
    }
  }
  if (stroke) {
    result.code = FeasibilityCode::Stroke;
  } else if (cone) {
    result.code = FeasibilityCode::Cone;
  } else if (result.margin < rule.margin_min) {
    result.code = FeasibilityCode::Singular;
  }
  result.feasible = !result.code.has_value();
  return result;
}

}  // namespace rehabkin
