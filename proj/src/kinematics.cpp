#include "rehabkin/kinematics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "rehabkin/errors.hpp"

namespace rehabkin {

namespace {

// The central chain (revolute/slider axis y) can only reach points in the
// sagittal xz plane.
constexpr double kSagittalTol = 1e-9;
constexpr double kDegenerateLength = 1e-12;
// Limit comparisons are boundary-inclusive; the slack absorbs arithmetic
// rounding so a pose exactly on a limit stays feasible.
constexpr double kBoundarySlack = 1e-12;
// fk keeps iterating below its acceptance tolerance down to this floor.
// The anchor layouts here produce near-self-motions (whole pose arcs moving
// the actuators only at second order), where a first-crossing stop would
// accept a pose far from the sought preimage.
constexpr double kPolishFloor = 1e-14;

double misalignment(const Eigen::Vector3d& axis, const Eigen::Vector3d& nominal) {
  return std::atan2(axis.cross(nominal).norm(), axis.dot(nominal));
}

void check_stroke(int limb, double value, const Interval& limits,
                  std::vector<JointViolation>& out) {
  if (value < limits.min - kBoundarySlack) {
    out.push_back({limb, ViolationKind::StrokeUnder, limits.min - value});
  } else if (value > limits.max + kBoundarySlack) {
    out.push_back({limb, ViolationKind::StrokeOver, value - limits.max});
  }
}

void check_cone(int limb, const Eigen::Vector3d& axis, const Eigen::Vector3d& nominal,
                double half_angle, ViolationKind kind, std::vector<JointViolation>& out) {
  const double angle = misalignment(axis, nominal);
  if (angle > half_angle + kBoundarySlack) {
    out.push_back({limb, kind, angle - half_angle});
  }
}

/// Slider travel along `rail` so that a link of length `reach` spans from the
/// slider to `target`; lower quadratic root. Returns travel and link axis.
std::pair<double, Eigen::Vector3d> solve_slider(const Eigen::Vector3d& target,
                                                const Eigen::Vector3d& rail, double reach,
                                                const char* what) {
  const double along = target.dot(rail);
  const Eigen::Vector3d perpendicular = target - along * rail;
  const double discriminant = reach * reach - perpendicular.squaredNorm();
  if (discriminant < 0.0) {
    throw UnreachableError(std::string(what) + ": offset exceeds link length");
  }
  const double travel = along - std::sqrt(discriminant);
  return {travel, (target - travel * rail) / reach};
}

JacobianReport jacobian_for_solution(const MechanismGeometry& geom, const Pose2T2R& pose,
                                     const ActuatorSolution& solution, double singular_eps) {
  const Eigen::Matrix3d rot = rotation_from_pose(pose);
  // Angular velocity for the Rot_y(theta) * Rot_z(psi) parameterization:
  // omega = theta_dot * y_hat + psi_dot * Rot_y(theta) * z_hat.
  const Eigen::Vector3d theta_axis = Eigen::Vector3d::UnitY();
  const Eigen::Vector3d psi_axis(std::sin(pose.theta), 0.0, std::cos(pose.theta));

  const std::array<Eigen::Vector3d, 4> platform_offsets = {
      rot * geom.central_platform_anchor, rot * geom.platform_anchors[0],
      rot * geom.platform_anchors[1], rot * geom.platform_anchors[2]};

  Eigen::Matrix4d jac;
  for (int row = 0; row < 4; ++row) {
    const Eigen::Vector3d& axis = solution.limb_axes[row];
    const Eigen::Vector3d& rb = platform_offsets[row];
    Eigen::Vector4d entries(axis.x(), axis.z(), axis.dot(theta_axis.cross(rb)),
                            axis.dot(psi_axis.cross(rb)));
    if (geom.architecture == Architecture::PRU_3PUS) {
      // Slider rate: s_dot = (u . d_dot) / (u . rail); the denominator
      // vanishes only at the strut reach boundary.
      const double denominator = axis.dot(geom.rail_direction);
      if (std::abs(denominator) < kDegenerateLength) {
        throw SingularJacobianError("limb axis perpendicular to the rail; slider rate undefined");
      }
      entries /= denominator;
    }
    jac.row(row) = entries;
  }

  Eigen::Matrix4d homogenized = jac;
  homogenized.col(2) /= geom.characteristic_length;
  homogenized.col(3) /= geom.characteristic_length;

  const Eigen::JacobiSVD<Eigen::Matrix4d> svd(homogenized);
  const double sigma_max = svd.singularValues()(0);
  const double sigma_min = svd.singularValues()(3);

  JacobianReport report;
  report.jacobian = jac;
  report.homogenized = homogenized;
  report.sigma_min = sigma_min;
  report.sigma_max = sigma_max;
  report.kappa =
      sigma_min > 0.0 ? sigma_max / sigma_min : std::numeric_limits<double>::infinity();
  report.singular = sigma_min < singular_eps;
  return report;
}

}  // namespace

ActuatorSolution ik(const MechanismGeometry& geom, const Pose2T2R& pose) {
  if (!pose_is_finite(pose)) {
    throw std::invalid_argument("ik: pose fields must be finite");
  }
  if (!(pose.z > 0.0)) {
    throw std::invalid_argument("ik: pose requires z > 0");
  }

  const Eigen::Matrix3d rot = rotation_from_pose(pose);
  const Eigen::Vector3d p = translation_from_pose(pose);
  const Eigen::Vector3d platform_normal = rot.col(2);
  const Eigen::Vector3d central_point = p + rot * geom.central_platform_anchor;

  if (std::abs(central_point.y()) > kSagittalTol) {
    throw UnreachableError("central limb: universal-joint point leaves the sagittal plane");
  }

  ActuatorSolution solution;

  if (geom.architecture == Architecture::RPU_3UPS) {
    const double q_central = central_point.norm();
    if (q_central < kDegenerateLength) {
      throw UnreachableError("central limb length is zero; revolute angle undefined");
    }
    solution.q[0] = q_central;
    solution.phi_central = std::atan2(central_point.x(), central_point.z());
    solution.limb_axes[0] = central_point / q_central;
    check_stroke(0, q_central, geom.stroke_limits[0], solution.violations);
    check_cone(0, solution.limb_axes[0], platform_normal, geom.u_cone_half_angle,
               ViolationKind::UConeExceeded, solution.violations);

    for (int i = 0; i < 3; ++i) {
      const Eigen::Vector3d leg = p + rot * geom.platform_anchors[i] - geom.base_anchors[i];
      const double q_i = leg.norm();
      if (q_i < kDegenerateLength) {
        throw UnreachableError("lateral limb " + std::to_string(i + 1) + " has zero length");
      }
      solution.q[i + 1] = q_i;
      solution.limb_axes[i + 1] = leg / q_i;
      check_stroke(i + 1, q_i, geom.stroke_limits[i + 1], solution.violations);
      check_cone(i + 1, solution.limb_axes[i + 1], Eigen::Vector3d::UnitZ(),
                 geom.u_cone_half_angle, ViolationKind::UConeExceeded, solution.violations);
      check_cone(i + 1, solution.limb_axes[i + 1], platform_normal, geom.s_cone_half_angle,
                 ViolationKind::SConeExceeded, solution.violations);
    }
    return solution;
  }

  // PRU_3PUS
  const Eigen::Vector3d& rail = geom.rail_direction;
  {
    const auto [travel, axis] =
        solve_slider(central_point, rail, geom.central_link_length, "central limb");
    solution.q[0] = travel;
    solution.limb_axes[0] = axis;
    solution.phi_central =
        std::atan2(Eigen::Vector3d::UnitY().dot(rail.cross(axis)), rail.dot(axis));
    check_stroke(0, travel, geom.stroke_limits[0], solution.violations);
    check_cone(0, axis, platform_normal, geom.u_cone_half_angle, ViolationKind::UConeExceeded,
               solution.violations);
  }
  for (int i = 0; i < 3; ++i) {
    const Eigen::Vector3d offset = p + rot * geom.platform_anchors[i] - geom.base_anchors[i];
    const auto [travel, axis] = solve_slider(
        offset, rail, geom.strut_length, ("lateral limb " + std::to_string(i + 1)).c_str());
    solution.q[i + 1] = travel;
    solution.limb_axes[i + 1] = axis;
    check_stroke(i + 1, travel, geom.stroke_limits[i + 1], solution.violations);
    check_cone(i + 1, axis, Eigen::Vector3d::UnitZ(), geom.u_cone_half_angle,
               ViolationKind::UConeExceeded, solution.violations);
    check_cone(i + 1, axis, platform_normal, geom.s_cone_half_angle,
               ViolationKind::SConeExceeded, solution.violations);
  }
  return solution;
}

JacobianReport jacobian(const MechanismGeometry& geom, const Pose2T2R& pose,
                        double singular_eps) {
  return jacobian_for_solution(geom, pose, ik(geom, pose), singular_eps);
}

double singularity_margin(const JacobianReport& report) {
  return report.sigma_max > 0.0 ? report.sigma_min / report.sigma_max : 0.0;
}

Pose2T2R fk(const MechanismGeometry& geom, const Eigen::Vector4d& q, const Pose2T2R& guess,
            const FkOptions& options) {
  if (!q.allFinite()) {
    throw std::invalid_argument("fk: target actuator values must be finite");
  }
  if (!pose_is_finite(guess)) {
    throw std::invalid_argument("fk: guess fields must be finite");
  }
  if (!(guess.z > 0.0)) {
    throw std::invalid_argument("fk: guess requires z > 0");
  }

  Pose2T2R pose = guess;
  ActuatorSolution solution = ik(geom, pose);  // UnreachableError propagates
  Eigen::Vector4d residual = solution.q - q;

  // Levenberg-Marquardt on the residual. The regularization keeps iterates
  // near the guess instead of drifting along near-self-motion valleys, so
  // the solver lands on the preimage closest to the starting point.
  double lm_lambda = 1e-3;
  for (int iteration = 0; iteration < options.max_iterations; ++iteration) {
    if (residual.lpNorm<Eigen::Infinity>() <= kPolishFloor) {
      break;
    }

    const JacobianReport report =
        jacobian_for_solution(geom, pose, solution, options.singular_eps);
    if (report.singular) {
      throw SingularJacobianError("fk: homogenized Jacobian singular at an iterate");
    }
    const Eigen::Matrix4d normal = report.jacobian.transpose() * report.jacobian;
    const Eigen::Vector4d gradient = report.jacobian.transpose() * residual;
    const double scale = normal.trace() / 4.0;
    const double residual_sq = residual.squaredNorm();

    bool accepted = false;
    for (int attempt = 0; attempt < 60; ++attempt) {
      const Eigen::Matrix4d damped =
          normal + lm_lambda * scale * Eigen::Matrix4d::Identity();
      const Eigen::Vector4d step = damped.ldlt().solve(-gradient);
      const Pose2T2R trial{pose.x + step[0], pose.z + step[1], pose.theta + step[2],
                           pose.psi + step[3]};
      if (trial.z > 0.0) {
        try {
          ActuatorSolution trial_solution = ik(geom, trial);
          const Eigen::Vector4d trial_residual = trial_solution.q - q;
          if (trial_residual.squaredNorm() < residual_sq) {
            pose = trial;
            solution = std::move(trial_solution);
            residual = trial_residual;
            lm_lambda = std::max(lm_lambda * options.damping, 1e-12);
            accepted = true;
            break;
          }
        } catch (const UnreachableError&) {
          // treat like a rejected step: more damping pulls the trial back in
        }
      }
      lm_lambda *= 8.0;
      if (lm_lambda > 1e15) {
        break;
      }
    }
    if (!accepted) {
      break;  // numerical floor of the step control
    }
  }

  if (residual.lpNorm<Eigen::Infinity>() < options.tolerance) {
    return wrap_angles(pose);
  }
  throw NoConvergenceError("fk: residual above tolerance within the iteration budget");
}

}  // namespace rehabkin
