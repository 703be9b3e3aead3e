#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "rehabkin/geometry.hpp"

namespace rehabkin {

inline constexpr double kDefaultSingularEps = 1e-8;

/// Actuated-joint values for one pose; q and limb_axes are ordered central
/// first, then lateral 1..3. Limit violations are reported as data: a
/// solution with violations is still a valid kinematic solution.
struct ActuatorSolution {
  Eigen::Vector4d q = Eigen::Vector4d::Zero();  ///< leg lengths (RPU_3UPS) or slider travels (PRU_3PUS) [m]
  double phi_central = 0.0;                     ///< passive revolute angle of the central limb [rad]
  std::array<Eigen::Vector3d, 4> limb_axes{};   ///< unit limb directions, world frame
  std::vector<JointViolation> violations;
};

/// Closed-form inverse kinematics.
///
/// RPU_3UPS: q_c = |p + R b_c|, phi = atan2 of the central point in the xz
/// plane, lateral q_i = |p + R b_i - a_i|. PRU_3PUS: slider travels take the
/// lower quadratic root (slider below the platform anchor, struts leaning
/// upward). Throws UnreachableError when a strut cannot span its offset
/// (negative discriminant), when the central point leaves the sagittal plane,
/// or when the central leg length vanishes (revolute angle undefined).
ActuatorSolution ik(const MechanismGeometry& geom, const Pose2T2R& pose);

/// Inverse-kinematic Jacobian dq/d(x, z, theta, psi) and its conditioning.
/// Row order follows q; the homogenized matrix divides the theta and psi
/// columns by the characteristic length before the singular values are taken.
struct JacobianReport {
  Eigen::Matrix4d jacobian = Eigen::Matrix4d::Zero();
  Eigen::Matrix4d homogenized = Eigen::Matrix4d::Zero();
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double kappa = 0.0;     ///< sigma_max / sigma_min (inf at an exact singularity)
  bool singular = false;  ///< sigma_min < singular_eps
};

JacobianReport jacobian(const MechanismGeometry& geom, const Pose2T2R& pose,
                        double singular_eps = kDefaultSingularEps);

/// sigma_min / sigma_max in [0, 1]: 0 at a singularity, 1 for isotropic
/// motion transmission. Returns 0 when sigma_max is 0.
double singularity_margin(const JacobianReport& report);

struct FkOptions {
  int max_iterations = 100;
  double tolerance = 1e-10;  ///< infinity norm of the actuator residual
  double damping = 0.5;      ///< relaxation factor applied to the step regularization on success
  double singular_eps = kDefaultSingularEps;
};

/// Forward kinematics: damped (Levenberg-Marquardt) iteration on
/// ik(pose).q - q with the analytic Jacobian, polished to the numerical
/// floor. Returns a pose whose actuator residual is below options.tolerance;
/// never returns otherwise. Throws NoConvergenceError when the iteration
/// stalls or exhausts its budget, SingularJacobianError when an iterate's
/// homogenized Jacobian falls below singular_eps, and propagates
/// UnreachableError from the evaluation of the starting guess.
Pose2T2R fk(const MechanismGeometry& geom, const Eigen::Vector4d& q, const Pose2T2R& guess,
            const FkOptions& options = {});

}  // namespace rehabkin
