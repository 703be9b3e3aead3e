#include "rehabkin/pose.hpp"

#include <cmath>
#include <stdexcept>

namespace rehabkin {

namespace {

double wrap_pi(double angle) {
  if (angle > -kPi && angle <= kPi) {
    return angle;
  }
  double wrapped = std::remainder(angle, 2.0 * kPi);  // lands in [-pi, pi]
  if (wrapped <= -kPi) {
    wrapped = kPi;
  }
  return wrapped;
}

}  // namespace

bool pose_is_finite(const Pose2T2R& pose) {
  return std::isfinite(pose.x) && std::isfinite(pose.z) && std::isfinite(pose.theta) &&
         std::isfinite(pose.psi);
}

Eigen::Matrix3d rotation_from_pose(const Pose2T2R& pose) {
  if (!pose_is_finite(pose)) {
    throw std::invalid_argument("rotation_from_pose: pose fields must be finite");
  }
  return (Eigen::AngleAxisd(pose.theta, Eigen::Vector3d::UnitY()) *
          Eigen::AngleAxisd(pose.psi, Eigen::Vector3d::UnitZ()))
      .toRotationMatrix();
}

Eigen::Vector3d translation_from_pose(const Pose2T2R& pose) {
  return {pose.x, 0.0, pose.z};
}

Pose2T2R wrap_angles(const Pose2T2R& pose) {
  return {pose.x, pose.z, wrap_pi(pose.theta), wrap_pi(pose.psi)};
}

}  // namespace rehabkin
