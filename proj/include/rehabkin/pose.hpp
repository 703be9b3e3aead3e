#pragma once

#include <Eigen/Dense>

namespace rehabkin {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

constexpr double deg2rad(double degrees) { return degrees * (kPi / 180.0); }
constexpr double rad2deg(double radians) { return radians * (180.0 / kPi); }

/// Platform pose of the 2T2R motion pattern: two sagittal-plane translations
/// and two rotations. theta pitches about the fixed transverse axis y, psi
/// spins about the platform's own longitudinal axis; the composed orientation
/// is Rot_y(theta) * Rot_z(psi).
struct Pose2T2R {
  double x = 0.0;      ///< sagittal horizontal translation [m]
  double z = 0.0;      ///< vertical translation [m], > 0 above the base plane
  double theta = 0.0;  ///< pitch about the fixed y axis [rad], in (-pi, pi]
  double psi = 0.0;    ///< spin about the platform z axis [rad], in (-pi, pi]
};

bool pose_is_finite(const Pose2T2R& pose);

/// Orientation matrix Rot_y(theta) * Rot_z(psi); identity at theta = psi = 0.
/// Throws std::invalid_argument on non-finite fields.
Eigen::Matrix3d rotation_from_pose(const Pose2T2R& pose);

/// Platform reference point in the world frame: (x, 0, z).
Eigen::Vector3d translation_from_pose(const Pose2T2R& pose);

/// Wraps theta and psi into (-pi, pi]; x and z pass through.
Pose2T2R wrap_angles(const Pose2T2R& pose);

}  // namespace rehabkin
