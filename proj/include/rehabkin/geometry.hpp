#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>

#include "rehabkin/pose.hpp"

namespace rehabkin {

enum class Architecture { RPU_3UPS, PRU_3PUS };

std::string to_string(Architecture architecture);

/// Closed interval of admissible actuated-joint values [m].
struct Interval {
  double min = 0.0;
  double max = 0.0;
};

/// Geometry of one mechanism instance. Limb 0 is the central chain, limbs
/// 1..3 the lateral ones.
///
/// RPU_3UPS: lateral limbs are universal-prismatic-spherical legs whose
/// actuated value is the leg length between base_anchors[i] and the platform
/// anchor; the central revolute-prismatic-universal limb runs from the base
/// origin (revolute axis y) to central_platform_anchor.
///
/// PRU_3PUS: every limb starts with an actuated slider along rail_direction
/// (lateral rails through base_anchors[i], central rail through the origin);
/// lateral struts have fixed length strut_length, the central link has length
/// central_link_length.
struct MechanismGeometry {
  Architecture architecture = Architecture::RPU_3UPS;
  std::array<Eigen::Vector3d, 3> base_anchors{};
  std::array<Eigen::Vector3d, 3> platform_anchors{};
  Eigen::Vector3d central_platform_anchor = Eigen::Vector3d::Zero();
  Eigen::Vector3d rail_direction = Eigen::Vector3d::UnitZ();  ///< PRU_3PUS only, unit norm
  double strut_length = 0.0;         ///< PRU_3PUS lateral strut length [m]
  double central_link_length = 0.0;  ///< PRU_3PUS central link length [m]
  std::array<Interval, 4> stroke_limits{};  ///< central first, then lateral 1..3
  double u_cone_half_angle = 0.0;  ///< universal-joint misalignment limit [rad]
  double s_cone_half_angle = 0.0;  ///< spherical-joint misalignment limit [rad]
  double characteristic_length = 0.0;  ///< homogenization length for rotational Jacobian columns [m]
};

enum class ViolationKind { StrokeUnder, StrokeOver, UConeExceeded, SConeExceeded };

std::string to_string(ViolationKind kind);

/// One joint-limit excess; magnitude is the overshoot beyond the limit
/// (m for strokes, rad for cones) and is always positive.
struct JointViolation {
  int limb_id = 0;  ///< 0 = central, 1..3 = lateral
  ViolationKind kind = ViolationKind::StrokeUnder;
  double magnitude = 0.0;
};

/// Checks every geometry invariant and returns the record unchanged.
/// Throws InvalidGeometryError listing all violated invariants.
MechanismGeometry validate_geometry(const MechanismGeometry& raw);

/// Reference RPU+3UPS instance: anchor rings of radius 0.4 m (base) and
/// 0.3 m (platform) at azimuths 180/+60/-60 deg, mirror-symmetric about the
/// sagittal xz plane; central stroke [0.5, 1.2] m, lateral strokes
/// [0.6, 1.3] m, joint cones 45/60 deg, characteristic length 0.3 m.
MechanismGeometry reference_g0();

/// Reference PRU+3PUS instance: vertical rails at radius 0.45 m, strut length
/// 0.7 m, central link 0.5 m, slider strokes [0, 0.9] m on all four joints,
/// platform anchors and cones as reference_g0().
MechanismGeometry reference_g1();

/// World positions of the platform anchors at a pose: lateral anchors 1..3
/// followed by the central anchor, each p + R * b with p = (x, 0, z).
std::array<Eigen::Vector3d, 4> platform_points_world(const MechanismGeometry& geom,
                                                     const Pose2T2R& pose);

}  // namespace rehabkin
