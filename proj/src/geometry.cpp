#include "rehabkin/geometry.hpp"

#include <cmath>
#include <string>

#include "rehabkin/errors.hpp"

namespace rehabkin {

namespace {

constexpr double kUnitNormTol = 1e-12;
constexpr double kDistinctTol = 1e-12;

std::string joint_name(int index) {
  return index == 0 ? std::string("central joint") : "lateral joint " + std::to_string(index);
}

}  // namespace

std::string to_string(Architecture architecture) {
  return architecture == Architecture::RPU_3UPS ? "RPU_3UPS" : "PRU_3PUS";
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::StrokeUnder:
      return "STROKE_UNDER";
    case ViolationKind::StrokeOver:
      return "STROKE_OVER";
    case ViolationKind::UConeExceeded:
      return "U_CONE_EXCEEDED";
    case ViolationKind::SConeExceeded:
      return "S_CONE_EXCEEDED";
  }
  return "UNKNOWN";
}

MechanismGeometry validate_geometry(const MechanismGeometry& raw) {
  std::vector<std::string> issues;

  auto check_finite_vec = [&issues](const Eigen::Vector3d& v, const std::string& what) {
    if (!v.allFinite()) {
      issues.push_back(what + " has non-finite components");
    }
  };
  for (int i = 0; i < 3; ++i) {
    check_finite_vec(raw.base_anchors[i], "base anchor " + std::to_string(i + 1));
    check_finite_vec(raw.platform_anchors[i], "platform anchor " + std::to_string(i + 1));
  }
  check_finite_vec(raw.central_platform_anchor, "central platform anchor");

  auto check_distinct = [&issues](const std::array<Eigen::Vector3d, 3>& pts,
                                  const std::string& what) {
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        if (pts[i].allFinite() && pts[j].allFinite() &&
            (pts[i] - pts[j]).norm() <= kDistinctTol) {
          issues.push_back(what + "s " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                           " coincide");
        }
      }
    }
  };
  check_distinct(raw.base_anchors, "base anchor");
  check_distinct(raw.platform_anchors, "platform anchor");

  for (int i = 0; i < 4; ++i) {
    const Interval& stroke = raw.stroke_limits[i];
    if (!std::isfinite(stroke.min) || !std::isfinite(stroke.max)) {
      issues.push_back("stroke limits of " + joint_name(i) + " are non-finite");
      continue;
    }
    if (!(stroke.min < stroke.max)) {
      issues.push_back("stroke bounds of " + joint_name(i) + " are inverted or degenerate");
    }
    // Prismatic leg lengths (RPU_3UPS) must stay strictly positive; slider
    // travels (PRU_3PUS) may start at 0.
    if (raw.architecture == Architecture::RPU_3UPS ? !(stroke.min > 0.0) : stroke.min < 0.0) {
      issues.push_back("stroke lower bound of " + joint_name(i) + " must be " +
                       (raw.architecture == Architecture::RPU_3UPS ? "positive" : "nonnegative"));
    }
  }

  if (!(raw.characteristic_length > 0.0) || !std::isfinite(raw.characteristic_length)) {
    issues.push_back("characteristic length must be positive");
  }
  if (!(raw.u_cone_half_angle >= 0.0) || !std::isfinite(raw.u_cone_half_angle)) {
    issues.push_back("universal-joint cone half angle must be nonnegative");
  }
  if (!(raw.s_cone_half_angle >= 0.0) || !std::isfinite(raw.s_cone_half_angle)) {
    issues.push_back("spherical-joint cone half angle must be nonnegative");
  }

  if (raw.architecture == Architecture::PRU_3PUS) {
    if (!(raw.strut_length > 0.0) || !std::isfinite(raw.strut_length)) {
      issues.push_back("strut length must be positive");
    }
    if (!(raw.central_link_length > 0.0) || !std::isfinite(raw.central_link_length)) {
      issues.push_back("central link length must be positive");
    }
    if (!raw.rail_direction.allFinite() ||
        std::abs(raw.rail_direction.norm() - 1.0) > kUnitNormTol) {
      issues.push_back("rail direction is not a unit vector");
    }
  }

  if (!issues.empty()) {
    throw InvalidGeometryError(std::move(issues));
  }
  return raw;
}

MechanismGeometry reference_g0() {
  // 0.4 * sin(60 deg) and 0.3 * sin(60 deg); the same decimal literals appear
  // in configs/g0.json so both sources load to identical doubles.
  constexpr double kBaseY = 0.34641016151377546;
  constexpr double kPlatformY = 0.25980762113533157;

  MechanismGeometry g;
  g.architecture = Architecture::RPU_3UPS;
  g.base_anchors = {Eigen::Vector3d(-0.4, 0.0, 0.0), Eigen::Vector3d(0.2, kBaseY, 0.0),
                    Eigen::Vector3d(0.2, -kBaseY, 0.0)};
  g.platform_anchors = {Eigen::Vector3d(-0.3, 0.0, 0.0), Eigen::Vector3d(0.15, kPlatformY, 0.0),
                        Eigen::Vector3d(0.15, -kPlatformY, 0.0)};
  g.central_platform_anchor = Eigen::Vector3d::Zero();
  g.stroke_limits = {Interval{0.5, 1.2}, Interval{0.6, 1.3}, Interval{0.6, 1.3},
                     Interval{0.6, 1.3}};
  g.u_cone_half_angle = deg2rad(45.0);
  g.s_cone_half_angle = deg2rad(60.0);
  g.characteristic_length = 0.3;
  return g;
}

MechanismGeometry reference_g1() {
  constexpr double kRailY = 0.3897114317029974;  // 0.45 * sin(60 deg)
  constexpr double kPlatformY = 0.25980762113533157;

  MechanismGeometry g;
  g.architecture = Architecture::PRU_3PUS;
  g.base_anchors = {Eigen::Vector3d(-0.45, 0.0, 0.0), Eigen::Vector3d(0.225, kRailY, 0.0),
                    Eigen::Vector3d(0.225, -kRailY, 0.0)};
  g.platform_anchors = {Eigen::Vector3d(-0.3, 0.0, 0.0), Eigen::Vector3d(0.15, kPlatformY, 0.0),
                        Eigen::Vector3d(0.15, -kPlatformY, 0.0)};
  g.central_platform_anchor = Eigen::Vector3d::Zero();
  g.rail_direction = Eigen::Vector3d::UnitZ();
  g.strut_length = 0.7;
  g.central_link_length = 0.5;
  g.stroke_limits = {Interval{0.0, 0.9}, Interval{0.0, 0.9}, Interval{0.0, 0.9},
                     Interval{0.0, 0.9}};
  g.u_cone_half_angle = deg2rad(45.0);
  g.s_cone_half_angle = deg2rad(60.0);
  g.characteristic_length = 0.3;
  return g;
}

std::array<Eigen::Vector3d, 4> platform_points_world(const MechanismGeometry& geom,
                                                     const Pose2T2R& pose) {
  const Eigen::Matrix3d rot = rotation_from_pose(pose);
  const Eigen::Vector3d p = translation_from_pose(pose);
  return {p + rot * geom.platform_anchors[0], p + rot * geom.platform_anchors[1],
          p + rot * geom.platform_anchors[2], p + rot * geom.central_platform_anchor};
}

}  // namespace rehabkin
