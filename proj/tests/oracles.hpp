// Independent recomputation routes used to pin expected values. Everything
// here stays off the library's code paths: rotations are built entry by
// entry, products run as explicit triple loops, and Jacobians come from
// central differences of ik.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <stdexcept>

#include "rehabkin/errors.hpp"
#include "rehabkin/kinematics.hpp"

namespace oracle {

inline Eigen::Matrix3d rot_y(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::Matrix3d m;
  m << c, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, c;
  return m;
}

inline Eigen::Matrix3d rot_z(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::Matrix3d m;
  m << c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0;
  return m;
}

inline Eigen::Matrix3d mat_product(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b) {
  Eigen::Matrix3d out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 3; ++k) {
        acc += a(i, k) * b(k, j);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

/// Central finite differences of ik(pose).q, step h per pose coordinate.
inline Eigen::Matrix4d fd_jacobian(const rehabkin::MechanismGeometry& geom,
                                   const rehabkin::Pose2T2R& pose, double h = 1e-6) {
  auto nudged = [&pose](int coordinate, double delta) {
    rehabkin::Pose2T2R out = pose;
    switch (coordinate) {
      case 0: out.x += delta; break;
      case 1: out.z += delta; break;
      case 2: out.theta += delta; break;
      default: out.psi += delta; break;
    }
    return out;
  };
  Eigen::Matrix4d jac;
  for (int j = 0; j < 4; ++j) {
    const Eigen::Vector4d plus = rehabkin::ik(geom, nudged(j, h)).q;
    const Eigen::Vector4d minus = rehabkin::ik(geom, nudged(j, -h)).q;
    jac.col(j) = (plus - minus) / (2.0 * h);
  }
  return jac;
}

struct PoseBox {
  double x_lo, x_hi;
  double z_lo, z_hi;
  double theta_lo, theta_hi;
  double psi_lo, psi_hi;
};

/// Sampling box used by the round-trip and Jacobian properties.
inline PoseBox default_box() {
  const double twenty = rehabkin::deg2rad(20.0);
  return {-0.25, 0.25, 0.7, 1.15, -twenty, twenty, -twenty, twenty};
}

inline rehabkin::Pose2T2R random_pose(std::mt19937& rng, const PoseBox& box) {
  auto draw = [&rng](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  return {draw(box.x_lo, box.x_hi), draw(box.z_lo, box.z_hi), draw(box.theta_lo, box.theta_hi),
          draw(box.psi_lo, box.psi_hi)};
}

/// Rejection-samples a pose whose IK succeeds with zero violations.
inline rehabkin::Pose2T2R random_feasible_pose(std::mt19937& rng,
                                               const rehabkin::MechanismGeometry& geom,
                                               const PoseBox& box) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const rehabkin::Pose2T2R pose = random_pose(rng, box);
    try {
      if (rehabkin::ik(geom, pose).violations.empty()) {
        return pose;
      }
    } catch (const rehabkin::UnreachableError&) {
    }
  }
  throw std::runtime_error("random_feasible_pose: sampling box looks infeasible");
}

/// Violation-free and conditioned no worse than kappa = 1/margin_min. Poses
/// near the fold surfaces of the similar-anchor layouts have coalescing
/// forward-kinematics preimages, where no solver can pin the pose from q
/// alone; round-trip properties sample away from them.
inline rehabkin::Pose2T2R random_well_conditioned_pose(std::mt19937& rng,
                                                       const rehabkin::MechanismGeometry& geom,
                                                       const PoseBox& box,
                                                       double margin_min = 0.01) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const rehabkin::Pose2T2R pose = random_feasible_pose(rng, geom, box);
    if (rehabkin::singularity_margin(rehabkin::jacobian(geom, pose)) >= margin_min) {
      return pose;
    }
  }
  throw std::runtime_error("random_well_conditioned_pose: sampling box looks degenerate");
}

}  // namespace oracle
