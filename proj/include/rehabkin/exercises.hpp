#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rehabkin/feasibility.hpp"

namespace rehabkin {

enum class ExerciseKind { Gait, Lachman, PivotShift, CpmFlexion };

std::string to_string(ExerciseKind kind);

struct TrajectorySample {
  double t = 0.0;  ///< [s]
  Pose2T2R pose;
};

/// Time-sampled pose sequence for one rehabilitation or diagnosis movement.
/// Sample times are strictly increasing and start at 0.
struct ExerciseTrajectory {
  ExerciseKind kind = ExerciseKind::Gait;
  std::vector<TrajectorySample> samples;
  double period = 0.0;  ///< total duration [s]
};

/// Walking-style loop in the sagittal plane:
///   x(t) = A_x sin(w t), z(t) = z0 + (A_z/2)(1 - cos(w t)),
///   theta(t) = theta_amplitude sin(w t), psi = 0, w = 2 pi / period.
/// Samples uniform over [0, period].
ExerciseTrajectory gen_gait(double z0, double amplitude_x, double amplitude_z,
                            double theta_amplitude, double period, int n_samples);

/// Anterior-posterior translation at fixed pitch:
///   x(t) = amplitude sin(2 pi cycles t / period), z = z0, theta = theta_fix.
/// amplitude is capped at 0.05 m (centimetre-scale tibial travel); one cycle
/// lasts one second.
ExerciseTrajectory gen_lachman(double z0, double theta_fix, double amplitude, int cycles,
                               int n_samples);

/// Vertical-axis rotation with in-phase translation coupling:
///   psi(t) = psi_amplitude sin(2 pi cycles t / period),
///   x(t) = x_couple sin(same phase), z = z0, theta = 0.
/// psi_amplitude must lie in (0, 30 deg]; one cycle lasts one second.
ExerciseTrajectory gen_pivot_shift(double z0, double psi_amplitude, double x_couple,
                                   int cycles, int n_samples);

/// Continuous passive flexion-extension: theta sweeps theta_min -> theta_max
/// -> theta_min as a triangle wave over one period; x = 0, z = z0, psi = 0.
ExerciseTrajectory gen_cpm_flexion(double z0, double theta_min, double theta_max,
                                   double period, int n_samples);

struct FeasibilityOptions {
  FeasibilityRule rule;
  double rate_limit = 0.5;  ///< max actuator speed [m/s]
};

/// Per-sample outcome. q_rate is the finite-difference actuator speed
/// (central differences, one-sided at the trajectory ends); a sample is
/// feasible when its pose check passes and its rate stays within rate_limit.
struct SampleCheck {
  PoseCheck pose;
  Eigen::Vector4d q_rate = Eigen::Vector4d::Zero();
  bool feasible = false;
  std::optional<FeasibilityCode> code;
};

struct FeasibilitySummary {
  bool all_feasible = false;
  double max_kappa = 0.0;
  double max_abs_q_rate = 0.0;
  std::optional<std::size_t> first_infeasible_index;
};

struct FeasibilityReport {
  std::vector<SampleCheck> samples;
  FeasibilitySummary summary;
};

/// Pointwise per-sample evaluation; infeasibility is data, not an error.
/// Throws InvalidParamsError only when the trajectory itself is malformed.
FeasibilityReport check_feasibility(const MechanismGeometry& geom,
                                    const ExerciseTrajectory& trajectory,
                                    const FeasibilityOptions& options = {});

}  // namespace rehabkin
