#include "rehabkin/exercises.hpp"

#include <algorithm>
#include <cmath>

#include "rehabkin/errors.hpp"

namespace rehabkin {

namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr double kLachmanAmplitudeCap = 0.05;  // centimetre-scale tibial travel
constexpr double kPivotPsiCap = deg2rad(30.0);
constexpr double kSecondsPerCycle = 1.0;

void require(bool ok, const char* message) {
  if (!ok) {
    throw InvalidParamsError(message);
  }
}

std::vector<double> uniform_times(double period, int n_samples) {
  std::vector<double> times(static_cast<std::size_t>(n_samples));
  for (int k = 0; k < n_samples; ++k) {
    times[static_cast<std::size_t>(k)] = period * k / (n_samples - 1);
  }
  return times;
}

}  // namespace

std::string to_string(ExerciseKind kind) {
  switch (kind) {
    case ExerciseKind::Gait:
      return "GAIT";
    case ExerciseKind::Lachman:
      return "LACHMAN";
    case ExerciseKind::PivotShift:
      return "PIVOT_SHIFT";
    case ExerciseKind::CpmFlexion:
      return "CPM_FLEXION";
  }
  return "UNKNOWN";
}

ExerciseTrajectory gen_gait(double z0, double amplitude_x, double amplitude_z,
                            double theta_amplitude, double period, int n_samples) {
  require(n_samples >= 2, "gait: need at least two samples");
  require(std::isfinite(period) && period > 0.0, "gait: period must be positive");
  require(std::isfinite(z0) && z0 > 0.0, "gait: z0 must be positive");
  require(std::isfinite(amplitude_x) && amplitude_x >= 0.0 && std::isfinite(amplitude_z) &&
              amplitude_z >= 0.0 && std::isfinite(theta_amplitude) && theta_amplitude >= 0.0,
          "gait: amplitudes must be nonnegative");

  ExerciseTrajectory trajectory{ExerciseKind::Gait, {}, period};
  const double omega = kTwoPi / period;
  for (double t : uniform_times(period, n_samples)) {
    trajectory.samples.push_back(
        {t,
         {amplitude_x * std::sin(omega * t), z0 + 0.5 * amplitude_z * (1.0 - std::cos(omega * t)),
          theta_amplitude * std::sin(omega * t), 0.0}});
  }
  return trajectory;
}

ExerciseTrajectory gen_lachman(double z0, double theta_fix, double amplitude, int cycles,
                               int n_samples) {
  require(n_samples >= 2, "lachman: need at least two samples");
  require(cycles >= 1, "lachman: need at least one cycle");
  require(std::isfinite(z0) && z0 > 0.0, "lachman: z0 must be positive");
  require(std::isfinite(theta_fix), "lachman: fixed pitch must be finite");
  require(std::isfinite(amplitude) && amplitude > 0.0 && amplitude <= kLachmanAmplitudeCap,
          "lachman: amplitude must be in (0, 0.05] m");

  const double period = kSecondsPerCycle * cycles;
  ExerciseTrajectory trajectory{ExerciseKind::Lachman, {}, period};
  for (double t : uniform_times(period, n_samples)) {
    trajectory.samples.push_back(
        {t, {amplitude * std::sin(kTwoPi * cycles * t / period), z0, theta_fix, 0.0}});
  }
  return trajectory;
}

ExerciseTrajectory gen_pivot_shift(double z0, double psi_amplitude, double x_couple, int cycles,
                                   int n_samples) {
  require(n_samples >= 2, "pivot_shift: need at least two samples");
  require(cycles >= 1, "pivot_shift: need at least one cycle");
  require(std::isfinite(z0) && z0 > 0.0, "pivot_shift: z0 must be positive");
  require(std::isfinite(psi_amplitude) && psi_amplitude > 0.0 && psi_amplitude <= kPivotPsiCap,
          "pivot_shift: psi amplitude must be in (0, 30 deg]");
  require(std::isfinite(x_couple) && x_couple >= 0.0,
          "pivot_shift: translation coupling must be nonnegative");

  const double period = kSecondsPerCycle * cycles;
  ExerciseTrajectory trajectory{ExerciseKind::PivotShift, {}, period};
  for (double t : uniform_times(period, n_samples)) {
    const double phase = std::sin(kTwoPi * cycles * t / period);
    trajectory.samples.push_back({t, {x_couple * phase, z0, 0.0, psi_amplitude * phase}});
  }
  return trajectory;
}

ExerciseTrajectory gen_cpm_flexion(double z0, double theta_min, double theta_max, double period,
                                   int n_samples) {
  require(n_samples >= 2, "cpm_flexion: need at least two samples");
  require(std::isfinite(period) && period > 0.0, "cpm_flexion: period must be positive");
  require(std::isfinite(z0) && z0 > 0.0, "cpm_flexion: z0 must be positive");
  require(std::isfinite(theta_min) && std::isfinite(theta_max) && theta_min < theta_max,
          "cpm_flexion: need theta_min < theta_max");

  ExerciseTrajectory trajectory{ExerciseKind::CpmFlexion, {}, period};
  for (double t : uniform_times(period, n_samples)) {
    const double u = t / period;
    const double triangle = u <= 0.5 ? 2.0 * u : 2.0 * (1.0 - u);
    trajectory.samples.push_back({t, {0.0, z0, theta_min + (theta_max - theta_min) * triangle, 0.0}});
  }
  return trajectory;
}

FeasibilityReport check_feasibility(const MechanismGeometry& geom,
                                    const ExerciseTrajectory& trajectory,
                                    const FeasibilityOptions& options) {
  const auto& samples = trajectory.samples;
  require(samples.size() >= 2, "trajectory needs at least two samples");
  require(samples.front().t == 0.0, "trajectory must start at t = 0");
  for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
    require(samples[k].t < samples[k + 1].t, "sample times must be strictly increasing");
  }
  for (const TrajectorySample& sample : samples) {
    require(pose_is_finite(sample.pose) && sample.pose.z > 0.0,
            "trajectory poses must be finite with z > 0");
  }

  FeasibilityReport report;
  report.samples.reserve(samples.size());
  for (const TrajectorySample& sample : samples) {
    SampleCheck check;
    check.pose = check_pose(geom, sample.pose, options.rule);
    report.samples.push_back(std::move(check));
  }

  // Finite-difference actuator rates; one-sided at the ends and across
  // unreachable neighbours.
  const std::size_t n = samples.size();
  for (std::size_t k = 0; k < n; ++k) {
    SampleCheck& check = report.samples[k];
    if (!check.pose.q) {
      continue;  // rate stays zero for unreachable samples
    }
    std::size_t lo = k;
    std::size_t hi = k;
    if (k > 0 && report.samples[k - 1].pose.q) {
      lo = k - 1;
    }
    if (k + 1 < n && report.samples[k + 1].pose.q) {
      hi = k + 1;
    }
    if (lo == hi) {
      continue;
    }
    check.q_rate =
        (*report.samples[hi].pose.q - *report.samples[lo].pose.q) / (samples[hi].t - samples[lo].t);
  }

  FeasibilitySummary& summary = report.summary;
  summary.all_feasible = true;
  for (std::size_t k = 0; k < n; ++k) {
    SampleCheck& check = report.samples[k];
    const double rate = check.q_rate.lpNorm<Eigen::Infinity>();
    summary.max_abs_q_rate = std::max(summary.max_abs_q_rate, rate);
    if (check.pose.kappa) {
      summary.max_kappa = std::max(summary.max_kappa, *check.pose.kappa);
    }
    check.code = check.pose.code;
    if (!check.code && rate > options.rate_limit) {
      check.code = FeasibilityCode::Rate;
    }
    check.feasible = !check.code.has_value();
    if (!check.feasible) {
      summary.all_feasible = false;
      if (!summary.first_infeasible_index) {
        summary.first_infeasible_index = k;
      }
    }
  }
  return report;
}

}  // namespace rehabkin
