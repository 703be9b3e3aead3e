// Command-line front end: loads geometry documents, dispatches to the
// analysis layers, and writes CSV / JSON outputs.
//
// Exit codes: 0 success, 2 invalid input (flags, geometry, exercise params),
// 3 kinematic failure (unreachable pose, FK non-convergence, singular
// Jacobian), 4 grid too large, 5 exercise completed but not all-feasible.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rehabkin/csv.hpp"
#include "rehabkin/errors.hpp"
#include "rehabkin/exercises.hpp"
#include "rehabkin/geometry_json.hpp"
#include "rehabkin/kinematics.hpp"
#include "rehabkin/workspace.hpp"

namespace {

namespace fs = std::filesystem;
using rehabkin::format_number;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitKinematic = 3;
constexpr int kExitGridTooLarge = 4;
constexpr int kExitInfeasible = 5;

struct PoseFlags {
  std::vector<double> values;  // x, z, theta, psi
};

rehabkin::Pose2T2R to_pose(const std::vector<double>& values, bool degrees) {
  const double scale = degrees ? rehabkin::deg2rad(1.0) : 1.0;
  return {values[0], values[1], values[2] * scale, values[3] * scale};
}

/// Output files are opened before any computation starts.
std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw rehabkin::InvalidParamsError("cannot open output file: " + path.string());
  }
  return out;
}

void print_violations(const std::vector<rehabkin::JointViolation>& violations) {
  if (violations.empty()) {
    std::cout << "violations: none\n";
    return;
  }
  std::cout << "violations (" << violations.size() << "):\n";
  for (const auto& violation : violations) {
    std::cout << "  limb " << violation.limb_id << " " << to_string(violation.kind) << " "
              << format_number(violation.magnitude) << "\n";
  }
}

void print_metrics(const std::string& label, const rehabkin::WorkspaceMetrics& metrics) {
  std::cout << label << "cells: " << metrics.total_cells
            << "  feasible: " << metrics.feasible_cells << "\n"
            << label << "area = " << format_number(metrics.area) << " m^2\n"
            << label << "x_extent = " << format_number(metrics.x_extent) << " m\n"
            << label << "z_extent = " << format_number(metrics.z_extent) << " m\n"
            << label << "aspect = " << format_number(metrics.aspect) << "\n"
            << label << "gci = " << format_number(metrics.gci) << "\n";
}

nlohmann::json metrics_json(const rehabkin::WorkspaceMetrics& metrics,
                            const std::string& geometry_path,
                            rehabkin::Architecture architecture) {
  return {{"geometry", geometry_path},
          {"architecture", to_string(architecture)},
          {"total_cells", metrics.total_cells},
          {"feasible_cells", metrics.feasible_cells},
          {"area", metrics.area},
          {"x_extent", metrics.x_extent},
          {"z_extent", metrics.z_extent},
          {"aspect", metrics.aspect},
          {"gci", metrics.gci}};
}

struct IkArgs {
  std::string geom_path;
  std::vector<double> pose;
  bool degrees = false;
};

int run_ik(const IkArgs& args) {
  const auto geometry = rehabkin::load_geometry(args.geom_path);
  const auto pose = to_pose(args.pose, args.degrees);
  const auto solution = rehabkin::ik(geometry, pose);

  std::cout << "architecture: " << to_string(geometry.architecture) << "\n"
            << "pose: x=" << format_number(pose.x) << " z=" << format_number(pose.z)
            << " theta=" << format_number(pose.theta) << " psi=" << format_number(pose.psi)
            << " (radians)\n"
            << "q_c = " << format_number(solution.q[0]) << "\n"
            << "q_1 = " << format_number(solution.q[1]) << "\n"
            << "q_2 = " << format_number(solution.q[2]) << "\n"
            << "q_3 = " << format_number(solution.q[3]) << "\n"
            << "phi_central = " << format_number(solution.phi_central) << "\n";
  print_violations(solution.violations);
  return kExitOk;
}

struct FkArgs {
  std::string geom_path;
  std::vector<double> q;
  std::vector<double> guess{0.02, 0.9, 0.02, 0.02};
  bool degrees = false;
};

int run_fk(const FkArgs& args) {
  const auto geometry = rehabkin::load_geometry(args.geom_path);
  const Eigen::Vector4d q(args.q[0], args.q[1], args.q[2], args.q[3]);
  const auto pose = rehabkin::fk(geometry, q, to_pose(args.guess, args.degrees));
  std::cout << "pose: x=" << format_number(pose.x) << " z=" << format_number(pose.z)
            << " theta=" << format_number(pose.theta) << " psi=" << format_number(pose.psi)
            << " (radians)\n";
  return kExitOk;
}

struct WorkspaceArgs {
  std::string geom_path;
  double x_min = -0.4;
  double x_max = 0.4;
  double z_min = 0.55;
  double z_max = 1.25;
  double step = 0.01;
  double theta = 0.0;
  double psi = 0.0;
  double margin_min = 0.0;
  bool degrees = false;
  std::string out_path;
};

int run_workspace(const WorkspaceArgs& args) {
  const auto geometry = rehabkin::load_geometry(args.geom_path);
  std::optional<std::ofstream> out;
  if (!args.out_path.empty()) {
    out = open_output(args.out_path);
  }
  const double scale = args.degrees ? rehabkin::deg2rad(1.0) : 1.0;
  const rehabkin::GridSpec grid{args.x_min, args.x_max, args.z_min, args.z_max,
                                args.step,  args.theta * scale, args.psi * scale};
  const auto map = rehabkin::sweep(geometry, grid, {args.margin_min});
  print_metrics("", rehabkin::metrics(map));
  if (out) {
    *out << rehabkin::workspace_csv(map);
    std::cout << "wrote " << args.out_path << "\n";
  }
  return kExitOk;
}

struct CompareArgs {
  std::string geom_a;
  std::string geom_b;
  WorkspaceArgs grid;  // reuses the grid defaults
  std::string out_path;
  std::string csv_a;
  std::string csv_b;
};

fs::path derived_csv_path(const fs::path& report_path, const char* suffix) {
  fs::path path = report_path;
  path.replace_extension();
  path += suffix;
  return path;
}

int run_compare(const CompareArgs& args) {
  const auto geometry_a = rehabkin::load_geometry(args.geom_a);
  const auto geometry_b = rehabkin::load_geometry(args.geom_b);

  fs::path csv_a_path = args.csv_a;
  fs::path csv_b_path = args.csv_b;
  std::optional<std::ofstream> report_out;
  std::optional<std::ofstream> csv_a_out;
  std::optional<std::ofstream> csv_b_out;
  if (!args.out_path.empty()) {
    report_out = open_output(args.out_path);
    if (csv_a_path.empty()) {
      csv_a_path = derived_csv_path(args.out_path, "_a.csv");
    }
    if (csv_b_path.empty()) {
      csv_b_path = derived_csv_path(args.out_path, "_b.csv");
    }
  }
  if (!csv_a_path.empty()) {
    csv_a_out = open_output(csv_a_path);
  }
  if (!csv_b_path.empty()) {
    csv_b_out = open_output(csv_b_path);
  }

  const double scale = args.grid.degrees ? rehabkin::deg2rad(1.0) : 1.0;
  const rehabkin::GridSpec grid{args.grid.x_min, args.grid.x_max,
                                args.grid.z_min, args.grid.z_max,
                                args.grid.step,  args.grid.theta * scale,
                                args.grid.psi * scale};
  const auto report = rehabkin::compare(geometry_a, geometry_b, grid, {args.grid.margin_min});

  std::cout << "A: " << args.geom_a << " (" << to_string(geometry_a.architecture) << ")\n";
  print_metrics("A: ", report.metrics_a);
  std::cout << "B: " << args.geom_b << " (" << to_string(geometry_b.architecture) << ")\n";
  print_metrics("B: ", report.metrics_b);
  std::cout << "aspect_ordering = " << to_string(report.ordering) << "\n"
            << "area_ratio = " << format_number(report.area_ratio) << "\n";

  if (report_out) {
    const nlohmann::json doc = {
        {"grid",
         {{"x_min", grid.x_min},
          {"x_max", grid.x_max},
          {"z_min", grid.z_min},
          {"z_max", grid.z_max},
          {"step", grid.step},
          {"theta_fixed", grid.theta_fixed},
          {"psi_fixed", grid.psi_fixed},
          {"margin_min", args.grid.margin_min}}},
        {"a", metrics_json(report.metrics_a, args.geom_a, geometry_a.architecture)},
        {"b", metrics_json(report.metrics_b, args.geom_b, geometry_b.architecture)},
        {"aspect_ordering", to_string(report.ordering)},
        {"area_ratio", report.area_ratio}};
    *report_out << doc.dump(2) << "\n";
    std::cout << "wrote " << args.out_path << "\n";
  }
  if (csv_a_out) {
    *csv_a_out << rehabkin::workspace_csv(report.map_a);
    std::cout << "wrote " << csv_a_path.string() << "\n";
  }
  if (csv_b_out) {
    *csv_b_out << rehabkin::workspace_csv(report.map_b);
    std::cout << "wrote " << csv_b_path.string() << "\n";
  }
  return kExitOk;
}

struct ExerciseArgs {
  std::string geom_path;
  std::string kind;
  double z0 = 0.0;
  double amplitude_x = 0.15;
  double amplitude_z = 0.10;
  double theta_amp = rehabkin::deg2rad(10.0);
  double period = 0.0;
  int samples = 0;
  double theta_fix = rehabkin::deg2rad(10.0);
  double amplitude = 0.03;
  int cycles = 5;
  double psi_amp = rehabkin::deg2rad(15.0);
  double x_couple = 0.02;
  double theta_min = 0.0;
  double theta_max = rehabkin::deg2rad(45.0);
  double margin_min = 0.0;
  double rate_limit = 0.5;
  bool degrees = false;
  std::string out_path;

  bool z0_set = false;
  bool period_set = false;
  bool samples_set = false;
  bool theta_amp_set = false;
  bool theta_fix_set = false;
  bool psi_amp_set = false;
  bool theta_min_set = false;
  bool theta_max_set = false;
};

rehabkin::ExerciseTrajectory build_trajectory(const ExerciseArgs& args) {
  const double scale = args.degrees ? rehabkin::deg2rad(1.0) : 1.0;
  // Degree conversion applies only to user-supplied angles; defaults are
  // already radians.
  const double theta_amp = args.theta_amp_set ? args.theta_amp * scale : args.theta_amp;
  const double theta_fix = args.theta_fix_set ? args.theta_fix * scale : args.theta_fix;
  const double psi_amp = args.psi_amp_set ? args.psi_amp * scale : args.psi_amp;
  const double theta_min = args.theta_min_set ? args.theta_min * scale : args.theta_min;
  const double theta_max = args.theta_max_set ? args.theta_max * scale : args.theta_max;
  auto z0 = [&args](double fallback) { return args.z0_set ? args.z0 : fallback; };
  auto period = [&args](double fallback) { return args.period_set ? args.period : fallback; };
  auto samples = [&args](int fallback) { return args.samples_set ? args.samples : fallback; };

  if (args.kind == "gait") {
    return rehabkin::gen_gait(z0(0.95), args.amplitude_x, args.amplitude_z, theta_amp,
                              period(2.0), samples(101));
  }
  if (args.kind == "lachman") {
    return rehabkin::gen_lachman(z0(1.0), theta_fix, args.amplitude, args.cycles, samples(101));
  }
  if (args.kind == "pivot_shift") {
    return rehabkin::gen_pivot_shift(z0(1.0), psi_amp, args.x_couple, args.cycles, samples(101));
  }
  if (args.kind == "cpm_flexion") {
    return rehabkin::gen_cpm_flexion(z0(0.95), theta_min, theta_max, period(4.0), samples(91));
  }
  throw rehabkin::InvalidParamsError("unknown exercise kind: " + args.kind);
}

int run_exercise(const ExerciseArgs& args) {
  const auto trajectory = build_trajectory(args);  // parameter guards fire first
  if (args.geom_path.empty()) {
    throw rehabkin::InvalidParamsError("--geom is required to check feasibility");
  }
  const auto geometry = rehabkin::load_geometry(args.geom_path);
  std::optional<std::ofstream> out;
  if (!args.out_path.empty()) {
    out = open_output(args.out_path);
  }

  const rehabkin::FeasibilityOptions options{{args.margin_min}, args.rate_limit};
  const auto report = rehabkin::check_feasibility(geometry, trajectory, options);

  std::cout << "kind: " << to_string(trajectory.kind)
            << "  samples: " << trajectory.samples.size()
            << "  period: " << format_number(trajectory.period) << " s\n"
            << "all_feasible: " << (report.summary.all_feasible ? "yes" : "no") << "\n"
            << "max_kappa = " << format_number(report.summary.max_kappa) << "\n"
            << "max_abs_q_rate = " << format_number(report.summary.max_abs_q_rate) << " m/s\n";
  if (report.summary.first_infeasible_index) {
    std::cout << "first_infeasible_index = " << *report.summary.first_infeasible_index << "\n";
  }
  if (out) {
    *out << rehabkin::trajectory_csv(trajectory, report);
    std::cout << "wrote " << args.out_path << "\n";
  }
  return report.summary.all_feasible ? kExitOk : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kinematic design and evaluation toolkit for 2T2R parallel mechanisms "
               "(RPU+3UPS and PRU+3PUS) used in knee rehabilitation and diagnosis"};
  app.require_subcommand(1);

  IkArgs ik_args;
  auto* ik_cmd = app.add_subcommand("ik", "inverse kinematics at one pose");
  ik_cmd->add_option("--geom", ik_args.geom_path, "geometry document (JSON)")->required();
  ik_cmd->add_option("--pose", ik_args.pose, "pose as x,z,theta,psi")
      ->required()
      ->delimiter(',')
      ->expected(4);
  ik_cmd->add_flag("--degrees", ik_args.degrees, "interpret pose angles as degrees");

  FkArgs fk_args;
  auto* fk_cmd = app.add_subcommand("fk", "forward kinematics from actuator values");
  fk_cmd->add_option("--geom", fk_args.geom_path, "geometry document (JSON)")->required();
  fk_cmd->add_option("--q", fk_args.q, "actuator values as q_c,q_1,q_2,q_3")
      ->required()
      ->delimiter(',')
      ->expected(4);
  fk_cmd->add_option("--guess", fk_args.guess, "starting pose as x,z,theta,psi")
      ->delimiter(',')
      ->expected(4);
  fk_cmd->add_flag("--degrees", fk_args.degrees, "interpret guess angles as degrees");

  WorkspaceArgs ws_args;
  auto* ws_cmd = app.add_subcommand("workspace", "sagittal-plane workspace sweep");
  ws_cmd->add_option("--geom", ws_args.geom_path, "geometry document (JSON)")->required();
  ws_cmd->add_option("--xmin", ws_args.x_min, "grid x minimum [m]");
  ws_cmd->add_option("--xmax", ws_args.x_max, "grid x maximum [m]");
  ws_cmd->add_option("--zmin", ws_args.z_min, "grid z minimum [m]");
  ws_cmd->add_option("--zmax", ws_args.z_max, "grid z maximum [m]");
  ws_cmd->add_option("--step", ws_args.step, "grid step [m]");
  ws_cmd->add_option("--theta", ws_args.theta, "fixed pitch");
  ws_cmd->add_option("--psi", ws_args.psi, "fixed spin");
  ws_cmd->add_option("--margin-min", ws_args.margin_min,
                     "conditioning floor on 1/kappa (0 = pure reachability)");
  ws_cmd->add_flag("--degrees", ws_args.degrees, "interpret theta/psi as degrees");
  ws_cmd->add_option("--out", ws_args.out_path, "workspace CSV output path");

  CompareArgs cmp_args;
  auto* cmp_cmd = app.add_subcommand("compare", "two-architecture workspace comparison");
  cmp_cmd->add_option("--geom-a", cmp_args.geom_a, "first geometry document")->required();
  cmp_cmd->add_option("--geom-b", cmp_args.geom_b, "second geometry document")->required();
  cmp_cmd->add_option("--xmin", cmp_args.grid.x_min, "grid x minimum [m]");
  cmp_cmd->add_option("--xmax", cmp_args.grid.x_max, "grid x maximum [m]");
  cmp_cmd->add_option("--zmin", cmp_args.grid.z_min, "grid z minimum [m]");
  cmp_cmd->add_option("--zmax", cmp_args.grid.z_max, "grid z maximum [m]");
  cmp_cmd->add_option("--step", cmp_args.grid.step, "grid step [m]");
  cmp_cmd->add_option("--theta", cmp_args.grid.theta, "fixed pitch");
  cmp_cmd->add_option("--psi", cmp_args.grid.psi, "fixed spin");
  cmp_cmd->add_option("--margin-min", cmp_args.grid.margin_min,
                      "conditioning floor on 1/kappa");
  cmp_cmd->add_flag("--degrees", cmp_args.grid.degrees, "interpret theta/psi as degrees");
  cmp_cmd->add_option("--out", cmp_args.out_path, "comparison report (JSON) output path");
  cmp_cmd->add_option("--csv-a", cmp_args.csv_a, "CSV path for map A (default <out>_a.csv)");
  cmp_cmd->add_option("--csv-b", cmp_args.csv_b, "CSV path for map B (default <out>_b.csv)");

  ExerciseArgs ex_args;
  auto* ex_cmd = app.add_subcommand("exercise", "trajectory generation and feasibility check");
  ex_cmd->add_option("--kind", ex_args.kind, "gait | lachman | pivot_shift | cpm_flexion")
      ->required();
  ex_cmd->add_option("--geom", ex_args.geom_path, "geometry document (JSON)");
  auto* z0_opt = ex_cmd->add_option("--z0", ex_args.z0, "nominal platform height [m]");
  ex_cmd->add_option("--ax", ex_args.amplitude_x, "gait: horizontal amplitude [m]");
  ex_cmd->add_option("--az", ex_args.amplitude_z, "gait: vertical amplitude [m]");
  auto* theta_amp_opt =
      ex_cmd->add_option("--theta-amp", ex_args.theta_amp, "gait: pitch amplitude");
  auto* period_opt = ex_cmd->add_option("--period", ex_args.period, "gait/cpm_flexion: period [s]");
  auto* samples_opt = ex_cmd->add_option("--samples", ex_args.samples, "number of samples");
  auto* theta_fix_opt =
      ex_cmd->add_option("--theta-fix", ex_args.theta_fix, "lachman: fixed pitch");
  ex_cmd->add_option("--amplitude", ex_args.amplitude, "lachman: translation amplitude [m]");
  ex_cmd->add_option("--cycles", ex_args.cycles, "lachman/pivot_shift: cycle count");
  auto* psi_amp_opt =
      ex_cmd->add_option("--psi-amp", ex_args.psi_amp, "pivot_shift: spin amplitude");
  ex_cmd->add_option("--x-couple", ex_args.x_couple, "pivot_shift: translation coupling [m]");
  auto* theta_min_opt =
      ex_cmd->add_option("--theta-min", ex_args.theta_min, "cpm_flexion: minimum pitch");
  auto* theta_max_opt =
      ex_cmd->add_option("--theta-max", ex_args.theta_max, "cpm_flexion: maximum pitch");
  ex_cmd->add_option("--margin-min", ex_args.margin_min, "conditioning floor on 1/kappa");
  ex_cmd->add_option("--rate-limit", ex_args.rate_limit, "actuator speed limit [m/s]");
  ex_cmd->add_flag("--degrees", ex_args.degrees, "interpret angle flags as degrees");
  ex_cmd->add_option("--out", ex_args.out_path, "trajectory CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& error) {
    app.exit(error);
    return kExitBadInput;
  }

  ex_args.z0_set = z0_opt->count() > 0;
  ex_args.period_set = period_opt->count() > 0;
  ex_args.samples_set = samples_opt->count() > 0;
  ex_args.theta_amp_set = theta_amp_opt->count() > 0;
  ex_args.theta_fix_set = theta_fix_opt->count() > 0;
  ex_args.psi_amp_set = psi_amp_opt->count() > 0;
  ex_args.theta_min_set = theta_min_opt->count() > 0;
  ex_args.theta_max_set = theta_max_opt->count() > 0;

  try {
    if (*ik_cmd) {
      return run_ik(ik_args);
    }
    if (*fk_cmd) {
      return run_fk(fk_args);
    }
    if (*ws_cmd) {
      return run_workspace(ws_args);
    }
    if (*cmp_cmd) {
      return run_compare(cmp_args);
    }
    if (*ex_cmd) {
      return run_exercise(ex_args);
    }
  } catch (const rehabkin::InvalidGeometryError& error) {
    std::cerr << error.what() << "\n";
    return kExitBadInput;
  } catch (const rehabkin::InvalidParamsError& error) {
    std::cerr << "invalid parameters: " << error.what() << "\n";
    return kExitBadInput;
  } catch (const rehabkin::GridTooLargeError& error) {
    std::cerr << "grid too large: " << error.what() << "\n";
    return kExitGridTooLarge;
  } catch (const rehabkin::UnreachableError& error) {
    std::cerr << "unreachable: " << error.what() << "\n";
    return kExitKinematic;
  } catch (const rehabkin::NoConvergenceError& error) {
    std::cerr << "no convergence: " << error.what() << "\n";
    return kExitKinematic;
  } catch (const rehabkin::SingularJacobianError& error) {
    std::cerr << "singular Jacobian: " << error.what() << "\n";
    return kExitKinematic;
  } catch (const std::invalid_argument& error) {
    std::cerr << "invalid argument: " << error.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
