#include "rehabkin/csv.hpp"

#include <cstdio>

namespace rehabkin {

namespace {

void append_field(std::string& row, const std::string& value) {
  if (!row.empty()) {
    row += ',';
  }
  row += value;
}

std::string violation_field(const std::optional<FeasibilityCode>& code) {
  return code ? to_string(*code) : std::string();
}

}  // namespace

std::string format_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.9g", value);
  return buffer;
}

std::string workspace_csv(const WorkspaceMap& map) {
  std::string out = "x,z,feasible,kappa,q_c,q_1,q_2,q_3,violation\n";
  for (const WorkspaceCell& cell : map.cells) {
    std::string row;
    append_field(row, format_number(cell.x));
    append_field(row, format_number(cell.z));
    append_field(row, cell.check.feasible ? "1" : "0");
    append_field(row, cell.check.kappa ? format_number(*cell.check.kappa) : "");
    for (int i = 0; i < 4; ++i) {
      append_field(row, cell.check.q ? format_number((*cell.check.q)[i]) : "");
    }
    append_field(row, violation_field(cell.check.code));
    out += row;
    out += '\n';
  }
  return out;
}

std::string trajectory_csv(const ExerciseTrajectory& trajectory,
                           const FeasibilityReport& report) {
  std::string out = "t,x,z,theta,psi,q_c,q_1,q_2,q_3,kappa,feasible,violation\n";
  for (std::size_t k = 0; k < trajectory.samples.size(); ++k) {
    const TrajectorySample& sample = trajectory.samples[k];
    const SampleCheck& check = report.samples[k];
    std::string row;
    append_field(row, format_number(sample.t));
    append_field(row, format_number(sample.pose.x));
    append_field(row, format_number(sample.pose.z));
    append_field(row, format_number(sample.pose.theta));
    append_field(row, format_number(sample.pose.psi));
    for (int i = 0; i < 4; ++i) {
      append_field(row, check.pose.q ? format_number((*check.pose.q)[i]) : "");
    }
    append_field(row, check.pose.kappa ? format_number(*check.pose.kappa) : "");
    append_field(row, check.feasible ? "1" : "0");
    append_field(row, violation_field(check.code));
    out += row;
    out += '\n';
  }
  return out;
}

}  // namespace rehabkin
