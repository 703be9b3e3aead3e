#pragma once

#include <string>

#include "rehabkin/exercises.hpp"
#include "rehabkin/workspace.hpp"

namespace rehabkin {

/// Fixed number formatting for every emitted value: printf "%.9g".
std::string format_number(double value);

/// Header: x,z,feasible,kappa,q_c,q_1,q_2,q_3,violation
/// Rows follow cell storage order (z ascending outer, x ascending inner).
/// Absent values are empty fields; newline is '\n'.
std::string workspace_csv(const WorkspaceMap& map);

/// Header: t,x,z,theta,psi,q_c,q_1,q_2,q_3,kappa,feasible,violation
/// Angles in radians. report must come from the same trajectory.
std::string trajectory_csv(const ExerciseTrajectory& trajectory,
                           const FeasibilityReport& report);

}  // namespace rehabkin
