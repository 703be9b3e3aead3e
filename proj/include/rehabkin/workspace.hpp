#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rehabkin/feasibility.hpp"

namespace rehabkin {

/// Rectangular sagittal-plane grid at a fixed orientation. Nodes include both
/// interval endpoints; each node owns a node-centered square cell of side
/// `step` for area purposes.
struct GridSpec {
  double x_min = 0.0;
  double x_max = 0.0;
  double z_min = 0.0;
  double z_max = 0.0;
  double step = 0.0;
  double theta_fixed = 0.0;
  double psi_fixed = 0.0;
};

struct WorkspaceCell {
  double x = 0.0;
  double z = 0.0;
  PoseCheck check;
};

/// Cells stored z-major: z ascending outer, x ascending inner.
struct WorkspaceMap {
  GridSpec grid;
  std::vector<double> xs;
  std::vector<double> zs;
  std::vector<WorkspaceCell> cells;

  const WorkspaceCell& at(std::size_t ix, std::size_t iz) const {
    return cells[iz * xs.size() + ix];
  }
};

struct WorkspaceMetrics {
  double area = 0.0;      ///< feasible cell count x step^2 [m^2]
  double x_extent = 0.0;  ///< coordinate span of feasible node positions [m]
  double z_extent = 0.0;
  double aspect = 0.0;    ///< x_extent / z_extent; 0 when z_extent is 0
  double gci = 0.0;       ///< mean of 1/kappa over feasible cells, in [0, 1]
  std::size_t feasible_cells = 0;
  std::size_t total_cells = 0;
};

/// Evaluates every grid node independently at (x, z, theta_fixed, psi_fixed).
/// Deterministic: identical inputs produce identical maps. Throws
/// GridTooLargeError when either axis exceeds 1e4 steps, InvalidParamsError on
/// a malformed grid.
WorkspaceMap sweep(const MechanismGeometry& geom, const GridSpec& grid,
                   const FeasibilityRule& rule = {});

WorkspaceMetrics metrics(const WorkspaceMap& map);

/// Orientation feasibility map over (theta, psi) at a fixed station (x, z).
/// Ranges may collapse to a single point. Cells stored psi-major: psi
/// ascending outer, theta ascending inner.
struct OrientationMap {
  double x = 0.0;
  double z = 0.0;
  std::vector<double> thetas;
  std::vector<double> psis;
  std::vector<PoseCheck> cells;

  const PoseCheck& at(std::size_t itheta, std::size_t ipsi) const {
    return cells[ipsi * thetas.size() + itheta];
  }
};

OrientationMap orientation_sweep(const MechanismGeometry& geom, double x, double z,
                                 Interval theta_range, Interval psi_range, double step,
                                 const FeasibilityRule& rule = {});

enum class AspectOrdering { HorizontalBiasA, HorizontalBiasB, Tie };

std::string to_string(AspectOrdering ordering);

struct ComparisonReport {
  WorkspaceMap map_a;
  WorkspaceMap map_b;
  WorkspaceMetrics metrics_a;
  WorkspaceMetrics metrics_b;
  AspectOrdering ordering = AspectOrdering::Tie;
  double area_ratio = 1.0;  ///< area_a / area_b; 1 when both are empty
};

/// Sweeps both geometries over the same grid and orders their aspects.
/// Arithmetic only; no judgment beyond the ordering enum.
ComparisonReport compare(const MechanismGeometry& geom_a, const MechanismGeometry& geom_b,
                         const GridSpec& grid, const FeasibilityRule& rule = {});

}  // namespace rehabkin
