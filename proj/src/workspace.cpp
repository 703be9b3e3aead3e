#include "rehabkin/workspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rehabkin/errors.hpp"

namespace rehabkin {

namespace {

constexpr double kMaxStepsPerAxis = 1e4;

/// Nodes lo, lo + step, ... including both endpoints. A last whole step that
/// lands within rounding noise of hi becomes hi itself, so interval endpoints
/// are exact; otherwise hi is appended.
std::vector<double> axis_nodes(double lo, double hi, double step) {
  const double tol = 1e-9 * std::max(1.0, std::abs(hi));
  const long count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> nodes;
  nodes.reserve(static_cast<std::size_t>(count) + 2);
  for (long k = 0; k < count; ++k) {
    nodes.push_back(lo + static_cast<double>(k) * step);
  }
  const double last = lo + static_cast<double>(count) * step;
  if (std::abs(last - hi) <= tol) {
    nodes.push_back(hi);
  } else {
    nodes.push_back(last);
    if (last < hi - tol) {
      nodes.push_back(hi);
    }
  }
  return nodes;
}

void require_axis(double lo, double hi, double step, const char* axis, bool allow_point) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(step) || !(step > 0.0)) {
    throw InvalidParamsError(std::string(axis) + " axis needs finite bounds and step > 0");
  }
  if (allow_point ? !(lo <= hi) : !(lo < hi)) {
    throw InvalidParamsError(std::string(axis) + " axis range is empty");
  }
  if ((hi - lo) / step > kMaxStepsPerAxis) {
    throw GridTooLargeError(std::string(axis) + " axis exceeds 1e4 steps");
  }
}

}  // namespace

std::string to_string(AspectOrdering ordering) {
  switch (ordering) {
    case AspectOrdering::HorizontalBiasA:
      return "HORIZONTAL_BIAS_A";
    case AspectOrdering::HorizontalBiasB:
      return "HORIZONTAL_BIAS_B";
    case AspectOrdering::Tie:
      return "TIE";
  }
  return "UNKNOWN";
}

WorkspaceMap sweep(const MechanismGeometry& geom, const GridSpec& grid,
                   const FeasibilityRule& rule) {
  require_axis(grid.x_min, grid.x_max, grid.step, "x", false);
  require_axis(grid.z_min, grid.z_max, grid.step, "z", false);
  if (!std::isfinite(grid.theta_fixed) || !std::isfinite(grid.psi_fixed)) {
    throw InvalidParamsError("fixed orientation must be finite");
  }

  WorkspaceMap map;
  map.grid = grid;
  map.xs = axis_nodes(grid.x_min, grid.x_max, grid.step);
  map.zs = axis_nodes(grid.z_min, grid.z_max, grid.step);
  map.cells.reserve(map.xs.size() * map.zs.size());
  for (double z : map.zs) {
    for (double x : map.xs) {
      map.cells.push_back({x, z, check_pose(geom, {x, z, grid.theta_fixed, grid.psi_fixed}, rule)});
    }
  }
  return map;
}

WorkspaceMetrics metrics(const WorkspaceMap& map) {
  WorkspaceMetrics out;
  out.total_cells = map.cells.size();

  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -std::numeric_limits<double>::infinity();
  double z_lo = std::numeric_limits<double>::infinity();
  double z_hi = -std::numeric_limits<double>::infinity();
  double inverse_kappa_sum = 0.0;

  for (const WorkspaceCell& cell : map.cells) {
    if (!cell.check.feasible) {
      continue;
    }
    ++out.feasible_cells;
    x_lo = std::min(x_lo, cell.x);
    x_hi = std::max(x_hi, cell.x);
    z_lo = std::min(z_lo, cell.z);
    z_hi = std::max(z_hi, cell.z);
    inverse_kappa_sum += 1.0 / *cell.check.kappa;  // 0 at an exact singularity
  }

  if (out.feasible_cells > 0) {
    out.area = static_cast<double>(out.feasible_cells) * map.grid.step * map.grid.step;
    out.x_extent = x_hi - x_lo;
    out.z_extent = z_hi - z_lo;
    out.aspect = out.z_extent > 0.0 ? out.x_extent / out.z_extent : 0.0;
    out.gci = inverse_kappa_sum / static_cast<double>(out.feasible_cells);
  }
  return out;
}

OrientationMap orientation_sweep(const MechanismGeometry& geom, double x, double z,
                                 Interval theta_range, Interval psi_range, double step,
                                 const FeasibilityRule& rule) {
  require_axis(theta_range.min, theta_range.max, step, "theta", true);
  require_axis(psi_range.min, psi_range.max, step, "psi", true);
  if (!std::isfinite(x) || !std::isfinite(z)) {
    throw InvalidParamsError("station (x, z) must be finite");
  }

  OrientationMap map;
  map.x = x;
  map.z = z;
  map.thetas = axis_nodes(theta_range.min, theta_range.max, step);
  map.psis = axis_nodes(psi_range.min, psi_range.max, step);
  map.cells.reserve(map.thetas.size() * map.psis.size());
  for (double psi : map.psis) {
    for (double theta : map.thetas) {
      map.cells.push_back(check_pose(geom, {x, z, theta, psi}, rule));
    }
  }
  return map;
}

ComparisonReport compare(const MechanismGeometry& geom_a, const MechanismGeometry& geom_b,
                         const GridSpec& grid, const FeasibilityRule& rule) {
  ComparisonReport report;
  report.map_a = sweep(geom_a, grid, rule);
  report.map_b = sweep(geom_b, grid, rule);
  report.metrics_a = metrics(report.map_a);
  report.metrics_b = metrics(report.map_b);

  if (report.metrics_a.aspect > report.metrics_b.aspect) {
    report.ordering = AspectOrdering::HorizontalBiasA;
  } else if (report.metrics_b.aspect > report.metrics_a.aspect) {
    report.ordering = AspectOrdering::HorizontalBiasB;
  } else {
    report.ordering = AspectOrdering::Tie;
  }
  report.area_ratio = (report.metrics_a.area == 0.0 && report.metrics_b.area == 0.0)
                          ? 1.0
                          : report.metrics_a.area / report.metrics_b.area;
  return report;
}

}  // namespace rehabkin
