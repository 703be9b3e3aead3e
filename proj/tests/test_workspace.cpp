#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rehabkin/csv.hpp"
#include "rehabkin/errors.hpp"
#include "rehabkin/workspace.hpp"

using rehabkin::FeasibilityCode;
using rehabkin::FeasibilityRule;
using rehabkin::GridSpec;
using rehabkin::MechanismGeometry;
using rehabkin::Pose2T2R;
using rehabkin::sweep;
using rehabkin::WorkspaceMap;

namespace {

const GridSpec kSmallGrid{-0.2, 0.2, 0.8, 1.2, 0.2, 0.0, 0.0};

/// Reference rule applied node by node, independent of sweep's bookkeeping.
struct NodeOutcome {
  bool feasible = false;
  bool reachable = false;
  Eigen::Vector4d q = Eigen::Vector4d::Zero();
  std::optional<FeasibilityCode> code;
};

NodeOutcome evaluate_node(const MechanismGeometry& geom, const Pose2T2R& pose,
                          const FeasibilityRule& rule) {
  NodeOutcome outcome;
  rehabkin::ActuatorSolution sol;
  try {
    sol = rehabkin::ik(geom, pose);
  } catch (const rehabkin::UnreachableError&) {
    outcome.code = FeasibilityCode::Unreachable;
    return outcome;
  }
  outcome.reachable = true;
  outcome.q = sol.q;
  const double margin = rehabkin::singularity_margin(rehabkin::jacobian(geom, pose));
  bool stroke = false;
  bool cone = false;
  for (const auto& v : sol.violations) {
    if (v.kind == rehabkin::ViolationKind::StrokeUnder ||
        v.kind == rehabkin::ViolationKind::StrokeOver) {
      stroke = true;
    } else {
      cone = true;
    }
  }
  if (stroke) {
    outcome.code = FeasibilityCode::Stroke;
  } else if (cone) {
    outcome.code = FeasibilityCode::Cone;
  } else if (margin < rule.margin_min) {
    outcome.code = FeasibilityCode::Singular;
  } else {
    outcome.feasible = true;
  }
  return outcome;
}

void check_against_brute_force(const MechanismGeometry& geom, const WorkspaceMap& map,
                               const FeasibilityRule& rule) {
  REQUIRE(map.cells.size() == map.xs.size() * map.zs.size());
  std::size_t index = 0;
  for (double z : map.zs) {
    for (double x : map.xs) {
      const auto& cell = map.cells[index++];
      CHECK(cell.x == x);
      CHECK(cell.z == z);
      const NodeOutcome expected =
          evaluate_node(geom, {x, z, map.grid.theta_fixed, map.grid.psi_fixed}, rule);
      CHECK(cell.check.feasible == expected.feasible);
      CHECK(cell.check.q.has_value() == expected.reachable);
      if (expected.reachable) {
        CHECK(*cell.check.q == expected.q);
      }
      CHECK(cell.check.code == expected.code);
    }
  }
}

std::size_t count_feasible(const WorkspaceMap& map) {
  std::size_t n = 0;
  for (const auto& cell : map.cells) {
    n += cell.check.feasible ? 1 : 0;
  }
  return n;
}

}  // namespace

TEST_CASE("3x3 sweep marks the two upper corners as central stroke failures") {
  const auto geom = rehabkin::reference_g0();
  const auto map = sweep(geom, kSmallGrid);

  REQUIRE(map.xs.size() == 3);
  REQUIRE(map.zs.size() == 3);
  CHECK(map.xs[0] == -0.2);
  CHECK(map.xs[1] == 0.0);
  CHECK(map.xs[2] == 0.2);
  CHECK(map.zs[2] == 1.2);

  CHECK(count_feasible(map) == 7);
  const auto& corner_left = map.at(0, 2);
  const auto& corner_right = map.at(2, 2);
  CHECK(!corner_left.check.feasible);
  CHECK(!corner_right.check.feasible);
  CHECK(*corner_left.check.code == FeasibilityCode::Stroke);
  CHECK(*corner_right.check.code == FeasibilityCode::Stroke);
  CHECK((*corner_left.check.q)[0] == doctest::Approx(1.21655).epsilon(1e-5));
  CHECK(map.at(1, 2).check.feasible);  // boundary pose q_c = 1.2 is feasible

  check_against_brute_force(geom, map, {});
}

TEST_CASE("a step larger than both spans leaves the four corner nodes") {
  const auto map = sweep(rehabkin::reference_g0(), {-0.1, 0.1, 0.9, 1.1, 5.0, 0.0, 0.0});
  REQUIRE(map.xs.size() == 2);
  REQUIRE(map.zs.size() == 2);
  CHECK(map.xs == std::vector<double>{-0.1, 0.1});
  CHECK(map.zs == std::vector<double>{0.9, 1.1});
  CHECK(map.cells.size() == 4);
}

TEST_CASE("widening the central stroke recovers the full 3x3 grid") {
  auto geom = rehabkin::reference_g0();
  const auto before = sweep(geom, kSmallGrid);
  geom.stroke_limits[0].max = 1.3;
  const auto after = sweep(geom, kSmallGrid);

  CHECK(count_feasible(after) == 9);
  for (std::size_t i = 0; i < before.cells.size(); ++i) {
    if (before.cells[i].check.feasible) {
      CHECK(after.cells[i].check.feasible);  // superset on the same grid
    }
  }
}

TEST_CASE("widening any limit never shrinks the feasible set") {
  std::mt19937 rng(404);
  std::uniform_real_distribution<double> widen(0.0, 0.3);
  const GridSpec grid{-0.3, 0.3, 0.7, 1.2, 0.1, 0.05, 0.05};

  for (int trial = 0; trial < 10; ++trial) {
    auto geom = rehabkin::reference_g0();
    const auto before = sweep(geom, grid);
    for (auto& stroke : geom.stroke_limits) {
      stroke.min = std::max(0.01, stroke.min - widen(rng));
      stroke.max += widen(rng);
    }
    geom.u_cone_half_angle += widen(rng);
    geom.s_cone_half_angle += widen(rng);
    const auto after = sweep(geom, grid);
    for (std::size_t i = 0; i < before.cells.size(); ++i) {
      if (before.cells[i].check.feasible) {
        CHECK(after.cells[i].check.feasible);
      }
    }
  }
}

TEST_CASE("sweeps are deterministic") {
  const auto geom = rehabkin::reference_g1();
  const GridSpec grid{-0.3, 0.3, 0.6, 1.2, 0.05, 0.02, -0.03};
  const auto first = sweep(geom, grid);
  const auto second = sweep(geom, grid);
  CHECK(rehabkin::workspace_csv(first) == rehabkin::workspace_csv(second));
}

TEST_CASE("sweep equals per-node evaluation on both architectures") {
  const GridSpec grid{-0.25, 0.25, 0.7, 1.1, 0.1, rehabkin::deg2rad(5.0), rehabkin::deg2rad(-5.0)};
  const FeasibilityRule strict{0.01};
  check_against_brute_force(rehabkin::reference_g0(), sweep(rehabkin::reference_g0(), grid, strict),
                            strict);
  check_against_brute_force(rehabkin::reference_g1(), sweep(rehabkin::reference_g1(), grid, strict),
                            strict);
}

TEST_CASE("nodes below the base plane are unreachable data") {
  const auto map = sweep(rehabkin::reference_g0(), {-0.1, 0.1, -0.2, 1.0, 0.2, 0.0, 0.0});
  CHECK(!map.cells.front().check.feasible);
  CHECK(*map.cells.front().check.code == FeasibilityCode::Unreachable);
}

TEST_CASE("grid guards") {
  const auto geom = rehabkin::reference_g0();
  CHECK_THROWS_AS(sweep(geom, {-0.5, 0.5, 0.5, 1.5, 1e-6, 0.0, 0.0}), rehabkin::GridTooLargeError);
  CHECK_THROWS_AS(sweep(geom, {0.5, -0.5, 0.5, 1.5, 0.1, 0.0, 0.0}), rehabkin::InvalidParamsError);
  CHECK_THROWS_AS(sweep(geom, {-0.5, 0.5, 0.5, 1.5, 0.0, 0.0, 0.0}), rehabkin::InvalidParamsError);
  CHECK_THROWS_AS(rehabkin::orientation_sweep(geom, 0.0, 1.0, {-1.0, 1.0}, {-1.0, 1.0}, 1e-6),
                  rehabkin::GridTooLargeError);
  CHECK_THROWS_AS(rehabkin::orientation_sweep(geom, 0.0, 1.0, {1.0, -1.0}, {0.0, 0.0}, 0.1),
                  rehabkin::InvalidParamsError);
}

TEST_CASE("metrics of the 3x3 map") {
  const auto metrics = rehabkin::metrics(sweep(rehabkin::reference_g0(), kSmallGrid));
  CHECK(metrics.feasible_cells == 7);
  CHECK(metrics.total_cells == 9);
  CHECK(metrics.area == doctest::Approx(0.28).epsilon(1e-12));
  CHECK(metrics.x_extent == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(metrics.z_extent == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(metrics.gci >= 0.0);
  CHECK(metrics.gci <= 1.0);
}

TEST_CASE("metrics limit cases") {
  WorkspaceMap map;
  map.grid.step = 0.1;
  map.xs = {0.0};
  map.zs = {1.0};

  rehabkin::WorkspaceCell infeasible_cell;
  infeasible_cell.check.feasible = false;
  map.cells = {infeasible_cell};
  const auto empty = rehabkin::metrics(map);
  CHECK(empty.area == 0.0);
  CHECK(empty.x_extent == 0.0);
  CHECK(empty.z_extent == 0.0);
  CHECK(empty.gci == 0.0);

  rehabkin::WorkspaceCell single;
  single.x = 0.0;
  single.z = 1.0;
  single.check.feasible = true;
  single.check.kappa = 4.0;
  map.cells = {single};
  const auto singleton = rehabkin::metrics(map);
  CHECK(singleton.area == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(singleton.x_extent == 0.0);
  CHECK(singleton.z_extent == 0.0);
  CHECK(singleton.aspect == 0.0);
  CHECK(singleton.gci == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("orientation sweep around the centered station is fully feasible") {
  const auto geom = rehabkin::reference_g0();
  const double range = rehabkin::deg2rad(15.0);
  const auto map = rehabkin::orientation_sweep(geom, 0.0, 1.0, {-range, range}, {-range, range},
                                               rehabkin::deg2rad(5.0));
  REQUIRE(map.thetas.size() == 7);
  REQUIRE(map.psis.size() == 7);
  for (const auto& cell : map.cells) {
    CHECK(cell.feasible);
  }
}

TEST_CASE("collapsed orientation ranges reduce to the single pose") {
  const auto geom = rehabkin::reference_g0();
  const auto map = rehabkin::orientation_sweep(geom, 0.0, 1.0, {0.0, 0.0}, {0.0, 0.0}, 0.1);
  REQUIRE(map.cells.size() == 1);
  const auto direct = rehabkin::check_pose(geom, {0.0, 1.0, 0.0, 0.0});
  CHECK(map.cells.front().feasible == direct.feasible);
  CHECK(map.cells.front().q == direct.q);
}

TEST_CASE("orientation sweep matches per-pose checks near the stroke ceiling") {
  const auto geom = rehabkin::reference_g0();
  const double psi = rehabkin::deg2rad(45.0);
  const auto map =
      rehabkin::orientation_sweep(geom, 0.0, 1.19, {0.0, 0.0}, {-psi, psi}, psi);
  REQUIRE(map.cells.size() == 3);
  std::size_t index = 0;
  for (double value : map.psis) {
    const auto direct = rehabkin::check_pose(geom, {0.0, 1.19, 0.0, value});
    CHECK(map.cells[index].feasible == direct.feasible);
    CHECK(map.cells[index].code == direct.code);
    ++index;
  }
}

TEST_CASE("refining the step changes the area by less than five percent") {
  const auto geom = rehabkin::reference_g0();
  const GridSpec coarse{-0.3, 0.3, 0.6, 1.25, 0.02, 0.0, 0.0};
  GridSpec fine = coarse;
  fine.step = 0.01;
  const double coarse_area = rehabkin::metrics(sweep(geom, coarse)).area;
  const double fine_area = rehabkin::metrics(sweep(geom, fine)).area;
  CHECK(std::abs(fine_area - coarse_area) / coarse_area < 0.05);
}

TEST_CASE("comparing a geometry with itself is a tie") {
  const auto geom = rehabkin::reference_g0();
  const auto report = rehabkin::compare(geom, geom, kSmallGrid);
  CHECK(report.ordering == rehabkin::AspectOrdering::Tie);
  CHECK(report.area_ratio == 1.0);
  CHECK(report.metrics_a.area == report.metrics_b.area);
  CHECK(report.metrics_a.gci == report.metrics_b.gci);
}

TEST_CASE("comparison report carries both maps") {
  const auto report =
      rehabkin::compare(rehabkin::reference_g0(), rehabkin::reference_g1(), kSmallGrid);
  CHECK(report.map_a.cells.size() == 9);
  CHECK(report.map_b.cells.size() == 9);
  CHECK(report.area_ratio ==
        doctest::Approx(report.metrics_a.area / report.metrics_b.area).epsilon(1e-12));
}
