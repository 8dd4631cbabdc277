#pragma once

#include <vector>

#include "mrmp/motion_plan.hpp"

namespace mrmp {

struct PhaseWorst {
  std::size_t phase = 0;
  double min_robot_robot = 0.0;
  std::size_t robot_a = 0;
  std::size_t robot_b = 0;
  double min_robot_obstacle = 0.0;
  std::size_t robot_obstacle = 0;
};

struct ValidationReport {
  bool ok = false;
  double min_robot_robot = 0.0;
  double min_robot_obstacle = 0.0;
  bool endpoint_check = false;
  std::vector<PhaseWorst> phases;
};

/// Checks collisions between robots (center distance < 2), with the obstacles of
/// the instance workspace (distance < 1), and the final configuration. Pair and
/// obstacle checks of a phase run in parallel. Throws MalformedPlan.
ValidationReport validate_plan(const Instance& inst, const MotionPlan& plan, double tol = 1e-6);
/// Single-threaded reference of validate_plan.
ValidationReport validate_plan_serial(const Instance& inst, const MotionPlan& plan, double tol = 1e-6);

/// Minimum over t in [0, 1] of |a(t) - b(t)| for two robots of a phase.
double min_pair_distance(const PhaseEvaluator& ev, std::size_t a, std::size_t b, double tol);

struct PlanLength {
  double driver = 0.0;
  double auxiliary = 0.0;
  double total = 0.0;
};

/// Lengths of all motions. Polar clearance curves are integrated numerically.
PlanLength plan_total_length(const MotionPlan& plan);

/// Length of a polar clearance curve around `anchor` for the given driver path.
double clearance_curve_length(const Path& driver, Point anchor);

}  // namespace mrmp
