#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "mrmp/assignment.hpp"
#include "mrmp/motion_plan.hpp"

namespace mrmp {

struct PlannerConfig {
  double epsilon = 0.0;
  double tolerance = kTau;
  /// Bound on simultaneous interrupters used in the length guarantee.
  std::size_t max_interrupters = 6;
  /// Slack δ_c applied to every separation constraint.
  double constraint_slack = 0.0;
};

struct ConstraintCheck {
  double required = 0.0;
  double measured = 0.0;
  bool satisfied = false;
};

struct ConstraintReport {
  double epsilon = 0.0;
  Separation separation;
  std::array<ConstraintCheck, 5> constraints{};  // constraints 1 to 5 in order

  bool ok() const;
};

/// Required ω and ρ for a given ε, one per constraint.
double required_omega_c1(double epsilon);
double required_rho_c2(double epsilon);
double required_rho_c3(double epsilon);
double required_omega_c4(double epsilon);
double required_rho_c5(double epsilon);
double omega_bound(double epsilon);
double rho_bound(double epsilon);

ConstraintReport check_constraints(const Instance& inst, double epsilon, double slack = 0.0);

enum class EpsilonGoal { MinOmega, MinRho, Monotone };

struct EpsilonChoice {
  EpsilonGoal goal = EpsilonGoal::Monotone;
  double epsilon = 0.0;
  double omega_bound = 0.0;
  double rho_bound = 0.0;
};

EpsilonChoice choose_epsilon(EpsilonGoal goal);

/// A target of the path set that ε-blocks no other path of the set. Returns the
/// target index (lowest among candidates). Throws NoInterruptingTarget.
std::size_t find_interrupting_target(const AssignmentPathSet& gamma, double epsilon);

struct SwitchPaths {
  Path gamma_i;  // γ_i[0,w], connector back to s_k, then γ_k
  Path gamma_k;  // connector from s_k to γ_i(w), then γ_i[w,1]
  Segment connector;
};

/// Throws InvalidSwitch if |s_k - γ_i(w)| >= 2 - ε.
SwitchPaths build_switch_paths(const Path& gamma_i, const Path& gamma_k, Point s_k, double w, double epsilon);

struct ClearancePath {
  Point anchor;
  /// Driver parameter ranges where the driver is closer than 2 to the anchor.
  std::vector<std::pair<double, double>> windows;

  Point at(const Path& driver, double w) const { return clearance_position(anchor, driver.point_at(w)); }
};

/// Windows of w where |driver(w) - p| < 2, computed analytically per edge.
std::vector<std::pair<double, double>> proximity_windows(const Path& driver, Point p, double radius = 2.0);

/// Throws NotInterrupting if p ε-blocks the driver path.
ClearancePath build_clearance_path(const Path& driver, Point p, double epsilon);

struct IterationInfo {
  std::size_t driver = 0;     // robot that settles in this iteration
  std::size_t target = 0;     // target it settles on
  std::size_t original = 0;   // robot assigned to the interrupting target
  bool switched = false;
  std::optional<Segment> connector;
  Path driver_path;
  double assignment_total = 0.0;
  std::size_t clearers = 0;
};

struct EpsPlanResult {
  MotionPlan plan;
  double epsilon = 0.0;
  double first_assignment_total = 0.0;
  std::vector<IterationInfo> iterations;
};

/// The ε-overlap weakly-monotone planner. Throws ConstraintViolation when the
/// instance misses a separation constraint and InfeasibleInstance when a
/// component holds unequal numbers of starts and targets.
EpsPlanResult plan_eps(const Instance& inst, const PlannerConfig& config);

}  // namespace mrmp
