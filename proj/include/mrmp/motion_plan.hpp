#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "mrmp/free_space.hpp"
#include "mrmp/geodesics.hpp"

namespace mrmp {

struct Instance {
  Workspace workspace;
  std::vector<Point> starts;
  std::vector<Point> targets;
  bool labeled = false;

  std::size_t robots() const { return starts.size(); }
};

struct Separation {
  double rho_mono = 0.0;  // among starts, and among targets
  double rho_bi = 0.0;    // start-target pairs
  double omega = 0.0;     // positions to the obstacle space

  double rho() const { return rho_mono < rho_bi ? rho_mono : rho_bi; }
};

Separation measure_separation(const Instance& inst);

struct Stay {
  Point anchor;
  bool operator==(const Stay&) const = default;
};

/// Follows the path at constant speed over the phase.
struct TraversePath {
  Path path;
};

/// Keeps distance 2 from the driver whenever the driver comes closer than 2 to
/// the anchor; otherwise sits at the anchor.
struct PolarClearance {
  Point anchor;
  std::size_t driver = 0;
  bool operator==(const PolarClearance&) const = default;
};

struct LinearDisplace {
  Point anchor;
  Point vector;
  bool operator==(const LinearDisplace&) const = default;
};

using Primitive = std::variant<Stay, TraversePath, PolarClearance, LinearDisplace>;

enum class PhaseKind { Eps, Open, Traverse, Close };

struct Motion {
  std::size_t robot = 0;
  Primitive primitive;
};

struct Phase {
  PhaseKind kind = PhaseKind::Eps;
  std::vector<Motion> motions;
};

struct MotionPlan {
  std::vector<Phase> phases;
};

/// Position of the polar clearance curve for a driver at `driver`.
Point clearance_position(Point anchor, Point driver);

/// Evaluates robot positions within one phase. The phase must list every robot
/// exactly once; throws MalformedPlan otherwise.
class PhaseEvaluator {
 public:
  PhaseEvaluator(const Phase& phase, std::size_t robots);

  Point position(std::size_t robot, double t) const;
  const Primitive& primitive(std::size_t robot) const;
  /// Upper bound on the robot's speed in units per phase.
  double speed(std::size_t robot) const;
  /// True when the motion is an affine function of time.
  bool linear(std::size_t robot) const;
  std::size_t robots() const { return slot_.size(); }

 private:
  const Phase* phase_;
  std::vector<std::size_t> slot_;
};

}  // namespace mrmp
